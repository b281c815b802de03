#pragma once

#include <numbers>

namespace qptfs {

// Frequencies are carried in cm^-1 and times in fs; hbar = 1.
struct UnitSystem {
    static constexpr double speed_of_light_cm_per_fs = 2.99792458e-5;
    static constexpr double wavenumber_to_angular_freq =
        2.0 * std::numbers::pi * speed_of_light_cm_per_fs;  // rad fs^-1 per cm^-1
    static constexpr double kB_in_wavenumbers = 0.6950348;  // cm^-1 K^-1

    static constexpr double to_angular(double wavenumber) {
        return wavenumber * wavenumber_to_angular_freq;
    }
    static constexpr double to_wavenumber(double angular) {
        return angular / wavenumber_to_angular_freq;
    }
};

}  // namespace qptfs
