#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "qptfs/dimer.hpp"
#include "qptfs/levels.hpp"
#include "qptfs/process_tensor.hpp"

namespace qptfs {

// Identical, independent Ohmic-exponential baths on each site.
struct BathParams {
    double reorganization_energy = 30.0;  // cm^-1
    double cutoff_freq = 120.0;           // cm^-1
    double temperature = 298.0;           // K
    // Optional replacements for the optical dephasing rates Gamma_pg and
    // Gamma_fp, in cm^-1 (converted to fs^-1 internally).
    std::optional<double> optical_dephasing_ground;
    std::optional<double> optical_dephasing_biexciton;

    void validate() const;
};

// J(w) = (lambda / w_c) w exp(-w / w_c); w in cm^-1, result in cm^-1.
double spectral_density(double omega, const BathParams& bath);

// Mean phonon occupation at frequency omega (cm^-1); zero at T = 0.
double bose_occupation(double omega, double temperature);

using LevelPair = std::pair<Level, Level>;

// Secular Redfield generator of the single-exciton manifold plus the optical
// coherence decay rates. Rates are in fs^-1, frequencies in cm^-1.
struct RedfieldGenerator {
    // dP_n/dT = sum_nu K(n, nu) P_nu, indices 0 = e, 1 = e'.
    Eigen::Matrix2d population_rates = Eigen::Matrix2d::Zero();
    std::map<LevelPair, double> dephasing_rates;
    std::map<LevelPair, double> coherence_freqs;

    double transfer_rate(Exciton from, Exciton to) const {
        return population_rates(index(to), index(from));
    }
    double dephasing(Level i, Level j) const;
    double coherence_freq(Level i, Level j) const;
};

// Generator with every rate zero: pure phase evolution at the basis frequencies.
RedfieldGenerator closed_system(const ExcitonBasis& basis);

RedfieldGenerator build_redfield_generator(const ExcitonBasis& basis, const BathParams& bath);

// chi(T) of the secular generator; throws std::domain_error for T < 0.
ProcessTensor propagate_process_tensor(const RedfieldGenerator& gen, double T);

// G_ij(d) = Theta(d) exp[(-i w_ij - Gamma_ij) d] for an optical coherence
// |i><j| with (i,j) in {(g,p), (p,g), (f,p), (p,f)}.
cplx optical_coherence_propagator(Level i, Level j, double duration, const RedfieldGenerator& gen);

}  // namespace qptfs
