#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

#include "qptfs/levels.hpp"

namespace qptfs {

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Excitonic dimer in the site basis. Energies in cm^-1, angle in radians.
struct DimerParams {
    double site_energy_1 = 12881.0;
    double site_energy_2 = 12719.0;
    double coupling_J = 120.0;
    double dipole_d1 = 1.0;
    double dipole_ratio_d2_over_d1 = 2.0;
    double dipole_angle_phi = 0.3;
    double quantum_yield_Gamma = 2.0;

    // Throws ModelError naming the first violated constraint.
    void validate() const;
};

struct ExcitonBasis {
    double mixing_angle_theta = 0.0;
    double average_freq = 0.0;
    double half_difference_Delta = 0.0;
    double coupling_J = 0.0;
    double energy_e = 0.0;
    double energy_e_prime = 0.0;
    double energy_f = 0.0;

    Eigen::Vector3d mu_eg = Eigen::Vector3d::Zero();
    Eigen::Vector3d mu_epg = Eigen::Vector3d::Zero();
    Eigen::Vector3d mu_fe = Eigen::Vector3d::Zero();
    Eigen::Vector3d mu_fep = Eigen::Vector3d::Zero();

    // Unsigned angle of each dipole relative to mu_eg, in [0, pi].
    double angle_epg = 0.0;
    double angle_fe = 0.0;
    double angle_fep = 0.0;

    double energy(Level l) const;
    // E_upper - E_lower in cm^-1.
    double transition_freq(Level upper, Level lower) const { return energy(upper) - energy(lower); }

    // Transition dipole between two optically connected levels (symmetric).
    const Eigen::Vector3d& dipole(Level a, Level b) const;

    // Dipole expressed in the molecular frame where mu_eg lies along +z and
    // all dipoles lie in the x-z plane.
    Eigen::Vector3d molecular_frame(const Eigen::Vector3d& lab) const;

    // Signed in-plane angle from mu_eg (molecular frame atan2(x, z)).
    double signed_angle(const Eigen::Vector3d& lab) const;
};

// Closed-form diagonalization of the one-exciton block plus the biexciton.
// Rejects only the fully degenerate model (equal site energies and J = 0).
ExcitonBasis build_exciton_basis(const DimerParams& dimer);

// Fills mu_* vectors and angles of `basis` from the site dipoles.
ExcitonBasis transition_dipoles(const DimerParams& dimer, ExcitonBasis basis);

}  // namespace qptfs
