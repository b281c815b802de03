#include "qptfs/dimer.hpp"

#include <cmath>

namespace qptfs {

void DimerParams::validate() const {
    if (site_energy_1 == site_energy_2) {
        throw ModelError("dimer.site_energy_1 must differ from dimer.site_energy_2");
    }
    if (coupling_J == 0.0) {
        throw ModelError("dimer.coupling_J must be nonzero");
    }
    if (!(dipole_d1 > 0.0)) {
        throw ModelError("dimer.dipole_d1 must be positive");
    }
    if (!(dipole_ratio_d2_over_d1 >= 0.0)) {
        throw ModelError("dimer.dipole_ratio_d2_over_d1 must be nonnegative");
    }
    if (!(quantum_yield_Gamma >= 0.0 && quantum_yield_Gamma <= 2.0)) {
        throw ModelError("dimer.quantum_yield_Gamma must lie in [0, 2]");
    }
}

double ExcitonBasis::energy(Level l) const {
    switch (l) {
        case Level::g: return 0.0;
        case Level::e: return energy_e;
        case Level::ep: return energy_e_prime;
        case Level::f: return energy_f;
    }
    throw std::logic_error("unknown level");
}

const Eigen::Vector3d& ExcitonBasis::dipole(Level a, Level b) const {
    if (index(a) > index(b)) std::swap(a, b);
    if (a == Level::g && b == Level::e) return mu_eg;
    if (a == Level::g && b == Level::ep) return mu_epg;
    if (a == Level::e && b == Level::f) return mu_fe;
    if (a == Level::ep && b == Level::f) return mu_fep;
    throw std::logic_error("no optical transition between " + std::string(name(a)) + " and " +
                           std::string(name(b)));
}

Eigen::Vector3d ExcitonBasis::molecular_frame(const Eigen::Vector3d& lab) const {
    // Rotation about y taking mu_eg onto +z.
    const double alpha = std::atan2(mu_eg.x(), mu_eg.z());
    const double c = std::cos(alpha), s = std::sin(alpha);
    return {c * lab.x() - s * lab.z(), lab.y(), s * lab.x() + c * lab.z()};
}

double ExcitonBasis::signed_angle(const Eigen::Vector3d& lab) const {
    const Eigen::Vector3d m = molecular_frame(lab);
    return std::atan2(m.x(), m.z());
}

ExcitonBasis build_exciton_basis(const DimerParams& dimer) {
    const double w1 = dimer.site_energy_1, w2 = dimer.site_energy_2, J = dimer.coupling_J;
    if (w1 == w2 && J == 0.0) {
        throw ModelError("degenerate dimer: equal site energies with zero coupling");
    }
    ExcitonBasis b;
    b.average_freq = 0.5 * (w1 + w2);
    b.half_difference_Delta = 0.5 * (w1 - w2);
    b.coupling_J = J;
    // atan2 keeps the symmetric (Delta = 0) limit finite; for Delta > 0 it
    // coincides with arctan(J / Delta).
    b.mixing_angle_theta = 0.5 * std::atan2(J, b.half_difference_Delta);
    const double two_theta = 2.0 * b.mixing_angle_theta;
    const double splitting =
        b.half_difference_Delta * std::cos(two_theta) + J * std::sin(two_theta);
    b.energy_e = b.average_freq + splitting;
    b.energy_e_prime = b.average_freq - splitting;
    b.energy_f = w1 + w2;
    return transition_dipoles(dimer, b);
}

ExcitonBasis transition_dipoles(const DimerParams& dimer, ExcitonBasis b) {
    const double th = b.mixing_angle_theta;
    const double c = std::cos(th), s = std::sin(th);
    const double d1 = dimer.dipole_d1;
    const double d2 = dimer.dipole_d1 * dimer.dipole_ratio_d2_over_d1;
    const double phi = dimer.dipole_angle_phi;
    const double sp = std::sin(phi), cp = std::cos(phi);

    // |e> = c|1> + s|2>, |e'> = -s|1> + c|2>, |f> = |12>.
    b.mu_eg = {d2 * s * sp, 0.0, d1 * c + d2 * s * cp};
    b.mu_epg = {d2 * c * sp, 0.0, -d1 * s + d2 * c * cp};
    b.mu_fe = {d2 * c * sp, 0.0, d1 * s + d2 * c * cp};
    b.mu_fep = {-d2 * s * sp, 0.0, d1 * c - d2 * s * cp};

    if (b.mu_eg.norm() == 0.0) {
        throw ModelError("degenerate geometry: mu_eg vanishes, no angle reference");
    }
    auto angle = [&](const Eigen::Vector3d& v) {
        return std::atan2(b.mu_eg.cross(v).norm(), b.mu_eg.dot(v));
    };
    b.angle_epg = angle(b.mu_epg);
    b.angle_fe = angle(b.mu_fe);
    b.angle_fep = angle(b.mu_fep);
    return b;
}

}  // namespace qptfs
