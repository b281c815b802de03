#include "qptfs/pulses.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qptfs/units.hpp"

namespace qptfs {

void PulseToolbox::validate() const {
    if (freq_plus == freq_minus) throw ModelError("toolbox.freq_plus must differ from toolbox.freq_minus");
    if (!(pulse_width_sigma > 0.0)) throw ModelError("toolbox.pulse_width_sigma must be > 0");
    if (!(field_strength_lambda > 0.0)) throw ModelError("toolbox.field_strength_lambda must be > 0");
}

cplx pulse_coefficient(double transition_freq, double carrier_freq, const PulseToolbox& toolbox) {
    const double sigma = toolbox.pulse_width_sigma;
    const double detuning = UnitSystem::to_angular(transition_freq - carrier_freq);
    const double magnitude = toolbox.field_strength_lambda * std::sqrt(2.0 * std::numbers::pi * sigma * sigma) *
                             std::exp(-0.5 * sigma * sigma * detuning * detuning);
    return {0.0, magnitude};
}

cplx pulse_coefficient(Exciton p, Carrier w, const ExcitonBasis& basis, const PulseToolbox& toolbox) {
    return pulse_coefficient(basis.transition_freq(to_level(p), Level::g), toolbox.carrier(w), toolbox);
}

Matrix16c kron4(const Eigen::Matrix2cd& m) {
    Matrix16c out;
    for (std::size_t row = 0; row < 16; ++row) {
        const auto w = unpack4<Carrier>(row);
        for (std::size_t col = 0; col < 16; ++col) {
            const auto p = unpack4<Exciton>(col);
            cplx v = 1.0;
            for (int k = 0; k < 4; ++k) v *= m(index(w[k]), index(p[k]));
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
        }
    }
    return out;
}

double condition_number(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

double CMatrix::condition_number() const { return qptfs::condition_number(entries); }
double CMatrix::base_condition_number() const { return qptfs::condition_number(base_2x2); }

Matrix16c CMatrix::inverse() const { return kron4(base_2x2.inverse()); }

CMatrix build_c_matrix(const ExcitonBasis& basis, const PulseToolbox& toolbox, double det_threshold) {
    if (!(toolbox.pulse_width_sigma > 0.0)) throw ModelError("toolbox.pulse_width_sigma must be > 0");
    CMatrix c;
    for (auto w : kCarriers)
        for (auto p : kExcitons) c.base_2x2(index(w), index(p)) = pulse_coefficient(p, w, basis, toolbox);

    const double scale = c.base_2x2.squaredNorm();
    if (scale == 0.0 || std::abs(c.base_determinant()) < det_threshold * scale) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "pulse toolbox is singular: carriers " << toolbox.freq_plus << " and " << toolbox.freq_minus
            << " cm^-1 do not discriminate the excitons at " << basis.energy_e << " and "
            << basis.energy_e_prime << " cm^-1";
        throw SingularToolbox(msg.str());
    }
    c.entries = kron4(c.base_2x2);
    return c;
}

}  // namespace qptfs
