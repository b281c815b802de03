#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

#include "qptfs/dimer.hpp"
#include "qptfs/levels.hpp"
#include "qptfs/process_tensor.hpp"

namespace qptfs {

// Two-waveform pulse toolbox: Gaussian envelope exp(-t^2 / 2 sigma^2) with
// carriers freq_plus / freq_minus (cm^-1).
struct PulseToolbox {
    double freq_plus = 13480.0;
    double freq_minus = 12130.0;
    double pulse_width_sigma = 40.0;  // fs
    double field_strength_lambda = 1.0;

    double carrier(Carrier c) const { return c == Carrier::plus ? freq_plus : freq_minus; }
    void validate() const;
};

class SingularToolbox : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// i lambda sqrt(2 pi sigma^2) exp(-sigma^2 (w_tr - w)^2 / 2), frequencies in
// cm^-1 converted to rad/fs. This is the exact transform of the Gaussian
// envelope, so it does not depend on the pulse phase.
cplx pulse_coefficient(double transition_freq, double carrier_freq, const PulseToolbox& toolbox);

// Coefficient for driving the g -> p transition (equivalently f -> the other
// exciton, which has the same frequency) with carrier w.
cplx pulse_coefficient(Exciton p, Carrier w, const ExcitonBasis& basis, const PulseToolbox& toolbox);

using Matrix16c = Eigen::Matrix<cplx, 16, 16>;

// Experiment-probability matrix. Rows are carrier tuples (w1 w2 w3 w4), columns
// are pathways (p q r s), both packed with pack4.
struct CMatrix {
    Eigen::Matrix2cd base_2x2;  // base(w, p) = C^p_w
    Matrix16c entries;

    cplx base_determinant() const { return base_2x2.determinant(); }
    double condition_number() const;
    double base_condition_number() const;
    // Fourfold Kronecker product of base_2x2^{-1}.
    Matrix16c inverse() const;
};

// Throws SingularToolbox when |det base| < det_threshold * ||base||^2.
CMatrix build_c_matrix(const ExcitonBasis& basis, const PulseToolbox& toolbox,
                       double det_threshold = 1e-12);

// Fourfold Kronecker power with the first factor most significant.
Matrix16c kron4(const Eigen::Matrix2cd& m);

double condition_number(const Eigen::MatrixXcd& m);

}  // namespace qptfs
