#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "qptfs/dimer.hpp"
#include "qptfs/process_tensor.hpp"
#include "qptfs/response.hpp"

namespace qptfs {

class SingularGeometry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Matrix4c = Eigen::Matrix<cplx, 4, 4>;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;

// Linear map from the sixteen real chi unknowns (ChiVector order) to the
// orientation-averaged pathway amplitudes at tau = t = 0.
//   ee   : rows P^{ee,rs},                      columns chi-vector 0..3
//   e'e' : rows P^{e'e',rs},                    columns 4..7
//   ee'  : rows P^{e'e,rs} then P^{ee',rs},     columns 8..15
// with rs running over ee, ee', e'e, e'e'.
struct MBlocks {
    Matrix4c ee = Matrix4c::Zero();
    Matrix4c epep = Matrix4c::Zero();
    Matrix8c eep = Matrix8c::Zero();
    double gamma = 0.0;

    std::array<double, 3> condition_numbers() const;
    // The full 16x16 map with rows in pathway (pack4) order.
    Matrix16c full() const;
};

// Pathway index of each row of the three blocks, concatenated (16 entries).
const std::array<std::size_t, 16>& m_block_rows();

// Throws SingularGeometry when any block has condition number above
// cond_threshold.
MBlocks build_m_blocks(const ExcitonBasis& basis, double Gamma, double cond_threshold = 1e12,
                       const Polarizations& pol = {}, const ResponseOptions& options = {});

// Pathway amplitudes of the affine part that does not depend on chi (zero
// unless the printed closed forms are used).
Vector16c m_block_offset(const ExcitonBasis& basis, double Gamma, const Polarizations& pol = {},
                         const ResponseOptions& options = {});

// Solves the three blocks for chi and keeps the real part of each unknown.
ProcessTensor solve_chi_blocks(const PathwaySignalSet& averaged, const MBlocks& m);

// Entry-by-entry comparison against closed-form expressions written in terms
// of dipole magnitudes and signed angles from mu_eg.
struct MEntryComparison {
    std::string block;  // "ee", "e'e'", "ee'"
    int row = 0;        // 1-based
    int col = 0;
    cplx reference;
    cplx computed;
    double abs_diff() const { return std::abs(reference - computed); }
};

std::vector<MEntryComparison> compare_with_closed_forms(const MBlocks& m, const ExcitonBasis& basis);

}  // namespace qptfs
