#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qptfs/m_blocks.hpp"
#include "qptfs/process_tensor.hpp"
#include "qptfs/pulses.hpp"
#include "qptfs/response.hpp"

namespace qptfs {

struct InversionOptions {
    // Tikhonov weight relative to the largest singular value of C; 0 solves exactly.
    double tikhonov = 0.0;
};

// P = C^{-1} S for one waiting time.
PathwaySignalSet invert_signals(const Vector16c& signals, const CMatrix& c, const InversionOptions& options = {});

struct TensorDefects {
    double hermiticity = 0.0;          // max |chi_nm,numu - conj chi_mn,munu|
    double trace = 0.0;                // max |sum_n chi_nn,numu - delta_numu|
    double min_choi_eigenvalue = 0.0;  // negative means not completely positive
};

TensorDefects validate_tensor(const ProcessTensor& chi);

struct ReconstructionReport {
    double gamma = 0.0;
    std::vector<ProcessTensor> chi;               // per T
    std::vector<PathwaySignalSet> pathways;       // inverted P per T
    std::vector<TensorDefects> defects;           // per T
    std::vector<double> max_abs_error;            // per T, only when a reference is given
    double c_condition = 0.0;
    std::array<double, 3> m_conditions{};
};

ReconstructionReport reconstruct(const SignalTable& signals, const CMatrix& c, const MBlocks& m,
                                 const std::vector<ProcessTensor>* reference = nullptr,
                                 const InversionOptions& options = {});

double max_abs_difference(const ProcessTensor& a, const ProcessTensor& b);

// Multiplicative Gaussian noise: each complex sample is scaled by
// (1 + relative * (n1 + i n2)) and every sample at one waiting time by
// (1 + intensity * n3).
struct NoiseModel {
    double relative = 0.0;
    double intensity = 0.0;
    bool enabled() const { return relative > 0.0 || intensity > 0.0; }
};

void apply_noise(SignalTable& table, const NoiseModel& noise, std::uint64_t seed);

}  // namespace qptfs
