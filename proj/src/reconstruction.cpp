#include "qptfs/reconstruction.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "qptfs/random.hpp"

namespace qptfs {

PathwaySignalSet invert_signals(const Vector16c& signals, const CMatrix& c, const InversionOptions& options) {
    PathwaySignalSet out;
    if (options.tikhonov <= 0.0) {
        out.values = c.inverse() * signals;
        return out;
    }
    Eigen::JacobiSVD<Matrix16c> svd(c.entries, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double alpha = options.tikhonov * sv(0);
    Vector16c proj = svd.matrixU().adjoint() * signals;
    for (int i = 0; i < 16; ++i) proj(i) *= sv(i) / (sv(i) * sv(i) + alpha * alpha);
    out.values = svd.matrixV() * proj;
    return out;
}

TensorDefects validate_tensor(const ProcessTensor& chi) {
    constexpr std::array<Level, 3> levels{Level::g, Level::e, Level::ep};
    TensorDefects d;
    for (auto n : levels)
        for (auto m : levels)
            for (auto nu : levels)
                for (auto mu : levels) {
                    d.hermiticity = std::max(
                        d.hermiticity, std::abs(chi.element(n, m, nu, mu) - std::conj(chi.element(m, n, mu, nu))));
                }
    for (auto nu : levels)
        for (auto mu : levels) {
            if ((nu == Level::g) != (mu == Level::g)) continue;
            cplx tr = 0.0;
            for (auto n : levels) tr += chi.element(n, n, nu, mu);
            d.trace = std::max(d.trace, std::abs(tr - (nu == mu ? 1.0 : 0.0)));
        }
    const Eigen::Matrix<cplx, 9, 9> L = choi_matrix(chi);
    const Eigen::Matrix<cplx, 9, 9> H = 0.5 * (L + L.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, 9, 9>> es(H, Eigen::EigenvaluesOnly);
    d.min_choi_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

double max_abs_difference(const ProcessTensor& a, const ProcessTensor& b) {
    double out = 0.0;
    for (std::size_t k = 0; k < 16; ++k) out = std::max(out, std::abs(a.elements[k] - b.elements[k]));
    for (std::size_t k = 0; k < 4; ++k) out = std::max(out, std::abs(a.ground_row[k] - b.ground_row[k]));
    return out;
}

ReconstructionReport reconstruct(const SignalTable& signals, const CMatrix& c, const MBlocks& m,
                                 const std::vector<ProcessTensor>* reference, const InversionOptions& options) {
    ReconstructionReport report;
    report.gamma = signals.gamma;
    report.c_condition = c.condition_number();
    report.m_conditions = m.condition_numbers();
    for (std::size_t k = 0; k < signals.size(); ++k) {
        PathwaySignalSet p = invert_signals(signals.values[k], c, options);
        p.gamma = signals.gamma;
        p.tau = signals.tau;
        p.t = signals.t;
        p.T = signals.waiting_times[k];
        ProcessTensor chi = solve_chi_blocks(p, m);
        report.defects.push_back(validate_tensor(chi));
        if (reference) report.max_abs_error.push_back(max_abs_difference(chi, reference->at(k)));
        report.pathways.push_back(p);
        report.chi.push_back(chi);
    }
    return report;
}

void apply_noise(SignalTable& table, const NoiseModel& noise, std::uint64_t seed) {
    if (!noise.enabled()) return;
    constexpr std::uint64_t kSampleStream = 0x6e6f697365ULL;
    constexpr std::uint64_t kIntensityStream = 0x696e74656eULL;
    for (std::size_t k = 0; k < table.size(); ++k) {
        const double intensity = 1.0 + noise.intensity * counter_normal_pair(seed, kIntensityStream, k).first;
        for (int i = 0; i < 16; ++i) {
            const auto n = counter_normal_pair(seed, kSampleStream, k * 16 + static_cast<std::uint64_t>(i));
            const cplx factor(1.0 + noise.relative * n.first, noise.relative * n.second);
            table.values[k](i) *= intensity * factor;
        }
    }
}

}  // namespace qptfs
