#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "qptfs/ensemble.hpp"
#include "qptfs/reconstruction.hpp"

using namespace qptfs;

namespace {

EnsembleConfig small_config() {
    EnsembleConfig c;
    c.gammas = {0.0, 2.0};
    c.waiting_times = {150.0, 400.0};
    return c;
}

double max_diff(const SynthesisResult& a, const SynthesisResult& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.chi.size(); ++k)
        for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(a.chi[k].elements[i] - b.chi[k].elements[i]));
    for (std::size_t g = 0; g < a.signals.size(); ++g)
        for (std::size_t k = 0; k < a.signals[g].size(); ++k) {
            d = std::max(d, (a.signals[g].values[k] - b.signals[g].values[k]).cwiseAbs().maxCoeff());
            d = std::max(d, (a.pathways[g][k].values - b.pathways[g][k].values).cwiseAbs().maxCoeff());
        }
    return d;
}

}  // namespace

TEST(Sampling, MemberDependsOnlyOnSeedAndIndex) {
    const DimerParams base;
    EnsembleSpec spec;
    const auto a = sample_member(base, spec, 17);
    const auto b = sample_member(base, spec, 17);
    EXPECT_EQ(a.site_energy_1, b.site_energy_1);
    EXPECT_EQ(a.site_energy_2, b.site_energy_2);
    EXPECT_NE(a.site_energy_1, sample_member(base, spec, 18).site_energy_1);
    spec.seed += 1;
    EXPECT_NE(a.site_energy_1, sample_member(base, spec, 17).site_energy_1);
    EXPECT_EQ(a.coupling_J, base.coupling_J);
    EXPECT_EQ(a.dipole_angle_phi, base.dipole_angle_phi);
}

TEST(Sampling, ZeroWidthReproducesNominal) {
    const DimerParams base;
    EnsembleSpec spec;
    spec.sigma_inh = 0.0;
    spec.n_members = 5;
    for (const auto& m : sample_members(base, spec)) {
        EXPECT_EQ(m.site_energy_1, base.site_energy_1);
        EXPECT_EQ(m.site_energy_2, base.site_energy_2);
    }
}

TEST(Sampling, GaussianMoments) {
    const DimerParams base;
    const EnsembleSpec spec;
    const auto members = sample_members(base, spec);
    ASSERT_EQ(members.size(), 10000U);
    double m1 = 0, m2 = 0, v1 = 0, v2 = 0, cov = 0;
    for (const auto& m : members) {
        m1 += m.site_energy_1;
        m2 += m.site_energy_2;
    }
    m1 /= members.size();
    m2 /= members.size();
    for (const auto& m : members) {
        v1 += std::pow(m.site_energy_1 - m1, 2);
        v2 += std::pow(m.site_energy_2 - m2, 2);
        cov += (m.site_energy_1 - m1) * (m.site_energy_2 - m2);
    }
    const double n = static_cast<double>(members.size()) - 1.0;
    EXPECT_NEAR(m1, base.site_energy_1, 1.2);
    EXPECT_NEAR(m2, base.site_energy_2, 1.2);
    EXPECT_NEAR(std::sqrt(v1 / n), 40.0, 1.2);
    EXPECT_NEAR(std::sqrt(v2 / n), 40.0, 1.2);
    EXPECT_LT(std::abs(cov / n) / 1600.0, 0.05);
}

TEST(Sampling, RejectsInvalidSpec) {
    EnsembleSpec spec;
    spec.n_members = 0;
    EXPECT_THROW(spec.validate(), ModelError);
    spec = {};
    spec.sigma_inh = -1.0;
    EXPECT_THROW(spec.validate(), ModelError);
    EXPECT_THROW(disorder_scope_from_string("partial"), ModelError);
    EXPECT_EQ(disorder_scope_from_string(to_string(DisorderScope::full)), DisorderScope::full);
}

TEST(Average, SingleNominalMemberEqualsDirectSynthesis) {
    const auto config = small_config();
    const std::vector<DimerParams> members{config.nominal};
    const auto avg = average_signals(members, config, 1);
    const auto direct =
        synthesize_dimer(config.nominal, config.bath, config.toolbox, config.gammas, config.waiting_times);
    EXPECT_EQ(max_diff(avg, direct), 0.0);
}

TEST(Average, IndependentOfThreadCountAndBlocking) {
    const auto config = small_config();
    EnsembleSpec spec;
    spec.n_members = 150;
    const auto members = sample_members(config.nominal, spec);
    const auto one = average_signals(members, config, 1, 16);
    const auto three = average_signals(members, config, 3, 16);
    EXPECT_EQ(max_diff(one, three), 0.0);
    const auto other_blocks = average_signals(members, config, 2, 7);
    EXPECT_LT(max_diff(one, other_blocks), 1e-15);
}

TEST(Average, EnvironmentSetsThreadCount) {
    ::setenv("QPTFS_THREADS", "3", 1);
    EXPECT_EQ(default_thread_count(), 3U);
    ::setenv("QPTFS_THREADS", "0", 1);
    EXPECT_GE(default_thread_count(), 1U);
    ::unsetenv("QPTFS_THREADS");
}

TEST(Average, LinearityTransfersToReconstruction) {
    auto config = small_config();
    EnsembleSpec spec;
    spec.n_members = 300;
    const auto members = sample_members(config.nominal, spec);
    const auto avg = average_signals(members, config);
    const ExcitonBasis basis = build_exciton_basis(config.nominal);
    const CMatrix c = build_c_matrix(basis, config.toolbox);
    for (std::size_t g = 0; g < config.gammas.size(); ++g) {
        const auto rep = reconstruct(avg.signals[g], c, build_m_blocks(basis, config.gammas[g]), &avg.chi);
        for (double e : rep.max_abs_error) EXPECT_LT(e, 1e-10);
    }
    // The ensemble tensor differs from the nominal one.
    const auto nominal = synthesize_dimer(config.nominal, config.bath, config.toolbox, config.gammas, config.waiting_times);
    EXPECT_GT(max_abs_difference(avg.chi[0], nominal.chi[0]), 1e-4);
}

TEST(Average, FullScopeCarriesMemberGeometry) {
    auto config = small_config();
    config.scope = DisorderScope::full;
    DimerParams shifted = config.nominal;
    shifted.site_energy_1 += 60.0;
    const std::vector<DimerParams> members{shifted};
    const auto full = average_signals(members, config, 1);
    const auto direct = synthesize_dimer(shifted, config.bath, config.toolbox, config.gammas, config.waiting_times);
    EXPECT_EQ(max_diff(full, direct), 0.0);
    config.scope = DisorderScope::dynamics;
    EXPECT_GT(max_diff(average_signals(members, config, 1), direct), 1e-6);
}

TEST(Average, DisorderAcceleratesCoherenceTimeDecay) {
    auto config = small_config();
    config.gammas = {1.0};
    config.waiting_times = {200.0};
    EnsembleSpec spec;
    spec.n_members = 400;
    const auto members = sample_members(config.nominal, spec);
    auto ratio = [&](std::span<const DimerParams> ms) {
        auto c0 = config;
        auto c1 = config;
        c1.synthesis.tau = 60.0;
        const double a = average_signals(ms, c0).pathways[0][0].values.norm();
        const double b = average_signals(ms, c1).pathways[0][0].values.norm();
        return b / a;
    };
    const std::vector<DimerParams> nominal{config.nominal};
    EXPECT_LT(ratio(members), ratio(nominal));
}
