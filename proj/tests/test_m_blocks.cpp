#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "qptfs/m_blocks.hpp"

using namespace qptfs;

namespace {

struct Model {
    DimerParams dimer;
    ExcitonBasis basis = build_exciton_basis(dimer);
    RedfieldGenerator gen = build_redfield_generator(basis, BathParams{});
    oracle::Dimer4 model = oracle::diagonalize(dimer);
};

ChiVector unit(int k) {
    ChiVector x = ChiVector::Zero();
    x(k) = 1.0;
    return x;
}

}  // namespace

TEST(MBlocks, RowOrderCoversEveryPathwayOnce) {
    const auto& rows = m_block_rows();
    std::set<std::size_t> seen(rows.begin(), rows.end());
    EXPECT_EQ(seen.size(), 16U);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(unpack4<Exciton>(rows[k])[0], Exciton::e);
    EXPECT_EQ(rows[8], pack4(Exciton::ep, Exciton::e, Exciton::e, Exciton::e));
    EXPECT_EQ(rows[12], pack4(Exciton::e, Exciton::ep, Exciton::e, Exciton::e));
}

TEST(MBlocks, MatchRotationAveragedEngine) {
    const Model m;
    const double Gamma = 0.5;
    const MBlocks blocks = build_m_blocks(m.basis, Gamma);
    const Matrix16c full = blocks.full();
    const auto& rot = oracle::so3_quadrature();
    for (int col = 0; col < 16; ++col) {
        const ProcessTensor chi = from_chi_vector(unit(col));
        oracle::Engine e;
        e.model = &m.model;
        e.chi = &chi;
        const RedfieldGenerator* g = &m.gen;
        e.optical = [g](int i, int j, double d) {
            return optical_coherence_propagator(static_cast<Level>(i), static_cast<Level>(j), d, *g);
        };
        for (std::size_t k = 0; k < 16; ++k) {
            const auto l = unpack4<Exciton>(k);
            cplx want = 0.0;
            for (const auto& r : rot) {
                e.rotation = r.R;
                want += r.weight * e.fluorescence(index(l[0]), index(l[1]), index(l[2]), index(l[3]), 0.0, 0.0, Gamma);
            }
            EXPECT_LT(std::abs(full(static_cast<Eigen::Index>(k), col) - want), 1e-12)
                << pathway_label(k) << " column " << col;
        }
    }
}

TEST(MBlocks, BlockStructureIsExact) {
    // Rows outside a block do not depend on the block's unknowns.
    const Model m;
    const MBlocks blocks = build_m_blocks(m.basis, 1.3);
    const Matrix16c full = blocks.full();
    const auto& rows = m_block_rows();
    auto block_of_row = [&](Eigen::Index r) {
        for (int i = 0; i < 16; ++i)
            if (static_cast<Eigen::Index>(rows[i]) == r) return i < 4 ? 0 : (i < 8 ? 1 : 2);
        return -1;
    };
    for (Eigen::Index r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            const int cb = c < 4 ? 0 : (c < 8 ? 1 : 2);
            if (block_of_row(r) != cb) EXPECT_EQ(full(r, c), cplx(0.0));
        }
}

TEST(MBlocks, NonsingularAcrossYields) {
    const Model m;
    for (double G : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const MBlocks b = build_m_blocks(m.basis, G);
        for (double c : b.condition_numbers()) {
            EXPECT_TRUE(std::isfinite(c));
            EXPECT_LT(c, 1e4);
        }
        EXPECT_EQ(m_block_offset(m.basis, G), Vector16c::Zero());
    }
}

TEST(MBlocks, SolveRoundTrip) {
    const Model m;
    for (std::uint64_t seed : {1U, 2U, 3U}) {
        const ProcessTensor chi = oracle::random_cp_tensor(seed);
        for (double G : {0.0, 1.0, 2.0}) {
            const MBlocks b = build_m_blocks(m.basis, G);
            const auto set = synthesize_pathways(0.0, 0.0, G, m.basis, m.gen, chi);
            const ProcessTensor back = solve_chi_blocks(set, b);
            for (std::size_t k = 0; k < 16; ++k) EXPECT_LT(std::abs(back.elements[k] - chi.elements[k]), 1e-12);
        }
    }
}

TEST(MBlocks, DegenerateGeometriesAreSingular) {
    // Symmetric dimer with equal parallel site dipoles: one exciton is dark.
    DimerParams h;
    h.site_energy_2 = h.site_energy_1;
    h.dipole_ratio_d2_over_d1 = 1.0;
    h.dipole_angle_phi = 0.0;
    for (double G : {0.0, 1.0, 2.0}) EXPECT_THROW(build_m_blocks(build_exciton_basis(h), G), SingularGeometry);

    // A single chromophore carries no information on the populations at zero yield.
    DimerParams single;
    single.dipole_ratio_d2_over_d1 = 0.0;
    EXPECT_THROW(build_m_blocks(build_exciton_basis(single), 0.0), SingularGeometry);
    EXPECT_NO_THROW(build_m_blocks(build_exciton_basis(single), 1.0));

    // Parallel but unequal dipoles remain invertible.
    DimerParams parallel;
    parallel.dipole_angle_phi = 0.0;
    EXPECT_NO_THROW(build_m_blocks(build_exciton_basis(parallel), 1.0));
}

TEST(MBlocks, ClosedFormEntries) {
    // Entries whose printed closed forms disagree with the contraction of the
    // full density matrix.
    const std::set<std::pair<std::string, std::pair<int, int>>> known{
        {"ee", {1, 1}}, {"e'e'", {1, 1}}, {"e'e'", {1, 2}}, {"e'e'", {3, 4}}, {"e'e'", {4, 1}}, {"ee'", {2, 4}}};
    const Model m;
    for (double G : {0.0, 1.0, 2.0}) {
        const auto cmp = compare_with_closed_forms(build_m_blocks(m.basis, G), m.basis);
        EXPECT_FALSE(cmp.empty());
        std::set<std::pair<std::string, std::pair<int, int>>> differing;
        for (const auto& c : cmp) {
            const double tol = 1e-12 * (1.0 + std::abs(c.reference));
            if (c.abs_diff() > tol) differing.insert({c.block, {c.row, c.col}});
        }
        for (const auto& d : differing)
            EXPECT_TRUE(known.count(d)) << "Gamma " << G << " " << d.first << d.second.first << d.second.second;
    }
}

TEST(MBlocks, ClosedFormBleachEntryIsTwoFifths) {
    // The (1,1) entry of the ee block at unit yield: only the chi_ee,ee term of
    // bleach plus emission, isotropic <(mu.z)^4> = |mu|^4 / 5, weight -2.
    const Model m;
    const MBlocks b = build_m_blocks(m.basis, 1.0);
    const double mu4 = std::pow(m.basis.mu_eg.squaredNorm(), 2);
    EXPECT_LT(std::abs(b.ee(0, 0) - cplx(-0.4 * mu4)), 1e-12);
}

TEST(MBlocks, PrintedBleachEntryTranscription) {
    const Model m;
    const auto cmp = compare_with_closed_forms(build_m_blocks(m.basis, 1.0), m.basis);
    const auto it = std::find_if(cmp.begin(), cmp.end(),
                                 [](const MEntryComparison& c) { return c.block == "ee" && c.row == 1 && c.col == 1; });
    ASSERT_NE(it, cmp.end());
    const double mu4 = std::pow(m.basis.mu_eg.squaredNorm(), 2);
    EXPECT_LT(std::abs(it->reference - cplx(-2.0 / 15.0 * mu4)), 1e-12);
    EXPECT_LT(std::abs(it->computed - 3.0 * it->reference), 1e-12);
}
