#include "qptfs/m_blocks.hpp"

#include <cmath>
#include <sstream>

namespace qptfs {

namespace {

constexpr Exciton E = Exciton::e;
constexpr Exciton P = Exciton::ep;

std::array<std::size_t, 16> make_rows() {
    std::array<std::size_t, 16> rows{};
    std::size_t k = 0;
    const std::array<std::array<Exciton, 2>, 4> pq{{{E, E}, {P, P}, {P, E}, {E, P}}};
    const std::array<std::array<Exciton, 2>, 4> rs{{{E, E}, {E, P}, {P, E}, {P, P}}};
    for (const auto& a : pq)
        for (const auto& b : rs) rows[k++] = pack4(a[0], a[1], b[0], b[1]);
    return rows;
}

Vector16c averaged_pathways(const ExcitonBasis& basis, const RedfieldGenerator& gen, const ProcessTensor& chi,
                            double Gamma, const Polarizations& pol, const ResponseOptions& options) {
    return synthesize_pathways(0.0, 0.0, Gamma, basis, gen, chi, Orientation{pol, true}, options).values;
}

double cond(const Eigen::MatrixXcd& m) { return condition_number(m); }

}  // namespace

const std::array<std::size_t, 16>& m_block_rows() {
    static const auto rows = make_rows();
    return rows;
}

std::array<double, 3> MBlocks::condition_numbers() const {
    return {cond(Eigen::MatrixXcd(ee)), cond(Eigen::MatrixXcd(epep)), cond(Eigen::MatrixXcd(eep))};
}

Matrix16c MBlocks::full() const {
    Matrix16c out = Matrix16c::Zero();
    const auto& rows = m_block_rows();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out(static_cast<Eigen::Index>(rows[i]), j) = ee(i, j);
            out(static_cast<Eigen::Index>(rows[4 + i]), 4 + j) = epep(i, j);
        }
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out(static_cast<Eigen::Index>(rows[8 + i]), 8 + j) = eep(i, j);
    return out;
}

Vector16c m_block_offset(const ExcitonBasis& basis, double Gamma, const Polarizations& pol,
                         const ResponseOptions& options) {
    const RedfieldGenerator gen = closed_system(basis);
    return averaged_pathways(basis, gen, from_chi_vector(ChiVector::Zero()), Gamma, pol, options);
}

MBlocks build_m_blocks(const ExcitonBasis& basis, double Gamma, double cond_threshold, const Polarizations& pol,
                       const ResponseOptions& options) {
    // At tau = t = 0 every propagator is 1, so the generator only supplies
    // (unused) frequencies.
    const RedfieldGenerator gen = closed_system(basis);
    const Vector16c offset = averaged_pathways(basis, gen, from_chi_vector(ChiVector::Zero()), Gamma, pol, options);
    Matrix16c full;
    for (int j = 0; j < 16; ++j) {
        ChiVector x = ChiVector::Zero();
        x(j) = 1.0;
        full.col(j) = averaged_pathways(basis, gen, from_chi_vector(x), Gamma, pol, options) - offset;
    }

    MBlocks m;
    m.gamma = Gamma;
    const auto& rows = m_block_rows();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m.ee(i, j) = full(static_cast<Eigen::Index>(rows[i]), j);
            m.epep(i, j) = full(static_cast<Eigen::Index>(rows[4 + i]), 4 + j);
        }
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m.eep(i, j) = full(static_cast<Eigen::Index>(rows[8 + i]), 8 + j);

    const auto conds = m.condition_numbers();
    const std::array<const char*, 3> names{"ee", "e'e'", "ee'"};
    for (std::size_t b = 0; b < 3; ++b) {
        if (!(conds[b] <= cond_threshold)) {
            std::ostringstream msg;
            msg << "M block " << names[b] << " is singular for Gamma = " << Gamma << " (condition number "
                << conds[b] << ")";
            throw SingularGeometry(msg.str());
        }
    }
    return m;
}

ProcessTensor solve_chi_blocks(const PathwaySignalSet& averaged, const MBlocks& m) {
    const auto& rows = m_block_rows();
    Eigen::Matrix<cplx, 4, 1> b_ee, b_epep;
    Eigen::Matrix<cplx, 8, 1> b_eep;
    for (int i = 0; i < 4; ++i) {
        b_ee(i) = averaged.values(static_cast<Eigen::Index>(rows[i]));
        b_epep(i) = averaged.values(static_cast<Eigen::Index>(rows[4 + i]));
    }
    for (int i = 0; i < 8; ++i) b_eep(i) = averaged.values(static_cast<Eigen::Index>(rows[8 + i]));

    ChiVector x;
    x.segment<4>(0) = m.ee.fullPivLu().solve(b_ee).real();
    x.segment<4>(4) = m.epep.fullPivLu().solve(b_epep).real();
    x.segment<8>(8) = m.eep.fullPivLu().solve(b_eep).real();
    return from_chi_vector(x, averaged.T);
}

std::vector<MEntryComparison> compare_with_closed_forms(const MBlocks& m, const ExcitonBasis& basis) {
    const double G = m.gamma;
    const double a = basis.mu_eg.norm();
    const double b = basis.mu_epg.norm();
    const double f = basis.mu_fe.norm();
    const double fp = basis.mu_fep.norm();
    const double tb = basis.signed_angle(basis.mu_epg);
    const double tf = basis.signed_angle(basis.mu_fe);
    const double tfp = basis.signed_angle(basis.mu_fep);
    const cplx I(0.0, 1.0);
    using std::cos;
    using std::sin;

    std::vector<MEntryComparison> out;
    auto add = [&](const char* block, int r, int c, cplx ref) {
        cplx got;
        if (std::string(block) == "ee") got = m.ee(r - 1, c - 1);
        else if (std::string(block) == "e'e'") got = m.epep(r - 1, c - 1);
        else got = m.eep(r - 1, c - 1);
        out.push_back({block, r, c, ref, got});
    };
    auto zeros = [&](const char* block, std::initializer_list<std::pair<int, int>> idx) {
        for (auto [r, c] : idx) add(block, r, c, 0.0);
    };

    const cplx ee23 = -(1.0 / 15) * a * a *
                      ((1 - G) * (3 * cos(tf) * cos(tfp) + sin(tf) * sin(tfp)) * f * fp + 3 * cos(tb) * a * b);
    add("ee", 1, 1, -(2.0 / 15) * std::pow(a, 4));
    add("ee", 1, 2, -(1.0 / 5) * std::pow(a, 4) - (1 - G) * (1.0 / 15) * (cos(2 * tfp) + 2) * fp * fp * a * a);
    add("ee", 2, 3, ee23);
    add("ee", 3, 3, ee23);
    add("ee", 2, 4, -I * ee23);
    add("ee", 3, 4, I * ee23);
    add("ee", 4, 1, -(1.0 / 15) * a * a * ((cos(2 * tb) + 2) * b * b + (1 - G) * (cos(2 * tf) + 2) * f * f));
    add("ee", 4, 2, -(2.0 / 15) * a * a * b * b * (cos(2 * tb) + 2));
    zeros("ee", {{1, 3}, {1, 4}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 3}, {4, 4}});

    const cplx pp23 = -(1.0 / 15) * b * b *
                      ((1 - G) * (2 * cos(tf - tfp) + cos(tf + tfp - 2 * tb)) * f * fp + 3 * cos(tb) * a * b);
    add("e'e'", 1, 1, -(2.0 / 5) * a * a * b * b * (cos(2 * tb) + 2));
    add("e'e'", 1, 2, -(1.0 / 5) * a * a * ((cos(2 * tb) + 2) * a * a + (1 - G) * (cos(2 * tfp - tb) + 2) * fp * fp));
    add("e'e'", 2, 3, pp23);
    add("e'e'", 3, 3, pp23);
    add("e'e'", 2, 4, -I * pp23);
    add("e'e'", 3, 4, I * ee23);
    add("e'e'", 4, 1, -(1.0 / 15) * b * b * (3 * b * b + (1 - G) * (cos(2 * tf - tb) + 2) * f * f));
    add("e'e'", 4, 2, -(2.0 / 5) * std::pow(b, 4));
    zeros("e'e'", {{1, 3}, {1, 4}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 3}, {4, 4}});

    const cplx x11 = -(2.0 / 5) * cos(tb) * std::pow(a, 3) * b;
    const cplx x12 = -(1.0 / 15) * a * b * (3 * cos(tb) * a * a + (1 - G) * (cos(2 * tfp - tb) + 2 * cos(tb)) * fp * fp);
    add("ee'", 1, 1, x11);
    add("ee'", 1, 2, x12);
    add("ee'", 2, 4, -(1.0 / 15) * a * b * (1 - G) *
                         (2 * cos(tf - tfp - tb) + 2 * cos(tf) * cos(tfp - tb)) * f * fp);
    add("ee'", 4, 1, -(1.0 / 15) * a * b * (3 * cos(tb) * b * b + (1 - G) * (cos(2 * tf - tb) + 2 * cos(tb)) * f * f));
    add("ee'", 4, 2, -(2.0 / 5) * cos(tb) * a * std::pow(b, 3));
    add("ee'", 5, 1, x11);
    add("ee'", 5, 2, x12);
    return out;
}

}  // namespace qptfs
