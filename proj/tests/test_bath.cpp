#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracle.hpp"
#include "qptfs/bath.hpp"
#include "qptfs/reconstruction.hpp"
#include "qptfs/units.hpp"

using namespace qptfs;

namespace {

double max_diff(const ProcessTensor& a, const ProcessTensor& b) { return max_abs_difference(a, b); }

const std::vector<DimerParams>& dimers() {
    static const std::vector<DimerParams> d{DimerParams{}, DimerParams{12500, 12900, -80, 1.3, 0.7, 1.1, 1.0},
                                            DimerParams{13000, 12100, 250, 1.0, 2.0, -0.8, 0.0}};
    return d;
}

}  // namespace

TEST(SpectralDensity, OhmicExponentialShape) {
    const BathParams bath;
    EXPECT_DOUBLE_EQ(spectral_density(0.0, bath), 0.0);
    EXPECT_NEAR(spectral_density(120.0, bath), 30.0 * std::exp(-1.0), 1e-12);
    EXPECT_THROW(spectral_density(-1.0, bath), std::domain_error);
}

TEST(BoseOccupation, ZeroTemperatureAndHighTemperatureLimit) {
    EXPECT_EQ(bose_occupation(100.0, 0.0), 0.0);
    const double kT = UnitSystem::kB_in_wavenumbers * 5000.0;
    EXPECT_NEAR(bose_occupation(1.0, 5000.0), kT - 0.5, 1e-3);
}

TEST(Redfield, PropagationMatchesDaviesGenerator) {
    const BathParams bath;
    for (const auto& d : dimers()) {
        const auto basis = build_exciton_basis(d);
        const auto gen = build_redfield_generator(basis, bath);
        const auto L = oracle::davies_liouvillian(oracle::diagonalize(d), bath);
        for (double T : {0.0, 35.0, 120.0, 400.0, 2000.0}) {
            EXPECT_LT(max_diff(propagate_process_tensor(gen, T), oracle::tensor_from_liouvillian(L, T)), 1e-12)
                << "T = " << T;
        }
    }
}

TEST(Redfield, OpticalCoherencesMatchDaviesGenerator) {
    BathParams bath;
    bath.temperature = 77.0;
    for (const auto& d : dimers()) {
        const auto basis = build_exciton_basis(d);
        const auto gen = build_redfield_generator(basis, bath);
        const auto L = oracle::davies_liouvillian(oracle::diagonalize(d), bath);
        const double t = 90.0;
        const Eigen::Matrix<cplx, 16, 16> E = (L * t).exp();
        for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{0, 2}, std::pair{3, 1}, std::pair{3, 2},
                            std::pair{2, 3}}) {
            const cplx got = optical_coherence_propagator(static_cast<Level>(i), static_cast<Level>(j), t, gen);
            EXPECT_LT(std::abs(got - E(i * 4 + j, i * 4 + j)), 1e-13) << i << j;
        }
    }
}

TEST(Redfield, DownhillRateClosedForm) {
    const BathParams bath;
    const auto basis = build_exciton_basis(DimerParams{});
    const auto gen = build_redfield_generator(basis, bath);
    const double w = basis.energy_e - basis.energy_e_prime;
    const double n = 1.0 / std::expm1(w / (UnitSystem::kB_in_wavenumbers * bath.temperature));
    const double J = bath.reorganization_energy / bath.cutoff_freq * w * std::exp(-w / bath.cutoff_freq);
    const double s2 = std::pow(std::sin(2 * basis.mixing_angle_theta), 2);
    const double expected = UnitSystem::to_angular(std::numbers::pi * s2 * J * (n + 1.0));
    EXPECT_NEAR(gen.transfer_rate(Exciton::e, Exciton::ep), expected, 1e-15);
}

TEST(Redfield, DetailedBalance) {
    const BathParams bath;
    const auto basis = build_exciton_basis(DimerParams{});
    const auto gen = build_redfield_generator(basis, bath);
    const double ratio = gen.transfer_rate(Exciton::e, Exciton::ep) / gen.transfer_rate(Exciton::ep, Exciton::e);
    const double w = basis.energy_e - basis.energy_e_prime;
    EXPECT_NEAR(ratio, std::exp(w / (UnitSystem::kB_in_wavenumbers * bath.temperature)), 1e-12);
}

TEST(Redfield, SemigroupComposition) {
    const auto basis = build_exciton_basis(DimerParams{});
    const auto gen = build_redfield_generator(basis, BathParams{});
    const auto a = propagate_process_tensor(gen, 130.0);
    const auto b = propagate_process_tensor(gen, 270.0);
    EXPECT_LT(max_diff(compose(a, b), propagate_process_tensor(gen, 400.0)), 1e-14);
}

TEST(Redfield, GroundTruthIsPhysical) {
    const auto basis = build_exciton_basis(DimerParams{});
    const auto gen = build_redfield_generator(basis, BathParams{});
    for (double T = 0.0; T <= 1000.0; T += 50.0) {
        const auto d = validate_tensor(propagate_process_tensor(gen, T));
        EXPECT_LT(d.hermiticity, 1e-14);
        EXPECT_LT(d.trace, 1e-14);
        EXPECT_GE(d.min_choi_eigenvalue, -1e-10);
    }
}

TEST(Redfield, LongTimesRelaxToBoltzmann) {
    const BathParams bath;
    const auto basis = build_exciton_basis(DimerParams{});
    const auto chi = propagate_process_tensor(build_redfield_generator(basis, bath), 1e5);
    const double w = basis.energy_e - basis.energy_e_prime;
    const double boltz = std::exp(-w / (UnitSystem::kB_in_wavenumbers * bath.temperature));
    const double pe = chi(Exciton::e, Exciton::e, Exciton::e, Exciton::e).real();
    const double pp = chi(Exciton::ep, Exciton::ep, Exciton::e, Exciton::e).real();
    EXPECT_NEAR(pe / pp, boltz, 1e-12);
    EXPECT_NEAR(pe + pp, 1.0, 1e-14);
    EXPECT_LT(std::abs(chi(Exciton::e, Exciton::ep, Exciton::e, Exciton::ep)), 1e-12);
}

TEST(Redfield, ZeroWaitingTimeIsIdentityAndNegativeIsRejected) {
    const auto gen = build_redfield_generator(build_exciton_basis(DimerParams{}), BathParams{});
    EXPECT_LT(max_diff(propagate_process_tensor(gen, 0.0), ProcessTensor::identity()), 1e-15);
    EXPECT_THROW(propagate_process_tensor(gen, -1.0), std::domain_error);
}

TEST(Redfield, CoherenceRotatesWithNegativePhase) {
    const auto basis = build_exciton_basis(DimerParams{});
    const auto gen = closed_system(basis);
    const double T = 10.0;
    const auto chi = propagate_process_tensor(gen, T);
    const double w = UnitSystem::to_angular(basis.energy_e - basis.energy_e_prime);
    const cplx expected = std::exp(cplx(0.0, -w * T));
    EXPECT_LT(std::abs(chi(Exciton::e, Exciton::ep, Exciton::e, Exciton::ep) - expected), 1e-14);
    EXPECT_EQ(chi(Exciton::e, Exciton::e, Exciton::e, Exciton::e), cplx(1.0));
}

TEST(OpticalPropagator, CausalityAndErrors) {
    const auto gen = build_redfield_generator(build_exciton_basis(DimerParams{}), BathParams{});
    EXPECT_EQ(optical_coherence_propagator(Level::e, Level::g, -5.0, gen), cplx(0.0));
    EXPECT_EQ(optical_coherence_propagator(Level::e, Level::g, 0.0, gen), cplx(1.0));
    EXPECT_THROW(optical_coherence_propagator(Level::e, Level::ep, 1.0, gen), std::domain_error);
    EXPECT_THROW(optical_coherence_propagator(Level::g, Level::g, 1.0, gen), std::domain_error);
}

TEST(OpticalPropagator, DephasingOverride) {
    BathParams bath;
    bath.optical_dephasing_ground = 50.0;
    bath.optical_dephasing_biexciton = 80.0;
    const auto gen = build_redfield_generator(build_exciton_basis(DimerParams{}), bath);
    EXPECT_NEAR(gen.dephasing(Level::e, Level::g), UnitSystem::to_angular(50.0), 1e-15);
    EXPECT_NEAR(gen.dephasing(Level::f, Level::ep), UnitSystem::to_angular(80.0), 1e-15);
    const double t = 40.0;
    EXPECT_NEAR(std::abs(optical_coherence_propagator(Level::ep, Level::g, t, gen)),
                std::exp(-UnitSystem::to_angular(50.0) * t), 1e-14);
}

TEST(BathParams, Validation) {
    BathParams b;
    b.cutoff_freq = 0.0;
    EXPECT_THROW(b.validate(), ModelError);
    BathParams c;
    c.temperature = -1.0;
    EXPECT_THROW(c.validate(), ModelError);
}
