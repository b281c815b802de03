#include "qptfs/bath.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qptfs/units.hpp"

namespace qptfs {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_exciton(Level l) { return l == Level::e || l == Level::ep; }

// Bath correlation spectrum C(w) = 2 pi J(|w|) [n(|w|) + theta(w)], with the
// finite w -> 0 limit 2 pi lambda kT / w_c. Positive w removes energy from the
// system.
double correlation_spectrum(double omega, const BathParams& bath) {
    const double kT = UnitSystem::kB_in_wavenumbers * bath.temperature;
    if (omega == 0.0) {
        return 2.0 * kPi * bath.reorganization_energy * kT / bath.cutoff_freq;
    }
    const double w = std::abs(omega);
    const double n = bose_occupation(w, bath.temperature);
    return 2.0 * kPi * spectral_density(w, bath) * (omega > 0.0 ? n + 1.0 : n);
}

}  // namespace

void BathParams::validate() const {
    if (!(reorganization_energy >= 0.0)) throw ModelError("bath.reorganization_energy must be >= 0");
    if (!(cutoff_freq > 0.0)) throw ModelError("bath.cutoff_freq must be > 0");
    if (!(temperature > 0.0)) throw ModelError("bath.temperature must be > 0");
    if (optical_dephasing_ground && !(*optical_dephasing_ground >= 0.0))
        throw ModelError("bath.optical_dephasing_ground must be >= 0");
    if (optical_dephasing_biexciton && !(*optical_dephasing_biexciton >= 0.0))
        throw ModelError("bath.optical_dephasing_biexciton must be >= 0");
}

double spectral_density(double omega, const BathParams& bath) {
    if (omega < 0.0) throw std::domain_error("spectral_density: negative frequency");
    return bath.reorganization_energy / bath.cutoff_freq * omega * std::exp(-omega / bath.cutoff_freq);
}

double bose_occupation(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    const double x = omega / (UnitSystem::kB_in_wavenumbers * temperature);
    return 1.0 / std::expm1(x);
}

double RedfieldGenerator::dephasing(Level i, Level j) const {
    auto it = dephasing_rates.find({i, j});
    if (it == dephasing_rates.end()) {
        throw std::domain_error("no dephasing rate for |" + std::string(name(i)) + "><" +
                                std::string(name(j)) + "|");
    }
    return it->second;
}

double RedfieldGenerator::coherence_freq(Level i, Level j) const {
    auto it = coherence_freqs.find({i, j});
    if (it == coherence_freqs.end()) {
        throw std::domain_error("no coherence frequency for |" + std::string(name(i)) + "><" +
                                std::string(name(j)) + "|");
    }
    return it->second;
}

RedfieldGenerator closed_system(const ExcitonBasis& basis) {
    RedfieldGenerator gen;
    const std::array<LevelPair, 5> pairs{{{Level::e, Level::ep},
                                          {Level::g, Level::e},
                                          {Level::g, Level::ep},
                                          {Level::f, Level::e},
                                          {Level::f, Level::ep}}};
    for (auto [a, b] : pairs) {
        for (auto [i, j] : {LevelPair{a, b}, LevelPair{b, a}}) {
            gen.coherence_freqs[{i, j}] = basis.energy(i) - basis.energy(j);
            gen.dephasing_rates[{i, j}] = 0.0;
        }
    }
    return gen;
}

RedfieldGenerator build_redfield_generator(const ExcitonBasis& basis, const BathParams& bath) {
    RedfieldGenerator gen = closed_system(basis);

    // Site amplitudes <n|p>, n = 1, 2.
    const double c = std::cos(basis.mixing_angle_theta), s = std::sin(basis.mixing_angle_theta);
    const std::array<std::array<double, 2>, 2> amp{{{c, s}, {-s, c}}};

    auto site_overlap = [&](Exciton a, Exciton b, int n) { return amp[index(a)][n] * amp[index(b)][n]; };

    std::array<double, 2> outflow{0.0, 0.0};
    for (auto a : kExcitons) {
        const Exciton b = other(a);
        const double w_ab = basis.energy(to_level(a)) - basis.energy(to_level(b));
        double weight = 0.0;
        for (int n = 0; n < 2; ++n) weight += std::pow(site_overlap(a, b, n), 2);
        const double k = UnitSystem::to_angular(weight * correlation_spectrum(w_ab, bath));
        if (k < 0.0 || !std::isfinite(k)) throw std::logic_error("Redfield: invalid transfer rate");
        gen.population_rates(index(b), index(a)) = k;
        gen.population_rates(index(a), index(a)) -= k;
        outflow[index(a)] = k;
    }

    const double c0 = UnitSystem::to_angular(correlation_spectrum(0.0, bath));
    auto pure = [&](auto&& diag_i, auto&& diag_j) {
        double acc = 0.0;
        for (int n = 0; n < 2; ++n) acc += std::pow(diag_i(n) - diag_j(n), 2);
        return 0.5 * acc * c0;
    };
    auto site_pop = [&](Exciton p) { return [&, p](int n) { return site_overlap(p, p, n); }; };
    auto ground_pop = [](int) { return 0.0; };
    auto biexciton_pop = [](int) { return 1.0; };

    auto set_pair = [&](Level i, Level j, double rate) {
        gen.dephasing_rates[{i, j}] = rate;
        gen.dephasing_rates[{j, i}] = rate;
    };

    const Exciton E = Exciton::e, P = Exciton::ep;
    set_pair(Level::e, Level::ep, 0.5 * (outflow[0] + outflow[1]) + pure(site_pop(E), site_pop(P)));
    for (auto p : kExcitons) {
        double g_pg = 0.5 * outflow[index(p)] + pure(site_pop(p), ground_pop);
        double g_fp = 0.5 * outflow[index(p)] + pure(biexciton_pop, site_pop(p));
        if (bath.optical_dephasing_ground) g_pg = UnitSystem::to_angular(*bath.optical_dephasing_ground);
        if (bath.optical_dephasing_biexciton)
            g_fp = UnitSystem::to_angular(*bath.optical_dephasing_biexciton);
        set_pair(to_level(p), Level::g, g_pg);
        set_pair(Level::f, to_level(p), g_fp);
    }
    return gen;
}

ProcessTensor propagate_process_tensor(const RedfieldGenerator& gen, double T) {
    if (!(T >= 0.0)) throw std::domain_error("propagate_process_tensor: negative waiting time");
    const Exciton E = Exciton::e, P = Exciton::ep;
    ProcessTensor chi;
    chi.waiting_time_T = T;

    // Population block: eigenvalues 0 and -(a + b) of K = [[-a, b], [a, -b]].
    const double a = gen.transfer_rate(E, P), b = gen.transfer_rate(P, E);
    const double total = a + b;
    Eigen::Matrix2d prop = Eigen::Matrix2d::Identity();
    if (total > 0.0) {
        Eigen::Matrix2d stationary;
        stationary << b, b, a, a;
        stationary /= total;
        prop = stationary + std::exp(-total * T) * (Eigen::Matrix2d::Identity() - stationary);
    }
    for (auto n : kExcitons)
        for (auto nu : kExcitons) chi(n, n, nu, nu) = prop(index(n), index(nu));

    // Secular coherence block.
    const double w = UnitSystem::to_angular(gen.coherence_freq(Level::e, Level::ep));
    const cplx coh = std::exp(cplx(-gen.dephasing(Level::e, Level::ep), -w) * T);
    chi(E, P, E, P) = coh;
    chi(P, E, P, E) = std::conj(coh);
    chi.close_ground_row();
    return chi;
}

cplx optical_coherence_propagator(Level i, Level j, double duration, const RedfieldGenerator& gen) {
    const bool optical = (i == Level::g && is_exciton(j)) || (is_exciton(i) && j == Level::g) ||
                         (i == Level::f && is_exciton(j)) || (is_exciton(i) && j == Level::f);
    if (!optical) {
        throw std::domain_error("optical_coherence_propagator: |" + std::string(name(i)) + "><" +
                                std::string(name(j)) + "| is not an optical coherence");
    }
    if (duration < 0.0) return 0.0;
    if (duration == 0.0) return 1.0;
    const double w = UnitSystem::to_angular(gen.coherence_freq(i, j));
    return std::exp(cplx(-gen.dephasing(i, j), -w) * duration);
}

}  // namespace qptfs
