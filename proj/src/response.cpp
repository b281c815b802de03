#include "qptfs/response.hpp"

#include <stdexcept>
#include <string>

#include "qptfs/isotropic.hpp"

namespace qptfs {

namespace {

Level partner(Exciton x) { return to_level(other(x)); }

// rho -> V rho - rho V with V restricted to the transitions resonant with the
// pulse label; this is just bookkeeping of which element a diagram visits.
DetectionDiagram make_diagram(Exciton r, Exciton s, Level t_ket, Level t_bra, Level coh_ket, Level coh_bra,
                              Side p3, Side p4, Level final_pop, PathwayFamily family) {
    DetectionDiagram d{};
    d.r = r;
    d.s = s;
    d.t_ket = t_ket;
    d.t_bra = t_bra;
    d.coh_ket = coh_ket;
    d.coh_bra = coh_bra;
    d.pulse3 = p3;
    d.pulse4 = p4;
    d.d3 = p3 == Side::ket ? dipole_between(coh_ket, t_ket) : dipole_between(coh_bra, t_bra);
    d.d4 = p4 == Side::ket ? dipole_between(coh_ket, final_pop) : dipole_between(coh_bra, final_pop);
    d.final_population = final_pop;
    d.family = family;
    return d;
}

std::vector<DetectionDiagram> enumerate_diagrams() {
    std::vector<DetectionDiagram> out;
    const Level g = Level::g, f = Level::f;
    for (auto r : kExcitons) {
        const Level lr = to_level(r);
        out.push_back(make_diagram(r, r, g, g, lr, g, Side::ket, Side::bra, lr, PathwayFamily::GSB));
    }
    // Stimulated emission from |a><r|: pulse 3 de-excites the bra, pulse 4 the
    // ket after the bra re-excitation, ending in |a><a| with s = a.
    for (auto a : kExcitons) {
        for (auto r : kExcitons) {
            const Level la = to_level(a);
            out.push_back(make_diagram(r, a, la, to_level(r), la, g, Side::bra, Side::bra, la, PathwayFamily::SE));
        }
    }
    // Excited-state absorption from |r'><b| (r' the partner of r) with s the
    // partner of b; the |f><b| coherence ends in |b><b| or |f><f|.
    for (auto r : kExcitons) {
        for (auto b : kExcitons) {
            const Exciton s = other(b);
            const Level lb = to_level(b);
            out.push_back(make_diagram(r, s, partner(r), lb, f, lb, Side::ket, Side::ket, lb, PathwayFamily::ESA));
            out.push_back(make_diagram(r, s, partner(r), lb, f, lb, Side::ket, Side::bra, f, PathwayFamily::ESA));
        }
    }
    return out;
}

// Waiting-time element reached from |q><p| (with the ground hole).
cplx waiting_element(Level i, Level j, Exciton p, Exciton q, const ProcessTensor& chi) {
    if (i == Level::g && j == Level::g) return chi.ground(q, p) - (p == q ? 1.0 : 0.0);
    return chi.element(i, j, to_level(q), to_level(p));
}

}  // namespace

Dipole dipole_between(Level a, Level b) {
    if (a > b) std::swap(a, b);
    if (a == Level::g && b == Level::e) return Dipole::eg;
    if (a == Level::g && b == Level::ep) return Dipole::epg;
    if (a == Level::e && b == Level::f) return Dipole::fe;
    if (a == Level::ep && b == Level::f) return Dipole::fep;
    throw std::domain_error("no transition dipole between " + std::string(name(a)) + " and " +
                            std::string(name(b)));
}

const Eigen::Vector3d& dipole_vector(Dipole d, const ExcitonBasis& basis) {
    switch (d) {
        case Dipole::eg: return basis.mu_eg;
        case Dipole::epg: return basis.mu_epg;
        case Dipole::fe: return basis.mu_fe;
        case Dipole::fep: return basis.mu_fep;
    }
    throw std::domain_error("unknown dipole");
}

EffectiveInitialState prepare_initial_state(Exciton p, Exciton q, Carrier w1, Carrier w2, double tau,
                                            const ExcitonBasis& basis, const RedfieldGenerator& gen,
                                            const PulseToolbox& toolbox) {
    EffectiveInitialState st;
    st.p = p;
    st.q = q;
    st.w1 = w1;
    st.w2 = w2;
    st.coherence_time_tau = tau;
    st.dipoles = {dipole_between(Level::g, to_level(p)), dipole_between(Level::g, to_level(q))};
    st.pulse_factor = pulse_coefficient(p, w1, basis, toolbox) * pulse_coefficient(q, w2, basis, toolbox);
    const cplx amp = -optical_coherence_propagator(Level::g, to_level(p), tau, gen);
    st.terms.push_back({to_level(q), to_level(p), amp});
    if (p == q) st.terms.push_back({Level::g, Level::g, -amp});
    return st;
}

double DetectionDiagram::weight(double Gamma) const {
    const double sign = ((pulse3 == Side::bra) != (pulse4 == Side::bra)) ? -1.0 : 1.0;
    return sign * (final_population == Level::f ? Gamma : 1.0);
}

const std::vector<DetectionDiagram>& detection_diagrams() {
    static const std::vector<DetectionDiagram> diagrams = enumerate_diagrams();
    return diagrams;
}

cplx detect_observable(std::span<const ThirdOrderTerm> terms, double Gamma) {
    cplx out = 0.0;
    for (const auto& term : terms) out += term.amplitude * (term.kind == CoherenceKind::ground ? -1.0 : 1.0 - Gamma);
    return out;
}

PathwayExpansion pathway_expansion(Exciton p, Exciton q, Exciton r, Exciton s, double tau, double t,
                                   double Gamma, const RedfieldGenerator& gen, const ProcessTensor& chi,
                                   const ResponseOptions& options) {
    PathwayExpansion out;
    if (tau < 0.0 || t < 0.0) return out;
    const Dipole d1 = dipole_between(Level::g, to_level(p));
    const Dipole d2 = dipole_between(Level::g, to_level(q));
    const cplx pre = -optical_coherence_propagator(Level::g, to_level(p), tau, gen);
    for (const auto& d : detection_diagrams()) {
        if (d.r != r || d.s != s) continue;
        cplx element = waiting_element(d.t_ket, d.t_bra, p, q, chi);
        Level coh_ket = d.coh_ket, coh_bra = d.coh_bra;
        if (options.verbatim_printed) {
            if (d.family == PathwayFamily::GSB) {
                element = chi(q, q, q, p) - (p == q ? 1.0 : 0.0);
            } else if (d.family == PathwayFamily::ESA && r == s) {
                coh_ket = to_level(r);
                coh_bra = Level::g;
            } else if (d.family == PathwayFamily::ESA) {
                element = 1.0;
            }
        }
        const cplx g = optical_coherence_propagator(coh_ket, coh_bra, t, gen);
        out.push_back({pre * d.weight(Gamma) * g * element, {d1, d2, d.d3, d.d4}, d.family});
    }
    return out;
}

cplx evaluate_fixed(const PathwayExpansion& terms, const ExcitonBasis& basis, const Polarizations& pol) {
    cplx out = 0.0;
    for (const auto& term : terms) {
        double proj = 1.0;
        for (std::size_t k = 0; k < 4; ++k) proj *= dipole_vector(term.dipoles[k], basis).dot(pol.e[k]);
        out += term.weight * proj;
    }
    return out;
}

cplx evaluate_isotropic(const PathwayExpansion& terms, const ExcitonBasis& basis, const Polarizations& pol) {
    cplx out = 0.0;
    for (const auto& term : terms) {
        const auto& v = term.dipoles;
        out += term.weight * iso_average_four(dipole_vector(v[0], basis), dipole_vector(v[1], basis),
                                              dipole_vector(v[2], basis), dipole_vector(v[3], basis), pol.e[0],
                                              pol.e[1], pol.e[2], pol.e[3]);
    }
    return out;
}

cplx pathway_amplitude(Exciton p, Exciton q, Exciton r, Exciton s, double tau, double t, double Gamma,
                       const ExcitonBasis& basis, const RedfieldGenerator& gen, const ProcessTensor& chi,
                       const Orientation& orientation, const ResponseOptions& options) {
    const auto terms = pathway_expansion(p, q, r, s, tau, t, Gamma, gen, chi, options);
    return orientation.isotropic ? evaluate_isotropic(terms, basis, orientation.pol)
                                 : evaluate_fixed(terms, basis, orientation.pol);
}

PathwaySignalSet synthesize_pathways(double tau, double t, double Gamma, const ExcitonBasis& basis,
                                     const RedfieldGenerator& gen, const ProcessTensor& chi,
                                     const Orientation& orientation, const ResponseOptions& options) {
    PathwaySignalSet set;
    set.gamma = Gamma;
    set.averaged = orientation.isotropic;
    set.tau = tau;
    set.T = chi.waiting_time_T;
    set.t = t;
    for (std::size_t k = 0; k < 16; ++k) {
        const auto l = unpack4<Exciton>(k);
        set.values(static_cast<Eigen::Index>(k)) =
            pathway_amplitude(l[0], l[1], l[2], l[3], tau, t, Gamma, basis, gen, chi, orientation, options);
    }
    return set;
}

Vector16c assemble_signal(const CMatrix& c, const PathwaySignalSet& pathways) { return c.entries * pathways.values; }

SignalTable assemble_signal(const PulseToolbox& toolbox, double Gamma, double tau, double t,
                            const ExcitonBasis& basis, const RedfieldGenerator& gen,
                            std::span<const ProcessTensor> chis, const Orientation& orientation,
                            const ResponseOptions& options) {
    const CMatrix c = build_c_matrix(basis, toolbox);
    SignalTable table;
    table.gamma = Gamma;
    table.tau = tau;
    table.t = t;
    for (const auto& chi : chis) {
        table.waiting_times.push_back(chi.waiting_time_T);
        table.values.push_back(
            assemble_signal(c, synthesize_pathways(tau, t, Gamma, basis, gen, chi, orientation, options)));
    }
    return table;
}

SynthesisResult synthesize_dimer(const DimerParams& dimer, const BathParams& bath, const PulseToolbox& toolbox,
                                 std::span<const double> gammas, std::span<const double> waiting_times,
                                 const SynthesisOptions& options) {
    const ExcitonBasis basis = build_exciton_basis(dimer);
    const RedfieldGenerator gen = build_redfield_generator(basis, bath);
    const ExcitonBasis& structural = options.structural_basis ? *options.structural_basis : basis;
    const CMatrix c = build_c_matrix(structural, toolbox);

    SynthesisResult out;
    out.chi.reserve(waiting_times.size());
    for (double T : waiting_times) out.chi.push_back(propagate_process_tensor(gen, T));

    for (double Gamma : gammas) {
        SignalTable table;
        table.gamma = Gamma;
        table.tau = options.tau;
        table.t = options.t;
        std::vector<PathwaySignalSet> sets;
        for (const auto& chi : out.chi) {
            auto set = synthesize_pathways(options.tau, options.t, Gamma, structural, gen, chi,
                                           options.orientation, options.response);
            table.waiting_times.push_back(chi.waiting_time_T);
            table.values.push_back(assemble_signal(c, set));
            sets.push_back(set);
        }
        out.signals.push_back(std::move(table));
        out.pathways.push_back(std::move(sets));
    }
    return out;
}

}  // namespace qptfs
