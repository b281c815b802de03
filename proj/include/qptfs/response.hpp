#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qptfs/bath.hpp"
#include "qptfs/dimer.hpp"
#include "qptfs/levels.hpp"
#include "qptfs/process_tensor.hpp"
#include "qptfs/pulses.hpp"

namespace qptfs {

enum class Dipole { eg, epg, fe, fep };

Dipole dipole_between(Level a, Level b);
const Eigen::Vector3d& dipole_vector(Dipole d, const ExcitonBasis& basis);

// Lab-frame polarizations e1..e4; collinear z by default.
struct Polarizations {
    std::array<Eigen::Vector3d, 4> e{Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ(),
                                     Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ()};
};

struct ResponseOptions {
    // Evaluate the printed closed forms (chi_qqqp in the bleach bracket, G_eg
    // on the r = s ESA term, no chi on the r != s ESA term) instead of the
    // contraction of the full fourth-order density matrix.
    bool verbatim_printed = false;
};

// ---------------------------------------------------------------- preparation

struct OperatorTerm {
    Level ket;
    Level bra;
    cplx amplitude;
};

// State after the first two pulses. Amplitudes exclude the projections
// (mu_pg . e1)(mu_qg . e2), which stay symbolic in `dipoles`.
struct EffectiveInitialState {
    Exciton p = Exciton::e, q = Exciton::e;
    Carrier w1 = Carrier::plus, w2 = Carrier::plus;
    double coherence_time_tau = 0.0;
    std::array<Dipole, 2> dipoles{Dipole::eg, Dipole::eg};
    cplx pulse_factor = 1.0;  // C^p_w1 C^q_w2
    std::vector<OperatorTerm> terms;
};

EffectiveInitialState prepare_initial_state(Exciton p, Exciton q, Carrier w1, Carrier w2, double tau,
                                            const ExcitonBasis& basis, const RedfieldGenerator& gen,
                                            const PulseToolbox& toolbox);

// ------------------------------------------------------------------ detection

enum class PathwayFamily { GSB, SE, ESA };
enum class Side { ket, bra };

// One double-sided diagram of the final-state detection: the waiting-time
// density-matrix element |t_ket><t_bra| is hit by pulse 3 (label r), creating
// the optical coherence |coh_ket><coh_bra|, which pulse 4 (label s) turns into
// the population `final_population`.
struct DetectionDiagram {
    Exciton r, s;
    Level t_ket, t_bra;
    Level coh_ket, coh_bra;
    Side pulse3, pulse4;
    Dipole d3, d4;
    Level final_population;
    PathwayFamily family;

    // (-1)^(bra interactions) times the fluorescence yield of the final population.
    double weight(double Gamma) const;
};

// Every diagram with a nonzero fluorescence contribution; there are fourteen.
const std::vector<DetectionDiagram>& detection_diagrams();

enum class CoherenceKind { ground, biexciton };

// Third-order optical coherence |p><g| (ground) or |f><p| (biexciton) and its
// amplitude, already including the fourth-pulse dipole factor.
struct ThirdOrderTerm {
    CoherenceKind kind;
    cplx amplitude;
};

// Contraction with A = |e><e| + |e'><e'| + Gamma |f><f| after the fourth
// pulse: -1 for ground coherences, (1 - Gamma) for biexciton coherences.
cplx detect_observable(std::span<const ThirdOrderTerm> terms, double Gamma);

// ------------------------------------------------------------------ pathways

struct PathwayTerm {
    cplx weight;
    std::array<Dipole, 4> dipoles;
    PathwayFamily family;
};
using PathwayExpansion = std::vector<PathwayTerm>;

// Symbolic P^{pqrs}(tau, T, t): a sum of weights times the four projections
// (d1.e1)(d2.e2)(d3.e3)(d4.e4). T enters only through chi.
PathwayExpansion pathway_expansion(Exciton p, Exciton q, Exciton r, Exciton s, double tau, double t,
                                   double Gamma, const RedfieldGenerator& gen, const ProcessTensor& chi,
                                   const ResponseOptions& options = {});

cplx evaluate_fixed(const PathwayExpansion& terms, const ExcitonBasis& basis, const Polarizations& pol);
cplx evaluate_isotropic(const PathwayExpansion& terms, const ExcitonBasis& basis, const Polarizations& pol);

struct Orientation {
    Polarizations pol{};
    bool isotropic = true;
};

cplx pathway_amplitude(Exciton p, Exciton q, Exciton r, Exciton s, double tau, double t, double Gamma,
                       const ExcitonBasis& basis, const RedfieldGenerator& gen, const ProcessTensor& chi,
                       const Orientation& orientation = {}, const ResponseOptions& options = {});

using Vector16c = Eigen::Matrix<cplx, 16, 1>;

// The sixteen P^{pqrs} at fixed (tau, T, t), indexed by pack4(p, q, r, s).
struct PathwaySignalSet {
    Vector16c values = Vector16c::Zero();
    double gamma = 0.0;
    bool averaged = true;
    double tau = 0.0, T = 0.0, t = 0.0;

    cplx operator()(Exciton p, Exciton q, Exciton r, Exciton s) const {
        return values(static_cast<Eigen::Index>(pack4(p, q, r, s)));
    }
};

PathwaySignalSet synthesize_pathways(double tau, double t, double Gamma, const ExcitonBasis& basis,
                                     const RedfieldGenerator& gen, const ProcessTensor& chi,
                                     const Orientation& orientation = {}, const ResponseOptions& options = {});

// ------------------------------------------------------------------- signals

// S_FS rows indexed by pack4(w1, w2, w3, w4), one row block per waiting time.
struct SignalTable {
    double gamma = 0.0;
    double tau = 0.0, t = 0.0;
    std::vector<double> waiting_times;
    std::vector<Vector16c> values;

    std::size_t size() const { return waiting_times.size(); }
};

// S = C P for one waiting time.
Vector16c assemble_signal(const CMatrix& c, const PathwaySignalSet& pathways);

// Signals over the waiting times of `chis` (one tensor per T).
SignalTable assemble_signal(const PulseToolbox& toolbox, double Gamma, double tau, double t,
                            const ExcitonBasis& basis, const RedfieldGenerator& gen,
                            std::span<const ProcessTensor> chis, const Orientation& orientation = {},
                            const ResponseOptions& options = {});

// Forward simulation of one dimer for several quantum yields.
struct SynthesisOptions {
    double tau = 0.0;
    double t = 0.0;
    Orientation orientation{};
    ResponseOptions response{};
    // When set, dipole geometry and pulse coefficients come from this basis
    // instead of the dimer's own (transition frequencies in the propagators
    // and the bath dynamics always use the dimer's own basis).
    std::optional<ExcitonBasis> structural_basis;
};

struct SynthesisResult {
    std::vector<ProcessTensor> chi;                         // per T
    std::vector<SignalTable> signals;                       // per Gamma
    std::vector<std::vector<PathwaySignalSet>> pathways;    // per Gamma, per T
};

SynthesisResult synthesize_dimer(const DimerParams& dimer, const BathParams& bath, const PulseToolbox& toolbox,
                                 std::span<const double> gammas, std::span<const double> waiting_times,
                                 const SynthesisOptions& options = {});

}  // namespace qptfs
