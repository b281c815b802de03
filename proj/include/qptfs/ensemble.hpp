#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qptfs/bath.hpp"
#include "qptfs/dimer.hpp"
#include "qptfs/pulses.hpp"
#include "qptfs/response.hpp"

namespace qptfs {

// How far the site-energy disorder reaches into the forward model.
//   dynamics : members differ in exciton energies, mixing angle and hence in
//              their bath dynamics; the dipole geometry and pulse
//              coefficients stay at the nominal dimer, matching the fixed
//              C and M used for inversion.
//   full     : every member also carries its own dipole geometry and C.
enum class DisorderScope { dynamics, full };

std::string to_string(DisorderScope scope);
DisorderScope disorder_scope_from_string(const std::string& s);

struct EnsembleSpec {
    std::size_t n_members = 10000;
    double sigma_inh = 40.0;  // cm^-1
    std::uint64_t seed = 20150601;
    DisorderScope scope = DisorderScope::dynamics;

    void validate() const;
};

// Member i depends only on (base, sigma_inh, seed, i).
DimerParams sample_member(const DimerParams& base, const EnsembleSpec& spec, std::size_t i);
std::vector<DimerParams> sample_members(const DimerParams& base, const EnsembleSpec& spec);

struct EnsembleConfig {
    DimerParams nominal;
    BathParams bath;
    PulseToolbox toolbox;
    std::vector<double> gammas;
    std::vector<double> waiting_times;
    SynthesisOptions synthesis;
    DisorderScope scope = DisorderScope::dynamics;
};

// Number of worker threads: QPTFS_THREADS if set and positive, otherwise the
// hardware concurrency.
unsigned default_thread_count();

// Arithmetic mean of the members' synthesis results (chi, signals, pathway
// sets). Members are summed in fixed blocks of `block_size` and the block sums
// are combined by a fixed pairwise tree, so the result does not depend on the
// thread count.
SynthesisResult average_signals(std::span<const DimerParams> members, const EnsembleConfig& config,
                                unsigned threads = 0, std::size_t block_size = 64);

}  // namespace qptfs
