#include "qptfs/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "qptfs/random.hpp"

namespace qptfs {

namespace {

constexpr std::uint64_t kDisorderStream = 0x736974652d64ULL;

using Flat = std::vector<cplx>;

std::size_t flat_size(std::size_t n_gamma, std::size_t n_T) { return n_T * (20 + n_gamma * 32); }

void accumulate(Flat& acc, const SynthesisResult& r) {
    std::size_t k = 0;
    for (const auto& chi : r.chi) {
        for (auto v : chi.elements) acc[k++] += v;
        for (auto v : chi.ground_row) acc[k++] += v;
    }
    for (std::size_t g = 0; g < r.signals.size(); ++g) {
        for (std::size_t i = 0; i < r.signals[g].size(); ++i) {
            for (int j = 0; j < 16; ++j) acc[k++] += r.signals[g].values[i](j);
            for (int j = 0; j < 16; ++j) acc[k++] += r.pathways[g][i].values(j);
        }
    }
}

void unflatten(const Flat& acc, double scale, SynthesisResult& r) {
    std::size_t k = 0;
    for (auto& chi : r.chi) {
        for (auto& v : chi.elements) v = acc[k++] * scale;
        for (auto& v : chi.ground_row) v = acc[k++] * scale;
    }
    for (std::size_t g = 0; g < r.signals.size(); ++g) {
        for (std::size_t i = 0; i < r.signals[g].size(); ++i) {
            for (int j = 0; j < 16; ++j) r.signals[g].values[i](j) = acc[k++] * scale;
            for (int j = 0; j < 16; ++j) r.pathways[g][i].values(j) = acc[k++] * scale;
        }
    }
}

SynthesisResult synthesize_member(const DimerParams& member, const EnsembleConfig& config,
                                  const std::optional<ExcitonBasis>& nominal_basis) {
    SynthesisOptions options = config.synthesis;
    if (config.scope == DisorderScope::dynamics) options.structural_basis = nominal_basis;
    return synthesize_dimer(member, config.bath, config.toolbox, config.gammas, config.waiting_times, options);
}

}  // namespace

std::string to_string(DisorderScope scope) { return scope == DisorderScope::full ? "full" : "dynamics"; }

DisorderScope disorder_scope_from_string(const std::string& s) {
    if (s == "full") return DisorderScope::full;
    if (s == "dynamics") return DisorderScope::dynamics;
    throw ModelError("ensemble.scope must be \"dynamics\" or \"full\", got \"" + s + "\"");
}

void EnsembleSpec::validate() const {
    if (n_members < 1) throw ModelError("ensemble.n_members must be >= 1");
    if (!(sigma_inh >= 0.0)) throw ModelError("ensemble.sigma_inh must be >= 0");
}

DimerParams sample_member(const DimerParams& base, const EnsembleSpec& spec, std::size_t i) {
    DimerParams m = base;
    if (spec.sigma_inh == 0.0) return m;
    const auto n = counter_normal_pair(spec.seed, kDisorderStream, i);
    m.site_energy_1 = base.site_energy_1 + spec.sigma_inh * n.first;
    m.site_energy_2 = base.site_energy_2 + spec.sigma_inh * n.second;
    return m;
}

std::vector<DimerParams> sample_members(const DimerParams& base, const EnsembleSpec& spec) {
    spec.validate();
    std::vector<DimerParams> out;
    out.reserve(spec.n_members);
    for (std::size_t i = 0; i < spec.n_members; ++i) out.push_back(sample_member(base, spec, i));
    return out;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("QPTFS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

SynthesisResult average_signals(std::span<const DimerParams> members, const EnsembleConfig& config,
                                unsigned threads, std::size_t block_size) {
    if (members.empty()) throw std::invalid_argument("average_signals: no members");
    if (block_size == 0) block_size = 1;
    if (threads == 0) threads = default_thread_count();

    std::optional<ExcitonBasis> nominal_basis;
    if (config.scope == DisorderScope::dynamics) nominal_basis = build_exciton_basis(config.nominal);

    // The first member provides the layout of the result.
    SynthesisResult layout = synthesize_member(members[0], config, nominal_basis);
    const std::size_t size = flat_size(config.gammas.size(), config.waiting_times.size());

    const std::size_t n_blocks = (members.size() + block_size - 1) / block_size;
    std::vector<Flat> blocks(n_blocks, Flat(size, cplx(0.0)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (std::size_t b = next++; b < n_blocks; b = next++) {
                const std::size_t end = std::min(members.size(), (b + 1) * block_size);
                for (std::size_t i = b * block_size; i < end; ++i) {
                    accumulate(blocks[b], i == 0 ? layout : synthesize_member(members[i], config, nominal_basis));
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_blocks;
        }
    };

    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_blocks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t stride = 1; stride < n_blocks; stride *= 2) {
        for (std::size_t b = 0; b + stride < n_blocks; b += 2 * stride) {
            for (std::size_t k = 0; k < size; ++k) blocks[b][k] += blocks[b + stride][k];
        }
    }
    unflatten(blocks[0], 1.0 / static_cast<double>(members.size()), layout);
    return layout;
}

}  // namespace qptfs
