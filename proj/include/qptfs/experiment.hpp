#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "qptfs/config.hpp"
#include "qptfs/m_blocks.hpp"
#include "qptfs/reconstruction.hpp"
#include "qptfs/response.hpp"

namespace qptfs {

inline constexpr const char* kVersion = "1.0.0";

// File names inside a run directory.
struct RunLayout {
    std::filesystem::path dir;

    static std::string gamma_tag(double gamma);
    std::filesystem::path manifest() const { return dir / "manifest.json"; }
    std::filesystem::path ground_truth() const { return dir / "chi_reference.csv"; }
    std::filesystem::path signals(double gamma) const { return dir / ("signals_" + gamma_tag(gamma) + ".csv"); }
    std::filesystem::path pathways(double gamma) const { return dir / ("pathways_" + gamma_tag(gamma) + ".csv"); }
    std::filesystem::path chi(double gamma) const { return dir / ("chi_" + gamma_tag(gamma) + ".csv"); }
    std::filesystem::path report(double gamma) const { return dir / ("report_" + gamma_tag(gamma) + ".txt"); }
    std::filesystem::path summary() const { return dir / "summary.txt"; }
};

struct SimulationOutput {
    std::vector<SignalTable> signals;                      // per Gamma
    std::vector<std::vector<PathwaySignalSet>> pathways;   // per Gamma, per T
    std::vector<ProcessTensor> reference_chi;              // true (ensemble-mean) chi per T
};

// Homogeneous or ensemble forward simulation with optional noise.
SimulationOutput simulate(const ExperimentConfig& config, unsigned threads = 0);

// Config plus provenance block; re-ingesting it reproduces the run.
nlohmann::json run_manifest(const ExperimentConfig& config);

void write_simulation(const ExperimentConfig& config, const SimulationOutput& output);

// Reconstructs every Gamma with the nominal dimer's C and M blocks.
std::vector<ReconstructionReport> reconstruct_run(const ExperimentConfig& config,
                                                  const std::vector<SignalTable>& signals,
                                                  const std::vector<ProcessTensor>* reference = nullptr);

std::string format_reconstruction_report(const ReconstructionReport& report);

struct ValidationSummary {
    std::vector<double> waiting_times;
    std::vector<TensorDefects> defects;
    bool pass = true;
    std::string text;
};

ValidationSummary validate_tensors(const std::vector<ProcessTensor>& chis, double tolerance);

// Model, conditioning and (when reconstructions exist in the run directory)
// Gamma-consistency summary.
std::string run_summary(const ExperimentConfig& config, const std::filesystem::path& dir);

}  // namespace qptfs
