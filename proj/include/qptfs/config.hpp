#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qptfs/bath.hpp"
#include "qptfs/dimer.hpp"
#include "qptfs/ensemble.hpp"
#include "qptfs/pulses.hpp"
#include "qptfs/reconstruction.hpp"

namespace qptfs {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    DimerParams dimer;
    BathParams bath;
    PulseToolbox toolbox;
    EnsembleSpec ensemble;
    std::vector<double> T_grid;
    std::vector<double> gamma_list{0.0, 0.5, 1.0, 1.5, 2.0};
    double tau = 0.0;  // fs
    double t = 0.0;    // fs
    NoiseModel noise;
    std::uint64_t noise_seed = 7;
    bool printed_closed_forms = false;
    bool homogeneous_only = false;
    double tikhonov = 0.0;
    double validation_tolerance = 1e-8;
    std::string output_dir = "qptfs_out";

    ExperimentConfig();

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Parses a config document. Missing keys keep their defaults; unknown keys
// are rejected. The T grid is either a list or {"start", "stop", "step"}.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

ExperimentConfig load_config(const std::filesystem::path& path);

// Sets the value at a dotted path ("dimer.coupling_J") inside a config
// document. The value text is parsed as JSON when possible, else taken as a
// string.
void apply_override(nlohmann::json& doc, const std::string& dotted_path, const std::string& value_text);

std::vector<double> expand_grid(double start, double stop, double step);

}  // namespace qptfs
