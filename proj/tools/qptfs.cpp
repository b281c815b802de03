#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qptfs/config.hpp"
#include "qptfs/csv_io.hpp"
#include "qptfs/experiment.hpp"

namespace {

using namespace qptfs;
using nlohmann::json;

enum Exit { kOk = 0, kValidationFailed = 1, kConfigError = 2, kIoError = 3 };

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<double> gamma;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> members;
    std::optional<double> sigma_inh;
    std::optional<double> noise;
    std::optional<std::string> output_dir;
    bool homogeneous = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("-c,--config", o.config_path, "JSON config file (defaults apply to missing keys)");
    cmd->add_option("--set", o.sets, "Override a config value, e.g. --set dimer.coupling_J=100")->take_all();
    cmd->add_option("--gamma", o.gamma, "Run a single quantum yield");
    cmd->add_option("--seed", o.seed, "Ensemble seed");
    cmd->add_option("--members", o.members, "Number of ensemble members");
    cmd->add_option("--sigma-inh", o.sigma_inh, "Site-energy disorder width (cm^-1)");
    cmd->add_option("--noise", o.noise, "Relative multiplicative noise width");
    cmd->add_option("-o,--output-dir", o.output_dir, "Run directory");
    cmd->add_flag("--homogeneous", o.homogeneous, "Skip the disorder ensemble");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

ExperimentConfig resolve_config(const CommonOptions& o, const std::string& fallback_manifest_dir = {}) {
    json doc = json::object();
    if (!o.config_path.empty()) {
        doc = read_json_file(o.config_path);
    } else if (!fallback_manifest_dir.empty()) {
        doc = read_json_file((std::filesystem::path(fallback_manifest_dir) / "manifest.json").string());
    }
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects path=value, got \"" + s + "\"");
        apply_override(doc, s.substr(0, eq), s.substr(eq + 1));
    }
    if (o.gamma) doc["gamma_list"] = std::vector<double>{*o.gamma};
    if (o.seed) doc["ensemble"]["seed"] = *o.seed;
    if (o.members) doc["ensemble"]["n_members"] = *o.members;
    if (o.sigma_inh) doc["ensemble"]["sigma_inh"] = *o.sigma_inh;
    if (o.noise) doc["noise"]["relative"] = *o.noise;
    if (o.homogeneous) doc["modes"]["homogeneous_only"] = true;
    if (o.output_dir) doc["output_dir"] = *o.output_dir;
    return config_from_json(doc);
}

int cmd_simulate(const CommonOptions& o) {
    const ExperimentConfig config = resolve_config(o);
    const auto output = simulate(config);
    write_simulation(config, output);
    std::cout << "wrote " << config.gamma_list.size() << " signal set(s) over " << config.T_grid.size()
              << " waiting times to " << config.output_dir << "\n";
    return kOk;
}

int cmd_reconstruct(const CommonOptions& o, const std::string& input_dir) {
    // Without --config the run's manifest provides the configuration.
    CommonOptions local = o;
    if (!local.output_dir && !input_dir.empty()) local.output_dir = input_dir;
    const std::string manifest_dir = o.config_path.empty() ? (input_dir.empty() ? "." : input_dir) : "";
    const ExperimentConfig config = resolve_config(local, manifest_dir);
    const RunLayout in{input_dir.empty() ? config.output_dir : input_dir};
    const RunLayout out{config.output_dir};

    std::vector<SignalTable> signals;
    for (double g : config.gamma_list) {
        const auto path = in.signals(g);
        if (!std::filesystem::exists(path)) throw IoError("missing signal file " + path.string());
        SignalTable table = read_signal_csv(path);
        table.gamma = g;
        table.tau = config.tau;
        table.t = config.t;
        if (table.size() != config.T_grid.size()) {
            throw IoError(path.string() + ": " + std::to_string(table.size()) + " waiting times, config has " +
                          std::to_string(config.T_grid.size()));
        }
        signals.push_back(std::move(table));
    }
    std::optional<std::vector<ProcessTensor>> reference;
    if (std::filesystem::exists(in.ground_truth())) {
        reference = read_chi_csv(in.ground_truth());
        if (reference->size() != config.T_grid.size())
            throw IoError(in.ground_truth().string() + ": wrong number of waiting times");
    }
    const auto reports = reconstruct_run(config, signals, reference ? &*reference : nullptr);
    for (const auto& r : reports) {
        write_chi_csv(out.chi(r.gamma), r.chi);
        const std::string text = format_reconstruction_report(r);
        write_text(out.report(r.gamma), text);
        std::cout << text;
    }
    return kOk;
}

int cmd_validate(const std::string& tensor_path, double tolerance) {
    const auto chis = read_chi_csv(tensor_path);
    const auto summary = validate_tensors(chis, tolerance);
    std::cout << summary.text;
    return summary.pass ? kOk : kValidationFailed;
}

int cmd_report(const CommonOptions& o, const std::string& input_dir) {
    const ExperimentConfig config = resolve_config(o, o.config_path.empty() ? input_dir : "");
    const std::string text = run_summary(config, input_dir);
    write_text(RunLayout{input_dir}.summary(), text);
    std::cout << text;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fluorescence-detected quantum process tomography of excitonic dimers"};
    app.require_subcommand(1);

    CommonOptions sim_opts, rec_opts, rep_opts;
    std::string rec_input, rep_input = ".";
    std::string tensor_path;
    double tolerance = 1e-8;

    auto* sim = app.add_subcommand("simulate", "Synthesize fluorescence signals and pathway amplitudes");
    add_common(sim, sim_opts);

    auto* rec = app.add_subcommand("reconstruct", "Recover the process tensor from signal files");
    add_common(rec, rec_opts);
    rec->add_option("-i,--input-dir", rec_input, "Directory holding signals and manifest.json");

    auto* val = app.add_subcommand("validate", "Check Hermiticity, trace closure and complete positivity");
    val->add_option("tensor", tensor_path, "Tensor CSV")->required();
    val->add_option("--tolerance", tolerance, "Defect tolerance");

    auto* rep = app.add_subcommand("report", "Summarize the model, conditioning and a run directory");
    add_common(rep, rep_opts);
    rep->add_option("-i,--input-dir", rep_input, "Run directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*sim) return cmd_simulate(sim_opts);
        if (*rec) return cmd_reconstruct(rec_opts, rec_input);
        if (*val) return cmd_validate(tensor_path, tolerance);
        if (*rep) return cmd_report(rep_opts, rep_input);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ModelError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const SingularToolbox& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const SingularGeometry& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}
