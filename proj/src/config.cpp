#include "qptfs/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qptfs {

using nlohmann::json;

namespace {

class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(where("") + ": expected an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        known_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end()) return;
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!it->is_number()) throw ConfigError(where(key) + ": expected a number");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!it->is_boolean()) throw ConfigError(where(key) + ": expected true or false");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!it->is_string()) throw ConfigError(where(key) + ": expected a string");
            } else if constexpr (std::is_integral_v<T>) {
                if (!it->is_number_integer() && !it->is_number_unsigned())
                    throw ConfigError(where(key) + ": expected an integer");
                if (it->is_number_integer() && it->template get<long long>() < 0)
                    throw ConfigError(where(key) + ": must be nonnegative");
            }
            out = it->template get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(where(key) + ": " + e.what());
        }
    }

    void get_optional(const char* key, std::optional<double>& out) {
        known_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) return;
        if (!it->is_number()) throw ConfigError(where(key) + ": expected a number or null");
        out = it->get<double>();
    }

    const json* child(const char* key) {
        known_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void allow(const char* key) { known_.insert(key); }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!known_.count(it.key())) throw ConfigError(where(it.key()) + ": unknown key");
        }
    }

    std::string where(const std::string& key) const {
        if (path_.empty()) return key;
        return key.empty() ? path_ : path_ + "." + key;
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> known_;
};

std::vector<double> parse_number_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path + ": expected a list of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(path + ": expected a list of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<double> parse_grid(const json& j) {
    if (j.is_array()) return parse_number_list(j, "T_grid");
    Section s(j, "T_grid");
    double start = 0.0, stop = 0.0, step = 0.0;
    for (const char* key : {"start", "stop", "step"}) {
        if (!j.contains(key)) throw ConfigError(std::string("T_grid.") + key + ": missing");
    }
    s.get("start", start);
    s.get("stop", stop);
    s.get("step", step);
    s.finish();
    if (!(step > 0.0)) throw ConfigError("T_grid.step: must be > 0");
    if (stop < start) throw ConfigError("T_grid.stop: must be >= start");
    return expand_grid(start, stop, step);
}

}  // namespace

std::vector<double> expand_grid(double start, double stop, double step) {
    std::vector<double> out;
    const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long k = 0; k <= n; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
}

ExperimentConfig::ExperimentConfig() : T_grid(expand_grid(120.0, 700.0, 20.0)) {}

void ExperimentConfig::validate() const {
    try {
        dimer.validate();
        bath.validate();
        toolbox.validate();
        ensemble.validate();
    } catch (const ModelError& e) {
        throw ConfigError(e.what());
    }
    if (T_grid.empty()) throw ConfigError("T_grid: must not be empty");
    const double min_T = 3.0 * toolbox.pulse_width_sigma;
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        if (!std::isfinite(T_grid[i])) throw ConfigError("T_grid: values must be finite");
        if (T_grid[i] < min_T) {
            std::ostringstream msg;
            msg << "T_grid: " << T_grid[i] << " fs is below 3 sigma = " << min_T << " fs";
            throw ConfigError(msg.str());
        }
        if (i > 0 && !(T_grid[i] > T_grid[i - 1])) throw ConfigError("T_grid: must be strictly increasing");
    }
    if (gamma_list.empty()) throw ConfigError("gamma_list: must not be empty");
    for (double g : gamma_list) {
        if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("gamma_list: values must be finite and >= 0");
    }
    if (!(tau >= 0.0)) throw ConfigError("coherence_times.tau: must be >= 0");
    if (!(t >= 0.0)) throw ConfigError("coherence_times.t: must be >= 0");
    if (!(noise.relative >= 0.0)) throw ConfigError("noise.relative: must be >= 0");
    if (!(noise.intensity >= 0.0)) throw ConfigError("noise.intensity: must be >= 0");
    if (!(tikhonov >= 0.0)) throw ConfigError("reconstruction.tikhonov: must be >= 0");
    if (!(validation_tolerance > 0.0)) throw ConfigError("reconstruction.validation_tolerance: must be > 0");
    if (output_dir.empty()) throw ConfigError("output_dir: must not be empty");
}

ExperimentConfig config_from_json(const json& doc) {
    ExperimentConfig c;
    Section top(doc, "");
    top.allow("_manifest");
    if (const json* j = top.child("dimer")) {
        Section s(*j, "dimer");
        s.get("site_energy_1", c.dimer.site_energy_1);
        s.get("site_energy_2", c.dimer.site_energy_2);
        s.get("coupling_J", c.dimer.coupling_J);
        s.get("dipole_d1", c.dimer.dipole_d1);
        s.get("dipole_ratio_d2_over_d1", c.dimer.dipole_ratio_d2_over_d1);
        s.get("dipole_angle_phi", c.dimer.dipole_angle_phi);
        s.get("quantum_yield_Gamma", c.dimer.quantum_yield_Gamma);
        s.finish();
    }
    if (const json* j = top.child("bath")) {
        Section s(*j, "bath");
        s.get("reorganization_energy", c.bath.reorganization_energy);
        s.get("cutoff_freq", c.bath.cutoff_freq);
        s.get("temperature", c.bath.temperature);
        s.get_optional("optical_dephasing_ground", c.bath.optical_dephasing_ground);
        s.get_optional("optical_dephasing_biexciton", c.bath.optical_dephasing_biexciton);
        s.finish();
    }
    if (const json* j = top.child("toolbox")) {
        Section s(*j, "toolbox");
        s.get("freq_plus", c.toolbox.freq_plus);
        s.get("freq_minus", c.toolbox.freq_minus);
        s.get("pulse_width_sigma", c.toolbox.pulse_width_sigma);
        s.get("field_strength_lambda", c.toolbox.field_strength_lambda);
        s.finish();
    }
    if (const json* j = top.child("ensemble")) {
        Section s(*j, "ensemble");
        s.get("n_members", c.ensemble.n_members);
        s.get("sigma_inh", c.ensemble.sigma_inh);
        s.get("seed", c.ensemble.seed);
        std::string scope = to_string(c.ensemble.scope);
        s.get("scope", scope);
        try {
            c.ensemble.scope = disorder_scope_from_string(scope);
        } catch (const ModelError& e) {
            throw ConfigError(e.what());
        }
        s.finish();
    }
    if (const json* j = top.child("T_grid")) c.T_grid = parse_grid(*j);
    if (const json* j = top.child("gamma_list")) c.gamma_list = parse_number_list(*j, "gamma_list");
    if (const json* j = top.child("coherence_times")) {
        Section s(*j, "coherence_times");
        s.get("tau", c.tau);
        s.get("t", c.t);
        s.finish();
    }
    if (const json* j = top.child("noise")) {
        Section s(*j, "noise");
        s.get("relative", c.noise.relative);
        s.get("intensity", c.noise.intensity);
        s.get("seed", c.noise_seed);
        s.finish();
    }
    if (const json* j = top.child("modes")) {
        Section s(*j, "modes");
        s.get("printed_closed_forms", c.printed_closed_forms);
        s.get("homogeneous_only", c.homogeneous_only);
        s.finish();
    }
    if (const json* j = top.child("reconstruction")) {
        Section s(*j, "reconstruction");
        s.get("tikhonov", c.tikhonov);
        s.get("validation_tolerance", c.validation_tolerance);
        s.finish();
    }
    top.get("output_dir", c.output_dir);
    top.finish();
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    auto optional = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json doc;
    doc["dimer"] = {{"site_energy_1", c.dimer.site_energy_1},
                    {"site_energy_2", c.dimer.site_energy_2},
                    {"coupling_J", c.dimer.coupling_J},
                    {"dipole_d1", c.dimer.dipole_d1},
                    {"dipole_ratio_d2_over_d1", c.dimer.dipole_ratio_d2_over_d1},
                    {"dipole_angle_phi", c.dimer.dipole_angle_phi},
                    {"quantum_yield_Gamma", c.dimer.quantum_yield_Gamma}};
    doc["bath"] = {{"reorganization_energy", c.bath.reorganization_energy},
                   {"cutoff_freq", c.bath.cutoff_freq},
                   {"temperature", c.bath.temperature},
                   {"optical_dephasing_ground", optional(c.bath.optical_dephasing_ground)},
                   {"optical_dephasing_biexciton", optional(c.bath.optical_dephasing_biexciton)}};
    doc["toolbox"] = {{"freq_plus", c.toolbox.freq_plus},
                      {"freq_minus", c.toolbox.freq_minus},
                      {"pulse_width_sigma", c.toolbox.pulse_width_sigma},
                      {"field_strength_lambda", c.toolbox.field_strength_lambda}};
    doc["ensemble"] = {{"n_members", c.ensemble.n_members},
                       {"sigma_inh", c.ensemble.sigma_inh},
                       {"seed", c.ensemble.seed},
                       {"scope", to_string(c.ensemble.scope)}};
    doc["T_grid"] = c.T_grid;
    doc["gamma_list"] = c.gamma_list;
    doc["coherence_times"] = {{"tau", c.tau}, {"t", c.t}};
    doc["noise"] = {{"relative", c.noise.relative}, {"intensity", c.noise.intensity}, {"seed", c.noise_seed}};
    doc["modes"] = {{"printed_closed_forms", c.printed_closed_forms}, {"homogeneous_only", c.homogeneous_only}};
    doc["reconstruction"] = {{"tikhonov", c.tikhonov}, {"validation_tolerance", c.validation_tolerance}};
    doc["output_dir"] = c.output_dir;
    return doc;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config_from_json(doc);
}

void apply_override(json& doc, const std::string& dotted_path, const std::string& value_text) {
    json value;
    try {
        value = json::parse(value_text);
    } catch (const json::parse_error&) {
        value = value_text;
    }
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted_path.find('.', start);
        const std::string key = dotted_path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError("invalid override path \"" + dotted_path + "\"");
        if (!node->is_object()) *node = json::object();
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

}  // namespace qptfs
