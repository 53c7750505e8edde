#ifndef FOCIR_RUN_CONFIG_HPP
#define FOCIR_RUN_CONFIG_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "focir/network.hpp"
#include "focir/synth.hpp"
#include "focir/training.hpp"

namespace focir {

struct DataConfig {
    std::size_t num_zones = 0;           // 0 = infer from files
    std::size_t slot_minutes = 10;
    std::size_t num_days = 0;            // 0 = infer
    std::size_t weather_categories = 0;  // 0 = infer
    std::size_t first_day_of_week = 0;   // 0 = Monday
    double train_frac = 0.70;
    double val_frac = 0.15;

    void validate() const {
        if (slot_minutes == 0 || 1440 % slot_minutes != 0)
            throw config_error("data: slot_minutes must divide 1440");
        if (first_day_of_week > 6) throw config_error("data: first_day_of_week must be 0..6");
        if (train_frac <= 0.0 || val_frac <= 0.0 || train_frac + val_frac >= 1.0)
            throw config_error("data: fractions must be positive with train+val < 1");
    }
};

// One config file drives every command. Sections mirror the runtime structs
// by key name; unknown keys are rejected; absent keys keep the defaults.
struct RunConfig {
    DataConfig data;
    ModelConfig model;
    TrainConfig train;
    SynthConfig synth;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::size_t parse_size(const std::string& v, const std::string& key) {
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw config_error("config: bad integer '" + v + "' for " + key);
    return out;
}

inline double parse_real(const std::string& v, const std::string& key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw config_error("config: bad number '" + v + "' for " + key);
    return out;
}

inline std::vector<std::size_t> parse_size_list(const std::string& v, const std::string& key) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        std::size_t comma = v.find(',', start);
        std::string token =
            trim(comma == std::string::npos ? v.substr(start) : v.substr(start, comma - start));
        if (!token.empty()) out.push_back(parse_size(token, key));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw config_error("config: empty list for " + key);
    return out;
}

}  // namespace detail

// Applies one key to the config; `section.key` form, e.g. "train.seed".
inline void apply_config_key(RunConfig& config, const std::string& section,
                             const std::string& key, const std::string& value) {
    using detail::parse_real;
    using detail::parse_size;
    const std::string full = section + "." + key;
    if (section == "data") {
        DataConfig& d = config.data;
        if (key == "num_zones") d.num_zones = parse_size(value, full);
        else if (key == "slot_minutes") d.slot_minutes = parse_size(value, full);
        else if (key == "num_days") d.num_days = parse_size(value, full);
        else if (key == "weather_categories") d.weather_categories = parse_size(value, full);
        else if (key == "first_day_of_week") d.first_day_of_week = parse_size(value, full);
        else if (key == "train_frac") d.train_frac = parse_real(value, full);
        else if (key == "val_frac") d.val_frac = parse_real(value, full);
        else throw config_error("config: unknown key '" + full + "'");
    } else if (section == "model") {
        ModelConfig& m = config.model;
        if (key == "variant") m.variant = variant_from_string(value);
        else if (key == "lookback") m.lookback = parse_size(value, full);
        else if (key == "conv_filters") m.conv_filters = detail::parse_size_list(value, full);
        else if (key == "filter_length") m.filter_length = parse_size(value, full);
        else if (key == "indrnn_hidden") m.indrnn_hidden = parse_size(value, full);
        else if (key == "indrnn_layers") m.indrnn_layers = parse_size(value, full);
        else if (key == "dense_layers") m.dense_layers = parse_size(value, full);
        else if (key == "dense_units") m.dense_units = parse_size(value, full);
        else if (key == "fi_activation") m.fi_activation = activation_from_string(value);
        else if (key == "conv_activation") m.conv_activation = activation_from_string(value);
        else if (key == "indrnn_activation") m.indrnn_activation = activation_from_string(value);
        else if (key == "dense_hidden_activation")
            m.dense_hidden_activation = activation_from_string(value);
        else if (key == "output_activation") m.output_activation = activation_from_string(value);
        else if (key == "target") m.target = target_from_string(value);
        else if (key == "seed") m.seed = parse_size(value, full);
        else throw config_error("config: unknown key '" + full + "'");
    } else if (section == "train") {
        TrainConfig& t = config.train;
        if (key == "learning_rate") t.learning_rate = parse_real(value, full);
        else if (key == "batch_size") t.batch_size = parse_size(value, full);
        else if (key == "l2_alpha") t.l2_alpha = parse_real(value, full);
        else if (key == "l1_beta") t.l1_beta = parse_real(value, full);
        else if (key == "patience") t.patience = parse_size(value, full);
        else if (key == "max_epochs") t.max_epochs = parse_size(value, full);
        else if (key == "seed") t.seed = parse_size(value, full);
        else if (key == "adam_beta1") t.adam_beta1 = parse_real(value, full);
        else if (key == "adam_beta2") t.adam_beta2 = parse_real(value, full);
        else if (key == "adam_eps") t.adam_eps = parse_real(value, full);
        else throw config_error("config: unknown key '" + full + "'");
    } else if (section == "synth") {
        SynthConfig& s = config.synth;
        if (key == "n_zones") s.n_zones = parse_size(value, full);
        else if (key == "n_days") s.n_days = parse_size(value, full);
        else if (key == "slot_minutes") s.slot_minutes = parse_size(value, full);
        else if (key == "hidden_grid_dims") {
            std::size_t x = value.find('x');
            if (x == std::string::npos)
                throw config_error("config: hidden_grid_dims expects ROWSxCOLS, got '" + value +
                                   "'");
            s.hidden_grid_rows = parse_size(detail::trim(value.substr(0, x)), full);
            s.hidden_grid_cols = parse_size(detail::trim(value.substr(x + 1)), full);
        } else if (key == "base_demand_scale") s.base_demand_scale = parse_real(value, full);
        else if (key == "spatial_diffusion_coeff")
            s.spatial_diffusion_coeff = parse_real(value, full);
        else if (key == "temporal_ar_coeff") s.temporal_ar_coeff = parse_real(value, full);
        else if (key == "supply_ratio_mean") s.supply_ratio_mean = parse_real(value, full);
        else if (key == "noise_std") s.noise_std = parse_real(value, full);
        else if (key == "n_weather_categories") s.n_weather_categories = parse_size(value, full);
        else if (key == "congestion_coupling") s.congestion_coupling = parse_real(value, full);
        else if (key == "seed") s.seed = parse_size(value, full);
        else if (key == "first_day_of_week") s.first_day_of_week = parse_size(value, full);
        else throw config_error("config: unknown key '" + full + "'");
    } else {
        throw config_error("config: unknown section '" + section + "'");
    }
}

// `section.key=value` override, the form the CLI forwards from --set flags.
inline void apply_config_override(RunConfig& config, const std::string& assignment) {
    std::size_t eq = assignment.find('=');
    std::size_t dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw config_error("override must look like section.key=value, got '" + assignment + "'");
    std::string section = detail::trim(assignment.substr(0, dot));
    std::string key = detail::trim(assignment.substr(dot + 1, eq - dot - 1));
    std::string value = detail::trim(assignment.substr(eq + 1));
    apply_config_key(config, section, key, value);
}

inline RunConfig parse_run_config_text(const std::string& text, const std::string& origin) {
    RunConfig config;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw config_error(origin + ":" + std::to_string(line_no) + ": bad section header");
            section = t.substr(1, t.size() - 2);
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(line_no) + ": expected key = value");
        if (section.empty())
            throw config_error(origin + ":" + std::to_string(line_no) + ": key outside any section");
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        try {
            apply_config_key(config, section, key, value);
        } catch (const config_error& e) {
            throw config_error(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config_text(ss.str(), path.string());
}

}  // namespace focir

#endif
