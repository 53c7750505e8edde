#ifndef FOCIR_CHECKPOINT_HPP
#define FOCIR_CHECKPOINT_HPP

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "focir/network.hpp"

namespace focir {

// Versioned structured-text model checkpoint. Doubles are written with
// shortest round-trip formatting, so save -> load reproduces every parameter
// (and therefore every prediction) bit for bit.
inline constexpr const char* kCheckpointMagic = "focirnet-checkpoint v1";

namespace detail {

inline void write_double(std::ostream& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
}

inline double read_double_token(const std::string& token, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw data_error("checkpoint: bad number '" + token + "' in " + what);
    return v;
}

inline std::vector<double> read_double_line(std::istream& in, std::size_t count,
                                            const std::string& what) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("checkpoint: missing values for " + what);
    std::istringstream ss(line);
    std::vector<double> values;
    values.reserve(count);
    std::string token;
    while (ss >> token) values.push_back(read_double_token(token, what));
    if (values.size() != count)
        throw data_error("checkpoint: expected " + std::to_string(count) + " values for " + what +
                         ", got " + std::to_string(values.size()));
    return values;
}

inline std::string expect_keyed_line(std::istream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("checkpoint: missing '" + key + "' line");
    auto eq = line.find(" = ");
    if (eq == std::string::npos || line.substr(0, eq) != key)
        throw data_error("checkpoint: expected '" + key + " = ...', got '" + line + "'");
    return line.substr(eq + 3);
}

inline void expect_line(std::istream& in, const std::string& expected) {
    std::string line;
    if (!std::getline(in, line) || line != expected)
        throw data_error("checkpoint: expected '" + expected + "', got '" + line + "'");
}

inline std::size_t to_size(const std::string& s, const std::string& what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw data_error("checkpoint: bad count '" + s + "' for " + what);
    return v;
}

}  // namespace detail

inline void save_checkpoint(Network& net, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write checkpoint " + path.string());

    const ModelConfig& m = net.config;
    out << kCheckpointMagic << '\n';
    out << "[model]\n";
    out << "variant = " << to_string(m.variant) << '\n';
    out << "target = " << to_string(m.target) << '\n';
    out << "lookback = " << m.lookback << '\n';
    out << "conv_filters = ";
    for (std::size_t i = 0; i < m.conv_filters.size(); ++i)
        out << (i ? "," : "") << m.conv_filters[i];
    out << '\n';
    out << "filter_length = " << m.filter_length << '\n';
    out << "indrnn_hidden = " << m.indrnn_hidden << '\n';
    out << "indrnn_layers = " << m.indrnn_layers << '\n';
    out << "dense_layers = " << m.dense_layers << '\n';
    out << "dense_units = " << m.dense_units << '\n';
    out << "fi_activation = " << to_string(m.fi_activation) << '\n';
    out << "conv_activation = " << to_string(m.conv_activation) << '\n';
    out << "indrnn_activation = " << to_string(m.indrnn_activation) << '\n';
    out << "dense_hidden_activation = " << to_string(m.dense_hidden_activation) << '\n';
    out << "output_activation = " << to_string(m.output_activation) << '\n';
    out << "seed = " << m.seed << '\n';

    out << "[layout]\n";
    out << "lookback = " << net.layout.lookback << '\n';
    out << "weather_categories = " << net.layout.weather_categories << '\n';
    out << "spatio_temporal = " << (net.layout.spatio_temporal ? 1 : 0) << '\n';
    out << "temporal = " << (net.layout.temporal ? 1 : 0) << '\n';
    out << "context = " << (net.layout.context ? 1 : 0) << '\n';

    out << "[zones]\n";
    out << "num_zones = " << net.num_zones << '\n';

    out << "[standardizer]\n";
    out << "columns = " << net.standardizer.columns() << '\n';
    out << "mean =";
    for (double v : net.standardizer.mean) {
        out << ' ';
        detail::write_double(out, v);
    }
    out << '\n';
    out << "divisor =";
    for (double v : net.standardizer.divisor) {
        out << ' ';
        detail::write_double(out, v);
    }
    out << '\n';
    out << "passthrough =";
    for (bool b : net.standardizer.passthrough) out << ' ' << (b ? 1 : 0);
    out << '\n';

    std::size_t n_params = 0;
    net.visit_params([&](const ParamRef&) { ++n_params; });
    out << "[params]\n";
    out << "count = " << n_params << '\n';
    net.visit_params([&](const ParamRef& p) {
        p.value->ensure_finite(p.name.c_str());
        out << "param " << p.name;
        for (std::size_t e : p.value->shape()) out << ' ' << e;
        out << '\n';
        for (std::size_t i = 0; i < p.value->size(); ++i) {
            out << (i ? " " : "");
            detail::write_double(out, (*p.value)[i]);
        }
        out << '\n';
    });
    if (!out) throw data_error("failed writing checkpoint " + path.string());
}

inline Network load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open checkpoint " + path.string());

    detail::expect_line(in, kCheckpointMagic);
    detail::expect_line(in, "[model]");
    ModelConfig m;
    m.variant = variant_from_string(detail::expect_keyed_line(in, "variant"));
    m.target = target_from_string(detail::expect_keyed_line(in, "target"));
    m.lookback = detail::to_size(detail::expect_keyed_line(in, "lookback"), "lookback");
    {
        std::string list = detail::expect_keyed_line(in, "conv_filters");
        m.conv_filters.clear();
        std::size_t start = 0;
        while (start < list.size()) {
            std::size_t comma = list.find(',', start);
            std::string token =
                comma == std::string::npos ? list.substr(start) : list.substr(start, comma - start);
            if (!token.empty()) m.conv_filters.push_back(detail::to_size(token, "conv_filters"));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    m.filter_length = detail::to_size(detail::expect_keyed_line(in, "filter_length"), "filter_length");
    m.indrnn_hidden = detail::to_size(detail::expect_keyed_line(in, "indrnn_hidden"), "indrnn_hidden");
    m.indrnn_layers = detail::to_size(detail::expect_keyed_line(in, "indrnn_layers"), "indrnn_layers");
    m.dense_layers = detail::to_size(detail::expect_keyed_line(in, "dense_layers"), "dense_layers");
    m.dense_units = detail::to_size(detail::expect_keyed_line(in, "dense_units"), "dense_units");
    m.fi_activation = activation_from_string(detail::expect_keyed_line(in, "fi_activation"));
    m.conv_activation = activation_from_string(detail::expect_keyed_line(in, "conv_activation"));
    m.indrnn_activation = activation_from_string(detail::expect_keyed_line(in, "indrnn_activation"));
    m.dense_hidden_activation =
        activation_from_string(detail::expect_keyed_line(in, "dense_hidden_activation"));
    m.output_activation =
        activation_from_string(detail::expect_keyed_line(in, "output_activation"));
    m.seed = detail::to_size(detail::expect_keyed_line(in, "seed"), "seed");

    detail::expect_line(in, "[layout]");
    FeatureLayout layout;
    layout.lookback = detail::to_size(detail::expect_keyed_line(in, "lookback"), "layout lookback");
    layout.weather_categories =
        detail::to_size(detail::expect_keyed_line(in, "weather_categories"), "weather_categories");
    layout.spatio_temporal = detail::expect_keyed_line(in, "spatio_temporal") == "1";
    layout.temporal = detail::expect_keyed_line(in, "temporal") == "1";
    layout.context = detail::expect_keyed_line(in, "context") == "1";

    detail::expect_line(in, "[zones]");
    std::size_t num_zones = detail::to_size(detail::expect_keyed_line(in, "num_zones"), "num_zones");

    detail::expect_line(in, "[standardizer]");
    std::size_t columns = detail::to_size(detail::expect_keyed_line(in, "columns"), "columns");
    FeatureStats stats;
    {
        std::string mean_line = detail::expect_keyed_line(in, "mean");
        std::istringstream ss(mean_line);
        std::string token;
        while (ss >> token) stats.mean.push_back(detail::read_double_token(token, "mean"));
        std::string div_line = detail::expect_keyed_line(in, "divisor");
        std::istringstream ds(div_line);
        while (ds >> token) stats.divisor.push_back(detail::read_double_token(token, "divisor"));
        std::string pass_line = detail::expect_keyed_line(in, "passthrough");
        std::istringstream ps(pass_line);
        while (ps >> token) stats.passthrough.push_back(token == "1");
    }
    if (stats.mean.size() != columns || stats.divisor.size() != columns ||
        stats.passthrough.size() != columns)
        throw data_error("checkpoint: standardizer arrays do not match column count");

    Network net = build_network(m, num_zones, layout, stats);

    detail::expect_line(in, "[params]");
    std::size_t count = detail::to_size(detail::expect_keyed_line(in, "count"), "param count");
    std::size_t seen = 0;
    net.visit_params([&](const ParamRef& p) {
        ++seen;
        std::string header;
        if (!std::getline(in, header))
            throw data_error("checkpoint: missing parameter block for " + p.name);
        std::istringstream hs(header);
        std::string tag, name;
        hs >> tag >> name;
        if (tag != "param" || name != p.name)
            throw data_error("checkpoint: expected parameter '" + p.name + "', got '" + header +
                             "'");
        std::vector<std::size_t> shape;
        std::size_t e;
        while (hs >> e) shape.push_back(e);
        if (shape != p.value->shape())
            throw data_error("checkpoint: shape mismatch for " + p.name);
        auto values = detail::read_double_line(in, p.value->size(), p.name);
        for (std::size_t i = 0; i < values.size(); ++i) (*p.value)[i] = values[i];
    });
    if (seen != count)
        throw data_error("checkpoint: parameter count mismatch (" + std::to_string(seen) + " vs " +
                         std::to_string(count) + ")");

    net.visit_params([&](const ParamRef& p) {
        if (!p.value->all_finite())
            throw data_error("checkpoint: non-finite value in " + p.name);
        if (p.kind == ParamKind::indrnn_recurrent)
            for (double v : p.value->values())
                if (std::fabs(v) > p.recurrent_bound)
                    throw data_error("checkpoint: recurrent weight in " + p.name +
                                     " violates its bound");
    });
    return net;
}

}  // namespace focir

#endif
