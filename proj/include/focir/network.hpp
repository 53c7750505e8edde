#ifndef FOCIR_NETWORK_HPP
#define FOCIR_NETWORK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "focir/dataset.hpp"
#include "focir/feature_layout.hpp"
#include "focir/layers/conv1d.hpp"
#include "focir/layers/dense.hpp"
#include "focir/layers/feature_importance.hpp"
#include "focir/layers/indrnn.hpp"
#include "focir/layers/shape_ops.hpp"
#include "focir/params.hpp"
#include "focir/rng.hpp"

namespace focir {

// Architecture variants: the full model plus the six ablations.
enum class Variant { focir, ocir, foc, fir, fin, cnn_only, indrnn_only };

inline Variant variant_from_string(const std::string& s) {
    if (s == "focir") return Variant::focir;
    if (s == "ocir") return Variant::ocir;
    if (s == "foc") return Variant::foc;
    if (s == "fir") return Variant::fir;
    if (s == "fin") return Variant::fin;
    if (s == "cnn") return Variant::cnn_only;
    if (s == "indrnn") return Variant::indrnn_only;
    throw config_error("unknown variant '" + s +
                       "' (expected focir, ocir, foc, fir, fin, cnn, or indrnn)");
}

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::focir: return "focir";
        case Variant::ocir: return "ocir";
        case Variant::foc: return "foc";
        case Variant::fir: return "fir";
        case Variant::fin: return "fin";
        case Variant::cnn_only: return "cnn";
        case Variant::indrnn_only: return "indrnn";
    }
    throw config_error("unknown variant");
}

inline bool variant_has_fi(Variant v) {
    return v == Variant::focir || v == Variant::foc || v == Variant::fir || v == Variant::fin;
}
inline bool variant_has_conv(Variant v) {
    return v == Variant::focir || v == Variant::ocir || v == Variant::foc ||
           v == Variant::cnn_only;
}
inline bool variant_has_rnn(Variant v) {
    return v == Variant::focir || v == Variant::ocir || v == Variant::fir ||
           v == Variant::indrnn_only;
}

struct ModelConfig {
    Variant variant = Variant::focir;
    std::size_t lookback = 6;
    std::vector<std::size_t> conv_filters = {200, 400};
    std::size_t filter_length = 5;
    std::size_t indrnn_hidden = 32;
    std::size_t indrnn_layers = 2;
    std::size_t dense_layers = 2;
    std::size_t dense_units = 4;
    Activation fi_activation = Activation::sigmoid;
    Activation conv_activation = Activation::relu;
    Activation indrnn_activation = Activation::relu;
    Activation dense_hidden_activation = Activation::relu;
    Activation output_activation = Activation::linear;
    TargetKind target = TargetKind::demand;
    std::uint64_t seed = 0;

    void validate() const {
        if (lookback < 1) throw config_error("model: lookback must be >= 1");
        if (filter_length % 2 == 0 || filter_length < 3 || filter_length > 13)
            throw config_error("model: filter_length must be odd and within [3, 13]");
        if (variant_has_conv(variant) && conv_filters.empty())
            throw config_error("model: conv variant needs at least one conv layer");
        for (std::size_t k : conv_filters)
            if (k == 0) throw config_error("model: conv layer with zero filters");
        if (variant_has_rnn(variant) && (indrnn_hidden == 0 || indrnn_layers == 0))
            throw config_error("model: indrnn variant needs hidden units and layers");
        if (indrnn_activation != Activation::relu && indrnn_activation != Activation::tanh)
            throw config_error("model: indrnn activation must be relu or tanh");
        if (dense_units == 0) throw config_error("model: dense_units must be >= 1");
    }

    // activation-dependent bound that keeps the unrolled recurrence from
    // exploding over the lookback horizon
    double recurrent_bound() const {
        return indrnn_activation == Activation::relu
                   ? std::pow(2.0, 1.0 / static_cast<double>(lookback))
                   : 1.0;
    }
};

// A configured FOCIR-Net (or ablation variant): the gate, the branch stacks,
// the per-zone dense head, plus the layout/standardizer needed to feed it.
struct Network {
    ModelConfig config;
    FeatureLayout layout;
    FeatureStats standardizer;
    std::size_t num_zones = 0;

    bool has_fi = false;
    bool has_conv = false;
    bool has_rnn = false;

    FeatureImportanceLayer fi;
    std::vector<Conv1dLayer> conv_stack;
    std::vector<IndRnnLayer> indrnn_stack;
    std::vector<DenseLayer> dense_stack;  // hidden layers of the head
    DenseLayer output_layer;              // one unit per zone

    // gather map for the IndRNN step tensor: source column of (channel, step)
    std::vector<std::size_t> rnn_source_cols;
    std::size_t rnn_channels = 0;

    // feature blocks that reach the head directly (not consumed by a branch)
    bool head_takes_st = false;
    bool head_takes_temporal = false;
    bool head_takes_context = false;

    std::size_t conv_out_cols() const { return has_conv ? conv_stack.back().num_filters() : 0; }
    std::size_t rnn_out_cols() const { return has_rnn ? indrnn_stack.back().hidden_size() : 0; }

    std::size_t head_in_features() const {
        return conv_out_cols() + rnn_out_cols() + (head_takes_st ? layout.st_cols() : 0) +
               (head_takes_temporal ? layout.temporal_cols() : 0) +
               (head_takes_context ? layout.context_cols() : 0);
    }

    template <typename Fn>
    void visit_params(Fn&& fn) {
        if (has_fi)
            fn(ParamRef{"fi.weights", &fi.weights, &fi.weight_grad, ParamKind::feature_importance,
                        0.0});
        for (std::size_t l = 0; l < conv_stack.size(); ++l) {
            std::string base = "conv" + std::to_string(l);
            fn(ParamRef{base + ".filters", &conv_stack[l].filters, &conv_stack[l].filter_grad,
                        ParamKind::standard, 0.0});
            fn(ParamRef{base + ".bias", &conv_stack[l].bias, &conv_stack[l].bias_grad,
                        ParamKind::standard, 0.0});
        }
        for (std::size_t l = 0; l < indrnn_stack.size(); ++l) {
            std::string base = "indrnn" + std::to_string(l);
            IndRnnLayer& layer = indrnn_stack[l];
            fn(ParamRef{base + ".input_weights", &layer.input_weights, &layer.input_weight_grad,
                        ParamKind::standard, 0.0});
            fn(ParamRef{base + ".recurrent_weights", &layer.recurrent_weights,
                        &layer.recurrent_weight_grad, ParamKind::indrnn_recurrent,
                        layer.recurrent_bound});
            fn(ParamRef{base + ".bias", &layer.bias, &layer.bias_grad, ParamKind::standard, 0.0});
        }
        for (std::size_t l = 0; l < dense_stack.size(); ++l) {
            std::string base = "dense" + std::to_string(l);
            fn(ParamRef{base + ".weights", &dense_stack[l].weights, &dense_stack[l].weight_grad,
                        ParamKind::standard, 0.0});
            fn(ParamRef{base + ".bias", &dense_stack[l].bias, &dense_stack[l].bias_grad,
                        ParamKind::standard, 0.0});
        }
        fn(ParamRef{"output.weights", &output_layer.weights, &output_layer.weight_grad,
                    ParamKind::standard, 0.0});
        fn(ParamRef{"output.bias", &output_layer.bias, &output_layer.bias_grad,
                    ParamKind::standard, 0.0});
    }

    void zero_grads() {
        visit_params([](const ParamRef& p) { p.grad->fill(0.0); });
    }

    std::vector<Tensor> snapshot_params() {
        std::vector<Tensor> snap;
        visit_params([&](const ParamRef& p) { snap.push_back(*p.value); });
        return snap;
    }

    void restore_params(const std::vector<Tensor>& snap) {
        std::size_t i = 0;
        visit_params([&](const ParamRef& p) { *p.value = snap.at(i++); });
    }

    struct Cache {
        FeatureImportanceLayer::Cache fi;
        Tensor gated;
        std::vector<Conv1dLayer::Cache> conv;
        IndRnnStackCache rnn;
        Tensor head_in;
        std::vector<DenseLayer::Cache> dense;
        DenseLayer::Cache output;
    };

    // O_t for one sample; raw scale. Every stage's preactivations are
    // checked so an overflow cannot hide behind a squashing activation.
    std::vector<double> forward(const Tensor& x, Cache& cache) const {
        require_shape(x, num_zones, layout.num_features(), "network forward");

        cache.gated = has_fi ? fi.forward(x, cache.fi) : x;
        cache.gated.ensure_finite("gated input");

        Tensor conv_out;
        if (has_conv) {
            cache.conv.resize(conv_stack.size());
            Tensor cur = slice_columns(cache.gated, layout.st_begin(),
                                       layout.st_begin() + layout.st_cols());
            for (std::size_t l = 0; l < conv_stack.size(); ++l) {
                cur = conv_stack[l].forward(cur, cache.conv[l]);
                cache.conv[l].preact.ensure_finite("conv preactivation");
            }
            conv_out = std::move(cur);
        }

        Tensor rnn_out;
        if (has_rnn) {
            Tensor steps({num_zones, rnn_channels, layout.lookback});
            for (std::size_t p = 0; p < num_zones; ++p)
                for (std::size_t c = 0; c < rnn_channels; ++c)
                    for (std::size_t s = 0; s < layout.lookback; ++s)
                        steps(p, c, s) =
                            cache.gated(p, rnn_source_cols[c * layout.lookback + s]);
            rnn_out = zone_distributed_indrnn_forward(steps, indrnn_stack, cache.rnn);
            for (const Tensor& preact : cache.rnn.preact)
                preact.ensure_finite("indrnn preactivation");
        }

        std::vector<const Tensor*> parts;
        Tensor st_block, temporal_block, context_block;
        if (has_conv) parts.push_back(&conv_out);
        if (has_rnn) parts.push_back(&rnn_out);
        if (head_takes_st) {
            st_block = slice_columns(cache.gated, layout.st_begin(),
                                     layout.st_begin() + layout.st_cols());
            parts.push_back(&st_block);
        }
        if (head_takes_temporal) {
            temporal_block = slice_columns(cache.gated, layout.temporal_begin(),
                                           layout.temporal_begin() + layout.temporal_cols());
            parts.push_back(&temporal_block);
        }
        if (head_takes_context) {
            context_block = slice_columns(cache.gated, layout.context_begin(),
                                          layout.context_begin() + layout.context_cols());
            parts.push_back(&context_block);
        }
        cache.head_in = concatenate(std::span<const Tensor* const>(parts));

        cache.dense.resize(dense_stack.size());
        Tensor cur = cache.head_in;
        for (std::size_t l = 0; l < dense_stack.size(); ++l) {
            cur = dense_stack[l].forward(cur, cache.dense[l]);
            cache.dense[l].preact.ensure_finite("dense preactivation");
        }
        Tensor out = output_layer.forward(cur, cache.output);

        out.ensure_finite("network forward output");
        std::vector<double> prediction(num_zones);
        for (std::size_t p = 0; p < num_zones; ++p) prediction[p] = out(p, 0);
        return prediction;
    }

    std::vector<double> predict(const Tensor& x) const {
        Cache scratch;
        return forward(x, scratch);
    }

    // Accumulates parameter gradients for one sample given d loss / d O_t.
    // Returns d loss / d input for callers that want it.
    Tensor backward(std::span<const double> grad_prediction, Cache& cache) {
        if (grad_prediction.size() != num_zones)
            throw data_error("network backward: prediction gradient length mismatch");

        Tensor grad_out({num_zones, 1});
        for (std::size_t p = 0; p < num_zones; ++p) grad_out(p, 0) = grad_prediction[p];

        Tensor grad_cur = output_layer.backward(grad_out, cache.output);
        for (std::size_t l = dense_stack.size(); l-- > 0;)
            grad_cur = dense_stack[l].backward(grad_cur, cache.dense[l]);

        // split the head gradient back into its blocks
        Tensor grad_gated({num_zones, layout.num_features()});
        std::size_t col = 0;
        auto take = [&](std::size_t width) {
            Tensor part({num_zones, width});
            for (std::size_t p = 0; p < num_zones; ++p)
                for (std::size_t j = 0; j < width; ++j)
                    part(p, j) = grad_cur(p, col + j);
            col += width;
            return part;
        };

        if (has_conv) {
            Tensor g = take(conv_out_cols());
            for (std::size_t l = conv_stack.size(); l-- > 0;)
                g = conv_stack[l].backward(g, cache.conv[l]);
            for (std::size_t p = 0; p < num_zones; ++p)
                for (std::size_t j = 0; j < layout.st_cols(); ++j)
                    grad_gated(p, layout.st_begin() + j) += g(p, j);
        }
        if (has_rnn) {
            Tensor g = take(rnn_out_cols());
            Tensor grad_steps = zone_distributed_indrnn_backward(g, indrnn_stack, cache.rnn);
            for (std::size_t p = 0; p < num_zones; ++p)
                for (std::size_t c = 0; c < rnn_channels; ++c)
                    for (std::size_t s = 0; s < layout.lookback; ++s)
                        grad_gated(p, rnn_source_cols[c * layout.lookback + s]) +=
                            grad_steps(p, c, s);
        }
        if (head_takes_st) {
            Tensor g = take(layout.st_cols());
            for (std::size_t p = 0; p < num_zones; ++p)
                for (std::size_t j = 0; j < layout.st_cols(); ++j)
                    grad_gated(p, layout.st_begin() + j) += g(p, j);
        }
        if (head_takes_temporal) {
            Tensor g = take(layout.temporal_cols());
            for (std::size_t p = 0; p < num_zones; ++p)
                for (std::size_t j = 0; j < layout.temporal_cols(); ++j)
                    grad_gated(p, layout.temporal_begin() + j) += g(p, j);
        }
        if (head_takes_context) {
            Tensor g = take(layout.context_cols());
            for (std::size_t p = 0; p < num_zones; ++p)
                for (std::size_t j = 0; j < layout.context_cols(); ++j)
                    grad_gated(p, layout.context_begin() + j) += g(p, j);
        }

        if (has_fi) return fi.backward(grad_gated, cache.fi);
        return grad_gated;
    }
};

// Wires a network for the variant: which components exist, their shapes, and
// how feature blocks flow. A branch whose input block is fully masked away is
// dropped; feature blocks no branch consumes pass straight into the head, so
// the FIN/FC path sees every (gated) feature.
inline Network build_network(const ModelConfig& config, std::size_t n_zones,
                             const FeatureLayout& layout, const FeatureStats& standardizer) {
    config.validate();
    layout.validate();
    if (config.lookback != layout.lookback)
        throw config_error("build: model lookback does not match feature layout");
    if (standardizer.columns() != layout.num_features())
        throw config_error("build: standardizer does not match feature layout");
    if (n_zones < 1) throw config_error("build: need at least one zone");

    Network net;
    net.config = config;
    net.layout = layout;
    net.standardizer = standardizer;
    net.num_zones = n_zones;

    net.has_fi = variant_has_fi(config.variant);
    net.has_conv = variant_has_conv(config.variant) && layout.spatio_temporal;
    net.has_rnn = variant_has_rnn(config.variant) && (layout.spatio_temporal || layout.temporal);

    net.head_takes_st = layout.spatio_temporal && !net.has_conv && !net.has_rnn;
    net.head_takes_temporal = layout.temporal && !net.has_rnn;
    net.head_takes_context = layout.context;

    if (net.has_fi)
        net.fi = FeatureImportanceLayer(n_zones, layout.num_features(), config.fi_activation);

    if (net.has_conv) {
        std::size_t in_features = layout.st_cols();
        for (std::size_t k : config.conv_filters) {
            net.conv_stack.emplace_back(k, config.filter_length, in_features,
                                        config.conv_activation);
            in_features = k;
        }
    }

    if (net.has_rnn) {
        net.rnn_channels = (layout.spatio_temporal ? FeatureLayout::kSpatioTemporalVars : 0) +
                           (layout.temporal ? layout.temporal_channels() : 0);
        net.rnn_source_cols.resize(net.rnn_channels * layout.lookback);
        std::size_t channel = 0;
        // step axis is oldest-first: step s corresponds to lag b - s
        if (layout.spatio_temporal)
            for (std::size_t v = 0; v < FeatureLayout::kSpatioTemporalVars; ++v, ++channel)
                for (std::size_t s = 0; s < layout.lookback; ++s)
                    net.rnn_source_cols[channel * layout.lookback + s] =
                        layout.st_column(v, layout.lookback - s);
        if (layout.temporal)
            for (std::size_t c = 0; c < layout.temporal_channels(); ++c, ++channel)
                for (std::size_t s = 0; s < layout.lookback; ++s)
                    net.rnn_source_cols[channel * layout.lookback + s] =
                        layout.temporal_column(c, layout.lookback - s);

        std::size_t in_features = net.rnn_channels;
        for (std::size_t l = 0; l < config.indrnn_layers; ++l) {
            net.indrnn_stack.emplace_back(config.indrnn_hidden, in_features,
                                          config.indrnn_activation, config.recurrent_bound());
            in_features = config.indrnn_hidden;
        }
    }

    std::size_t in_features = net.head_in_features();
    if (in_features == 0) throw config_error("build: head has no input features");
    for (std::size_t l = 0; l < config.dense_layers; ++l) {
        net.dense_stack.emplace_back(config.dense_units, in_features,
                                     config.dense_hidden_activation);
        in_features = config.dense_units;
    }
    net.output_layer = DenseLayer(1, in_features, config.output_activation);
    return net;
}

// Glorot-style uniform limit for a weight matrix
inline double glorot_limit(std::size_t fan_in, std::size_t fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

// FI weights ~ U(-0.05, 0.05) so initial importance is near-uniform; other
// weight matrices ~ U(-L, L) with the Glorot limit; IndRNN recurrent weights
// ~ U(0, bound); biases zero. Draw order follows visit_params, so a seed
// fully determines every parameter.
inline void init_weights(Network& net, std::uint64_t seed) {
    Rng rng(seed);
    net.visit_params([&](const ParamRef& p) {
        Tensor& value = *p.value;
        switch (p.kind) {
            case ParamKind::feature_importance:
                for (std::size_t i = 0; i < value.size(); ++i) value[i] = rng.uniform(-0.05, 0.05);
                break;
            case ParamKind::indrnn_recurrent:
                for (std::size_t i = 0; i < value.size(); ++i)
                    value[i] = rng.uniform(0.0, p.recurrent_bound);
                break;
            case ParamKind::standard: {
                if (value.rank() == 1) {
                    value.fill(0.0);  // bias
                    break;
                }
                std::size_t fan_in = 0, fan_out = 0;
                if (value.rank() == 3) {
                    // conv filters K x E x F_in: receptive field times channels
                    fan_in = value.extent(1) * value.extent(2);
                    fan_out = value.extent(1) * value.extent(0);
                } else {
                    fan_in = value.extent(1);
                    fan_out = value.extent(0);
                }
                double limit = glorot_limit(fan_in, fan_out);
                for (std::size_t i = 0; i < value.size(); ++i)
                    value[i] = rng.uniform(-limit, limit);
                break;
            }
        }
    });
}

inline Network build_and_init(const ModelConfig& config, std::size_t n_zones,
                              const FeatureLayout& layout, const FeatureStats& standardizer) {
    Network net = build_network(config, n_zones, layout, standardizer);
    init_weights(net, config.seed);
    return net;
}

// Importance scores: raw per-cell gate activations, their spatial average
// (normalized over features) and per-zone group averages (normalized per
// zone), plus the feature ranking.
struct ImportanceReport {
    Tensor raw_scores;                        // N x F
    std::vector<double> spatial_avg;          // F, sums to 1
    std::vector<std::size_t> ranking;         // feature indices, descending score
    std::vector<std::string> feature_names;   // F
    Tensor temporal_avg;                      // N x G, rows sum to 1
    std::vector<std::string> group_names;     // G
};

inline ImportanceReport extract_importance(const Network& net) {
    if (!net.has_fi)
        throw config_error("importance: variant '" + to_string(net.config.variant) +
                           "' has no feature importance layer");
    const std::size_t n = net.num_zones;
    const std::size_t f_count = net.layout.num_features();

    ImportanceReport report;
    report.raw_scores = net.fi.scores();
    report.feature_names = net.layout.feature_names();

    report.spatial_avg.assign(f_count, 0.0);
    for (std::size_t f = 0; f < f_count; ++f) {
        double sum = 0.0;
        for (std::size_t p = 0; p < n; ++p) sum += report.raw_scores(p, f);
        report.spatial_avg[f] = sum / static_cast<double>(n);
    }
    double total = std::accumulate(report.spatial_avg.begin(), report.spatial_avg.end(), 0.0);
    for (double& v : report.spatial_avg) v /= total;

    report.ranking.resize(f_count);
    std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
    std::stable_sort(report.ranking.begin(), report.ranking.end(),
                     [&](std::size_t a, std::size_t b) {
                         return report.spatial_avg[a] > report.spatial_avg[b];
                     });

    auto groups = net.layout.group_columns();
    report.temporal_avg = Tensor({n, groups.size()});
    report.group_names.reserve(groups.size());
    for (const auto& [group, cols] : groups) report.group_names.push_back(to_string(group));
    for (std::size_t p = 0; p < n; ++p) {
        double row_total = 0.0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            double sum = 0.0;
            for (std::size_t c : groups[g].second) sum += report.raw_scores(p, c);
            double avg = sum / static_cast<double>(groups[g].second.size());
            report.temporal_avg(p, g) = avg;
            row_total += avg;
        }
        for (std::size_t g = 0; g < groups.size(); ++g) report.temporal_avg(p, g) /= row_total;
    }
    return report;
}

}  // namespace focir

#endif
