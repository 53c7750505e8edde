#ifndef FOCIR_ABLATION_HPP
#define FOCIR_ABLATION_HPP

#include <array>
#include <string>
#include <vector>

#include "focir/dataset.hpp"
#include "focir/metrics.hpp"
#include "focir/network.hpp"
#include "focir/synth.hpp"
#include "focir/training.hpp"

namespace focir {

struct AblationMatrix {
    std::vector<MetricsReport> rows;
};

struct FeatureMask {
    std::string id;
    bool spatio_temporal;
    bool temporal;
    bool context;
};

// the six feature combinations tested in the feature ablation
inline const std::array<FeatureMask, 6>& feature_masks() {
    static const std::array<FeatureMask, 6> masks{{
        {"st+temporal", true, true, false},
        {"st+context", true, false, true},
        {"temporal+context", false, true, true},
        {"st", true, false, false},
        {"temporal", false, true, false},
        {"context", false, false, true},
    }};
    return masks;
}

inline FeatureLayout layout_for(const ZoneSlotFrame& frame, const ModelConfig& config,
                                const FeatureMask* mask = nullptr) {
    FeatureLayout layout;
    layout.lookback = config.lookback;
    layout.weather_categories = frame.weather_categories;
    if (mask) {
        layout.spatio_temporal = mask->spatio_temporal;
        layout.temporal = mask->temporal;
        layout.context = mask->context;
    }
    return layout;
}

// Trains one configuration on prepared splits and reports test metrics.
inline MetricsReport train_and_evaluate(PreparedData& data, const ModelConfig& config,
                                        const TrainConfig& train_config,
                                        const std::string& model_id) {
    Network net = build_and_init(config, data.splits.train.samples.front().x.extent(0),
                                 data.splits.train.layout, data.stats);
    train(net, data.splits.train, data.splits.val, train_config);
    return evaluate(net, data.splits.test, model_id);
}

// Trains and evaluates the full FOCIR-Net plus the six model-ablation
// variants on a shared split; run i uses seeds master + i so the variants
// are independent but the whole matrix is reproducible.
inline AblationMatrix run_model_ablation(const ZoneSlotFrame& frame, const ModelConfig& base,
                                         const TrainConfig& train_config, double train_frac,
                                         double val_frac) {
    static constexpr std::array<Variant, 7> variants{
        Variant::focir, Variant::ocir,     Variant::foc,        Variant::fir,
        Variant::fin,   Variant::cnn_only, Variant::indrnn_only};

    FeatureLayout layout = layout_for(frame, base);
    PreparedData data = prepare_dataset(frame, layout, base.target, train_frac, val_frac);

    AblationMatrix matrix;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        ModelConfig config = base;
        config.variant = variants[i];
        config.seed = base.seed + i;
        TrainConfig tc = train_config;
        tc.seed = train_config.seed + i;
        matrix.rows.push_back(train_and_evaluate(data, config, tc, to_string(variants[i])));
    }
    return matrix;
}

// The six feature combinations, trained on the base variant. Masking removes
// whole column blocks before the model is built.
inline AblationMatrix run_feature_ablation(const ZoneSlotFrame& frame, const ModelConfig& base,
                                           const TrainConfig& train_config, double train_frac,
                                           double val_frac) {
    AblationMatrix matrix;
    const auto& masks = feature_masks();
    for (std::size_t i = 0; i < masks.size(); ++i) {
        FeatureLayout layout = layout_for(frame, base, &masks[i]);
        PreparedData data = prepare_dataset(frame, layout, base.target, train_frac, val_frac);
        ModelConfig config = base;
        config.seed = base.seed + i;
        TrainConfig tc = train_config;
        tc.seed = train_config.seed + i;
        matrix.rows.push_back(train_and_evaluate(data, config, tc, masks[i].id));
    }
    return matrix;
}

}  // namespace focir

#endif
