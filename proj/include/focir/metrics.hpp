#ifndef FOCIR_METRICS_HPP
#define FOCIR_METRICS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "focir/dataset.hpp"
#include "focir/network.hpp"

namespace focir {

namespace detail {
inline void require_metric_shapes(const Tensor& preds, const Tensor& targets) {
    if (preds.rank() != 2 || !preds.same_shape(targets))
        throw data_error("metrics: predictions " + preds.shape_string() + " vs targets " +
                         targets.shape_string());
    if (preds.size() == 0) throw data_error("metrics: empty input");
}
}  // namespace detail

// mean over all slot-zone cells of |O - A|
inline double mae(const Tensor& preds, const Tensor& targets) {
    detail::require_metric_shapes(preds, targets);
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) sum += std::fabs(preds[i] - targets[i]);
    return sum / static_cast<double>(preds.size());
}

inline double rmse(const Tensor& preds, const Tensor& targets) {
    detail::require_metric_shapes(preds, targets);
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        double d = preds[i] - targets[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(preds.size()));
}

// modified sMAPE: |O - A| / (|O| + |A| + 1); the +1 keeps zero cells finite
inline double smape(const Tensor& preds, const Tensor& targets) {
    detail::require_metric_shapes(preds, targets);
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        sum += std::fabs(preds[i] - targets[i]) / (std::fabs(preds[i]) + std::fabs(targets[i]) + 1.0);
    return sum / static_cast<double>(preds.size());
}

struct MetricsReport {
    std::string model_id;
    TargetKind target = TargetKind::demand;
    double mae = 0.0;
    double rmse = 0.0;
    double smape = 0.0;
    std::size_t n_slots = 0;
    std::size_t n_zones = 0;
};

inline MetricsReport compute_metrics(const Tensor& preds, const Tensor& targets,
                                     std::string model_id, TargetKind target) {
    MetricsReport report;
    report.model_id = std::move(model_id);
    report.target = target;
    report.mae = mae(preds, targets);
    report.rmse = rmse(preds, targets);
    report.smape = smape(preds, targets);
    report.n_slots = preds.extent(0);
    report.n_zones = preds.extent(1);
    return report;
}

inline Tensor sample_targets(const SampleSet& set) {
    if (set.empty()) throw data_error("metrics: empty sample set");
    const std::size_t n = set.samples.front().target.size();
    Tensor targets({set.size(), n});
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t p = 0; p < n; ++p) targets(i, p) = set.samples[i].target[p];
    return targets;
}

// Metrics for a network over a sample set, on raw-scale predictions.
inline MetricsReport evaluate(const Network& net, const SampleSet& set, std::string model_id) {
    if (set.empty()) throw data_error("evaluate: empty sample set");
    Tensor preds({set.size(), net.num_zones});
    Network::Cache scratch;
    for (std::size_t i = 0; i < set.size(); ++i) {
        std::vector<double> p = net.forward(set.samples[i].x, scratch);
        for (std::size_t z = 0; z < p.size(); ++z) preds(i, z) = p[z];
    }
    return compute_metrics(preds, sample_targets(set), std::move(model_id), set.target);
}

// Per-slot naive predictions, one row per slot of the frame. Row t predicts
// slot t with the previous slot's value; row 0 repeats slot 0 (never used by
// evaluation, which starts at the lookback).
inline Tensor persistence_baseline(const ZoneSlotFrame& frame, TargetKind target,
                                   std::size_t /*lookback*/ = 1) {
    const Tensor& series = frame.target_series(target);
    const std::size_t n = frame.grid.num_zones;
    const std::size_t slots = frame.grid.total_slots;
    Tensor preds({slots, n});
    for (std::size_t t = 0; t < slots; ++t)
        for (std::size_t p = 0; p < n; ++p)
            preds(t, p) = series(p, t == 0 ? 0 : t - 1);
    return preds;
}

// Per-slot predictions from the training-period mean of each
// (zone, slot-of-day) pair; slots at or past train_end_slot are out of the
// averaging window.
inline Tensor historical_average_baseline(const ZoneSlotFrame& frame, TargetKind target,
                                          std::size_t train_end_slot) {
    if (train_end_slot == 0 || train_end_slot > frame.grid.total_slots)
        throw data_error("historical average: bad training boundary");
    const Tensor& series = frame.target_series(target);
    const std::size_t n = frame.grid.num_zones;
    const std::size_t spd = frame.grid.slots_per_day;

    Tensor profile({n, spd});
    std::vector<double> counts(spd, 0.0);
    for (std::size_t t = 0; t < train_end_slot; ++t) counts[frame.grid.slot_of_day(t)] += 1.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t t = 0; t < train_end_slot; ++t)
            profile(p, frame.grid.slot_of_day(t)) += series(p, t);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t s = 0; s < spd; ++s)
            if (counts[s] > 0.0) profile(p, s) /= counts[s];

    Tensor preds({frame.grid.total_slots, n});
    for (std::size_t t = 0; t < frame.grid.total_slots; ++t)
        for (std::size_t p = 0; p < n; ++p)
            preds(t, p) = profile(p, frame.grid.slot_of_day(t));
    return preds;
}

// Evaluates per-slot baseline predictions against the targets of a sample
// set, picking rows by slot index.
inline MetricsReport evaluate_baseline(const Tensor& slot_predictions, const SampleSet& set,
                                       std::string model_id) {
    if (set.empty()) throw data_error("evaluate_baseline: empty sample set");
    const std::size_t n = set.samples.front().target.size();
    Tensor preds({set.size(), n});
    for (std::size_t i = 0; i < set.size(); ++i) {
        std::size_t t = set.samples[i].slot_index;
        if (t >= slot_predictions.extent(0))
            throw data_error("evaluate_baseline: sample slot outside prediction range");
        for (std::size_t p = 0; p < n; ++p) preds(i, p) = slot_predictions(t, p);
    }
    return compute_metrics(preds, sample_targets(set), std::move(model_id), set.target);
}

}  // namespace focir

#endif
