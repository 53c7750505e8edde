#ifndef FOCIR_DATASET_HPP
#define FOCIR_DATASET_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "focir/errors.hpp"
#include "focir/feature_layout.hpp"
#include "focir/tensor.hpp"

namespace focir {

// Space-time partitioning: N non-overlapping zones, T uniform slots of m
// minutes. Day indexing starts at local midnight of the first data day.
struct SpaceTimeGrid {
    std::size_t num_zones = 0;
    std::size_t slot_minutes = 10;
    std::size_t slots_per_day = 144;
    std::size_t num_days = 0;
    std::size_t total_slots = 0;

    static SpaceTimeGrid create(std::size_t zones, std::size_t slot_minutes, std::size_t days) {
        if (zones < 1) throw config_error("grid: need at least one zone");
        if (slot_minutes == 0 || 1440 % slot_minutes != 0)
            throw config_error("grid: slot_minutes must divide 1440, got " +
                               std::to_string(slot_minutes));
        if (days < 1) throw config_error("grid: need at least one day");
        SpaceTimeGrid g;
        g.num_zones = zones;
        g.slot_minutes = slot_minutes;
        g.slots_per_day = 1440 / slot_minutes;
        g.num_days = days;
        g.total_slots = g.slots_per_day * days;
        return g;
    }

    std::size_t slot_of_day(std::size_t t) const { return t % slots_per_day; }
    std::size_t day_index(std::size_t t) const { return t / slots_per_day; }

    bool operator==(const SpaceTimeGrid&) const = default;
};

struct OrderRecord {
    std::size_t zone_id = 0;
    std::size_t slot_index = 0;
    bool matched = true;  // false corresponds to a null driver id in the raw data
};

// sleep = first third of the day, peak = middle third, off-peak = last third
inline std::array<double, 3> time_of_day_onehot(const SpaceTimeGrid& grid, std::size_t t) {
    std::size_t s = grid.slot_of_day(t);
    std::size_t third = grid.slots_per_day / 3;
    std::array<double, 3> onehot{0.0, 0.0, 0.0};
    if (s < third)
        onehot[0] = 1.0;
    else if (s < 2 * third)
        onehot[1] = 1.0;
    else
        onehot[2] = 1.0;
    return onehot;
}

// first_day_of_week: 0 = Monday .. 6 = Sunday; weekend = Saturday/Sunday
inline bool is_weekend(const SpaceTimeGrid& grid, std::size_t t, std::size_t first_day_of_week) {
    std::size_t weekday = (first_day_of_week + grid.day_index(t)) % 7;
    return weekday >= 5;
}

// Per-zone per-slot aggregates plus the temporal series and context vectors.
struct ZoneSlotFrame {
    SpaceTimeGrid grid;
    std::size_t weather_categories = 0;  // C
    std::size_t first_day_of_week = 0;

    Tensor demand;      // N x T
    Tensor supplied;    // N x T
    Tensor gap;         // N x T
    Tensor congestion;  // N x T

    std::vector<std::size_t> weather_category;  // per slot, in [0, C)
    std::vector<double> temperature;            // per slot
    std::vector<double> pm25;                   // per slot

    std::vector<std::array<double, 3>> time_of_day;  // per slot one-hot
    std::vector<double> day_of_week;                 // per slot, 1 = weekend

    std::vector<double> poi;  // per zone

    const Tensor& target_series(TargetKind t) const {
        return t == TargetKind::demand ? demand : gap;
    }

    void validate() const {
        const std::size_t n = grid.num_zones;
        const std::size_t slots = grid.total_slots;
        require_shape(demand, n, slots, "frame demand");
        require_shape(supplied, n, slots, "frame supplied");
        require_shape(gap, n, slots, "frame gap");
        require_shape(congestion, n, slots, "frame congestion");
        if (weather_category.size() != slots || temperature.size() != slots ||
            pm25.size() != slots || time_of_day.size() != slots || day_of_week.size() != slots)
            throw data_error("frame: temporal series length does not match total slots");
        if (poi.size() != n) throw data_error("frame: poi length does not match zone count");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t t = 0; t < slots; ++t) {
                double d = demand(p, t), s = supplied(p, t), g = gap(p, t);
                if (g < 0.0 || g > d || std::fabs(s - (d - g)) > 1e-9)
                    throw data_error("frame: gap/demand/supplied inconsistent at zone " +
                                     std::to_string(p) + " slot " + std::to_string(t));
                if (congestion(p, t) < 0.0)
                    throw data_error("frame: negative congestion at zone " + std::to_string(p) +
                                     " slot " + std::to_string(t));
            }
        }
        for (std::size_t t = 0; t < slots; ++t) {
            if (weather_category[t] >= weather_categories)
                throw data_error("frame: weather category out of range at slot " + std::to_string(t));
            double sum = time_of_day[t][0] + time_of_day[t][1] + time_of_day[t][2];
            if (sum != 1.0)
                throw data_error("frame: time-of-day one-hot invalid at slot " + std::to_string(t));
        }
    }
};

struct OrderAggregate {
    Tensor demand;    // N x T
    Tensor supplied;  // N x T
    Tensor gap;       // N x T
};

// demand[p,t] = all orders at (p,t); gap = orders with matched = false;
// supplied = demand - gap.
inline OrderAggregate aggregate_orders(const std::vector<OrderRecord>& records,
                                       const SpaceTimeGrid& grid) {
    OrderAggregate agg{Tensor({grid.num_zones, grid.total_slots}),
                       Tensor({grid.num_zones, grid.total_slots}),
                       Tensor({grid.num_zones, grid.total_slots})};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const OrderRecord& r = records[i];
        if (r.zone_id >= grid.num_zones || r.slot_index >= grid.total_slots)
            throw data_error("order record " + std::to_string(i) + " out of range: zone " +
                             std::to_string(r.zone_id) + ", slot " + std::to_string(r.slot_index));
        agg.demand(r.zone_id, r.slot_index) += 1.0;
        if (!r.matched) agg.gap(r.zone_id, r.slot_index) += 1.0;
    }
    for (std::size_t i = 0; i < agg.demand.size(); ++i)
        agg.supplied[i] = agg.demand[i] - agg.gap[i];
    return agg;
}

// f_RZ: a 1 x M row repeated across N zones.
inline Tensor repeat_across_zones(const Tensor& row, std::size_t n_zones) {
    if (row.rank() != 2 || row.extent(0) != 1)
        throw data_error("repeat_across_zones: expected a 1 x M row, got " + row.shape_string());
    if (n_zones < 1) throw data_error("repeat_across_zones: need at least one zone");
    Tensor out({n_zones, row.extent(1)});
    for (std::size_t p = 0; p < n_zones; ++p)
        for (std::size_t j = 0; j < row.extent(1); ++j)
            out(p, j) = row(0, j);
    return out;
}

// f_RT: a length-N column repeated across T slots, giving N x 1 x T.
inline Tensor repeat_across_time(const Tensor& col, std::size_t n_slots) {
    if (col.rank() != 1)
        throw data_error("repeat_across_time: expected a length-N vector, got " + col.shape_string());
    if (n_slots < 1) throw data_error("repeat_across_time: need at least one slot");
    Tensor out({col.extent(0), 1, n_slots});
    for (std::size_t p = 0; p < col.extent(0); ++p)
        for (std::size_t t = 0; t < n_slots; ++t)
            out(p, 0, t) = col(p);
    return out;
}

// Assembled feature matrix and raw-scale target for one prediction slot.
struct InputSample {
    Tensor x;                    // N x F, per the canonical layout
    std::vector<double> target;  // length N, raw counts
    std::size_t slot_index = 0;
};

struct SampleSet {
    FeatureLayout layout;
    TargetKind target = TargetKind::demand;
    std::vector<InputSample> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

// Per-column standardization statistics fitted on the training split.
// Pass-through columns (one-hot/binary) and zero-variance columns keep
// divisor 1 so standardizing them is a no-op or a pure shift to zero.
struct FeatureStats {
    std::vector<double> mean;
    std::vector<double> divisor;
    std::vector<bool> passthrough;

    std::size_t columns() const { return mean.size(); }
    bool operator==(const FeatureStats&) const = default;
};

inline void standardize_in_place(SampleSet& set, const FeatureStats& stats) {
    if (stats.columns() != set.layout.num_features())
        throw data_error("standardize: statistics were fitted on a different layout");
    for (InputSample& sample : set.samples) {
        for (std::size_t p = 0; p < sample.x.extent(0); ++p)
            for (std::size_t c = 0; c < sample.x.extent(1); ++c)
                if (!stats.passthrough[c])
                    sample.x(p, c) = (sample.x(p, c) - stats.mean[c]) / stats.divisor[c];
    }
}

// One sample per slot t in [b, T). Spatio-temporal columns are the zone's own
// lags; temporal columns repeat the slot-level series across zones; context
// columns are the prediction slot's time-of-day/day-of-week plus POI.
inline SampleSet build_samples(const ZoneSlotFrame& frame, const FeatureLayout& layout,
                               TargetKind target, const FeatureStats* standardizer = nullptr) {
    layout.validate();
    if (layout.temporal && layout.weather_categories != frame.weather_categories)
        throw data_error("build_samples: layout weather categories do not match frame");
    const std::size_t b = layout.lookback;
    const std::size_t n = frame.grid.num_zones;
    const std::size_t slots = frame.grid.total_slots;
    if (b >= slots)
        throw data_error("build_samples: lookback " + std::to_string(b) +
                         " needs more than " + std::to_string(slots) + " slots");

    const Tensor& target_series = frame.target_series(target);
    const Tensor* st_series[4] = {&frame.demand, &frame.supplied, &frame.gap, &frame.congestion};

    SampleSet set;
    set.layout = layout;
    set.target = target;
    set.samples.reserve(slots - b);

    for (std::size_t t = b; t < slots; ++t) {
        InputSample sample;
        sample.slot_index = t;
        sample.x = Tensor({n, layout.num_features()});
        sample.target.resize(n);
        for (std::size_t p = 0; p < n; ++p) sample.target[p] = target_series(p, t);

        for (std::size_t p = 0; p < n; ++p) {
            if (layout.spatio_temporal)
                for (std::size_t v = 0; v < FeatureLayout::kSpatioTemporalVars; ++v)
                    for (std::size_t lag = 1; lag <= b; ++lag)
                        sample.x(p, layout.st_column(v, lag)) = (*st_series[v])(p, t - lag);
            if (layout.temporal) {
                for (std::size_t lag = 1; lag <= b; ++lag) {
                    std::size_t src = t - lag;
                    for (std::size_t c = 0; c < layout.weather_categories; ++c)
                        sample.x(p, layout.temporal_column(c, lag)) =
                            frame.weather_category[src] == c ? 1.0 : 0.0;
                    sample.x(p, layout.temporal_column(layout.weather_categories, lag)) =
                        frame.temperature[src];
                    sample.x(p, layout.temporal_column(layout.weather_categories + 1, lag)) =
                        frame.pm25[src];
                }
            }
            if (layout.context) {
                for (std::size_t k = 0; k < 3; ++k)
                    sample.x(p, layout.context_column(k)) = frame.time_of_day[t][k];
                sample.x(p, layout.context_column(3)) = frame.day_of_week[t];
                sample.x(p, layout.context_column(4)) = frame.poi[p];
            }
        }
        set.samples.push_back(std::move(sample));
    }

    if (standardizer) standardize_in_place(set, *standardizer);
    return set;
}

// Per-column mean and population standard deviation over all zones and
// training slots of the continuous columns.
inline FeatureStats fit_feature_stats(const SampleSet& train) {
    if (train.empty()) throw data_error("fit_feature_stats: empty training set");
    const std::size_t cols = train.layout.num_features();
    FeatureStats stats;
    stats.mean.assign(cols, 0.0);
    stats.divisor.assign(cols, 1.0);
    stats.passthrough.resize(cols);
    for (std::size_t c = 0; c < cols; ++c)
        stats.passthrough[c] = !train.layout.column_continuous(c);

    const std::size_t n = train.samples.front().x.extent(0);
    const double cells = static_cast<double>(train.size() * n);
    for (std::size_t c = 0; c < cols; ++c) {
        if (stats.passthrough[c]) continue;
        double sum = 0.0;
        for (const InputSample& s : train.samples)
            for (std::size_t p = 0; p < n; ++p) sum += s.x(p, c);
        const double mean = sum / cells;
        double sq = 0.0;
        for (const InputSample& s : train.samples)
            for (std::size_t p = 0; p < n; ++p) {
                double d = s.x(p, c) - mean;
                sq += d * d;
            }
        const double sd = std::sqrt(sq / cells);
        stats.mean[c] = mean;
        stats.divisor[c] = sd > 1e-12 ? sd : 1.0;
    }
    return stats;
}

struct SampleSplits {
    SampleSet train;
    SampleSet val;
    SampleSet test;
};

// Contiguous chronological partition. Counts follow the cumulative-floor
// rule: train = floor(n*tf), train+val = floor(n*(tf+vf)), remainder to test.
inline SampleSplits split_chronological(const SampleSet& all, double train_frac, double val_frac) {
    if (train_frac <= 0.0 || val_frac <= 0.0 || train_frac + val_frac >= 1.0)
        throw config_error("split: fractions must be positive with train+val < 1");
    const std::size_t n = all.size();
    const std::size_t n_train = static_cast<std::size_t>(std::floor(n * train_frac));
    const std::size_t n_trainval = static_cast<std::size_t>(std::floor(n * (train_frac + val_frac)));
    const std::size_t n_val = n_trainval - n_train;
    const std::size_t n_test = n - n_trainval;
    if (n_train == 0 || n_val == 0 || n_test == 0)
        throw data_error("split: partition would be empty (n=" + std::to_string(n) + ")");

    SampleSplits out;
    for (SampleSet* part : {&out.train, &out.val, &out.test}) {
        part->layout = all.layout;
        part->target = all.target;
    }
    out.train.samples.assign(all.samples.begin(), all.samples.begin() + n_train);
    out.val.samples.assign(all.samples.begin() + n_train, all.samples.begin() + n_trainval);
    out.test.samples.assign(all.samples.begin() + n_trainval, all.samples.end());
    return out;
}

// The standard preprocessing pipeline: assemble raw samples, split
// chronologically, fit statistics on the training split only, standardize
// all three splits in place.
struct PreparedData {
    SampleSplits splits;
    FeatureStats stats;
    std::size_t train_end_slot = 0;  // first slot not in the training period
};

inline PreparedData prepare_dataset(const ZoneSlotFrame& frame, const FeatureLayout& layout,
                                    TargetKind target, double train_frac, double val_frac) {
    SampleSet raw = build_samples(frame, layout, target);
    PreparedData out;
    out.splits = split_chronological(raw, train_frac, val_frac);
    out.stats = fit_feature_stats(out.splits.train);
    standardize_in_place(out.splits.train, out.stats);
    standardize_in_place(out.splits.val, out.stats);
    standardize_in_place(out.splits.test, out.stats);
    out.train_end_slot = out.splits.train.samples.back().slot_index + 1;
    return out;
}

}  // namespace focir

#endif
