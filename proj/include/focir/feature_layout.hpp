#ifndef FOCIR_FEATURE_LAYOUT_HPP
#define FOCIR_FEATURE_LAYOUT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "focir/errors.hpp"

namespace focir {

enum class TargetKind { demand, gap };

inline TargetKind target_from_string(const std::string& s) {
    if (s == "demand") return TargetKind::demand;
    if (s == "gap") return TargetKind::gap;
    throw config_error("unknown target '" + s + "' (expected demand or gap)");
}

inline std::string to_string(TargetKind t) {
    return t == TargetKind::demand ? "demand" : "gap";
}

// Variable groups, used for importance aggregation and column naming. The
// four spatio-temporal variables and three temporal variables collapse their
// lag columns into one group each; context features are one group apiece.
enum class FeatureGroup : int {
    demand = 0,
    supplied,
    gap,
    congestion,
    weather,
    temperature,
    pm25,
    tod_sleep,
    tod_peak,
    tod_offpeak,
    day_of_week,
    poi,
};

inline std::string to_string(FeatureGroup g) {
    switch (g) {
        case FeatureGroup::demand: return "demand";
        case FeatureGroup::supplied: return "supplied";
        case FeatureGroup::gap: return "gap";
        case FeatureGroup::congestion: return "congestion";
        case FeatureGroup::weather: return "weather";
        case FeatureGroup::temperature: return "temperature";
        case FeatureGroup::pm25: return "pm25";
        case FeatureGroup::tod_sleep: return "time_of_day_sleep";
        case FeatureGroup::tod_peak: return "time_of_day_peak";
        case FeatureGroup::tod_offpeak: return "time_of_day_offpeak";
        case FeatureGroup::day_of_week: return "day_of_week";
        case FeatureGroup::poi: return "poi";
    }
    throw config_error("unknown feature group");
}

// Canonical column map of an input sample X_t. Full order:
//   demand lags (b, lag t-1 first), supplied lags (b), gap lags (b),
//   congestion lags (b), then per lag t-1..t-b the block
//   [weather one-hot (C), temperature, pm25], then time-of-day one-hot (3),
//   day-of-week (1), poi (1).
// Feature-ablation masks drop whole blocks; the remaining columns keep the
// canonical relative order. This layout is normative and versioned in the
// model checkpoint.
struct FeatureLayout {
    std::size_t lookback = 6;
    std::size_t weather_categories = 0;  // C
    bool spatio_temporal = true;
    bool temporal = true;
    bool context = true;

    bool operator==(const FeatureLayout&) const = default;

    static constexpr std::size_t kSpatioTemporalVars = 4;  // D, S, G, TC
    static constexpr std::size_t kContextFeatures = 5;     // tod x3, dow, poi

    std::size_t temporal_channels() const { return weather_categories + 2; }

    std::size_t st_cols() const { return spatio_temporal ? kSpatioTemporalVars * lookback : 0; }
    std::size_t temporal_cols() const { return temporal ? temporal_channels() * lookback : 0; }
    std::size_t context_cols() const { return context ? kContextFeatures : 0; }
    std::size_t num_features() const { return st_cols() + temporal_cols() + context_cols(); }

    std::size_t st_begin() const { return 0; }
    std::size_t temporal_begin() const { return st_cols(); }
    std::size_t context_begin() const { return st_cols() + temporal_cols(); }

    // variable 0..3 (D,S,G,TC), lag 1..b
    std::size_t st_column(std::size_t variable, std::size_t lag) const {
        check(spatio_temporal && variable < kSpatioTemporalVars && lag >= 1 && lag <= lookback,
              "st_column");
        return variable * lookback + (lag - 1);
    }

    // channel 0..C-1 = weather one-hot, C = temperature, C+1 = pm25; lag 1..b
    std::size_t temporal_column(std::size_t channel, std::size_t lag) const {
        check(temporal && channel < temporal_channels() && lag >= 1 && lag <= lookback,
              "temporal_column");
        return temporal_begin() + (lag - 1) * temporal_channels() + channel;
    }

    // 0..2 = time-of-day one-hot, 3 = day-of-week, 4 = poi
    std::size_t context_column(std::size_t k) const {
        check(context && k < kContextFeatures, "context_column");
        return context_begin() + k;
    }

    FeatureGroup column_group(std::size_t col) const {
        if (col < st_cols())
            return static_cast<FeatureGroup>(col / lookback);
        if (col < context_begin()) {
            std::size_t channel = (col - temporal_begin()) % temporal_channels();
            if (channel < weather_categories) return FeatureGroup::weather;
            return channel == weather_categories ? FeatureGroup::temperature : FeatureGroup::pm25;
        }
        check(col < num_features(), "column_group");
        switch (col - context_begin()) {
            case 0: return FeatureGroup::tod_sleep;
            case 1: return FeatureGroup::tod_peak;
            case 2: return FeatureGroup::tod_offpeak;
            case 3: return FeatureGroup::day_of_week;
            default: return FeatureGroup::poi;
        }
    }

    // one-hot and binary columns pass through standardization untouched
    bool column_continuous(std::size_t col) const {
        switch (column_group(col)) {
            case FeatureGroup::weather:
            case FeatureGroup::tod_sleep:
            case FeatureGroup::tod_peak:
            case FeatureGroup::tod_offpeak:
            case FeatureGroup::day_of_week:
                return false;
            default:
                return true;
        }
    }

    std::string column_name(std::size_t col) const {
        if (col < st_cols()) {
            std::size_t variable = col / lookback;
            std::size_t lag = col % lookback + 1;
            return to_string(static_cast<FeatureGroup>(variable)) + "_lag" + std::to_string(lag);
        }
        if (col < context_begin()) {
            std::size_t rel = col - temporal_begin();
            std::size_t lag = rel / temporal_channels() + 1;
            std::size_t channel = rel % temporal_channels();
            if (channel < weather_categories)
                return "weather" + std::to_string(channel) + "_lag" + std::to_string(lag);
            return (channel == weather_categories ? std::string("temperature_lag")
                                                  : std::string("pm25_lag")) +
                   std::to_string(lag);
        }
        check(col < num_features(), "column_name");
        return to_string(column_group(col));
    }

    std::vector<std::string> feature_names() const {
        std::vector<std::string> names(num_features());
        for (std::size_t c = 0; c < names.size(); ++c) names[c] = column_name(c);
        return names;
    }

    // groups present under the current mask, in canonical order, with the
    // columns belonging to each
    std::vector<std::pair<FeatureGroup, std::vector<std::size_t>>> group_columns() const {
        std::vector<std::pair<FeatureGroup, std::vector<std::size_t>>> out;
        auto add = [&](FeatureGroup g) { out.emplace_back(g, std::vector<std::size_t>{}); };
        if (spatio_temporal) {
            add(FeatureGroup::demand);
            add(FeatureGroup::supplied);
            add(FeatureGroup::gap);
            add(FeatureGroup::congestion);
        }
        if (temporal) {
            add(FeatureGroup::weather);
            add(FeatureGroup::temperature);
            add(FeatureGroup::pm25);
        }
        if (context) {
            add(FeatureGroup::tod_sleep);
            add(FeatureGroup::tod_peak);
            add(FeatureGroup::tod_offpeak);
            add(FeatureGroup::day_of_week);
            add(FeatureGroup::poi);
        }
        for (std::size_t col = 0; col < num_features(); ++col) {
            FeatureGroup g = column_group(col);
            for (auto& [group, cols] : out)
                if (group == g) {
                    cols.push_back(col);
                    break;
                }
        }
        return out;
    }

    void validate() const {
        if (lookback < 1) throw config_error("feature layout: lookback must be >= 1");
        if (temporal && weather_categories == 0)
            throw config_error("feature layout: temporal block requires at least one weather category");
        if (!spatio_temporal && !temporal && !context)
            throw config_error("feature layout: all feature blocks are masked out");
    }

private:
    static void check(bool ok, const char* what) {
        if (!ok) throw data_error(std::string("feature layout: bad index in ") + what);
    }
};

}  // namespace focir

#endif
