#ifndef FOCIR_SYNTH_HPP
#define FOCIR_SYNTH_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "focir/dataset.hpp"
#include "focir/rng.hpp"

namespace focir {

// Synthetic anonymised ride-hailing data with planted structure: zones live
// on a hidden 2D grid with 4-neighbourhoods, demand anomalies diffuse to
// grid neighbours lag by lag, and the public zone ids are a seeded shuffle
// of that grid so the adjacency is anonymised like the real datasets.
struct SynthConfig {
    std::size_t n_zones = 20;
    std::size_t n_days = 10;
    std::size_t slot_minutes = 10;
    std::size_t hidden_grid_rows = 4;
    std::size_t hidden_grid_cols = 5;
    double base_demand_scale = 30.0;
    double spatial_diffusion_coeff = 0.3;  // rho, weight on neighbour anomalies
    double temporal_ar_coeff = 0.5;        // phi, weight on the zone's own anomaly
    double supply_ratio_mean = 0.85;
    double noise_std = 2.0;
    std::size_t n_weather_categories = 3;
    double congestion_coupling = 1.0;  // 0 = congestion is pure noise, 1 = tracks demand
    std::uint64_t seed = 0;
    std::size_t first_day_of_week = 0;

    void validate() const {
        if (n_zones < 1 || n_days < 1) throw config_error("synth: need zones and days");
        if (slot_minutes == 0 || 1440 % slot_minutes != 0)
            throw config_error("synth: slot_minutes must divide 1440");
        if (hidden_grid_rows * hidden_grid_cols < n_zones)
            throw config_error("synth: hidden grid smaller than zone count");
        if (base_demand_scale <= 0.0) throw config_error("synth: base_demand_scale must be positive");
        if (spatial_diffusion_coeff < 0.0 || spatial_diffusion_coeff >= 1.0)
            throw config_error("synth: spatial_diffusion_coeff must lie in [0, 1)");
        if (temporal_ar_coeff <= -1.0 || temporal_ar_coeff >= 1.0)
            throw config_error("synth: temporal_ar_coeff must lie in (-1, 1)");
        if (spatial_diffusion_coeff + std::fabs(temporal_ar_coeff) >= 1.0)
            throw config_error("synth: |phi| + rho must stay below 1 for a stable process");
        if (supply_ratio_mean <= 0.0 || supply_ratio_mean > 1.0)
            throw config_error("synth: supply_ratio_mean must lie in (0, 1]");
        if (noise_std < 0.0) throw config_error("synth: noise_std must be non-negative");
        if (n_weather_categories < 1) throw config_error("synth: need at least one weather category");
        if (congestion_coupling < 0.0 || congestion_coupling > 1.0)
            throw config_error("synth: congestion_coupling must lie in [0, 1]");
    }
};

struct SynthTruth {
    std::vector<std::size_t> public_of_hidden;  // hidden index -> public zone id
    std::vector<std::size_t> hidden_of_public;  // public zone id -> hidden index
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
    SynthConfig config;  // generating coefficients

    std::size_t hidden_row(std::size_t public_zone) const {
        return hidden_of_public[public_zone] / grid_cols;
    }
    std::size_t hidden_col(std::size_t public_zone) const {
        return hidden_of_public[public_zone] % grid_cols;
    }

    // public ids of the occupied 4-neighbourhood of a public zone
    std::vector<std::size_t> neighbors(std::size_t public_zone) const {
        std::size_t h = hidden_of_public[public_zone];
        std::size_t r = h / grid_cols, c = h % grid_cols;
        std::vector<std::size_t> out;
        auto add = [&](std::size_t rr, std::size_t cc) {
            std::size_t g = rr * grid_cols + cc;
            if (g < public_of_hidden.size()) out.push_back(public_of_hidden[g]);
        };
        if (r > 0) add(r - 1, c);
        if (r + 1 < grid_rows) add(r + 1, c);
        if (c > 0) add(r, c - 1);
        if (c + 1 < grid_cols) add(r, c + 1);
        return out;
    }
};

namespace detail {
// daily demand profile in [0.1, 1.1], low overnight, peaking around midday
inline double season(std::size_t slot_of_day, std::size_t slots_per_day) {
    double phase = 2.0 * M_PI * static_cast<double>(slot_of_day) /
                   static_cast<double>(slots_per_day);
    return 0.6 + 0.5 * std::sin(phase - M_PI / 2.0);
}
}  // namespace detail

inline std::pair<ZoneSlotFrame, SynthTruth> generate(const SynthConfig& config) {
    config.validate();
    Rng rng(config.seed);

    const std::size_t n = config.n_zones;
    SpaceTimeGrid grid = SpaceTimeGrid::create(n, config.slot_minutes, config.n_days);
    const std::size_t slots = grid.total_slots;
    const std::size_t spd = grid.slots_per_day;

    // hidden zone levels and the anonymising permutation
    std::vector<double> base(n);
    for (std::size_t h = 0; h < n; ++h)
        base[h] = config.base_demand_scale * (0.5 + rng.uniform());

    SynthTruth truth;
    truth.grid_rows = config.hidden_grid_rows;
    truth.grid_cols = config.hidden_grid_cols;
    truth.config = config;
    truth.public_of_hidden.resize(n);
    std::iota(truth.public_of_hidden.begin(), truth.public_of_hidden.end(), std::size_t{0});
    rng.shuffle(truth.public_of_hidden);
    truth.hidden_of_public.resize(n);
    for (std::size_t h = 0; h < n; ++h) truth.hidden_of_public[truth.public_of_hidden[h]] = h;

    // hidden 4-neighbourhoods
    std::vector<std::vector<std::size_t>> nbr(n);
    for (std::size_t h = 0; h < n; ++h) {
        std::size_t r = h / config.hidden_grid_cols, c = h % config.hidden_grid_cols;
        auto add = [&](std::size_t rr, std::size_t cc) {
            std::size_t g = rr * config.hidden_grid_cols + cc;
            if (g < n) nbr[h].push_back(g);
        };
        if (r > 0) add(r - 1, c);
        if (r + 1 < config.hidden_grid_rows) add(r + 1, c);
        if (c > 0) add(r, c - 1);
        if (c + 1 < config.hidden_grid_cols) add(r, c + 1);
    }

    // weather: persistent category chain; temperature and pm2.5 drift as slow
    // AR processes so the temporal series carry no intra-day clock
    std::vector<std::size_t> weather(slots, 0);
    std::vector<double> temperature(slots), pm25(slots);
    std::vector<double> weather_drop(config.n_weather_categories);
    for (std::size_t c = 0; c < config.n_weather_categories; ++c)
        weather_drop[c] = config.n_weather_categories == 1
                              ? 0.0
                              : 0.12 * static_cast<double>(c) /
                                    static_cast<double>(config.n_weather_categories - 1);
    std::size_t category = 0;
    double temp = 10.0;
    double pm = 60.0;
    for (std::size_t t = 0; t < slots; ++t) {
        if (rng.uniform() < 0.05) category = rng.index(config.n_weather_categories);
        weather[t] = category;
        temp = 10.0 + 0.98 * (temp - 10.0) + rng.normal(0.0, 0.4);
        temperature[t] = temp;
        pm = 0.95 * pm + rng.normal(3.0, 2.0);
        pm25[t] = std::max(0.0, pm);
    }

    // latent demand: deterministic trend plus an AR(1) anomaly field that
    // diffuses across hidden neighbours with one slot of lag
    auto trend = [&](std::size_t h, std::size_t t) {
        double weekend = is_weekend(grid, t, config.first_day_of_week) ? 0.75 : 1.0;
        return base[h] * (detail::season(grid.slot_of_day(t), spd) * weekend -
                          weather_drop[weather[t]]);
    };

    Tensor demand({n, slots}), supplied({n, slots}), gap({n, slots}), congestion({n, slots});
    std::vector<double> anomaly(n, 0.0), prev_anomaly(n, 0.0);
    const double tc_ref = 0.4 * config.base_demand_scale;
    for (std::size_t t = 0; t < slots; ++t) {
        std::swap(prev_anomaly, anomaly);
        for (std::size_t h = 0; h < n; ++h) {
            double neighbour_mean = 0.0;
            if (!nbr[h].empty()) {
                for (std::size_t g : nbr[h]) neighbour_mean += prev_anomaly[g];
                neighbour_mean /= static_cast<double>(nbr[h].size());
            }
            double eps = rng.normal(0.0, config.noise_std);
            anomaly[h] = t == 0 ? eps
                                : config.temporal_ar_coeff * prev_anomaly[h] +
                                      config.spatial_diffusion_coeff * neighbour_mean + eps;

            double lambda = trend(h, t) + anomaly[h];
            double d = std::round(std::max(0.0, lambda));

            double tc_noise = std::fabs(rng.normal(tc_ref, 0.5 * tc_ref));
            double tc = std::round(std::max(
                0.0, config.congestion_coupling * (0.4 * d) +
                         (1.0 - config.congestion_coupling) * tc_noise + rng.normal(0.0, 1.5)));

            // binomial-like thinning: supply rate around the mean, pressed
            // down a little by congestion
            double rate = config.supply_ratio_mean - 0.15 * (tc / (tc + tc_ref + 1.0)) +
                          rng.normal(0.0, 0.05);
            rate = std::min(1.0, std::max(0.0, rate));
            double s = std::round(rate * d);

            std::size_t p = truth.public_of_hidden[h];
            demand(p, t) = d;
            supplied(p, t) = s;
            gap(p, t) = d - s;
            congestion(p, t) = tc;
        }
    }

    ZoneSlotFrame frame;
    frame.grid = grid;
    frame.weather_categories = config.n_weather_categories;
    frame.first_day_of_week = config.first_day_of_week;
    frame.demand = std::move(demand);
    frame.supplied = std::move(supplied);
    frame.gap = std::move(gap);
    frame.congestion = std::move(congestion);
    frame.weather_category = std::move(weather);
    frame.temperature = std::move(temperature);
    frame.pm25 = std::move(pm25);
    frame.poi.resize(n);
    for (std::size_t h = 0; h < n; ++h)
        frame.poi[truth.public_of_hidden[h]] = std::round(2.0 * base[h]);
    frame.time_of_day.resize(slots);
    frame.day_of_week.resize(slots);
    for (std::size_t t = 0; t < slots; ++t) {
        frame.time_of_day[t] = time_of_day_onehot(grid, t);
        frame.day_of_week[t] = is_weekend(grid, t, config.first_day_of_week) ? 1.0 : 0.0;
    }
    frame.validate();
    return {std::move(frame), std::move(truth)};
}

// Mean correlation between each zone's deseasonalised demand and its hidden
// neighbours' series lagged by one slot. Comparing the true assignment
// against a re-permuted one shows whether the planted spatial dependency is
// detectable at all.
inline double planted_signal_score(const ZoneSlotFrame& frame, const SynthTruth& truth) {
    const std::size_t n = frame.grid.num_zones;
    const std::size_t slots = frame.grid.total_slots;
    const std::size_t spd = frame.grid.slots_per_day;

    // residuals against the per-zone slot-of-day profile
    Tensor residual({n, slots});
    for (std::size_t p = 0; p < n; ++p) {
        std::vector<double> profile(spd, 0.0), counts(spd, 0.0);
        for (std::size_t t = 0; t < slots; ++t) {
            profile[frame.grid.slot_of_day(t)] += frame.demand(p, t);
            counts[frame.grid.slot_of_day(t)] += 1.0;
        }
        for (std::size_t s = 0; s < spd; ++s)
            if (counts[s] > 0.0) profile[s] /= counts[s];
        for (std::size_t t = 0; t < slots; ++t)
            residual(p, t) = frame.demand(p, t) - profile[frame.grid.slot_of_day(t)];
    }

    auto correlation = [](const std::vector<double>& x, const std::vector<double>& y) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= static_cast<double>(x.size());
        my /= static_cast<double>(y.size());
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        if (sxx <= 0.0 || syy <= 0.0) return 0.0;
        return sxy / std::sqrt(sxx * syy);
    };

    double total = 0.0;
    std::size_t counted = 0;
    std::vector<double> own(slots - 1), lagged(slots - 1);
    for (std::size_t p = 0; p < n; ++p) {
        auto neighbors = truth.neighbors(p);
        if (neighbors.empty()) continue;
        for (std::size_t t = 1; t < slots; ++t) {
            own[t - 1] = residual(p, t);
            double m = 0.0;
            for (std::size_t q : neighbors) m += residual(q, t - 1);
            lagged[t - 1] = m / static_cast<double>(neighbors.size());
        }
        total += correlation(own, lagged);
        ++counted;
    }
    return counted ? total / static_cast<double>(counted) : 0.0;
}

// The same truth with the zone-to-cell assignment reshuffled; the baseline
// statistic for planted_signal_score.
inline SynthTruth repermuted_truth(const SynthTruth& truth, std::uint64_t seed) {
    SynthTruth out = truth;
    Rng rng(seed);
    rng.shuffle(out.public_of_hidden);
    for (std::size_t h = 0; h < out.public_of_hidden.size(); ++h)
        out.hidden_of_public[out.public_of_hidden[h]] = h;
    return out;
}

}  // namespace focir

#endif
