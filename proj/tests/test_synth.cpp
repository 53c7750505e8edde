#include <catch2/catch_amalgamated.hpp>

#include "focir/dataset_io.hpp"
#include "focir/reports.hpp"
#include "focir/synth.hpp"
#include "test_util.hpp"

using namespace focir;

namespace {

SynthConfig quick_config(std::uint64_t seed = 1) {
    SynthConfig config;
    config.n_zones = 12;
    config.n_days = 4;
    config.slot_minutes = 30;  // 48 slots per day
    config.hidden_grid_rows = 3;
    config.hidden_grid_cols = 4;
    config.base_demand_scale = 25.0;
    config.spatial_diffusion_coeff = 0.4;
    config.temporal_ar_coeff = 0.4;
    config.noise_std = 2.0;
    config.seed = seed;
    return config;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed", "[synth]") {
    auto [frame_a, truth_a] = generate(quick_config(5));
    auto [frame_b, truth_b] = generate(quick_config(5));
    REQUIRE(frame_a.demand == frame_b.demand);
    REQUIRE(frame_a.congestion == frame_b.congestion);
    REQUIRE(frame_a.weather_category == frame_b.weather_category);
    REQUIRE(truth_a.public_of_hidden == truth_b.public_of_hidden);

    auto [frame_c, truth_c] = generate(quick_config(6));
    REQUIRE(frame_a.demand != frame_c.demand);
}

TEST_CASE("generated frames satisfy the count invariants", "[synth]") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto [frame, truth] = generate(quick_config(seed));
        REQUIRE_NOTHROW(frame.validate());
        for (std::size_t i = 0; i < frame.demand.size(); ++i) {
            REQUIRE(frame.gap[i] >= 0.0);
            REQUIRE(frame.gap[i] <= frame.demand[i]);
            REQUIRE(frame.supplied[i] == frame.demand[i] - frame.gap[i]);
            REQUIRE(frame.demand[i] == std::floor(frame.demand[i]));
        }
    }
}

TEST_CASE("the zone permutation is a bijection", "[synth]") {
    auto [frame, truth] = generate(quick_config(9));
    std::vector<bool> seen(truth.public_of_hidden.size(), false);
    for (std::size_t h = 0; h < truth.public_of_hidden.size(); ++h) {
        std::size_t p = truth.public_of_hidden[h];
        REQUIRE_FALSE(seen[p]);
        seen[p] = true;
        REQUIRE(truth.hidden_of_public[p] == h);
    }
}

TEST_CASE("degenerate coefficients give deterministic seasonality", "[synth]") {
    SynthConfig config = quick_config(3);
    config.spatial_diffusion_coeff = 0.0;
    config.temporal_ar_coeff = 0.0;
    config.noise_std = 0.0;
    auto [frame, truth] = generate(config);
    // demand is a pure function of (zone, slot-of-day, weekend flag, weather)
    const auto& grid = frame.grid;
    for (std::size_t p = 0; p < config.n_zones; ++p)
        for (std::size_t t1 = 0; t1 < grid.total_slots; ++t1)
            for (std::size_t t2 = t1 + grid.slots_per_day; t2 < grid.total_slots;
                 t2 += grid.slots_per_day) {
                if (grid.slot_of_day(t1) != grid.slot_of_day(t2)) continue;
                bool same_context =
                    frame.day_of_week[t1] == frame.day_of_week[t2] &&
                    frame.weather_category[t1] == frame.weather_category[t2];
                if (same_context) REQUIRE(frame.demand(p, t1) == frame.demand(p, t2));
            }
}

TEST_CASE("planted spatial signal is detectable", "[synth]") {
    SECTION("rho = 0 scores like a random permutation") {
        SynthConfig config = quick_config(11);
        config.spatial_diffusion_coeff = 0.0;
        auto [frame, truth] = generate(config);
        double true_score = planted_signal_score(frame, truth);
        double random_score = planted_signal_score(frame, repermuted_truth(truth, 123));
        REQUIRE(std::abs(true_score - random_score) < 0.15);
    }
    SECTION("rho = 0.5 beats the random permutation and the rho = 0 score") {
        for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
            SynthConfig coupled = quick_config(seed);
            coupled.spatial_diffusion_coeff = 0.5;
            coupled.temporal_ar_coeff = 0.3;
            auto [frame, truth] = generate(coupled);
            double true_score = planted_signal_score(frame, truth);
            double random_score = planted_signal_score(frame, repermuted_truth(truth, seed * 7));

            SynthConfig uncoupled = coupled;
            uncoupled.spatial_diffusion_coeff = 0.0;
            auto [frame0, truth0] = generate(uncoupled);
            double zero_score = planted_signal_score(frame0, truth0);

            INFO("seed " << seed << " true " << true_score << " random " << random_score
                         << " zero " << zero_score);
            REQUIRE(true_score > random_score);
            REQUIRE(true_score > zero_score);
        }
    }
    SECTION("score is invariant under a consistent relabeling") {
        auto [frame, truth] = generate(quick_config(31));
        const std::size_t n = frame.grid.num_zones;
        // relabel public zone p -> (p + 3) mod n in both the frame and truth
        std::vector<std::size_t> relabel(n);
        for (std::size_t p = 0; p < n; ++p) relabel[p] = (p + 3) % n;

        ZoneSlotFrame renamed = frame;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t t = 0; t < frame.grid.total_slots; ++t) {
                renamed.demand(relabel[p], t) = frame.demand(p, t);
                renamed.supplied(relabel[p], t) = frame.supplied(p, t);
                renamed.gap(relabel[p], t) = frame.gap(p, t);
                renamed.congestion(relabel[p], t) = frame.congestion(p, t);
            }
            renamed.poi[relabel[p]] = frame.poi[p];
        }
        SynthTruth renamed_truth = truth;
        for (std::size_t h = 0; h < n; ++h)
            renamed_truth.public_of_hidden[h] = relabel[truth.public_of_hidden[h]];
        for (std::size_t h = 0; h < n; ++h)
            renamed_truth.hidden_of_public[renamed_truth.public_of_hidden[h]] = h;

        REQUIRE(planted_signal_score(renamed, renamed_truth) ==
                Catch::Approx(planted_signal_score(frame, truth)).margin(1e-12));
    }
}

TEST_CASE("congestion coupling knob", "[synth]") {
    SynthConfig coupled = quick_config(41);
    coupled.congestion_coupling = 1.0;
    auto [frame_c, truth_c] = generate(coupled);

    SynthConfig decoupled = quick_config(41);
    decoupled.congestion_coupling = 0.0;
    auto [frame_d, truth_d] = generate(decoupled);

    auto corr = [](const Tensor& a, const Tensor& b) {
        double ma = 0, mb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            ma += a[i];
            mb += b[i];
        }
        ma /= a.size();
        mb /= b.size();
        double sab = 0, saa = 0, sbb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            sab += (a[i] - ma) * (b[i] - mb);
            saa += (a[i] - ma) * (a[i] - ma);
            sbb += (b[i] - mb) * (b[i] - mb);
        }
        return sab / std::sqrt(saa * sbb);
    };
    REQUIRE(corr(frame_c.congestion, frame_c.demand) > 0.9);
    REQUIRE(std::abs(corr(frame_d.congestion, frame_d.demand)) < 0.2);
}

TEST_CASE("synthetic files round-trip through ingestion", "[synth]") {
    auto [frame, truth] = generate(quick_config(51));
    auto dir = testutil::scratch_dir("synth_io");
    write_dataset_dir(frame, dir);
    write_truth_csv(dir / kTruthFile, truth);

    IngestOptions opt;
    opt.slot_minutes = 30;
    opt.num_days = 4;
    opt.weather_categories = frame.weather_categories;
    ZoneSlotFrame loaded = load_dataset_dir(dir, opt);
    REQUIRE(loaded.demand == frame.demand);
    REQUIRE(loaded.supplied == frame.supplied);
    REQUIRE(loaded.gap == frame.gap);
    REQUIRE(loaded.congestion == frame.congestion);
    REQUIRE(loaded.temperature == frame.temperature);
    REQUIRE(loaded.pm25 == frame.pm25);
    REQUIRE(loaded.poi == frame.poi);
}

TEST_CASE("config validation", "[synth]") {
    SynthConfig config = quick_config();
    config.n_days = 0;
    REQUIRE_THROWS_AS(generate(config), config_error);
    config = quick_config();
    config.hidden_grid_rows = 1;
    config.hidden_grid_cols = 2;
    REQUIRE_THROWS_AS(generate(config), config_error);
    config = quick_config();
    config.spatial_diffusion_coeff = 1.0;
    REQUIRE_THROWS_AS(generate(config), config_error);
    config = quick_config();
    config.supply_ratio_mean = 0.0;
    REQUIRE_THROWS_AS(generate(config), config_error);
    config = quick_config();
    config.spatial_diffusion_coeff = 0.6;
    config.temporal_ar_coeff = 0.5;
    REQUIRE_THROWS_AS(generate(config), config_error);
}
