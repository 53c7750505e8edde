// Acceptance suite: exercises the toolkit end to end and prints one
// pass/fail line per criterion. Exit code is the number of failures.
//
//   focir_acceptance [--cli <path-to-focir-binary>]
//
// The CLI path is needed for the determinism criterion, which runs the
// actual `focir train` command twice and byte-compares the checkpoints.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "focir/focir.hpp"

namespace fs = std::filesystem;
using namespace focir;

namespace {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<CriterionResult> g_results;

void record(int id, const std::string& name, bool passed, const std::string& detail) {
    g_results.push_back({id, name, passed, detail});
    std::cout << (passed ? "PASS" : "FAIL") << " criterion " << id << " (" << name
              << "): " << detail << std::endl;
}

// ---- shared configurations -------------------------------------------------

SynthConfig acceptance_synth(std::uint64_t seed) {
    SynthConfig sc;
    sc.n_zones = 20;
    sc.n_days = 10;
    sc.slot_minutes = 10;  // 144 slots per day
    sc.hidden_grid_rows = 4;
    sc.hidden_grid_cols = 5;
    sc.base_demand_scale = 60.0;
    sc.spatial_diffusion_coeff = 0.4;
    sc.temporal_ar_coeff = 0.5;
    sc.noise_std = 2.0;
    sc.n_weather_categories = 3;
    sc.seed = seed;
    return sc;
}

// desk-scale model: full architecture, trimmed widths so a training run
// takes seconds rather than minutes
ModelConfig acceptance_model(Variant v, std::uint64_t seed) {
    ModelConfig mc;
    mc.variant = v;
    mc.lookback = 6;
    mc.conv_filters = {8, 16};
    mc.filter_length = 5;
    mc.indrnn_hidden = 8;
    mc.indrnn_layers = 2;
    mc.dense_layers = 2;
    mc.dense_units = 8;
    mc.seed = seed;
    return mc;
}

TrainConfig acceptance_train(std::uint64_t seed) {
    TrainConfig tc;
    tc.learning_rate = 0.01;
    tc.batch_size = 32;
    tc.max_epochs = 150;
    tc.patience = 40;
    tc.seed = seed;
    return tc;
}

// tiny instance used by the gradient criterion
FeatureLayout tiny_layout() {
    FeatureLayout layout;
    layout.lookback = 2;
    layout.weather_categories = 2;
    return layout;
}

FeatureStats identity_stats(const FeatureLayout& layout) {
    FeatureStats stats;
    stats.mean.assign(layout.num_features(), 0.0);
    stats.divisor.assign(layout.num_features(), 1.0);
    stats.passthrough.assign(layout.num_features(), true);
    return stats;
}

double weighted_sum(const Tensor& out, const Tensor& weights) {
    double s = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) s += out[i] * weights[i];
    return s;
}

void fill_random(Tensor& t, Rng& rng, double lo = -0.9, double hi = 0.9) {
    for (auto& v : t.values()) v = rng.uniform(lo, hi);
}

// ---- criterion 1: gradient fidelity ----------------------------------------

double layer_gradcheck_worst() {
    double worst = 0.0;
    Rng rng(301);
    const double eps = 1e-6;
    {
        FeatureImportanceLayer layer(3, 4);
        fill_random(layer.weights, rng);
        Tensor x({3, 4}), u({3, 4});
        fill_random(x, rng);
        fill_random(u, rng);
        auto scalar = [&] {
            FeatureImportanceLayer::Cache c;
            return weighted_sum(layer.forward(x, c), u);
        };
        FeatureImportanceLayer::Cache cache;
        layer.forward(x, cache);
        Tensor grad_x = layer.backward(u, cache);
        GradCheckEntry entries[] = {{"fi.weights", &layer.weights, &layer.weight_grad},
                                    {"fi.input", &x, &grad_x}};
        worst = std::max(worst, finite_difference_check(scalar, entries, eps).max_rel_error);
    }
    {
        Conv1dLayer layer(2, 3, 3, Activation::relu);
        fill_random(layer.filters, rng);
        fill_random(layer.bias, rng);
        Tensor x({3, 3}), u({3, 2});
        fill_random(x, rng);
        fill_random(u, rng);
        auto scalar = [&] {
            Conv1dLayer::Cache c;
            return weighted_sum(layer.forward(x, c), u);
        };
        Conv1dLayer::Cache cache;
        layer.forward(x, cache);
        Tensor grad_x = layer.backward(u, cache);
        GradCheckEntry entries[] = {{"conv.filters", &layer.filters, &layer.filter_grad},
                                    {"conv.bias", &layer.bias, &layer.bias_grad},
                                    {"conv.input", &x, &grad_x}};
        worst = std::max(worst, finite_difference_check(scalar, entries, eps).max_rel_error);
    }
    {
        std::vector<IndRnnLayer> stack;
        stack.emplace_back(2, 3, Activation::relu, 1.4);
        stack.emplace_back(2, 2, Activation::relu, 1.4);
        for (auto& layer : stack) {
            fill_random(layer.input_weights, rng);
            fill_random(layer.bias, rng);
            fill_random(layer.recurrent_weights, rng, 0.0, 1.3);
        }
        Tensor x({3, 3, 2}), u({3, 2});
        fill_random(x, rng);
        fill_random(u, rng);
        auto scalar = [&] {
            IndRnnStackCache c;
            return weighted_sum(zone_distributed_indrnn_forward(x, stack, c), u);
        };
        IndRnnStackCache cache;
        zone_distributed_indrnn_forward(x, stack, cache);
        Tensor grad_x = zone_distributed_indrnn_backward(u, stack, cache);
        std::vector<GradCheckEntry> entries;
        for (std::size_t l = 0; l < stack.size(); ++l) {
            entries.push_back({"indrnn.U", &stack[l].input_weights, &stack[l].input_weight_grad});
            entries.push_back(
                {"indrnn.w", &stack[l].recurrent_weights, &stack[l].recurrent_weight_grad});
            entries.push_back({"indrnn.b", &stack[l].bias, &stack[l].bias_grad});
        }
        entries.push_back({"indrnn.input", &x, &grad_x});
        worst = std::max(worst, finite_difference_check(scalar, entries, eps).max_rel_error);
    }
    {
        DenseLayer layer(2, 4, Activation::relu);
        fill_random(layer.weights, rng);
        fill_random(layer.bias, rng);
        Tensor x({3, 4}), u({3, 2});
        fill_random(x, rng);
        fill_random(u, rng);
        auto scalar = [&] {
            DenseLayer::Cache c;
            return weighted_sum(layer.forward(x, c), u);
        };
        DenseLayer::Cache cache;
        layer.forward(x, cache);
        Tensor grad_x = layer.backward(u, cache);
        GradCheckEntry entries[] = {{"dense.weights", &layer.weights, &layer.weight_grad},
                                    {"dense.bias", &layer.bias, &layer.bias_grad},
                                    {"dense.input", &x, &grad_x}};
        worst = std::max(worst, finite_difference_check(scalar, entries, eps).max_rel_error);
    }
    return worst;
}

double assembled_gradcheck_worst() {
    // N = 3, b = 2, C = 2, H = 2, filters 2,2, E = 3
    FeatureLayout layout = tiny_layout();
    ModelConfig config;
    config.variant = Variant::focir;
    config.lookback = 2;
    config.conv_filters = {2, 2};
    config.filter_length = 3;
    config.indrnn_hidden = 2;
    config.indrnn_layers = 2;
    config.dense_layers = 2;
    config.dense_units = 4;
    config.seed = 401;
    Network net = build_and_init(config, 3, layout, identity_stats(layout));
    // move zero-initialized biases off the exact relu kinks; the loss is
    // not differentiable there and finite differences straddle the corner
    Rng jitter(402);
    net.visit_params([&](const ParamRef& p) {
        for (auto& v : p.value->values()) v += jitter.uniform(-0.2, 0.2);
        if (p.kind == ParamKind::indrnn_recurrent) constrain_recurrent(*p.value, p.recurrent_bound);
    });

    Rng rng(403);
    std::vector<InputSample> batch(2);
    for (auto& s : batch) {
        s.x = Tensor({3, layout.num_features()});
        fill_random(s.x, rng, -1.0, 1.0);
        s.target = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    }

    TrainConfig tc;  // alpha = beta = 0.001, the regularized objective
    auto total_loss = [&] {
        double sq = 0.0;
        Network::Cache cache;
        for (const auto& s : batch) {
            auto pred = net.forward(s.x, cache);
            for (std::size_t p = 0; p < pred.size(); ++p) {
                double d = pred[p] - s.target[p];
                sq += d * d;
            }
        }
        return sq / static_cast<double>(batch.size() * 3) + regularization_penalty(net, tc);
    };

    net.zero_grads();
    Network::Cache cache;
    std::vector<double> grad(3);
    for (const auto& s : batch) {
        auto pred = net.forward(s.x, cache);
        for (std::size_t p = 0; p < 3; ++p)
            grad[p] = 2.0 * (pred[p] - s.target[p]) / static_cast<double>(batch.size() * 3);
        net.backward(grad, cache);
    }
    accumulate_regularization_grads(net, tc);

    std::vector<Tensor> analytic;
    net.visit_params([&](const ParamRef& p) { analytic.push_back(*p.grad); });
    std::vector<GradCheckEntry> entries;
    std::size_t i = 0;
    net.visit_params(
        [&](const ParamRef& p) { entries.push_back({p.name, p.value, &analytic[i++]}); });
    return finite_difference_check(total_loss, entries, 1e-6).max_rel_error;
}

void criterion_1() {
    double worst_layers = layer_gradcheck_worst();
    double worst_net = assembled_gradcheck_worst();
    double worst = std::max(worst_layers, worst_net);
    std::ostringstream detail;
    detail << "max relative error " << worst << " (layers " << worst_layers << ", assembled "
           << worst_net << "), tolerance 1e-5";
    record(1, "gradient fidelity", worst <= 1e-5, detail.str());
}

// ---- criterion 2: metric oracle equivalence --------------------------------

void criterion_2() {
    Rng rng(500);
    double worst = 0.0;
    bool range_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t rows = 1 + rng.index(8), cols = 1 + rng.index(8);
        Tensor o({rows, cols}), a({rows, cols});
        for (auto& v : o.values()) v = rng.uniform(-40.0, 40.0);
        for (auto& v : a.values()) v = rng.uniform(-40.0, 40.0);

        double mae_naive = 0.0, mse_naive = 0.0, smape_naive = 0.0;
        for (std::size_t i = 0; i < o.size(); ++i) {
            mae_naive += std::fabs(o[i] - a[i]);
            mse_naive += (o[i] - a[i]) * (o[i] - a[i]);
            smape_naive += std::fabs(o[i] - a[i]) / (std::fabs(o[i]) + std::fabs(a[i]) + 1.0);
        }
        mae_naive /= o.size();
        smape_naive /= o.size();
        double rmse_naive = std::sqrt(mse_naive / o.size());

        worst = std::max(worst, std::fabs(mae(o, a) - mae_naive));
        worst = std::max(worst, std::fabs(rmse(o, a) - rmse_naive));
        worst = std::max(worst, std::fabs(smape(o, a) - smape_naive));
        if (smape(o, a) >= 1.0) range_ok = false;
    }
    Tensor zeros({2, 2});
    bool zero_ok = smape(zeros, zeros) == 0.0;
    std::ostringstream detail;
    detail << "worst |difference| " << worst << " over 100 random matrices; smape(0,0)="
           << smape(zeros, zeros);
    record(2, "metric oracle equivalence", worst <= 1e-12 && range_ok && zero_ok, detail.str());
}

// ---- criterion 3: invariant suite ------------------------------------------

void criterion_3() {
    auto [frame, truth] = generate(acceptance_synth(31));

    bool counts_ok = true;
    for (std::size_t i = 0; i < frame.demand.size(); ++i)
        if (frame.gap[i] < 0.0 || frame.gap[i] > frame.demand[i] ||
            frame.supplied[i] != frame.demand[i] - frame.gap[i])
            counts_ok = false;

    // also on a frame that went through the file interface
    auto dir = fs::temp_directory_path() / "focir_acceptance_c3";
    fs::remove_all(dir);
    write_dataset_dir(frame, dir);
    IngestOptions opt;
    opt.slot_minutes = 10;
    opt.weather_categories = frame.weather_categories;
    ZoneSlotFrame reloaded = load_dataset_dir(dir, opt);
    for (std::size_t i = 0; i < reloaded.demand.size(); ++i)
        if (reloaded.supplied[i] + reloaded.gap[i] != reloaded.demand[i]) counts_ok = false;

    ModelConfig mc = acceptance_model(Variant::focir, 32);
    FeatureLayout layout = layout_for(frame, mc);
    PreparedData data = prepare_dataset(frame, layout, TargetKind::demand, 0.70, 0.15);
    Network net = build_and_init(mc, frame.grid.num_zones, layout, data.stats);

    TrainConfig tc = acceptance_train(33);
    tc.max_epochs = 50;
    tc.patience = 50;

    bool bounds_ok = true, scores_ok = true, conv_ok = true;
    std::size_t steps = 0;
    const InputSample& probe_sample = data.splits.val.samples.front();
    train(net, data.splits.train, data.splits.val, tc, [&](Network& n, std::size_t step) {
        ++steps;
        n.visit_params([&](const ParamRef& p) {
            if (p.kind == ParamKind::indrnn_recurrent)
                for (double v : p.value->values())
                    if (std::fabs(v) > p.recurrent_bound) bounds_ok = false;
        });
        Tensor scores = n.fi.scores();
        for (double s : scores.values())
            if (!(s > 0.0 && s < 1.0)) scores_ok = false;
        if (step % 100 == 0) {
            Network::Cache cache;
            n.forward(probe_sample.x, cache);
            for (const auto& conv_cache : cache.conv)
                if (conv_cache.preact.extent(0) != n.num_zones) conv_ok = false;
        }
    });

    std::ostringstream detail;
    detail << steps << " optimizer steps checked; recurrent bounds "
           << (bounds_ok ? "held" : "VIOLATED") << ", FI scores in (0,1) "
           << (scores_ok ? "held" : "VIOLATED") << ", conv zone extent "
           << (conv_ok ? "held" : "VIOLATED") << ", S+G=D "
           << (counts_ok ? "held" : "VIOLATED");
    record(3, "invariant suite", bounds_ok && scores_ok && conv_ok && counts_ok && steps > 0,
           detail.str());
}

// ---- criterion 4: determinism via the CLI ----------------------------------

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_4(const std::string& cli) {
    if (cli.empty()) {
        record(4, "determinism", false, "no --cli path given; cannot run the train command");
        return;
    }
    auto dir = fs::temp_directory_path() / "focir_acceptance_c4";
    fs::remove_all(dir);
    fs::create_directories(dir);

    std::ofstream config(dir / "config.ini");
    config << "[data]\nslot_minutes = 10\nweather_categories = 3\n"
           << "[model]\nvariant = focir\nlookback = 6\nconv_filters = 4,8\nfilter_length = 5\n"
           << "indrnn_hidden = 4\nindrnn_layers = 2\ndense_units = 8\nseed = 7\n"
           << "[train]\nlearning_rate = 0.01\nbatch_size = 32\nmax_epochs = 25\npatience = 25\n"
           << "seed = 8\n"
           << "[synth]\nn_zones = 10\nn_days = 4\nslot_minutes = 10\nhidden_grid_dims = 2x5\n"
           << "base_demand_scale = 40\nspatial_diffusion_coeff = 0.4\ntemporal_ar_coeff = 0.5\n"
           << "noise_std = 2\nn_weather_categories = 3\nseed = 9\n";
    config.close();

    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    std::string base = "--config " + (dir / "config.ini").string();
    bool ran = run("synth " + base + " --out " + (dir / "data").string()) == 0 &&
               run("train " + base + " --data " + (dir / "data").string() +
                   " --target demand --out " + (dir / "run1.ckpt").string()) == 0 &&
               run("train " + base + " --data " + (dir / "data").string() +
                   " --target demand --out " + (dir / "run2.ckpt").string()) == 0;
    if (!ran) {
        record(4, "determinism", false, "CLI invocation failed");
        return;
    }
    std::string ckpt1 = read_file(dir / "run1.ckpt");
    std::string ckpt2 = read_file(dir / "run2.ckpt");
    bool identical = !ckpt1.empty() && ckpt1 == ckpt2;

    // checkpoint round trip: reload, re-save, compare bytes and predictions
    Network net = load_checkpoint(dir / "run1.ckpt");
    save_checkpoint(net, dir / "resaved.ckpt");
    bool resave_ok = read_file(dir / "resaved.ckpt") == ckpt1;

    IngestOptions opt;
    opt.slot_minutes = 10;
    opt.weather_categories = 3;
    ZoneSlotFrame frame = load_dataset_dir(dir / "data", opt);
    SampleSet samples = build_samples(frame, net.layout, net.config.target, &net.standardizer);
    Network reloaded = load_checkpoint(dir / "resaved.ckpt");
    bool preds_ok = true;
    for (std::size_t i = 0; i < samples.size(); i += 97)
        if (net.predict(samples.samples[i].x) != reloaded.predict(samples.samples[i].x))
            preds_ok = false;

    std::ostringstream detail;
    detail << "two train runs byte-identical: " << (identical ? "yes" : "NO")
           << "; save/load/save byte-identical: " << (resave_ok ? "yes" : "NO")
           << "; forward outputs bitwise equal: " << (preds_ok ? "yes" : "NO");
    record(4, "determinism", identical && resave_ok && preds_ok, detail.str());
}

// ---- criteria 5-7: synthetic learning experiments --------------------------

struct SeedOutcome {
    double focir_demand_rmse = 0.0;
    double focir_gap_rmse = 0.0;
    double persistence_demand_rmse = 0.0;
    double persistence_gap_rmse = 0.0;
    double fin_rmse = 0.0;
    double masked_rmse = 0.0;
};

SeedOutcome run_seed_experiments(std::uint64_t seed) {
    SeedOutcome out;
    auto [frame, truth] = generate(acceptance_synth(seed));
    for (TargetKind target : {TargetKind::demand, TargetKind::gap}) {
        ModelConfig mc = acceptance_model(Variant::focir, seed);
        mc.target = target;
        FeatureLayout layout = layout_for(frame, mc);
        PreparedData data = prepare_dataset(frame, layout, target, 0.70, 0.15);
        Network net = build_and_init(mc, frame.grid.num_zones, layout, data.stats);
        train(net, data.splits.train, data.splits.val, acceptance_train(seed + 1));
        double model_rmse = evaluate(net, data.splits.test, "focir").rmse;
        double pers_rmse = evaluate_baseline(persistence_baseline(frame, target),
                                             data.splits.test, "persistence")
                               .rmse;
        if (target == TargetKind::demand) {
            out.focir_demand_rmse = model_rmse;
            out.persistence_demand_rmse = pers_rmse;

            ModelConfig fin_cfg = acceptance_model(Variant::fin, seed);
            Network fin_net = build_and_init(fin_cfg, frame.grid.num_zones, layout, data.stats);
            train(fin_net, data.splits.train, data.splits.val, acceptance_train(seed + 2));
            out.fin_rmse = evaluate(fin_net, data.splits.test, "fin").rmse;

            FeatureMask mask{"temporal+context", false, true, true};
            FeatureLayout masked = layout_for(frame, mc, &mask);
            PreparedData masked_data = prepare_dataset(frame, masked, target, 0.70, 0.15);
            ModelConfig masked_cfg = acceptance_model(Variant::focir, seed);
            Network masked_net =
                build_and_init(masked_cfg, frame.grid.num_zones, masked, masked_data.stats);
            train(masked_net, masked_data.splits.train, masked_data.splits.val,
                  acceptance_train(seed + 3));
            out.masked_rmse = evaluate(masked_net, masked_data.splits.test, "masked").rmse;
        } else {
            out.focir_gap_rmse = model_rmse;
            out.persistence_gap_rmse = pers_rmse;
        }
    }
    return out;
}

void criteria_5_6_7() {
    auto start = std::chrono::steady_clock::now();
    std::vector<SeedOutcome> outcomes;
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) outcomes.push_back(run_seed_experiments(seed));
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // criterion 5: beat persistence on both targets, every seed, under budget
    bool beats = true;
    std::ostringstream d5;
    d5.precision(4);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const SeedOutcome& o = outcomes[i];
        if (o.focir_demand_rmse >= o.persistence_demand_rmse ||
            o.focir_gap_rmse >= o.persistence_gap_rmse)
            beats = false;
        d5 << (i ? "; " : "") << "seed" << i + 1 << " demand " << o.focir_demand_rmse << "<"
           << o.persistence_demand_rmse << " gap " << o.focir_gap_rmse << "<"
           << o.persistence_gap_rmse;
    }
    d5 << "; runtime " << elapsed << "s (budget 600s)";
    record(5, "learning beats persistence 3/3 seeds", beats && elapsed < 600.0, d5.str());

    // criterion 6: mean FOCIR rmse <= mean FIN rmse
    double focir_mean = 0.0, fin_mean = 0.0;
    for (const auto& o : outcomes) {
        focir_mean += o.focir_demand_rmse / outcomes.size();
        fin_mean += o.fin_rmse / outcomes.size();
    }
    std::ostringstream d6;
    d6.precision(4);
    d6 << "mean RMSE focir " << focir_mean << " vs fin " << fin_mean;
    record(6, "spatial-structure ablation", focir_mean <= fin_mean, d6.str());

    // criterion 7: dropping spatio-temporal features at least doubles rmse
    double masked_mean = 0.0;
    for (const auto& o : outcomes) masked_mean += o.masked_rmse / outcomes.size();
    double ratio = masked_mean / focir_mean;
    std::ostringstream d7;
    d7.precision(4);
    d7 << "mean RMSE temporal+context " << masked_mean << " vs full " << focir_mean << " (ratio "
       << ratio << ", need >= 2)";
    record(7, "feature ablation", ratio >= 2.0, d7.str());
}

// ---- criterion 8: importance sanity ----------------------------------------

void criterion_8() {
    bool ranked_ok = true;
    std::ostringstream detail;
    detail.precision(4);
    for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
        SynthConfig sc = acceptance_synth(seed);
        sc.congestion_coupling = 0.0;  // congestion becomes pure noise
        auto [frame, truth] = generate(sc);
        ModelConfig mc = acceptance_model(Variant::focir, seed);
        FeatureLayout layout = layout_for(frame, mc);
        PreparedData data = prepare_dataset(frame, layout, TargetKind::demand, 0.70, 0.15);
        Network net = build_and_init(mc, frame.grid.num_zones, layout, data.stats);
        TrainConfig tc = acceptance_train(seed + 1);
        tc.max_epochs = 250;
        tc.patience = 80;
        tc.l1_beta = 0.003;  // sharpen the gate sparsity for the ranking probe
        train(net, data.splits.train, data.splits.val, tc);

        ImportanceReport report = extract_importance(net);
        double demand_score = 0.0, congestion_score = 0.0;
        auto groups = net.layout.group_columns();
        for (const auto& [group, cols] : groups) {
            double s = 0.0;
            for (std::size_t c : cols) s += report.spatial_avg[c];
            s /= static_cast<double>(cols.size());
            if (group == FeatureGroup::demand) demand_score = s;
            if (group == FeatureGroup::congestion) congestion_score = s;
        }
        if (!(congestion_score < demand_score)) ranked_ok = false;
        detail << "seed " << seed << ": demand " << demand_score << " vs noise congestion "
               << congestion_score << "; ";
    }
    record(8, "importance ranks noise below demand", ranked_ok, detail.str());
}

// ---- criterion 9: equivariance properties ----------------------------------

void criterion_9() {
    Rng rng(900);
    double worst = 0.0;

    // interior zone-shift equivariance of conv1d
    {
        const std::size_t n = 9, f = 4, e = 5, k = 3;
        Conv1dLayer layer(k, e, f, Activation::relu);
        fill_random(layer.filters, rng);
        fill_random(layer.bias, rng);
        Tensor x({n, f});
        fill_random(x, rng);
        Tensor shifted({n, f});
        for (std::size_t p = 1; p < n; ++p)
            for (std::size_t j = 0; j < f; ++j) shifted(p, j) = x(p - 1, j);
        Conv1dLayer::Cache c1, c2;
        Tensor out = layer.forward(x, c1);
        Tensor out_shifted = layer.forward(shifted, c2);
        const std::size_t pad = (e - 1) / 2;
        for (std::size_t p = pad; p + pad < n; ++p)
            for (std::size_t kk = 0; kk < k; ++kk)
                worst = std::max(worst, std::fabs(out_shifted(p, kk) - out(p - 1, kk)));
    }

    // full zone-permutation equivariance of the zone-distributed IndRNN path
    {
        FeatureLayout layout;
        layout.lookback = 4;
        layout.weather_categories = 2;
        ModelConfig mc = acceptance_model(Variant::indrnn_only, 901);
        mc.lookback = 4;
        const std::size_t n = 7;
        Network net = build_and_init(mc, n, layout, identity_stats(layout));
        Tensor x({n, layout.num_features()});
        fill_random(x, rng, -1.0, 1.0);
        std::vector<std::size_t> perm{5, 3, 6, 0, 2, 4, 1};
        Tensor permuted({n, layout.num_features()});
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t c = 0; c < layout.num_features(); ++c)
                permuted(p, c) = x(perm[p], c);
        auto pred = net.predict(x);
        auto pred_perm = net.predict(permuted);
        for (std::size_t p = 0; p < n; ++p)
            worst = std::max(worst, std::fabs(pred_perm[p] - pred[perm[p]]));
    }

    std::ostringstream detail;
    detail << "worst deviation " << worst << " (tolerance 1e-12)";
    record(9, "equivariance properties", worst <= 1e-12, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--cli" && i + 1 < argc) cli = argv[++i];
    }

    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4(cli);
        criteria_5_6_7();
        criterion_8();
        criterion_9();
    } catch (const std::exception& e) {
        std::cout << "FAIL acceptance suite aborted: " << e.what() << std::endl;
        return 99;
    }

    int failures = 0;
    for (const auto& r : g_results)
        if (!r.passed) ++failures;
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures;
}
