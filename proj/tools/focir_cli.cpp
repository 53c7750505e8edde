// Command-line front end: generate or ingest data, train, evaluate, ablate,
// extract importance scores, and predict. One config file drives every
// command; --set flags override file keys.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "focir/focir.hpp"

namespace fs = std::filesystem;
using namespace focir;

namespace {

void print_frame_summary(const ZoneSlotFrame& frame) {
    double orders = 0.0, gaps = 0.0;
    for (std::size_t i = 0; i < frame.demand.size(); ++i) {
        orders += frame.demand[i];
        gaps += frame.gap[i];
    }
    std::cout << "zones=" << frame.grid.num_zones << " slots=" << frame.grid.total_slots
              << " days=" << frame.grid.num_days << " weather_categories="
              << frame.weather_categories << " total_orders=" << static_cast<long long>(orders)
              << " gap_fraction=" << (orders > 0.0 ? gaps / orders : 0.0) << '\n';
}

IngestOptions ingest_options(const RunConfig& config) {
    IngestOptions opt;
    opt.num_zones = config.data.num_zones;
    opt.slot_minutes = config.data.slot_minutes;
    opt.num_days = config.data.num_days;
    opt.weather_categories = config.data.weather_categories;
    opt.first_day_of_week = config.data.first_day_of_week;
    return opt;
}

struct EvalData {
    PreparedData prepared;
    ZoneSlotFrame frame;
};

// Rebuilds the checkpoint's sample pipeline on a data directory: same layout,
// same target, and the checkpoint's own standardizer statistics.
EvalData prepare_for_network(const Network& net, const RunConfig& config, const fs::path& data_dir) {
    EvalData out;
    out.frame = load_dataset_dir(data_dir, ingest_options(config));
    SampleSet raw = build_samples(out.frame, net.layout, net.config.target);
    out.prepared.splits = split_chronological(raw, config.data.train_frac, config.data.val_frac);
    out.prepared.stats = net.standardizer;
    standardize_in_place(out.prepared.splits.train, net.standardizer);
    standardize_in_place(out.prepared.splits.val, net.standardizer);
    standardize_in_place(out.prepared.splits.test, net.standardizer);
    out.prepared.train_end_slot = out.prepared.splits.train.samples.back().slot_index + 1;
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"FOCIR-Net spatio-temporal demand/gap forecasting toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // --config/--set may follow the subcommand

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path, "run config file (sections [data] [model] [train] [synth])")
        ->envname("FOCIR_CONFIG");
    app.add_option("--set", overrides, "override a config key, e.g. --set train.seed=7")
        ->take_all();

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset directory");
    std::string synth_out;
    synth_cmd->add_option("-o,--out", synth_out, "output directory")->required();

    auto* ingest_cmd = app.add_subcommand("ingest", "aggregate and validate a raw data directory");
    std::string ingest_dir;
    ingest_cmd->add_option("-d,--data", ingest_dir, "data directory")->required();

    auto* train_cmd = app.add_subcommand("train", "train the configured model");
    std::string train_dir, train_target, train_out, train_log_path;
    train_cmd->add_option("-d,--data", train_dir, "data directory")->required();
    train_cmd->add_option("-t,--target", train_target, "prediction target: demand or gap");
    train_cmd->add_option("-o,--out", train_out, "checkpoint output path")->required();
    train_cmd->add_option("--log", train_log_path,
                          "per-epoch loss log path (default: <out>.log.csv)");

    auto* eval_cmd = app.add_subcommand("evaluate", "test-split metrics for a checkpoint plus baselines");
    std::string eval_ckpt, eval_dir, eval_out;
    eval_cmd->add_option("--checkpoint", eval_ckpt, "model checkpoint")->required();
    eval_cmd->add_option("-d,--data", eval_dir, "data directory")->required();
    eval_cmd->add_option("-o,--out", eval_out, "metrics csv output path");

    auto* ablate_cmd = app.add_subcommand("ablate", "run the model or feature ablation matrix");
    std::string ablate_dir, ablate_mode = "model", ablate_out;
    ablate_cmd->add_option("-d,--data", ablate_dir, "data directory")->required();
    ablate_cmd->add_option("-m,--mode", ablate_mode, "model or feature")
        ->check(CLI::IsMember({"model", "feature"}));
    ablate_cmd->add_option("-o,--out", ablate_out, "matrix csv output path")->required();

    auto* imp_cmd = app.add_subcommand("importance", "write importance score tables for a checkpoint");
    std::string imp_ckpt, imp_prefix;
    imp_cmd->add_option("--checkpoint", imp_ckpt, "model checkpoint")->required();
    imp_cmd->add_option("-o,--out-prefix", imp_prefix, "output prefix")->required();

    auto* predict_cmd = app.add_subcommand("predict", "per-zone prediction for one time-slot");
    std::string predict_ckpt, predict_dir, predict_out;
    std::size_t predict_slot = 0;
    bool clamp_zero = false;
    predict_cmd->add_option("--checkpoint", predict_ckpt, "model checkpoint")->required();
    predict_cmd->add_option("-d,--data", predict_dir, "data directory")->required();
    predict_cmd->add_option("-s,--slot", predict_slot, "slot index to predict")->required();
    predict_cmd->add_flag("--clamp-zero", clamp_zero, "clamp the report (not the metrics) at zero");
    predict_cmd->add_option("-o,--out", predict_out, "prediction csv output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems exit 1; --help exits 0
    }

    RunConfig config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    for (const std::string& assignment : overrides) apply_config_override(config, assignment);
    config.data.validate();

    if (synth_cmd->parsed()) {
        auto [frame, truth] = generate(config.synth);
        write_dataset_dir(frame, synth_out);
        write_truth_csv(fs::path(synth_out) / kTruthFile, truth);
        print_frame_summary(frame);
        return 0;
    }

    if (ingest_cmd->parsed()) {
        ZoneSlotFrame frame = load_dataset_dir(ingest_dir, ingest_options(config));
        print_frame_summary(frame);
        return 0;
    }

    if (train_cmd->parsed()) {
        if (!train_target.empty()) config.model.target = target_from_string(train_target);
        ZoneSlotFrame frame = load_dataset_dir(train_dir, ingest_options(config));
        FeatureLayout layout;
        layout.lookback = config.model.lookback;
        layout.weather_categories = frame.weather_categories;
        PreparedData data = prepare_dataset(frame, layout, config.model.target,
                                            config.data.train_frac, config.data.val_frac);
        Network net = build_and_init(config.model, frame.grid.num_zones, layout, data.stats);
        TrainLog log = train(net, data.splits.train, data.splits.val, config.train);
        save_checkpoint(net, train_out);
        if (train_log_path.empty()) train_log_path = train_out + ".log.csv";
        write_train_log_csv(train_log_path, log);
        std::cout << "trained variant=" << to_string(config.model.variant)
                  << " target=" << to_string(config.model.target) << " epochs=" << log.epochs.size()
                  << " best_epoch=" << log.best_epoch << " best_val_loss=" << log.best_val_loss
                  << " (" << log.stop_reason << ")\n";
        std::cout << "checkpoint written to " << train_out << '\n';
        return 0;
    }

    if (eval_cmd->parsed()) {
        Network net = load_checkpoint(eval_ckpt);
        EvalData data = prepare_for_network(net, config, eval_dir);
        const SampleSet& test = data.prepared.splits.test;

        std::vector<MetricsReport> reports;
        reports.push_back(evaluate(net, test, to_string(net.config.variant)));
        reports.push_back(evaluate_baseline(
            persistence_baseline(data.frame, net.config.target, net.layout.lookback), test,
            "persistence"));
        reports.push_back(evaluate_baseline(
            historical_average_baseline(data.frame, net.config.target,
                                        data.prepared.train_end_slot),
            test, "historical_average"));

        std::cout << "model,target,mae,rmse,smape\n";
        for (const MetricsReport& r : reports)
            std::cout << r.model_id << ',' << to_string(r.target) << ','
                      << detail::report_number(r.mae) << ',' << detail::report_number(r.rmse)
                      << ',' << detail::report_number(r.smape) << '\n';
        if (!eval_out.empty()) write_metrics_csv(eval_out, reports);
        return 0;
    }

    if (ablate_cmd->parsed()) {
        ZoneSlotFrame frame = load_dataset_dir(ablate_dir, ingest_options(config));
        AblationMatrix matrix =
            ablate_mode == "model"
                ? run_model_ablation(frame, config.model, config.train, config.data.train_frac,
                                     config.data.val_frac)
                : run_feature_ablation(frame, config.model, config.train, config.data.train_frac,
                                       config.data.val_frac);
        write_metrics_csv(ablate_out, matrix.rows);
        std::cout << "model,target,mae,rmse,smape\n";
        for (const MetricsReport& r : matrix.rows)
            std::cout << r.model_id << ',' << to_string(r.target) << ','
                      << detail::report_number(r.mae) << ',' << detail::report_number(r.rmse)
                      << ',' << detail::report_number(r.smape) << '\n';
        return 0;
    }

    if (imp_cmd->parsed()) {
        Network net = load_checkpoint(imp_ckpt);
        ImportanceReport report = extract_importance(net);
        write_importance_spatial_csv(imp_prefix + "_spatial.csv", report);
        write_importance_temporal_csv(imp_prefix + "_temporal.csv", report);
        std::cout << "top features by spatially averaged importance:\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(10, report.ranking.size()); ++i) {
            std::size_t idx = report.ranking[i];
            std::cout << "  " << report.feature_names[idx] << " " << report.spatial_avg[idx]
                      << '\n';
        }
        return 0;
    }

    if (predict_cmd->parsed()) {
        Network net = load_checkpoint(predict_ckpt);
        if (predict_slot < net.layout.lookback)
            throw config_error("slot " + std::to_string(predict_slot) +
                               " has insufficient lookback (need >= " +
                               std::to_string(net.layout.lookback) + ")");
        ZoneSlotFrame frame = load_dataset_dir(predict_dir, ingest_options(config));
        if (predict_slot >= frame.grid.total_slots)
            throw config_error("slot " + std::to_string(predict_slot) + " outside the data range");
        SampleSet samples = build_samples(frame, net.layout, net.config.target, &net.standardizer);
        const InputSample& sample = samples.samples.at(predict_slot - net.layout.lookback);
        std::vector<double> prediction = net.predict(sample.x);
        if (clamp_zero)
            for (double& v : prediction) v = std::max(0.0, v);
        std::cout << "zone,prediction\n";
        for (std::size_t p = 0; p < prediction.size(); ++p)
            std::cout << p << ',' << detail::report_number(prediction[p]) << '\n';
        if (!predict_out.empty()) write_predictions_csv(predict_out, prediction);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
