#ifndef FOCIR_REPORTS_HPP
#define FOCIR_REPORTS_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>

#include "focir/metrics.hpp"
#include "focir/network.hpp"
#include "focir/synth.hpp"
#include "focir/training.hpp"

namespace focir {

namespace detail {
inline std::string report_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::ofstream open_report(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path.string());
    return out;
}
}  // namespace detail

inline void write_metrics_csv(const std::filesystem::path& path,
                              std::span<const MetricsReport> reports) {
    auto out = detail::open_report(path);
    out << "model,target,mae,rmse,smape\n";
    for (const MetricsReport& r : reports)
        out << r.model_id << ',' << to_string(r.target) << ',' << detail::report_number(r.mae)
            << ',' << detail::report_number(r.rmse) << ',' << detail::report_number(r.smape)
            << '\n';
}

inline void write_train_log_csv(const std::filesystem::path& path, const TrainLog& log) {
    auto out = detail::open_report(path);
    out << "epoch,train_loss,val_loss\n";
    for (const TrainLog::EpochEntry& e : log.epochs)
        out << e.epoch << ',' << detail::report_number(e.train_loss) << ','
            << detail::report_number(e.val_loss) << '\n';
}

// spatially averaged importance, one row per feature, best first
inline void write_importance_spatial_csv(const std::filesystem::path& path,
                                         const ImportanceReport& report) {
    auto out = detail::open_report(path);
    out << "feature,score\n";
    for (std::size_t idx : report.ranking)
        out << report.feature_names[idx] << ',' << detail::report_number(report.spatial_avg[idx])
            << '\n';
}

// temporally averaged importance, one row per zone and feature group
inline void write_importance_temporal_csv(const std::filesystem::path& path,
                                          const ImportanceReport& report) {
    auto out = detail::open_report(path);
    out << "zone,group,score\n";
    for (std::size_t p = 0; p < report.temporal_avg.extent(0); ++p)
        for (std::size_t g = 0; g < report.temporal_avg.extent(1); ++g)
            out << p << ',' << report.group_names[g] << ','
                << detail::report_number(report.temporal_avg(p, g)) << '\n';
}

inline void write_predictions_csv(const std::filesystem::path& path,
                                  std::span<const double> predictions) {
    auto out = detail::open_report(path);
    out << "zone,prediction\n";
    for (std::size_t p = 0; p < predictions.size(); ++p)
        out << p << ',' << detail::report_number(predictions[p]) << '\n';
}

// verification-only file mapping public zone ids back to hidden grid cells;
// training code paths never read it
inline void write_truth_csv(const std::filesystem::path& path, const SynthTruth& truth) {
    auto out = detail::open_report(path);
    out << "zone_id,hidden_row,hidden_col\n";
    for (std::size_t p = 0; p < truth.hidden_of_public.size(); ++p)
        out << p << ',' << truth.hidden_row(p) << ',' << truth.hidden_col(p) << '\n';
}

}  // namespace focir

#endif
