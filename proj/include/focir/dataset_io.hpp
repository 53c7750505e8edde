#ifndef FOCIR_DATASET_IO_HPP
#define FOCIR_DATASET_IO_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "focir/dataset.hpp"
#include "focir/errors.hpp"

namespace focir {

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
        fields.back().pop_back();
    return fields;
}

inline double parse_double(const std::string& s, const std::string& file, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw data_error(file + ":" + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

inline long long parse_int(const std::string& s, const std::string& file, std::size_t line_no) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw data_error(file + ":" + std::to_string(line_no) + ": bad integer '" + s + "'");
    return v;
}

class DelimitedReader {
public:
    DelimitedReader(const std::filesystem::path& path, const std::string& expected_header)
        : path_(path.string()), in_(path) {
        if (!in_) throw data_error("cannot open " + path_);
        std::string header;
        if (!std::getline(in_, header)) throw data_error(path_ + ": empty file");
        if (!header.empty() && header.back() == '\r') header.pop_back();
        if (header != expected_header)
            throw data_error(path_ + ": expected header '" + expected_header + "', got '" + header +
                             "'");
        line_no_ = 1;
    }

    std::optional<std::vector<std::string>> next(std::size_t n_fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line.empty() || line == "\r") continue;
            auto fields = split_fields(line);
            if (fields.size() != n_fields)
                throw data_error(path_ + ":" + std::to_string(line_no_) + ": expected " +
                                 std::to_string(n_fields) + " fields, got " +
                                 std::to_string(fields.size()));
            return fields;
        }
        return std::nullopt;
    }

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_no_; }

private:
    std::string path_;
    std::ifstream in_;
    std::size_t line_no_ = 0;
};

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace detail

struct IngestOptions {
    std::size_t num_zones = 0;           // 0 = infer from files
    std::size_t slot_minutes = 10;
    std::size_t num_days = 0;            // 0 = infer from max slot index
    std::size_t weather_categories = 0;  // 0 = infer from max category
    std::size_t first_day_of_week = 0;   // 0 = Monday
};

inline const char* kOrdersFile = "orders.csv";
inline const char* kCongestionFile = "congestion.csv";
inline const char* kWeatherFile = "weather.csv";
inline const char* kPoiFile = "poi.csv";
inline const char* kTruthFile = "truth.csv";

inline std::vector<OrderRecord> read_orders(const std::filesystem::path& path) {
    detail::DelimitedReader reader(path, "zone_id,slot_index,matched");
    std::vector<OrderRecord> records;
    while (auto fields = reader.next(3)) {
        OrderRecord r;
        long long zone = detail::parse_int((*fields)[0], reader.path(), reader.line());
        long long slot = detail::parse_int((*fields)[1], reader.path(), reader.line());
        long long matched = detail::parse_int((*fields)[2], reader.path(), reader.line());
        if (zone < 0 || slot < 0 || (matched != 0 && matched != 1))
            throw data_error(reader.path() + ":" + std::to_string(reader.line()) +
                             ": invalid order record");
        r.zone_id = static_cast<std::size_t>(zone);
        r.slot_index = static_cast<std::size_t>(slot);
        r.matched = matched == 1;
        records.push_back(r);
    }
    return records;
}

// Reads the four raw files and assembles a validated frame. The four
// congestion levels are summed into one count per zone-slot. Weather rows
// may be sparse; gaps are forward-filled and a leading gap takes the first
// observed value.
inline ZoneSlotFrame load_dataset_dir(const std::filesystem::path& dir, const IngestOptions& opt) {
    auto orders = read_orders(dir / kOrdersFile);

    struct CongestionRow {
        std::size_t zone, slot;
        double total;
    };
    std::vector<CongestionRow> congestion_rows;
    {
        detail::DelimitedReader reader(dir / kCongestionFile,
                                       "zone_id,slot_index,level1,level2,level3,level4");
        while (auto fields = reader.next(6)) {
            long long zone = detail::parse_int((*fields)[0], reader.path(), reader.line());
            long long slot = detail::parse_int((*fields)[1], reader.path(), reader.line());
            if (zone < 0 || slot < 0)
                throw data_error(reader.path() + ":" + std::to_string(reader.line()) +
                                 ": negative index");
            double total = 0.0;
            for (int level = 0; level < 4; ++level)
                total += detail::parse_double((*fields)[2 + level], reader.path(), reader.line());
            congestion_rows.push_back(
                {static_cast<std::size_t>(zone), static_cast<std::size_t>(slot), total});
        }
    }

    struct WeatherRow {
        std::size_t slot, category;
        double temperature, pm25;
    };
    std::vector<WeatherRow> weather_rows;
    {
        detail::DelimitedReader reader(dir / kWeatherFile,
                                       "slot_index,weather_category,temperature,pm25");
        while (auto fields = reader.next(4)) {
            long long slot = detail::parse_int((*fields)[0], reader.path(), reader.line());
            long long cat = detail::parse_int((*fields)[1], reader.path(), reader.line());
            if (slot < 0 || cat < 0)
                throw data_error(reader.path() + ":" + std::to_string(reader.line()) +
                                 ": negative index");
            weather_rows.push_back({static_cast<std::size_t>(slot), static_cast<std::size_t>(cat),
                                    detail::parse_double((*fields)[2], reader.path(), reader.line()),
                                    detail::parse_double((*fields)[3], reader.path(), reader.line())});
        }
        if (weather_rows.empty()) throw data_error(reader.path() + ": no weather rows");
    }

    std::vector<std::pair<std::size_t, double>> poi_rows;
    {
        detail::DelimitedReader reader(dir / kPoiFile, "zone_id,poi_count");
        while (auto fields = reader.next(2)) {
            long long zone = detail::parse_int((*fields)[0], reader.path(), reader.line());
            double count = detail::parse_double((*fields)[1], reader.path(), reader.line());
            if (zone < 0 || count < 0)
                throw data_error(reader.path() + ":" + std::to_string(reader.line()) +
                                 ": invalid poi row");
            poi_rows.emplace_back(static_cast<std::size_t>(zone), count);
        }
        if (poi_rows.empty()) throw data_error(reader.path() + ": no poi rows");
    }

    // infer grid extents where the caller left them 0
    std::size_t max_zone = 0, max_slot = 0, max_cat = 0;
    for (const auto& r : orders) {
        max_zone = std::max(max_zone, r.zone_id);
        max_slot = std::max(max_slot, r.slot_index);
    }
    for (const auto& r : congestion_rows) {
        max_zone = std::max(max_zone, r.zone);
        max_slot = std::max(max_slot, r.slot);
    }
    for (const auto& r : weather_rows) {
        max_slot = std::max(max_slot, r.slot);
        max_cat = std::max(max_cat, r.category);
    }
    for (const auto& r : poi_rows) max_zone = std::max(max_zone, r.first);

    std::size_t num_zones = opt.num_zones ? opt.num_zones : max_zone + 1;
    std::size_t slots_per_day = 1440 / opt.slot_minutes;
    std::size_t num_days = opt.num_days ? opt.num_days : max_slot / slots_per_day + 1;
    std::size_t weather_categories =
        opt.weather_categories ? opt.weather_categories : max_cat + 1;

    SpaceTimeGrid grid = SpaceTimeGrid::create(num_zones, opt.slot_minutes, num_days);

    ZoneSlotFrame frame;
    frame.grid = grid;
    frame.weather_categories = weather_categories;
    frame.first_day_of_week = opt.first_day_of_week;

    OrderAggregate agg = aggregate_orders(orders, grid);
    frame.demand = std::move(agg.demand);
    frame.supplied = std::move(agg.supplied);
    frame.gap = std::move(agg.gap);

    frame.congestion = Tensor({grid.num_zones, grid.total_slots});
    for (const auto& r : congestion_rows) {
        if (r.zone >= grid.num_zones || r.slot >= grid.total_slots)
            throw data_error("congestion row out of range: zone " + std::to_string(r.zone) +
                             ", slot " + std::to_string(r.slot));
        frame.congestion(r.zone, r.slot) += r.total;
    }

    frame.weather_category.assign(grid.total_slots, 0);
    frame.temperature.assign(grid.total_slots, 0.0);
    frame.pm25.assign(grid.total_slots, 0.0);
    {
        std::vector<bool> seen(grid.total_slots, false);
        for (const auto& r : weather_rows) {
            if (r.slot >= grid.total_slots)
                throw data_error("weather row out of range: slot " + std::to_string(r.slot));
            if (r.category >= weather_categories)
                throw data_error("weather category " + std::to_string(r.category) +
                                 " out of range at slot " + std::to_string(r.slot));
            frame.weather_category[r.slot] = r.category;
            frame.temperature[r.slot] = r.temperature;
            frame.pm25[r.slot] = r.pm25;
            seen[r.slot] = true;
        }
        // forward-fill gaps; the leading gap takes the first observed value
        std::size_t first_seen = 0;
        while (first_seen < grid.total_slots && !seen[first_seen]) ++first_seen;
        for (std::size_t t = 0; t < first_seen; ++t) {
            frame.weather_category[t] = frame.weather_category[first_seen];
            frame.temperature[t] = frame.temperature[first_seen];
            frame.pm25[t] = frame.pm25[first_seen];
        }
        for (std::size_t t = first_seen + 1; t < grid.total_slots; ++t) {
            if (!seen[t]) {
                frame.weather_category[t] = frame.weather_category[t - 1];
                frame.temperature[t] = frame.temperature[t - 1];
                frame.pm25[t] = frame.pm25[t - 1];
            }
        }
    }

    frame.poi.assign(grid.num_zones, 0.0);
    for (const auto& [zone, count] : poi_rows) {
        if (zone >= grid.num_zones)
            throw data_error("poi row out of range: zone " + std::to_string(zone));
        frame.poi[zone] = count;
    }

    frame.time_of_day.resize(grid.total_slots);
    frame.day_of_week.resize(grid.total_slots);
    for (std::size_t t = 0; t < grid.total_slots; ++t) {
        frame.time_of_day[t] = time_of_day_onehot(grid, t);
        frame.day_of_week[t] = is_weekend(grid, t, frame.first_day_of_week) ? 1.0 : 0.0;
    }

    frame.validate();
    return frame;
}

// Writes the four raw files a frame ingests from; orders are expanded back
// into one record per request.
inline void write_dataset_dir(const ZoneSlotFrame& frame, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / kOrdersFile);
        if (!out) throw data_error("cannot write " + (dir / kOrdersFile).string());
        out << "zone_id,slot_index,matched\n";
        for (std::size_t p = 0; p < frame.grid.num_zones; ++p)
            for (std::size_t t = 0; t < frame.grid.total_slots; ++t) {
                auto matched = static_cast<long long>(frame.supplied(p, t));
                auto unmatched = static_cast<long long>(frame.gap(p, t));
                for (long long i = 0; i < matched; ++i)
                    out << p << ',' << t << ",1\n";
                for (long long i = 0; i < unmatched; ++i)
                    out << p << ',' << t << ",0\n";
            }
    }
    {
        std::ofstream out(dir / kCongestionFile);
        if (!out) throw data_error("cannot write " + (dir / kCongestionFile).string());
        out << "zone_id,slot_index,level1,level2,level3,level4\n";
        for (std::size_t p = 0; p < frame.grid.num_zones; ++p)
            for (std::size_t t = 0; t < frame.grid.total_slots; ++t)
                out << p << ',' << t << ',' << detail::format_double(frame.congestion(p, t))
                    << ",0,0,0\n";
    }
    {
        std::ofstream out(dir / kWeatherFile);
        if (!out) throw data_error("cannot write " + (dir / kWeatherFile).string());
        out << "slot_index,weather_category,temperature,pm25\n";
        for (std::size_t t = 0; t < frame.grid.total_slots; ++t)
            out << t << ',' << frame.weather_category[t] << ','
                << detail::format_double(frame.temperature[t]) << ','
                << detail::format_double(frame.pm25[t]) << '\n';
    }
    {
        std::ofstream out(dir / kPoiFile);
        if (!out) throw data_error("cannot write " + (dir / kPoiFile).string());
        out << "zone_id,poi_count\n";
        for (std::size_t p = 0; p < frame.grid.num_zones; ++p)
            out << p << ',' << detail::format_double(frame.poi[p]) << '\n';
    }
}

}  // namespace focir

#endif
