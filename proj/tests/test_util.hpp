#ifndef FOCIR_TESTS_TEST_UTIL_HPP
#define FOCIR_TESTS_TEST_UTIL_HPP

#include <filesystem>
#include <string>

#include "focir/dataset.hpp"

namespace focir::testutil {

// 2 zones, 3 slots (one 480-minute-slot day), 2 weather categories;
// small enough to verify sample assembly element by element.
inline ZoneSlotFrame tiny_frame() {
    ZoneSlotFrame frame;
    frame.grid = SpaceTimeGrid::create(2, 480, 1);
    frame.weather_categories = 2;
    frame.first_day_of_week = 0;
    frame.demand = Tensor::matrix(2, 3, {1, 2, 3, 4, 5, 6});
    frame.gap = Tensor::matrix(2, 3, {0, 1, 1, 2, 0, 3});
    frame.supplied = Tensor::matrix(2, 3, {1, 1, 2, 2, 5, 3});
    frame.congestion = Tensor::matrix(2, 3, {7, 8, 9, 1, 0, 2});
    frame.weather_category = {0, 1, 0};
    frame.temperature = {10, 20, 30};
    frame.pm25 = {5, 6, 7};
    frame.poi = {100, 200};
    frame.time_of_day.resize(3);
    frame.day_of_week.resize(3);
    for (std::size_t t = 0; t < 3; ++t) {
        frame.time_of_day[t] = time_of_day_onehot(frame.grid, t);
        frame.day_of_week[t] = is_weekend(frame.grid, t, frame.first_day_of_week) ? 1.0 : 0.0;
    }
    frame.validate();
    return frame;
}

// a constant frame: every count k, one weather category
inline ZoneSlotFrame constant_frame(std::size_t zones, std::size_t slots_per_day,
                                    std::size_t days, double k) {
    ZoneSlotFrame frame;
    frame.grid = SpaceTimeGrid::create(zones, 1440 / slots_per_day, days);
    frame.weather_categories = 1;
    frame.demand = Tensor({zones, frame.grid.total_slots}, k);
    frame.supplied = Tensor({zones, frame.grid.total_slots}, 0.0);
    frame.gap = frame.demand;
    frame.congestion = Tensor({zones, frame.grid.total_slots}, k);
    frame.weather_category.assign(frame.grid.total_slots, 0);
    frame.temperature.assign(frame.grid.total_slots, k);
    frame.pm25.assign(frame.grid.total_slots, k);
    frame.poi.assign(zones, k);
    frame.time_of_day.resize(frame.grid.total_slots);
    frame.day_of_week.resize(frame.grid.total_slots);
    for (std::size_t t = 0; t < frame.grid.total_slots; ++t) {
        frame.time_of_day[t] = time_of_day_onehot(frame.grid, t);
        frame.day_of_week[t] = 0.0;
    }
    frame.validate();
    return frame;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("focir_tests_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace focir::testutil

#endif
