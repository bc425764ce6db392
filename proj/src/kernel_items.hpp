// kernel_items.hpp
// Per-item bodies shared by the serial and OpenMP kernels.

#pragma once

#include "stse/error.hpp"
#include "stse/kernels.hpp"

namespace stse::detail {

struct CalibrationItem {
    bool rejected = false;
    double sharpe = 0.0;
    double kurtosis = 0.0;
};

CalibrationItem calibration_item(const CalibrationSpec& spec, std::size_t index);

struct BaselineItem {
    bool ok = false;
    bool skillful = false;
    double final_equity = 0.0;
};

BaselineItem baseline_item(const BaselineSpec& spec, std::size_t index);

CalibrationResult reduce(const CalibrationSpec& spec, const std::vector<CalibrationItem>& items);
BaselineResult reduce(const std::vector<BaselineItem>& items);

} // namespace stse::detail
