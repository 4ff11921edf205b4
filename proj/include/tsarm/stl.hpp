#pragma once

#include <cstddef>
#include <vector>

#include "tsarm/types.hpp"

namespace tsarm {

// Additive split of one sample; trend + seasonal + residual reconstructs the
// input exactly (residual is defined as the remainder).
struct Decomposition {
    RealSeries trend;
    RealSeries seasonal;
    RealSeries residual;
    std::size_t period = 0;
};

// Iterative inner loop (no robustness pass): detrend, loess-smooth each
// cycle-subseries, de-low-pass the seasonal, deseasonalize, loess-smooth the
// trend. Requires len >= 2*period and period >= 2.
Decomposition stl_decompose(const RealSeries& x, std::size_t period, int iterations = 2);

// Seasonal averaged over complete cycles only; the partial trailing cycle is
// discarded. Result has `period` points.
RealSeries fold_seasonal(const RealSeries& seasonal, std::size_t period);

// Aggregates of a whole dataset decomposed at one period.
struct PeriodProfile {
    std::size_t period = 0;
    RealSeries mean_trend;             // elementwise average of sample trends
    RealSeries mean_seasonal;          // average of per-sample folded seasonals
    RealSeries mean_seasonal_full;     // elementwise average of the unfolded seasonals
    double mean_trend_power = 0.0;     // average of per-sample mean_power(trend)
    double mean_seasonal_power = 0.0;  // average of per-sample mean_power(seasonal)
};

struct DatasetProfile {
    std::vector<PeriodProfile> per_period;

    std::vector<std::size_t> periods_used() const {
        std::vector<std::size_t> p;
        for (const auto& pp : per_period) p.push_back(pp.period);
        return p;
    }
};

// Decompose every sample at every candidate period (samples in parallel, the
// averaging in fixed order so results are scheduling-independent). Throws
// ShapeError on ragged input.
DatasetProfile dataset_profile(const std::vector<RealSeries>& samples,
                               const std::vector<std::size_t>& periods, int iterations = 2);

// {len/2, len/4, len/8, len/16}, floored, deduplicated, each >= 2.
std::vector<std::size_t> default_periods(std::size_t len);

}  // namespace tsarm
