#include "tsarm/stl.hpp"

#include <algorithm>
#include <cmath>

#include "tsarm/errors.hpp"
#include "tsarm/numerics.hpp"

namespace tsarm {

namespace {

// Moving average over full windows only: output length is n - window + 1.
RealSeries ma_valid(const RealSeries& x, std::size_t window) {
    const std::size_t n = x.size();
    RealSeries out(n - window + 1);
    double s = 0.0;
    for (std::size_t j = 0; j < window; ++j) s += x[j];
    out[0] = s / static_cast<double>(window);
    for (std::size_t i = 1; i < out.size(); ++i) {
        s += x[i + window - 1] - x[i - 1];
        out[i] = s / static_cast<double>(window);
    }
    return out;
}

std::size_t next_odd(std::size_t w) { return w % 2 == 0 ? w + 1 : w; }

std::size_t trend_window_for(std::size_t period, std::size_t seasonal_span) {
    // Standard heuristic: smallest odd integer >= 1.5*p / (1 - 1.5/ns).
    const double denom = 1.0 - 1.5 / static_cast<double>(seasonal_span);
    const double raw = 1.5 * static_cast<double>(period) / denom;
    return std::max<std::size_t>(next_odd(static_cast<std::size_t>(std::ceil(raw))), 3);
}

}  // namespace

Decomposition stl_decompose(const RealSeries& x, std::size_t period, int iterations) {
    const std::size_t n = x.size();
    if (period < 2) throw ConfigError("stl: period must be >= 2");
    if (n < 2 * period)
        throw ConfigError("stl: series of " + std::to_string(n) +
                          " points is too short for period " + std::to_string(period));
    if (iterations < 1) throw ConfigError("stl: iterations must be >= 1");

    const std::size_t cycles = n / period;  // subseries lengths are cycles or cycles+1
    const std::size_t seasonal_span = std::min<std::size_t>(7, cycles);
    const std::size_t trend_window = trend_window_for(period, std::max<std::size_t>(seasonal_span, 2));
    const std::size_t lowpass_window = next_odd(period);

    RealSeries trend(n, 0.0), seasonal(n, 0.0);
    RealSeries detr(n), deseason(n);
    // Smoothed cycle-subseries extended by one cycle on each side, so the
    // low-pass below never runs out of window.
    RealSeries cyc_ext(n + 2 * period);
    std::vector<double> sub;

    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) detr[i] = x[i] - trend[i];

        // Loess-smooth each cycle-subseries along its cycle index and
        // extrapolate one cycle before and after.
        for (std::size_t p = 0; p < period; ++p) {
            sub.clear();
            for (std::size_t j = p; j < n; j += period) sub.push_back(detr[j]);
            const std::size_t k = sub.size();
            const std::size_t w = std::min<std::size_t>(std::max(seasonal_span, std::size_t{2}),
                                                        k);
            for (std::ptrdiff_t j = -1; j <= static_cast<std::ptrdiff_t>(k); ++j) {
                double value;
                if (k == 1) {
                    value = sub[0];
                } else {
                    const std::size_t anchor = static_cast<std::size_t>(
                        std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(k) - 1));
                    std::size_t left = (anchor >= (w - 1) / 2) ? anchor - (w - 1) / 2 : 0;
                    left = std::min(left, k - w);
                    value = detail::loess_fit_window(sub, left, left + w - 1,
                                                     static_cast<double>(j), 1);
                }
                cyc_ext[p + static_cast<std::size_t>(j + 1) * period] = value;
            }
        }

        // Remove what the seasonal should not carry: its own low-frequency
        // drift (two period-wide averages, one 3-wide, then a loess pass).
        RealSeries low = ma_valid(ma_valid(ma_valid(cyc_ext, period), period), 3);
        low = loess_window(low, std::min(lowpass_window, low.size()), 1);
        for (std::size_t i = 0; i < n; ++i) seasonal[i] = cyc_ext[period + i] - low[i];

        for (std::size_t i = 0; i < n; ++i) deseason[i] = x[i] - seasonal[i];
        trend = loess_window(deseason, std::min(trend_window, n), 1);
    }

    Decomposition d;
    d.period = period;
    d.trend = std::move(trend);
    d.seasonal = std::move(seasonal);
    d.residual.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.residual[i] = x[i] - d.trend[i] - d.seasonal[i];
    return d;
}

RealSeries fold_seasonal(const RealSeries& seasonal, std::size_t period) {
    if (period == 0 || seasonal.size() < period)
        throw ConfigError("fold_seasonal: period exceeds series length");
    const std::size_t cycles = seasonal.size() / period;
    RealSeries out(period, 0.0);
    for (std::size_t c = 0; c < cycles; ++c)
        for (std::size_t p = 0; p < period; ++p) out[p] += seasonal[c * period + p];
    for (double& v : out) v /= static_cast<double>(cycles);
    return out;
}

DatasetProfile dataset_profile(const std::vector<RealSeries>& samples,
                               const std::vector<std::size_t>& periods, int iterations) {
    if (samples.empty()) throw ShapeError("dataset_profile: empty dataset");
    const std::size_t n = samples[0].size();
    for (const auto& s : samples)
        if (s.size() != n) throw ShapeError("dataset_profile: ragged dataset");
    if (periods.empty()) throw ConfigError("dataset_profile: no periods given");

    DatasetProfile profile;
    for (std::size_t period : periods) {
        const std::size_t m = samples.size();
        std::vector<RealSeries> trends(m), folds(m), seasonals(m);
        std::vector<double> tpow(m), spow(m);

        const std::ptrdiff_t sm = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < sm; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            Decomposition d = stl_decompose(samples[ui], period, iterations);
            tpow[ui] = mean_power(d.trend);
            spow[ui] = mean_power(d.seasonal);
            folds[ui] = fold_seasonal(d.seasonal, period);
            trends[ui] = std::move(d.trend);
            seasonals[ui] = std::move(d.seasonal);
        }

        PeriodProfile pp;
        pp.period = period;
        pp.mean_trend.assign(n, 0.0);
        pp.mean_seasonal.assign(period, 0.0);
        pp.mean_seasonal_full.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {  // fixed-order reduction
            for (std::size_t j = 0; j < n; ++j) {
                pp.mean_trend[j] += trends[i][j];
                pp.mean_seasonal_full[j] += seasonals[i][j];
            }
            for (std::size_t j = 0; j < period; ++j) pp.mean_seasonal[j] += folds[i][j];
            pp.mean_trend_power += tpow[i];
            pp.mean_seasonal_power += spow[i];
        }
        const double inv = 1.0 / static_cast<double>(m);
        for (double& v : pp.mean_trend) v *= inv;
        for (double& v : pp.mean_seasonal) v *= inv;
        for (double& v : pp.mean_seasonal_full) v *= inv;
        pp.mean_trend_power *= inv;
        pp.mean_seasonal_power *= inv;
        profile.per_period.push_back(std::move(pp));
    }
    return profile;
}

std::vector<std::size_t> default_periods(std::size_t len) {
    std::vector<std::size_t> out;
    for (std::size_t div : {2, 4, 8, 16}) {
        const std::size_t p = len / div;
        if (p >= 2 && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

}  // namespace tsarm
