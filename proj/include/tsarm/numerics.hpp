#pragma once

#include <cstddef>

#include "tsarm/types.hpp"

namespace tsarm {

// dot(a,b) / (|a||b|). Throws ShapeError on length mismatch,
// DegenerateVectorError when either vector has zero norm (a silent 0 would
// corrupt downstream divergence scores).
double cosine_similarity(const RealSeries& a, const RealSeries& b);

// (1/N) * sum(x_i^2). Throws ShapeError on empty input.
double mean_power(const RealSeries& x);

// Forward transform, X_k = sum_n x_n e^{-2*pi*i*k*n/N}. Radix-2 FFT when N is
// a power of two, direct evaluation otherwise (target sizes are N <= 8192).
Spectrum dft(const RealSeries& x);

// Inverse transform; imaginary parts are discarded (they vanish for spectra
// of real series up to ~1e-15).
RealSeries idft(const Spectrum& s);

// Locally weighted polynomial smoother, tricube weights, centered windows
// clamped at the boundaries. `span` is the window as a fraction of N.
// Throws ConfigError when the window cannot support the degree.
RealSeries loess_smooth(const RealSeries& x, double span, int degree);

// Same smoother with the window given in points.
RealSeries loess_window(const RealSeries& x, std::size_t window, int degree);

// Linear interpolation onto a uniform grid of new_len points; endpoints are
// preserved exactly. Throws ShapeError when either length is < 2.
RealSeries resample_linear(const RealSeries& x, std::size_t new_len);

namespace detail {
// Tricube-weighted polynomial fit over y[left..right] evaluated at pos
// (which may lie outside the window; that is how the decomposition extends
// its cycle-subseries by one cycle on each side).
double loess_fit_window(const RealSeries& y, std::size_t left, std::size_t right, double pos,
                        int degree);
}  // namespace detail

}  // namespace tsarm
