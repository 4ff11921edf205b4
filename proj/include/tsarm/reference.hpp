#pragma once

#include <cstddef>

#include "tsarm/types.hpp"

// Plain serial implementations of the parallel kernels. They are the
// reference the unit tests and the kernel benchmark compare against: direct
// O(N^2) transforms and straightforward per-point loess, no OpenMP, no FFT
// fast path.
namespace tsarm::reference {

Spectrum dft(const RealSeries& x);
RealSeries idft(const Spectrum& s);
RealSeries loess_window(const RealSeries& x, std::size_t window, int degree);

}  // namespace tsarm::reference
