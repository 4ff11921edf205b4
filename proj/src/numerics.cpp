#include "tsarm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "tsarm/errors.hpp"

namespace tsarm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative in-place radix-2 Cooley-Tukey; sign = -1 forward, +1 inverse.
void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

double cosine_similarity(const RealSeries& a, const RealSeries& b) {
    if (a.size() != b.size())
        throw ShapeError("cosine_similarity: length mismatch (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    if (a.empty()) throw ShapeError("cosine_similarity: empty input");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        throw DegenerateVectorError("cosine_similarity: zero-norm input");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double mean_power(const RealSeries& x) {
    if (x.empty()) throw ShapeError("mean_power: empty series");
    double s = 0.0;
    for (double v : x) s += v * v;
    return s / static_cast<double>(x.size());
}

Spectrum dft(const RealSeries& x) {
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("dft: empty series");
    Spectrum out;
    out.bins.resize(n);
    if (is_pow2(n)) {
        for (std::size_t i = 0; i < n; ++i) out.bins[i] = {x[i], 0.0};
        fft_pow2(out.bins, -1);
        return out;
    }
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < sn; ++k) {
        double re = 0.0, im = 0.0;
        const double w = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = w * static_cast<double>(j);
            re += x[j] * std::cos(ang);
            im += x[j] * std::sin(ang);
        }
        out.bins[static_cast<std::size_t>(k)] = {re, im};
    }
    return out;
}

RealSeries idft(const Spectrum& s) {
    const std::size_t n = s.bins.size();
    if (n == 0) throw ShapeError("idft: empty spectrum");
    RealSeries out(n);
    if (is_pow2(n)) {
        auto a = s.bins;
        fft_pow2(a, +1);
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i].real() / static_cast<double>(n);
        return out;
    }
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < sn; ++j) {
        double acc = 0.0;
        const double w = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = w * static_cast<double>(k);
            acc += s.bins[k].real() * std::cos(ang) - s.bins[k].imag() * std::sin(ang);
        }
        out[static_cast<std::size_t>(j)] = acc / static_cast<double>(n);
    }
    return out;
}

namespace detail {

// Weighted least-squares polynomial fit over a window, evaluated at pos;
// x coordinates are shifted to (j - pos) so the evaluation is the constant
// term. Degree falls back when the normal equations go singular (too few
// points carry weight), in which case the reduced fit still interpolates the
// nearest window point.
double loess_fit_window(const RealSeries& y, std::size_t left, std::size_t right, double pos,
                        int degree) {
    const std::size_t m = right - left + 1;
    double h = 0.0;
    for (std::size_t j = left; j <= right; ++j)
        h = std::max(h, std::abs(static_cast<double>(j) - pos));

    // Tricube weights over the window; the farthest point gets ~0.
    std::vector<double> w(m);
    if (h <= 0.0) {
        std::fill(w.begin(), w.end(), 1.0);
    } else {
        for (std::size_t j = left; j <= right; ++j) {
            double r = std::abs(static_cast<double>(j) - pos) / h;
            if (r >= 1.0) {
                w[j - left] = 0.0;
            } else {
                double t = 1.0 - r * r * r;
                w[j - left] = t * t * t;
            }
        }
    }

    for (int d = degree; d >= 0; --d) {
        // Normal equations A c = b with A_{pq} = sum w u^{p+q}, b_p = sum w u^p y.
        double mom[5] = {0, 0, 0, 0, 0};
        double rhs[3] = {0, 0, 0};
        for (std::size_t j = left; j <= right; ++j) {
            const double u = static_cast<double>(j) - pos;
            const double wj = w[j - left];
            if (wj == 0.0) continue;
            double up = 1.0;
            for (int p = 0; p <= 2 * d; ++p) {
                mom[p] += wj * up;
                if (p <= d) rhs[p] += wj * up * y[j];
                up *= u;
            }
        }
        const int dim = d + 1;
        double a[3][4];
        for (int p = 0; p < dim; ++p) {
            for (int q = 0; q < dim; ++q) a[p][q] = mom[p + q];
            a[p][dim] = rhs[p];
        }
        // Gaussian elimination with partial pivoting on the (<=3)x(<=3) system.
        bool singular = false;
        for (int col = 0; col < dim && !singular; ++col) {
            int piv = col;
            for (int r2 = col + 1; r2 < dim; ++r2)
                if (std::abs(a[r2][col]) > std::abs(a[piv][col])) piv = r2;
            if (std::abs(a[piv][col]) < 1e-12 * (std::abs(mom[0]) + 1e-300)) {
                singular = true;
                break;
            }
            if (piv != col)
                for (int c2 = col; c2 <= dim; ++c2) std::swap(a[piv][c2], a[col][c2]);
            for (int r2 = col + 1; r2 < dim; ++r2) {
                const double f = a[r2][col] / a[col][col];
                for (int c2 = col; c2 <= dim; ++c2) a[r2][c2] -= f * a[col][c2];
            }
        }
        if (singular) continue;
        double c[3];
        for (int p = dim - 1; p >= 0; --p) {
            double s = a[p][dim];
            for (int q = p + 1; q < dim; ++q) s -= a[p][q] * c[q];
            c[p] = s / a[p][p];
        }
        return c[0];
    }
    // Degenerate window: the nearest point carries all the weight.
    std::size_t nearest = left;
    for (std::size_t j = left; j <= right; ++j)
        if (std::abs(static_cast<double>(j) - pos) <
            std::abs(static_cast<double>(nearest) - pos))
            nearest = j;
    return y[nearest];
}

}  // namespace detail

RealSeries loess_window(const RealSeries& x, std::size_t window, int degree) {
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("loess: empty series");
    if (degree < 0 || degree > 2) throw ConfigError("loess: degree must be 0, 1 or 2");
    if (window < static_cast<std::size_t>(degree) + 1)
        throw ConfigError("loess: window of " + std::to_string(window) +
                          " points cannot support degree " + std::to_string(degree));
    const std::size_t q = std::min(window, n);
    if (q < static_cast<std::size_t>(degree) + 1)
        throw ConfigError("loess: series too short for degree");

    RealSeries out(n);
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        // Centered window, clamped to [0, n-1] while keeping q points.
        std::size_t left = (ui >= (q - 1) / 2) ? ui - (q - 1) / 2 : 0;
        left = std::min(left, n - q);
        const std::size_t right = left + q - 1;
        out[ui] = detail::loess_fit_window(x, left, right, static_cast<double>(ui), degree);
    }
    return out;
}

RealSeries loess_smooth(const RealSeries& x, double span, int degree) {
    if (!(span > 0.0) || span > 1.0) throw ConfigError("loess: span must be in (0, 1]");
    const double qf = span * static_cast<double>(x.size());
    const std::size_t q = static_cast<std::size_t>(std::llround(qf));
    return loess_window(x, std::max<std::size_t>(q, 1), degree);
}

RealSeries resample_linear(const RealSeries& x, std::size_t new_len) {
    if (x.size() < 2) throw ShapeError("resample_linear: input length must be >= 2");
    if (new_len < 2) throw ShapeError("resample_linear: output length must be >= 2");
    if (new_len == x.size()) return x;
    RealSeries out(new_len);
    const double step = static_cast<double>(x.size() - 1) / static_cast<double>(new_len - 1);
    for (std::size_t i = 0; i < new_len; ++i) {
        const double pos = static_cast<double>(i) * step;
        std::size_t lo = static_cast<std::size_t>(pos);
        if (lo >= x.size() - 1) lo = x.size() - 2;
        const double frac = pos - static_cast<double>(lo);
        out[i] = x[lo] + frac * (x[lo + 1] - x[lo]);
    }
    out.front() = x.front();
    out.back() = x.back();
    return out;
}

}  // namespace tsarm
