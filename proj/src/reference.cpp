#include "tsarm/reference.hpp"

#include <algorithm>
#include <cmath>

#include "tsarm/errors.hpp"

namespace tsarm::reference {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Spectrum dft(const RealSeries& x) {
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("reference::dft: empty series");
    Spectrum out;
    out.bins.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -kTwoPi * static_cast<double>(k) * static_cast<double>(j) /
                               static_cast<double>(n);
            re += x[j] * std::cos(ang);
            im += x[j] * std::sin(ang);
        }
        out.bins[k] = {re, im};
    }
    return out;
}

RealSeries idft(const Spectrum& s) {
    const std::size_t n = s.bins.size();
    if (n == 0) throw ShapeError("reference::idft: empty spectrum");
    RealSeries out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = kTwoPi * static_cast<double>(k) * static_cast<double>(j) /
                               static_cast<double>(n);
            acc += s.bins[k].real() * std::cos(ang) - s.bins[k].imag() * std::sin(ang);
        }
        out[j] = acc / static_cast<double>(n);
    }
    return out;
}

RealSeries loess_window(const RealSeries& x, std::size_t window, int degree) {
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("reference::loess: empty series");
    if (degree < 0 || degree > 2) throw ConfigError("reference::loess: bad degree");
    if (window < static_cast<std::size_t>(degree) + 1)
        throw ConfigError("reference::loess: window too small for degree");
    const std::size_t q = std::min(window, n);

    RealSeries out(n);
    std::vector<double> w(q), u(q);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t left = (i >= (q - 1) / 2) ? i - (q - 1) / 2 : 0;
        left = std::min(left, n - q);
        double h = std::max(static_cast<double>(i) - static_cast<double>(left),
                            static_cast<double>(left + q - 1) - static_cast<double>(i));
        for (std::size_t j = 0; j < q; ++j) {
            u[j] = static_cast<double>(left + j) - static_cast<double>(i);
            if (h <= 0.0) {
                w[j] = 1.0;
            } else {
                const double r = std::abs(u[j]) / h;
                const double t = r < 1.0 ? 1.0 - r * r * r : 0.0;
                w[j] = t * t * t;
            }
        }
        // Weighted polynomial fit by explicit normal equations, solved with
        // textbook Gauss elimination on the (degree+1) system.
        int d = degree;
        double value = x[i];
        for (; d >= 0; --d) {
            const int dim = d + 1;
            double A[3][3] = {{0}}, b[3] = {0};
            for (std::size_t j = 0; j < q; ++j) {
                if (w[j] == 0.0) continue;
                double pu[5];
                pu[0] = 1.0;
                for (int p = 1; p <= 2 * d; ++p) pu[p] = pu[p - 1] * u[j];
                for (int p = 0; p < dim; ++p) {
                    for (int q2 = 0; q2 < dim; ++q2) A[p][q2] += w[j] * pu[p + q2];
                    b[p] += w[j] * pu[p] * x[left + j];
                }
            }
            bool ok = true;
            for (int col = 0; col < dim && ok; ++col) {
                int piv = col;
                for (int r2 = col + 1; r2 < dim; ++r2)
                    if (std::abs(A[r2][col]) > std::abs(A[piv][col])) piv = r2;
                if (std::abs(A[piv][col]) < 1e-12) {
                    ok = false;
                    break;
                }
                std::swap(A[piv], A[col]);
                std::swap(b[piv], b[col]);
                for (int r2 = col + 1; r2 < dim; ++r2) {
                    const double f = A[r2][col] / A[col][col];
                    for (int c2 = col; c2 < dim; ++c2) A[r2][c2] -= f * A[col][c2];
                    b[r2] -= f * b[col];
                }
            }
            if (!ok) continue;
            double c[3];
            for (int p = dim - 1; p >= 0; --p) {
                double s = b[p];
                for (int q2 = p + 1; q2 < dim; ++q2) s -= A[p][q2] * c[q2];
                c[p] = s / A[p][p];
            }
            value = c[0];
            break;
        }
        out[i] = value;
    }
    return out;
}

}  // namespace tsarm::reference
