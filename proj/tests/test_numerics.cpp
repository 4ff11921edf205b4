#include <cmath>
#include <doctest.h>

#include "tsarm/errors.hpp"
#include "tsarm/numerics.hpp"
#include "tsarm/reference.hpp"
#include "tsarm/rng.hpp"

using namespace tsarm;

namespace {

RealSeries random_series(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    RealSeries x(n);
    for (double& v : x) v = rng.normal();
    return x;
}

double max_abs_diff(const RealSeries& a, const RealSeries& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("cosine similarity: identity, orthogonality, hand-computed value") {
    const RealSeries v = {0.3, -1.2, 5.0};
    CHECK(cosine_similarity(v, v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine_similarity({1, 0}, {0, 1}) == doctest::Approx(0.0));
    // dot([1,2,3],[3,2,1]) = 10, both norms sqrt(14)
    CHECK(std::abs(cosine_similarity({1, 2, 3}, {3, 2, 1}) - 10.0 / 14.0) < 1e-12);
}

TEST_CASE("cosine similarity: scaling behavior and symmetry") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = random_series(17, 100 + rep);
        const auto b = random_series(17, 200 + rep);
        const double c = rng.uniform(0.1, 10.0);
        RealSeries ca(a.size()), neg(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            ca[i] = c * a[i];
            neg[i] = -c * a[i];
        }
        CHECK(cosine_similarity(a, ca) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cosine_similarity(a, neg) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(cosine_similarity(a, b) == doctest::Approx(cosine_similarity(b, a)));
    }
}

TEST_CASE("cosine similarity: error paths") {
    CHECK_THROWS_AS((void)cosine_similarity({1, 2}, {1, 2, 3}), ShapeError);
    CHECK_THROWS_AS((void)cosine_similarity({0, 0}, {1, 2}), DegenerateVectorError);
    CHECK_THROWS_AS((void)cosine_similarity({1, 2}, {0, 0}), DegenerateVectorError);
}

TEST_CASE("mean power: examples and scaling invariant") {
    CHECK(mean_power({0, 0, 0}) == 0.0);
    CHECK(mean_power({1, 1, 1, 1}) == 1.0);
    CHECK(mean_power({1, 2, 3}) == doctest::Approx(14.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)mean_power({}), ShapeError);

    const auto x = random_series(33, 42);
    const double c = 2.7;
    RealSeries cx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) cx[i] = c * x[i];
    CHECK(mean_power(cx) == doctest::Approx(c * c * mean_power(x)).epsilon(1e-12));
}

TEST_CASE("dft: constant input concentrates in the DC bin") {
    const double c = -2.25;
    const Spectrum s = dft(RealSeries(16, c));
    CHECK(s.bins[0].real() == doctest::Approx(16.0 * c).epsilon(1e-12));
    CHECK(std::abs(s.bins[0].imag()) < 1e-9);
    for (std::size_t k = 1; k < 16; ++k) CHECK(std::abs(s.bins[k]) < 1e-9);
}

TEST_CASE("dft/idft round trip for every length 1..256") {
    for (std::size_t n = 1; n <= 256; ++n) {
        const auto x = random_series(n, 1000 + n);
        const auto back = idft(dft(x));
        CHECK(max_abs_diff(x, back) < 1e-9);
    }
}

TEST_CASE("dft: Parseval equality on a seeded length-64 series") {
    const auto x = random_series(64, 7);
    double time_energy = 0.0;
    for (double v : x) time_energy += v * v;
    const Spectrum s = dft(x);
    double freq_energy = 0.0;
    for (const auto& b : s.bins) freq_energy += std::norm(b);
    freq_energy /= 64.0;
    CHECK(std::abs(time_energy - freq_energy) / time_energy < 1e-9);
}

TEST_CASE("dft: fast path agrees with the serial reference") {
    for (std::size_t n : {13, 64, 100, 255}) {
        const auto x = random_series(n, 300 + n);
        const auto fast = dft(x);
        const auto ref = reference::dft(x);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(fast.bins[k] - ref.bins[k]) < 1e-7);
        CHECK(max_abs_diff(idft(fast), reference::idft(ref)) < 1e-9);
    }
    CHECK_THROWS_AS((void)dft({}), ShapeError);
}

TEST_CASE("loess: reproduces polynomials up to its degree") {
    Rng rng(11);
    const std::size_t n = 60;
    for (int degree = 0; degree <= 2; ++degree) {
        double coef[3] = {rng.uniform(-2, 2), rng.uniform(-1, 1), rng.uniform(-0.1, 0.1)};
        RealSeries x(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i);
            x[i] = coef[0];
            if (degree >= 1) x[i] += coef[1] * t;
            if (degree >= 2) x[i] += coef[2] * t * t;
        }
        for (double span : {0.1, 0.33, 0.8, 1.0}) {
            if (span * n < degree + 1) continue;
            const auto sm = loess_smooth(x, span, degree);
            CHECK(max_abs_diff(x, sm) < 1e-9);
        }
    }
}

TEST_CASE("loess: exactly linear input with the minimal window") {
    RealSeries x(20);
    for (std::size_t i = 0; i < 20; ++i) x[i] = 3.0 - 0.5 * static_cast<double>(i);
    const auto sm = loess_window(x, 2, 1);
    CHECK(max_abs_diff(x, sm) < 1e-9);
}

TEST_CASE("loess: constant input stays constant") {
    const RealSeries x(31, 4.2);
    const auto sm = loess_smooth(x, 0.5, 2);
    for (double v : sm) CHECK(v == doctest::Approx(4.2).epsilon(1e-12));
}

TEST_CASE("loess: smoothing reduces noise variance around a sine") {
    Rng rng(21);
    const std::size_t n = 400;
    RealSeries clean(n), noisy(n);
    for (std::size_t i = 0; i < n; ++i) {
        clean[i] = std::sin(6.283185307179586 * static_cast<double>(i) / 100.0);
        noisy[i] = clean[i] + 0.3 * rng.normal();
    }
    const auto sm = loess_smooth(noisy, 0.05, 2);
    double var_before = 0.0, var_after = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        var_before += (noisy[i] - clean[i]) * (noisy[i] - clean[i]);
        var_after += (sm[i] - clean[i]) * (sm[i] - clean[i]);
    }
    CHECK(var_after < var_before);
}

TEST_CASE("loess: window too small for the degree") {
    CHECK_THROWS_AS((void)loess_smooth(random_series(100, 3), 0.01, 2), ConfigError);
    CHECK_THROWS_AS((void)loess_window(random_series(10, 3), 1, 1), ConfigError);
}

TEST_CASE("loess: omp kernel matches the serial reference") {
    const auto x = random_series(257, 9);
    for (int degree : {0, 1, 2}) {
        const auto a = loess_window(x, 31, degree);
        const auto b = reference::loess_window(x, 31, degree);
        CHECK(max_abs_diff(a, b) < 1e-10);
    }
}

TEST_CASE("resample_linear: identity, midpoint, linearity preservation") {
    const RealSeries x = {4, 7, -1, 0};
    CHECK(resample_linear(x, 4) == x);

    const auto mid = resample_linear({0, 1}, 3);
    CHECK(mid == RealSeries{0, 0.5, 1});

    // A ramp of any length stays exactly on its line after resampling.
    for (std::size_t from : {5, 17, 100}) {
        for (std::size_t to : {2, 9, 50, 333}) {
            RealSeries ramp(from);
            for (std::size_t i = 0; i < from; ++i) ramp[i] = 2.0 * static_cast<double>(i) - 3.0;
            const auto r = resample_linear(ramp, to);
            CHECK(r.front() == ramp.front());
            CHECK(r.back() == ramp.back());
            const double slope = (ramp.back() - ramp.front()) / static_cast<double>(to - 1);
            for (std::size_t i = 0; i < to; ++i)
                CHECK(std::abs(r[i] - (ramp.front() + slope * static_cast<double>(i))) < 1e-12);
        }
    }
    CHECK_THROWS_AS((void)resample_linear({1}, 5), ShapeError);
    CHECK_THROWS_AS((void)resample_linear({1, 2}, 1), ShapeError);
}

}  // TEST_SUITE
