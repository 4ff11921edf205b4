#include "tsarm/synth.hpp"

#include <cmath>

#include "tsarm/errors.hpp"
#include "tsarm/numerics.hpp"

namespace tsarm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kMorletAmp = 0.75112554446494248285870553477;  // pi^(-1/4)

double rms(const RealSeries& x) { return std::sqrt(mean_power(x)); }

double nearest_center(double v, std::initializer_list<double> centers) {
    double best = *centers.begin();
    for (double c : centers)
        if (std::abs(v - c) < std::abs(v - best)) best = c;
    return best;
}
}  // namespace

DatasetId DatasetId::parse(const std::string& s) {
    if (s.size() == 2 && s[0] >= 'A' && s[0] <= 'D' && s[1] >= '1' && s[1] <= '3')
        return DatasetId{s[0], s[1] - '0'};
    throw ConfigError("unknown dataset id '" + s + "' (expected A1..D3)");
}

std::array<DatasetId, 12> DatasetId::all() {
    std::array<DatasetId, 12> out;
    int i = 0;
    for (char g : {'A', 'B', 'C', 'D'})
        for (int s : {1, 2, 3}) out[i++] = DatasetId{g, s};
    return out;
}

std::array<ClassSpec, 6> class_specs(SeasonKind season) {
    const double blo[3] = {season == SeasonKind::trig ? 0.05 : 3.5,
                           season == SeasonKind::trig ? 0.45 : 4.5,
                           season == SeasonKind::trig ? 0.85 : 5.5};
    const double bhi[3] = {season == SeasonKind::trig ? 0.15 : 4.5,
                           season == SeasonKind::trig ? 0.55 : 5.5,
                           season == SeasonKind::trig ? 0.95 : 6.5};
    std::array<ClassSpec, 6> out;
    for (int c = 0; c < 6; ++c) {
        out[c].label = c;
        out[c].alpha_lo = c < 3 ? 0.1 : -0.3;
        out[c].alpha_hi = c < 3 ? 0.3 : -0.1;
        out[c].beta_lo = blo[c % 3];
        out[c].beta_hi = bhi[c % 3];
    }
    return out;
}

RealSeries gen_trend(TrendKind kind, std::size_t len, double alpha) {
    if (len == 0) throw ShapeError("gen_trend: len must be >= 1");
    RealSeries out(len);
    for (std::size_t i = 0; i < len; ++i) {
        const double t = static_cast<double>(i + 1);  // t starts at 1: t^alpha stays finite
        out[i] = kind == TrendKind::linear ? alpha * t : std::pow(t, alpha);
    }
    return out;
}

RealSeries gen_seasonality(SeasonKind kind, std::size_t len, double beta, double lambda,
                           double phi) {
    if (len < 2) throw ShapeError("gen_seasonality: len must be >= 2");
    RealSeries out(len);
    if (kind == SeasonKind::trig) {
        for (std::size_t i = 0; i < len; ++i) {
            const double arg = lambda * static_cast<double>(i + 1) - phi;
            out[i] = beta * std::sin(arg) + (1.0 - beta) * std::cos(arg);
        }
    } else {
        for (std::size_t i = 0; i < len; ++i) {
            const double u = -4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(len - 1);
            out[i] = kMorletAmp * std::cos(beta * u) * std::exp(-0.5 * u * u);
        }
    }
    return out;
}

double trend_norm_rms(TrendKind kind, std::size_t len, double alpha) {
    return rms(gen_trend(kind, len, alpha >= 0 ? 0.2 : -0.2));
}

double season_norm_rms(SeasonKind kind, const SynthConfig& cfg, double beta) {
    const double mid = kind == SeasonKind::trig ? nearest_center(beta, {0.1, 0.5, 0.9})
                                                : nearest_center(beta, {4.0, 5.0, 6.0});
    return rms(gen_seasonality(kind, cfg.sample_len, mid, cfg.lambda(), 0.0));
}

namespace {

// Shared by the plain and the 2N-extended generators: the component grids are
// always those of cfg.sample_len, only evaluated over more points.
RealSeries synthesize_impl(TrendKind trend, SeasonKind season, const SynthConfig& cfg,
                           double alpha, double beta, double phi, Rng& rng,
                           std::size_t out_len) {
    const std::size_t n = out_len;
    RealSeries t(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tt = static_cast<double>(i + 1);
        t[i] = trend == TrendKind::linear ? alpha * tt : std::pow(tt, alpha);
    }
    if (season == SeasonKind::trig) {
        const double lambda = cfg.lambda();
        for (std::size_t i = 0; i < n; ++i) {
            const double arg = lambda * static_cast<double>(i + 1) - phi;
            s[i] = beta * std::sin(arg) + (1.0 - beta) * std::cos(arg);
        }
    } else {
        const std::size_t base = cfg.sample_len;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = -4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(base - 1);
            s[i] = kMorletAmp * std::cos(beta * u) * std::exp(-0.5 * u * u);
        }
    }
    double tn = 1.0, sn = 1.0;
    if (cfg.normalize_components) {
        tn = trend_norm_rms(trend, cfg.sample_len, alpha);
        sn = season_norm_rms(season, cfg, beta);
    }
    RealSeries out(n);
    const double w2 = cfg.w2();
    for (std::size_t i = 0; i < n; ++i)
        out[i] = cfg.w1 * t[i] / tn + w2 * s[i] / sn + cfg.w3 * rng.normal();
    return out;
}

LabeledDataset gen_dataset_impl(DatasetId id, const SynthConfig& cfg, std::size_t out_len) {
    const auto specs = class_specs(id.season());
    const std::size_t per_class = cfg.samples_per_class;
    const std::size_t total = 6 * per_class;

    LabeledDataset ds;
    ds.samples.resize(total);
    ds.labels.resize(total);
    ds.source_id = id.str();
    ds.seed = cfg.seed;

    const TrendKind trend = id.trend();
    const SeasonKind season = id.season();
    SynthConfig c = cfg;
    c.w1 = id.w1();

    const std::ptrdiff_t stotal = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < stotal; ++k) {
        const std::size_t cls = static_cast<std::size_t>(k) / per_class;
        const std::size_t idx = static_cast<std::size_t>(k) % per_class;
        Rng rng(mix_seed(mix_seed(cfg.seed, cls), idx));
        const ClassSpec& spec = specs[cls];
        const double alpha = rng.uniform(spec.alpha_lo, spec.alpha_hi);
        const double beta = rng.uniform(spec.beta_lo, spec.beta_hi);
        const double phi = (season == SeasonKind::trig && cfg.phase_jitter)
                               ? rng.uniform(0.0, kTwoPi)
                               : 0.0;
        ds.samples[static_cast<std::size_t>(k)] =
            synthesize_impl(trend, season, c, alpha, beta, phi, rng, out_len);
        ds.labels[static_cast<std::size_t>(k)] = spec.label;
    }
    return ds;
}

}  // namespace

RealSeries synthesize_sample(TrendKind trend, SeasonKind season, const SynthConfig& cfg,
                             double alpha, double beta, double phi, Rng& rng) {
    return synthesize_impl(trend, season, cfg, alpha, beta, phi, rng, cfg.sample_len);
}

LabeledDataset gen_dataset(DatasetId id, const SynthConfig& cfg) {
    return gen_dataset_impl(id, cfg, cfg.sample_len);
}

LabeledDataset gen_neighbor_dataset(DatasetId id, const SynthConfig& cfg) {
    return gen_dataset_impl(id, cfg, 2 * cfg.sample_len);
}

}  // namespace tsarm
