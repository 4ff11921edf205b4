#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tsarm/rng.hpp"
#include "tsarm/types.hpp"

namespace tsarm {

enum class TrendKind { linear, power };   // alpha * t  |  t ^ alpha
enum class SeasonKind { trig, morlet };   // weighted sin/cos  |  real Morlet pulse

// Synthetic dataset identifier: group letter encodes (trend, season),
// suffix encodes the trend weight w1 (1 -> 0.1, 2 -> 0.5, 3 -> 0.9).
struct DatasetId {
    char group = 'A';  // A..D
    int suffix = 1;    // 1..3

    TrendKind trend() const { return (group == 'A' || group == 'B') ? TrendKind::linear : TrendKind::power; }
    SeasonKind season() const { return (group == 'A' || group == 'C') ? SeasonKind::trig : SeasonKind::morlet; }
    double w1() const { return suffix == 1 ? 0.1 : suffix == 2 ? 0.5 : 0.9; }
    std::string str() const { return std::string(1, group) + std::to_string(suffix); }

    static DatasetId parse(const std::string& s);  // throws ConfigError
    static std::array<DatasetId, 12> all();

    bool operator==(const DatasetId&) const = default;
};

// One of the six classes: the (alpha, beta) sampling box.
struct ClassSpec {
    int label = 0;
    double alpha_lo = 0, alpha_hi = 0;
    double beta_lo = 0, beta_hi = 0;
};

// The six class boxes for a season kind: alpha in [0.1,0.3] for labels 0-2,
// [-0.3,-0.1] for labels 3-5; beta cycles through the three per-kind ranges.
std::array<ClassSpec, 6> class_specs(SeasonKind season);

struct SynthConfig {
    std::size_t sample_len = 100;
    double w1 = 0.1;                  // trend weight; w2 = 1 - w1
    double w3 = 0.3;                  // residual weight, constant in the study design
    std::size_t samples_per_class = 1000;
    std::uint64_t seed = 1729;
    double cycles_per_sample = 4.0;   // trig only; lambda = 2*pi*cycles/len
    bool phase_jitter = true;         // trig only: phi ~ U[0, 2*pi) per sample
    // Scale trend and seasonality to unit mean power before weighting (each
    // divided by the rms of the component at the class-midpoint coefficient
    // nearest the drawn one). Off by default so w1*T + w2*S + w3*R holds
    // literally; on, the component powers track the weights, which is what
    // the power-ratio step of the recommender assumes.
    bool normalize_components = false;

    double w2() const { return 1.0 - w1; }
    double lambda() const {
        return 6.283185307179586476925286766559 * cycles_per_sample /
               static_cast<double>(sample_len);
    }
};

// Trend on the grid t = 1..len. Linear: alpha*t. Power: t^alpha.
RealSeries gen_trend(TrendKind kind, std::size_t len, double alpha);

// Seasonality. Trig: beta*sin(lambda*t - phi) + (1-beta)*cos(lambda*t - phi)
// on t = 1..len. Morlet: Re[pi^-1/4 e^{i*beta*u} e^{-u^2/2}] with u uniform
// over [-4, 4]; lambda and phi are ignored.
RealSeries gen_seasonality(SeasonKind kind, std::size_t len, double beta, double lambda,
                           double phi);

// w1*T + (1-w1)*S + w3*R with R ~ iid N(0,1) drawn from rng.
RealSeries synthesize_sample(TrendKind trend, SeasonKind season, const SynthConfig& cfg,
                             double alpha, double beta, double phi, Rng& rng);

// 6 classes x samples_per_class samples; per-sample parameter draws come from
// a stream mixed from (seed, class, index), so generation order is free.
LabeledDataset gen_dataset(DatasetId id, const SynthConfig& cfg);

// Same processes continued to length 2N (trend keeps its grid, trig keeps its
// period); splitting these in half yields the time-neighboring positive
// pairs. Sample i reuses the parameter draws of gen_dataset's sample i.
LabeledDataset gen_neighbor_dataset(DatasetId id, const SynthConfig& cfg);

// rms of the component at the class-midpoint coefficient nearest the drawn
// one (trend: +/-0.2 by sign; season: {0.1, 0.5, 0.9} or {4, 5, 6}); the
// normalization constants used when cfg.normalize_components is set.
double trend_norm_rms(TrendKind kind, std::size_t len, double alpha);
double season_norm_rms(SeasonKind kind, const SynthConfig& cfg, double beta);

}  // namespace tsarm
