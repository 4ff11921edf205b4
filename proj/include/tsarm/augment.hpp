#pragma once

#include <optional>
#include <string>
#include <utility>

#include "tsarm/rng.hpp"
#include "tsarm/types.hpp"

namespace tsarm {

enum class AugKind {
    jitter,
    scale,
    flip,
    permute,
    resize,
    time_mask,
    freq_mask,
    time_neighbor,
};

// Canonical method names shared with the ranking tables ("jittering", ...,
// "time_neighboring"); the 9th method, "no_pretraining", lives only there.
std::string aug_name(AugKind kind);
AugKind aug_from_name(const std::string& name);  // throws ConfigError

// One augmentation with its parameters. Only the fields of the active kind
// matter; defaults follow common practice since the study fixes none.
struct AugSpec {
    AugKind kind = AugKind::jitter;
    double sigma = 0.1;            // jitter
    double scale_lo = 0.5;         // scale
    double scale_hi = 1.5;
    bool scale_per_step = false;   // one factor per sample vs per time step
    int num_segments = 4;          // permute
    double crop_fraction = 0.5;    // resize
    double mask_fraction = 0.2;    // time_mask / freq_mask
};

RealSeries jitter(const RealSeries& x, double sigma, Rng& rng);
RealSeries scale(const RealSeries& x, double lo, double hi, bool per_step, Rng& rng);
RealSeries flip(const RealSeries& x);
RealSeries permute(const RealSeries& x, int num_segments, Rng& rng);
RealSeries resize(const RealSeries& x, double crop_fraction, Rng& rng);
RealSeries time_mask(const RealSeries& x, double mask_fraction, Rng& rng);
RealSeries freq_mask(const RealSeries& x, double mask_fraction, Rng& rng);

// First half / second half of a longer series as a positive pair; an odd
// trailing element is dropped. Throws ShapeError when len < 4.
std::pair<RealSeries, RealSeries> neighbor_pair(const RealSeries& long_series);

// Dispatch on spec.kind. time_neighbor is a pairing rule, not a value
// transform, and is rejected here.
RealSeries apply_augmentation(const RealSeries& x, const AugSpec& spec, Rng& rng);

enum class PairMode { single_view, double_view };

struct ContrastivePair {
    RealSeries view_a;
    RealSeries view_b;
    PairMode mode = PairMode::single_view;
};

// Single view: (x, aug1(x)). Double view: (aug1(x), aug2(x)) on independent
// substreams. time_neighbor pairs the halves of `long_series` (the 2N-length
// recording) when given; otherwise the halves of x, each stretched back to
// len(x) so downstream shapes stay uniform.
ContrastivePair make_pair_views(const RealSeries& x, PairMode mode, const AugSpec& aug1,
                                const std::optional<AugSpec>& aug2, Rng& rng,
                                const RealSeries* long_series = nullptr);

}  // namespace tsarm
