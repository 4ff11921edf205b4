#include "tsarm/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsarm/errors.hpp"
#include "tsarm/numerics.hpp"

namespace tsarm {

std::string aug_name(AugKind kind) {
    switch (kind) {
        case AugKind::jitter: return "jittering";
        case AugKind::scale: return "scaling";
        case AugKind::flip: return "flipping";
        case AugKind::permute: return "permutation";
        case AugKind::resize: return "resizing";
        case AugKind::time_mask: return "time_masking";
        case AugKind::freq_mask: return "freq_masking";
        case AugKind::time_neighbor: return "time_neighboring";
    }
    return "?";
}

AugKind aug_from_name(const std::string& name) {
    for (AugKind k : {AugKind::jitter, AugKind::scale, AugKind::flip, AugKind::permute,
                      AugKind::resize, AugKind::time_mask, AugKind::freq_mask,
                      AugKind::time_neighbor}) {
        if (aug_name(k) == name) return k;
    }
    // Short aliases used on the command line.
    if (name == "jitter") return AugKind::jitter;
    if (name == "scale") return AugKind::scale;
    if (name == "flip") return AugKind::flip;
    if (name == "permute") return AugKind::permute;
    if (name == "resize") return AugKind::resize;
    if (name == "time_mask") return AugKind::time_mask;
    if (name == "freq_mask") return AugKind::freq_mask;
    if (name == "time_neighbor") return AugKind::time_neighbor;
    throw ConfigError("unknown augmentation '" + name + "'");
}

RealSeries jitter(const RealSeries& x, double sigma, Rng& rng) {
    if (!(sigma > 0.0)) throw ConfigError("jitter: sigma must be > 0");
    RealSeries out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + sigma * rng.normal();
    return out;
}

RealSeries scale(const RealSeries& x, double lo, double hi, bool per_step, Rng& rng) {
    if (!(lo > 0.0) || hi < lo) throw ConfigError("scale: need 0 < lo <= hi");
    RealSeries out(x.size());
    if (per_step) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * rng.uniform(lo, hi);
    } else {
        const double s = rng.uniform(lo, hi);
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * s;
    }
    return out;
}

RealSeries flip(const RealSeries& x) {
    return RealSeries(x.rbegin(), x.rend());
}

RealSeries permute(const RealSeries& x, int num_segments, Rng& rng) {
    if (num_segments < 1) throw ConfigError("permute: num_segments must be >= 1");
    const std::size_t n = x.size();
    const std::size_t k = static_cast<std::size_t>(num_segments);
    if (k > n) throw ConfigError("permute: more segments than points");

    // Near-equal contiguous chunks, remainder spread over the leading ones.
    const std::size_t base = n / k, extra = n % k;
    std::vector<std::size_t> starts(k + 1);
    starts[0] = 0;
    for (std::size_t i = 0; i < k; ++i) starts[i + 1] = starts[i] + base + (i < extra ? 1 : 0);

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = k; i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(i)]);

    RealSeries out;
    out.reserve(n);
    for (std::size_t seg : order)
        out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(starts[seg]),
                   x.begin() + static_cast<std::ptrdiff_t>(starts[seg + 1]));
    return out;
}

RealSeries resize(const RealSeries& x, double crop_fraction, Rng& rng) {
    if (!(crop_fraction > 0.0) || crop_fraction > 1.0)
        throw ConfigError("resize: crop_fraction must be in (0, 1]");
    const std::size_t n = x.size();
    const std::size_t w = static_cast<std::size_t>(
        std::floor(crop_fraction * static_cast<double>(n)));
    if (w < 2) throw ConfigError("resize: crop window shorter than 2 points");
    const std::size_t start = rng.next_below(n - w + 1);
    RealSeries window(x.begin() + static_cast<std::ptrdiff_t>(start),
                      x.begin() + static_cast<std::ptrdiff_t>(start + w));
    return resample_linear(window, n);
}

RealSeries time_mask(const RealSeries& x, double mask_fraction, Rng& rng) {
    if (!(mask_fraction > 0.0) || mask_fraction >= 1.0)
        throw ConfigError("time_mask: mask_fraction must be in (0, 1)");
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("time_mask: empty series");
    const std::size_t m = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::ceil(mask_fraction * static_cast<double>(n))));
    const std::size_t start = rng.next_below(n - m + 1);
    RealSeries out = x;
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(start),
              out.begin() + static_cast<std::ptrdiff_t>(start + m), 0.0);
    return out;
}

RealSeries freq_mask(const RealSeries& x, double mask_fraction, Rng& rng) {
    if (!(mask_fraction > 0.0) || mask_fraction >= 1.0)
        throw ConfigError("freq_mask: mask_fraction must be in (0, 1)");
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("freq_mask: empty series");
    if (n < 3) return x;  // no non-DC pair exists

    Spectrum s = dft(x);
    // Candidate conjugate pairs (k, n-k), k = 1..floor(n/2); for even n the
    // Nyquist bin is its own conjugate.
    const std::size_t half = n / 2;
    const std::size_t m = std::min<std::size_t>(
        half, static_cast<std::size_t>(
                  std::ceil(mask_fraction * static_cast<double>(n) / 2.0)));
    std::vector<std::size_t> cand(half);
    std::iota(cand.begin(), cand.end(), std::size_t{1});
    for (std::size_t i = 0; i < m; ++i)
        std::swap(cand[i], cand[i + rng.next_below(half - i)]);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t k = cand[i];
        s.bins[k] = 0.0;
        s.bins[n - k] = 0.0;  // k == n-k at Nyquist; zeroing twice is harmless
    }
    return idft(s);
}

std::pair<RealSeries, RealSeries> neighbor_pair(const RealSeries& long_series) {
    if (long_series.size() < 4)
        throw ShapeError("neighbor_pair: need at least 4 points");
    const std::size_t h = long_series.size() / 2;
    RealSeries a(long_series.begin(), long_series.begin() + static_cast<std::ptrdiff_t>(h));
    RealSeries b(long_series.begin() + static_cast<std::ptrdiff_t>(h),
                 long_series.begin() + static_cast<std::ptrdiff_t>(2 * h));
    return {std::move(a), std::move(b)};
}

RealSeries apply_augmentation(const RealSeries& x, const AugSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case AugKind::jitter: return jitter(x, spec.sigma, rng);
        case AugKind::scale: return scale(x, spec.scale_lo, spec.scale_hi, spec.scale_per_step, rng);
        case AugKind::flip: return flip(x);
        case AugKind::permute: return permute(x, spec.num_segments, rng);
        case AugKind::resize: return resize(x, spec.crop_fraction, rng);
        case AugKind::time_mask: return time_mask(x, spec.mask_fraction, rng);
        case AugKind::freq_mask: return freq_mask(x, spec.mask_fraction, rng);
        case AugKind::time_neighbor:
            throw ConfigError("time_neighboring builds a pair, not a transformed series");
    }
    throw ConfigError("apply_augmentation: bad kind");
}

ContrastivePair make_pair_views(const RealSeries& x, PairMode mode, const AugSpec& aug1,
                                const std::optional<AugSpec>& aug2, Rng& rng,
                                const RealSeries* long_series) {
    if (mode == PairMode::double_view && !aug2)
        throw ConfigError("double-view pairing needs a second augmentation");

    if (aug1.kind == AugKind::time_neighbor ||
        (aug2 && aug2->kind == AugKind::time_neighbor)) {
        auto [a, b] = long_series ? neighbor_pair(*long_series) : neighbor_pair(x);
        if (!long_series) {
            // Without a 2N recording the halves of x stand in; stretch them
            // back so both views keep the sample length.
            a = resample_linear(a, x.size());
            b = resample_linear(b, x.size());
        }
        return {std::move(a), std::move(b), mode};
    }

    if (mode == PairMode::single_view) {
        Rng r1 = rng.split(1);
        return {x, apply_augmentation(x, aug1, r1), mode};
    }
    Rng r1 = rng.split(1);
    Rng r2 = rng.split(2);
    return {apply_augmentation(x, aug1, r1), apply_augmentation(x, *aug2, r2), mode};
}

}  // namespace tsarm
