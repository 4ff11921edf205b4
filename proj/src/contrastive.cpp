#include "tsarm/contrastive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tsarm/errors.hpp"

namespace tsarm {

// ---------------------------------------------------------------------------
// Mlp
// ---------------------------------------------------------------------------

Mlp::Mlp(std::size_t input_dim, const std::vector<int>& hidden, int out_dim,
         EncoderConfig::Activation act, Rng& rng)
    : act_(act) {
    if (input_dim == 0 || out_dim < 1) throw ConfigError("mlp: bad dimensions");
    dims_.push_back(input_dim);
    for (int h : hidden) {
        if (h < 1) throw ConfigError("mlp: hidden sizes must be positive");
        dims_.push_back(static_cast<std::size_t>(h));
    }
    dims_.push_back(static_cast<std::size_t>(out_dim));
    for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
        const std::size_t in = dims_[l], out = dims_[l + 1];
        // He initialization; also fine for tanh at these widths.
        const double s = std::sqrt(2.0 / static_cast<double>(in));
        weights.emplace_back(in * out);
        for (double& w : weights.back()) w = s * rng.normal();
        biases.emplace_back(out, 0.0);
    }
}

Mlp Mlp::encoder(std::size_t input_dim, const EncoderConfig& cfg) {
    if (cfg.embedding_dim < 2) throw ConfigError("encoder: embedding_dim must be >= 2");
    Rng rng(mix_seed(cfg.seed, 0x9C0DE));
    return Mlp(input_dim, cfg.hidden_sizes, cfg.embedding_dim, cfg.activation, rng);
}

RealSeries Mlp::forward(const RealSeries& x) const {
    Tape tape;
    return forward(x, tape);
}

RealSeries Mlp::forward(const RealSeries& x, Tape& tape) const {
    if (x.size() != dims_.front()) throw ShapeError("mlp: input dimension mismatch");
    tape.acts.clear();
    tape.acts.push_back(x);
    RealSeries cur = x;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const std::size_t in = dims_[l], out = dims_[l + 1];
        RealSeries next(out);
        for (std::size_t o = 0; o < out; ++o) {
            const double* wrow = weights[l].data() + o * in;
            double acc = biases[l][o];
            for (std::size_t i = 0; i < in; ++i) acc += wrow[i] * cur[i];
            next[o] = acc;
        }
        const bool last = (l + 1 == weights.size());
        if (!last) {
            if (act_ == EncoderConfig::Activation::relu) {
                for (double& v : next) v = v > 0.0 ? v : 0.0;
            } else {
                for (double& v : next) v = std::tanh(v);
            }
        }
        tape.acts.push_back(next);
        cur = std::move(next);
    }
    return cur;
}

RealSeries Mlp::backward(const Tape& tape, const RealSeries& grad_out, Mlp& grads) const {
    RealSeries delta = grad_out;
    for (std::size_t l = weights.size(); l-- > 0;) {
        const std::size_t in = dims_[l], out = dims_[l + 1];
        const RealSeries& a_in = tape.acts[l];
        if (l + 1 != weights.size()) {
            // Through the activation of this layer's output.
            const RealSeries& a_out = tape.acts[l + 1];
            if (act_ == EncoderConfig::Activation::relu) {
                for (std::size_t o = 0; o < out; ++o)
                    if (a_out[o] <= 0.0) delta[o] = 0.0;
            } else {
                for (std::size_t o = 0; o < out; ++o) delta[o] *= 1.0 - a_out[o] * a_out[o];
            }
        }
        for (std::size_t o = 0; o < out; ++o) {
            double* gw = grads.weights[l].data() + o * in;
            const double d = delta[o];
            for (std::size_t i = 0; i < in; ++i) gw[i] += d * a_in[i];
            grads.biases[l][o] += d;
        }
        RealSeries prev(in, 0.0);
        for (std::size_t o = 0; o < out; ++o) {
            const double* wrow = weights[l].data() + o * in;
            const double d = delta[o];
            for (std::size_t i = 0; i < in; ++i) prev[i] += wrow[i] * d;
        }
        delta = std::move(prev);
    }
    return delta;
}

Mlp Mlp::zeros_like() const {
    Mlp z = *this;
    for (auto& w : z.weights) std::fill(w.begin(), w.end(), 0.0);
    for (auto& b : z.biases) std::fill(b.begin(), b.end(), 0.0);
    return z;
}

void Mlp::add_scaled(const Mlp& grads, double factor) {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        for (std::size_t i = 0; i < weights[l].size(); ++i)
            weights[l][i] += factor * grads.weights[l][i];
        for (std::size_t i = 0; i < biases[l].size(); ++i)
            biases[l][i] += factor * grads.biases[l][i];
    }
}

void Mlp::accumulate(const Mlp& other) { add_scaled(other, 1.0); }

// ---------------------------------------------------------------------------
// NT-Xent
// ---------------------------------------------------------------------------

NtXentResult nt_xent_loss(const std::vector<RealSeries>& a, const std::vector<RealSeries>& b,
                          double temperature) {
    if (!(temperature > 0.0)) throw ConfigError("nt_xent: temperature must be > 0");
    const std::size_t bsz = a.size();
    if (bsz != b.size()) throw ShapeError("nt_xent: batch size mismatch");
    if (bsz < 2) throw ConfigError("nt_xent: batch size must be >= 2 (no negatives)");
    const std::size_t d = a[0].size();
    for (const auto& v : a)
        if (v.size() != d) throw ShapeError("nt_xent: ragged embeddings");
    for (const auto& v : b)
        if (v.size() != d) throw ShapeError("nt_xent: ragged embeddings");

    const std::size_t m = 2 * bsz;
    std::vector<const RealSeries*> z(m);
    for (std::size_t i = 0; i < bsz; ++i) {
        z[i] = &a[i];
        z[i + bsz] = &b[i];
    }
    std::vector<double> norm(m);
    std::vector<RealSeries> zhat(m);
    for (std::size_t i = 0; i < m; ++i) {
        double n2 = 0.0;
        for (double v : *z[i]) n2 += v * v;
        if (n2 == 0.0) throw DegenerateVectorError("nt_xent: zero embedding");
        norm[i] = std::sqrt(n2);
        zhat[i].resize(d);
        for (std::size_t k = 0; k < d; ++k) zhat[i][k] = (*z[i])[k] / norm[i];
    }

    std::vector<double> sim(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += zhat[i][k] * zhat[j][k];
            s /= temperature;
            sim[i * m + j] = s;
            sim[j * m + i] = s;
        }

    // dloss/dsim accumulated over both anchors of every ordered pair.
    std::vector<double> gsim(m * m, 0.0);
    double loss = 0.0;
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t pos = (i + bsz) % m;
        double mx = -1e300;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) mx = std::max(mx, sim[i * m + j]);
        double denom = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) denom += std::exp(sim[i * m + j] - mx);
        loss += inv_m * (std::log(denom) + mx - sim[i * m + pos]);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double soft = std::exp(sim[i * m + j] - mx) / denom;
            gsim[i * m + j] += inv_m * (soft - (j == pos ? 1.0 : 0.0));
        }
    }

    // Chain through cosine: dsim_ij/dz_i = (zhat_j - sim*zhat_i)/(norm_i*tau).
    NtXentResult out;
    out.loss = loss;
    out.grad_a.assign(bsz, RealSeries(d, 0.0));
    out.grad_b.assign(bsz, RealSeries(d, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        // s_ij is one symmetric variable; its total derivative collects the
        // contributions of both anchors before the chain rule below.
        RealSeries ghat(d, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double g = gsim[i * m + j] + gsim[j * m + i];
            if (g == 0.0) continue;
            for (std::size_t k = 0; k < d; ++k) ghat[k] += g * zhat[j][k];
        }
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += ghat[k] * zhat[i][k];
        RealSeries& dst = i < bsz ? out.grad_a[i] : out.grad_b[i - bsz];
        for (std::size_t k = 0; k < d; ++k)
            dst[k] = (ghat[k] - dot * zhat[i][k]) / (norm[i] * temperature);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pretraining
// ---------------------------------------------------------------------------

std::string ViewSpec::name() const {
    if (mode == PairMode::single_view || !aug2) return aug_name(aug1.kind);
    return aug_name(aug1.kind) + "+" + aug_name(aug2->kind);
}

namespace {

ContrastivePair build_pair(const std::vector<RealSeries>& xs,
                           const std::vector<RealSeries>& longs, std::size_t idx,
                           const ViewSpec& view, Rng rng) {
    const RealSeries* lp = idx < longs.size() ? &longs[idx] : nullptr;
    return make_pair_views(xs[idx], view.mode, view.aug1, view.aug2, rng, lp);
}

double eval_pair_loss(const Mlp& enc, const std::vector<ContrastivePair>& pairs,
                      int batch_size, double temperature) {
    double total = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < pairs.size();) {
        const std::size_t end = std::min(pairs.size(), start + static_cast<std::size_t>(batch_size));
        if (end - start < 2) break;
        std::vector<RealSeries> ea, eb;
        for (std::size_t i = start; i < end; ++i) {
            ea.push_back(enc.forward(pairs[i].view_a));
            eb.push_back(enc.forward(pairs[i].view_b));
        }
        total += nt_xent_loss(ea, eb, temperature).loss;
        ++batches;
        start = end;
    }
    return batches ? total / static_cast<double>(batches) : 0.0;
}

}  // namespace

PretrainResult pretrain(const EncoderConfig& enc_cfg, const ContrastiveData& data,
                        const ViewSpec& view, const TrainConfig& cfg) {
    if (data.train.empty()) throw ShapeError("pretrain: empty dataset");
    const std::size_t n = data.train.size();
    const std::size_t in_dim = data.train[0].size();

    PretrainResult result;
    result.encoder = Mlp::encoder(in_dim, enc_cfg);

    // Fixed validation pairs so epoch-0 and final losses are comparable.
    std::vector<ContrastivePair> val_pairs;
    if (data.val.size() >= 2) {
        Rng vrng(mix_seed(cfg.seed, 0x7A1));
        for (std::size_t i = 0; i < data.val.size(); ++i)
            val_pairs.push_back(build_pair(data.val, data.val_long, i, view, vrng.split(i)));
        result.initial_val_loss =
            eval_pair_loss(result.encoder, val_pairs, cfg.batch_size, cfg.temperature);
        result.final_val_loss = result.initial_val_loss;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Mlp grads = result.encoder.zeros_like();

    for (int epoch = 0; epoch < cfg.pretrain_epochs; ++epoch) {
        Rng erng(mix_seed(cfg.seed, 0xE000 + static_cast<std::uint64_t>(epoch)));
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[erng.next_below(i)]);

        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n;) {
            const std::size_t end = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
            if (end - start < 2) break;  // a single sample has no negatives
            const std::size_t bsz = end - start;

            std::vector<Mlp::Tape> ta(bsz), tb(bsz);
            std::vector<RealSeries> ea(bsz), eb(bsz);
            for (std::size_t i = 0; i < bsz; ++i) {
                const std::size_t idx = order[start + i];
                ContrastivePair pair = build_pair(data.train, data.train_long, idx, view,
                                                  erng.split(0xB00 + idx));
                ea[i] = result.encoder.forward(pair.view_a, ta[i]);
                eb[i] = result.encoder.forward(pair.view_b, tb[i]);
            }
            NtXentResult nt = nt_xent_loss(ea, eb, cfg.temperature);
            epoch_loss += nt.loss;
            ++batches;

            grads = result.encoder.zeros_like();
            for (std::size_t i = 0; i < bsz; ++i) {
                result.encoder.backward(ta[i], nt.grad_a[i], grads);
                result.encoder.backward(tb[i], nt.grad_b[i], grads);
            }
            result.encoder.add_scaled(grads, -cfg.learning_rate);
            start = end;
        }
        result.epoch_loss.push_back(batches ? epoch_loss / static_cast<double>(batches) : 0.0);
    }

    if (!val_pairs.empty())
        result.final_val_loss =
            eval_pair_loss(result.encoder, val_pairs, cfg.batch_size, cfg.temperature);
    return result;
}

// ---------------------------------------------------------------------------
// Fine-tuning and metrics
// ---------------------------------------------------------------------------

namespace {

ClassificationMetrics metrics_from_predictions(const std::vector<int>& truth,
                                               const std::vector<int>& pred,
                                               int num_classes) {
    const std::size_t n = truth.size();
    std::vector<double> tp(num_classes, 0), fp(num_classes, 0), fn(num_classes, 0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (pred[i] == truth[i]) {
            ++correct;
            tp[static_cast<std::size_t>(truth[i])] += 1;
        } else {
            fp[static_cast<std::size_t>(pred[i])] += 1;
            fn[static_cast<std::size_t>(truth[i])] += 1;
        }
    }
    ClassificationMetrics m;
    m.accuracy = n ? static_cast<double>(correct) / static_cast<double>(n) : 0.0;
    for (int c = 0; c < num_classes; ++c) {
        const double p = tp[c] + fp[c] > 0 ? tp[c] / (tp[c] + fp[c]) : 0.0;
        const double r = tp[c] + fn[c] > 0 ? tp[c] / (tp[c] + fn[c]) : 0.0;
        const double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
        m.macro_precision += p;
        m.macro_recall += r;
        m.macro_f1 += f1;
    }
    m.macro_precision /= num_classes;
    m.macro_recall /= num_classes;
    m.macro_f1 /= num_classes;
    return m;
}

struct HeadModel {
    Mlp encoder;
    Mlp head;  // single linear layer embedding -> classes

    std::vector<int> predict(const std::vector<RealSeries>& xs) const {
        std::vector<int> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const RealSeries logits = head.forward(encoder.forward(xs[i]));
            out[i] = static_cast<int>(
                std::max_element(logits.begin(), logits.end()) - logits.begin());
        }
        return out;
    }
};

}  // namespace

ClassificationMetrics finetune_and_test(const Mlp& encoder, const LabeledSplit& train,
                                        const LabeledSplit& val, const LabeledSplit& test,
                                        const TrainConfig& cfg, int num_classes) {
    if (train.x.size() != train.y.size() || test.x.size() != test.y.size())
        throw ShapeError("finetune: samples/labels size mismatch");
    if (train.x.empty() || test.x.empty()) throw ShapeError("finetune: empty split");
    if (!(cfg.label_ratio > 0.0) || cfg.label_ratio > 1.0)
        throw ConfigError("finetune: label_ratio must be in (0, 1]");

    // Stratified label-ratio subset: per class, the first round(ratio*count)
    // of a seeded shuffle.
    std::vector<std::vector<std::size_t>> by_class(num_classes);
    for (std::size_t i = 0; i < train.y.size(); ++i) {
        const int c = train.y[i];
        if (c < 0 || c >= num_classes) throw ConfigError("finetune: label out of range");
        by_class[static_cast<std::size_t>(c)].push_back(i);
    }
    Rng srng(mix_seed(cfg.seed, 0x5AB));
    std::vector<std::size_t> subset;
    for (int c = 0; c < num_classes; ++c) {
        auto& idx = by_class[static_cast<std::size_t>(c)];
        if (idx.empty())
            throw StratificationError("class " + std::to_string(c) +
                                      " has no labeled training samples");
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[srng.next_below(i)]);
        std::size_t keep = static_cast<std::size_t>(
            std::llround(cfg.label_ratio * static_cast<double>(idx.size())));
        keep = std::max<std::size_t>(keep, 1);
        subset.insert(subset.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep));
    }

    HeadModel model;
    model.encoder = encoder;
    Rng hrng(mix_seed(cfg.seed, 0x4EAD));
    model.head = Mlp(encoder.output_dim(), {}, num_classes, EncoderConfig::Activation::relu, hrng);

    HeadModel best = model;
    double best_val_f1 = -1.0;

    std::vector<std::size_t> order = subset;
    Mlp enc_grads = model.encoder.zeros_like();
    Mlp head_grads = model.head.zeros_like();

    for (int epoch = 0; epoch < cfg.finetune_epochs; ++epoch) {
        Rng erng(mix_seed(cfg.seed, 0xF000 + static_cast<std::uint64_t>(epoch)));
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[erng.next_below(i)]);

        for (std::size_t start = 0; start < order.size();) {
            const std::size_t end =
                std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            const std::size_t bsz = end - start;
            enc_grads = model.encoder.zeros_like();
            head_grads = model.head.zeros_like();
            for (std::size_t i = start; i < end; ++i) {
                const std::size_t idx = order[i];
                Mlp::Tape etape, htape;
                const RealSeries emb = model.encoder.forward(train.x[idx], etape);
                RealSeries logits = model.head.forward(emb, htape);
                // Softmax cross-entropy gradient.
                const double mx = *std::max_element(logits.begin(), logits.end());
                double denom = 0.0;
                for (double v : logits) denom += std::exp(v - mx);
                RealSeries dlogits(logits.size());
                for (std::size_t c = 0; c < logits.size(); ++c) {
                    const double p = std::exp(logits[c] - mx) / denom;
                    dlogits[c] = (p - (static_cast<int>(c) == train.y[idx] ? 1.0 : 0.0)) /
                                 static_cast<double>(bsz);
                }
                const RealSeries demb = model.head.backward(htape, dlogits, head_grads);
                if (cfg.finetune_encoder) model.encoder.backward(etape, demb, enc_grads);
            }
            model.head.add_scaled(head_grads, -cfg.learning_rate);
            if (cfg.finetune_encoder) model.encoder.add_scaled(enc_grads, -cfg.learning_rate);
            start = end;
        }

        if (!val.x.empty()) {
            const ClassificationMetrics vm =
                metrics_from_predictions(val.y, model.predict(val.x), num_classes);
            if (vm.macro_f1 > best_val_f1) {
                best_val_f1 = vm.macro_f1;
                best = model;
            }
        }
    }
    const HeadModel& final_model = val.x.empty() ? model : best;
    return metrics_from_predictions(test.y, final_model.predict(test.x), num_classes);
}

// ---------------------------------------------------------------------------
// Ranking and benchmark
// ---------------------------------------------------------------------------

RankedAugmentations rank_augmentations(const std::map<std::string, double>& mean_f1,
                                       double no_pretrain_f1) {
    if (mean_f1.empty()) throw ConfigError("rank_augmentations: empty results");
    const double margin = 0.01 * no_pretrain_f1;
    std::vector<std::pair<std::string, double>> order(mean_f1.begin(), mean_f1.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    RankedAugmentations out;
    out.source = "benchmark";
    int group = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && order[i - 1].second - order[i].second > margin) ++group;
        out.entries.push_back({order[i].first, static_cast<int>(i) + 1, group});
    }
    return out;
}

SplitDataset stratified_split(const LabeledDataset& full, double train_frac, double val_frac,
                              Rng& rng, const LabeledDataset* full_long) {
    if (full.samples.size() != full.labels.size())
        throw ShapeError("split: samples/labels size mismatch");
    if (!(train_frac > 0.0) || !(val_frac >= 0.0) || train_frac + val_frac >= 1.0)
        throw ConfigError("split: fractions must satisfy 0 < train, 0 <= val, train+val < 1");
    if (full_long && full_long->samples.size() != full.samples.size())
        throw ShapeError("split: long dataset not aligned");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < full.labels.size(); ++i) by_class[full.labels[i]].push_back(i);

    SplitDataset out;
    out.source_id = full.source_id;
    for (auto& [cls, idx] : by_class) {
        (void)cls;
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.next_below(i)]);
        const std::size_t n = idx.size();
        const std::size_t ntrain = static_cast<std::size_t>(
            std::llround(train_frac * static_cast<double>(n)));
        const std::size_t nval = static_cast<std::size_t>(
            std::llround(val_frac * static_cast<double>(n)));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t s = idx[i];
            LabeledSplit& dst = i < ntrain ? out.train : (i < ntrain + nval ? out.val : out.test);
            dst.x.push_back(full.samples[s]);
            dst.y.push_back(full.labels[s]);
            if (full_long) {
                if (i < ntrain)
                    out.train_long.push_back(full_long->samples[s]);
                else if (i < ntrain + nval)
                    out.val_long.push_back(full_long->samples[s]);
            }
        }
    }
    return out;
}

BenchmarkReport benchmark_run(const SplitDataset& data, const std::vector<ViewSpec>& views,
                              const TrainConfig& cfg, int jobs) {
    if (data.train.x.empty() || data.test.x.empty())
        throw ShapeError("benchmark: needs train and test splits");
    int num_classes = 0;
    for (int y : data.train.y) num_classes = std::max(num_classes, y + 1);
    for (int y : data.test.y) num_classes = std::max(num_classes, y + 1);

    const std::size_t n_methods = views.size() + 1;  // + no_pretraining
    const std::size_t n_runs = n_methods * static_cast<std::size_t>(cfg.repeats);
    std::vector<ClassificationMetrics> runs(n_runs);

    ContrastiveData cdata;
    cdata.train = data.train.x;
    cdata.val = data.val.x;
    cdata.train_long = data.train_long;
    cdata.val_long = data.val_long;

#ifdef _OPENMP
    const int prev_threads = omp_get_max_threads();
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif

    const std::ptrdiff_t sruns = static_cast<std::ptrdiff_t>(n_runs);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < sruns; ++r) {
        const std::size_t method = static_cast<std::size_t>(r) / cfg.repeats;
        const std::size_t repeat = static_cast<std::size_t>(r) % cfg.repeats;
        TrainConfig run_cfg = cfg;
        run_cfg.seed = mix_seed(mix_seed(cfg.seed, method), repeat);
        EncoderConfig enc_cfg;
        enc_cfg.seed = run_cfg.seed;

        Mlp encoder;
        if (method < views.size()) {
            encoder = pretrain(enc_cfg, cdata, views[method], run_cfg).encoder;
        } else {
            encoder = Mlp::encoder(data.train.x[0].size(), enc_cfg);  // no pretraining
        }
        runs[static_cast<std::size_t>(r)] =
            finetune_and_test(encoder, data.train, data.val, data.test, run_cfg, num_classes);
    }

#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(prev_threads);
#endif

    BenchmarkReport report;
    report.dataset = data.source_id;
    report.cfg = cfg;
    std::map<std::string, double> mean_f1;
    for (std::size_t m = 0; m < n_methods; ++m) {
        MethodRuns mr;
        mr.name = m < views.size() ? views[m].name() : "no_pretraining";
        for (int rep = 0; rep < cfg.repeats; ++rep)
            mr.repeats.push_back(runs[m * static_cast<std::size_t>(cfg.repeats) +
                                      static_cast<std::size_t>(rep)]);
        for (const auto& met : mr.repeats) {
            mr.mean.accuracy += met.accuracy;
            mr.mean.macro_precision += met.macro_precision;
            mr.mean.macro_recall += met.macro_recall;
            mr.mean.macro_f1 += met.macro_f1;
        }
        const double inv = 1.0 / static_cast<double>(cfg.repeats);
        mr.mean.accuracy *= inv;
        mr.mean.macro_precision *= inv;
        mr.mean.macro_recall *= inv;
        mr.mean.macro_f1 *= inv;
        mean_f1[mr.name] = mr.mean.macro_f1;
        report.methods.push_back(std::move(mr));
    }
    report.ranking = rank_augmentations(mean_f1, mean_f1.at("no_pretraining"));
    report.ranking.source = data.source_id;
    return report;
}

}  // namespace tsarm
