#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsarm/augment.hpp"
#include "tsarm/recommend.hpp"
#include "tsarm/rng.hpp"
#include "tsarm/types.hpp"

namespace tsarm {

struct EncoderConfig {
    std::vector<int> hidden_sizes{64, 64};
    int embedding_dim = 32;
    enum class Activation { relu, tanh };
    Activation activation = Activation::relu;
    std::uint64_t seed = 1729;
};

struct TrainConfig {
    double temperature = 0.5;
    int batch_size = 64;
    int pretrain_epochs = 20;
    int finetune_epochs = 20;
    double learning_rate = 1e-3;
    double label_ratio = 0.3;  // fraction of the pretraining split kept labeled
    int repeats = 5;
    std::uint64_t seed = 1729;
    bool finetune_encoder = true;  // false trains only the linear head
};

struct ClassificationMetrics {
    double accuracy = 0;
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
};

// Dense multilayer perceptron with explicit backpropagation. Layers are
// row-major (out x in); hidden layers take the configured activation, the
// output layer is linear.
class Mlp {
  public:
    Mlp() = default;
    Mlp(std::size_t input_dim, const std::vector<int>& hidden, int out_dim,
        EncoderConfig::Activation act, Rng& rng);

    static Mlp encoder(std::size_t input_dim, const EncoderConfig& cfg);

    RealSeries forward(const RealSeries& x) const;

    // Post-activation values per layer, acts[0] being the input.
    struct Tape {
        std::vector<RealSeries> acts;
    };
    RealSeries forward(const RealSeries& x, Tape& tape) const;

    // Accumulates parameter gradients into `grads` (a zeroed clone) and
    // returns dL/d(input).
    RealSeries backward(const Tape& tape, const RealSeries& grad_out, Mlp& grads) const;

    Mlp zeros_like() const;
    void add_scaled(const Mlp& grads, double factor);  // theta += factor * grads
    void accumulate(const Mlp& other);

    std::size_t input_dim() const { return dims_.front(); }
    std::size_t output_dim() const { return dims_.back(); }
    bool operator==(const Mlp&) const = default;

    std::vector<std::vector<double>> weights;  // [layer][out*in]
    std::vector<std::vector<double>> biases;   // [layer][out]

  private:
    std::vector<std::size_t> dims_;
    EncoderConfig::Activation act_ = EncoderConfig::Activation::relu;
};

struct NtXentResult {
    double loss = 0;
    std::vector<RealSeries> grad_a;  // dL/d embedding, through the cosine normalization
    std::vector<RealSeries> grad_b;
};

// Standard NT-Xent over the 2B stacked views: positives are (a_i, b_i),
// similarity is cosine/temperature, every anchor contrasts against the other
// 2B-1 views. Throws ConfigError when B < 2 (no negatives exist).
NtXentResult nt_xent_loss(const std::vector<RealSeries>& a, const std::vector<RealSeries>& b,
                          double temperature);

// How positive pairs are built during pretraining.
struct ViewSpec {
    PairMode mode = PairMode::single_view;
    AugSpec aug1;
    std::optional<AugSpec> aug2;
    std::string name() const;
};

struct ContrastiveData {
    std::vector<RealSeries> train;
    std::vector<RealSeries> val;         // held-out pretraining loss monitor; may be empty
    std::vector<RealSeries> train_long;  // aligned 2N recordings for time_neighboring
    std::vector<RealSeries> val_long;
};

struct PretrainResult {
    Mlp encoder;
    std::vector<double> epoch_loss;  // mean train batch loss per epoch
    double initial_val_loss = 0;     // on fixed val pairs, before / after training
    double final_val_loss = 0;
};

PretrainResult pretrain(const EncoderConfig& enc_cfg, const ContrastiveData& data,
                        const ViewSpec& view, const TrainConfig& cfg);

struct LabeledSplit {
    std::vector<RealSeries> x;
    std::vector<int> y;
};

// Stratified label_ratio subset of train, cross-entropy training of a linear
// head (and the encoder unless cfg says otherwise), best-epoch selection by
// validation macro-F1 when val is non-empty, metrics on test.
ClassificationMetrics finetune_and_test(const Mlp& encoder, const LabeledSplit& train,
                                        const LabeledSplit& val, const LabeledSplit& test,
                                        const TrainConfig& cfg, int num_classes);

// Descending mean F1 with adjacent scores within 0.01*no_pretrain_f1 chained
// into one tie group; ranks are strict positions.
RankedAugmentations rank_augmentations(const std::map<std::string, double>& mean_f1,
                                       double no_pretrain_f1);

struct SplitDataset {
    LabeledSplit train, val, test;
    std::vector<RealSeries> train_long;  // aligned with train; may be empty
    std::vector<RealSeries> val_long;
    std::string source_id;
};

// Stratified 70/10/20 split; when `full_long` is given its rows are carried
// along with their samples.
SplitDataset stratified_split(const LabeledDataset& full, double train_frac, double val_frac,
                              Rng& rng, const LabeledDataset* full_long = nullptr);

struct MethodRuns {
    std::string name;
    std::vector<ClassificationMetrics> repeats;
    ClassificationMetrics mean;
};

struct BenchmarkReport {
    std::string dataset;
    TrainConfig cfg;
    std::vector<MethodRuns> methods;  // the requested views plus no_pretraining
    RankedAugmentations ranking;
};

// cfg.repeats independent seeded runs per view and for the no-pretraining
// baseline; runs execute in parallel (bounded by `jobs` when > 0), the
// aggregation order is fixed.
BenchmarkReport benchmark_run(const SplitDataset& data, const std::vector<ViewSpec>& views,
                              const TrainConfig& cfg, int jobs = 0);

}  // namespace tsarm
