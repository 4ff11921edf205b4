#include <cmath>
#include <doctest.h>
#include <map>

#include "tsarm/contrastive.hpp"
#include "tsarm/errors.hpp"
#include "tsarm/synth.hpp"

using namespace tsarm;

namespace {

std::vector<RealSeries> random_batch(std::size_t b, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<RealSeries> out(b, RealSeries(d));
    for (auto& v : out)
        for (double& x : v) x = rng.normal();
    return out;
}

double loss_only(const std::vector<RealSeries>& a, const std::vector<RealSeries>& b, double tau) {
    return nt_xent_loss(a, b, tau).loss;
}

}  // namespace

TEST_SUITE("contrastive") {

TEST_CASE("nt-xent: orthonormal closed form is log 3") {
    std::vector<RealSeries> a = {{1, 0, 0, 0}, {0, 1, 0, 0}};
    std::vector<RealSeries> b = {{0, 0, 1, 0}, {0, 0, 0, 1}};
    const auto r = nt_xent_loss(a, b, 1.0);
    CHECK(std::abs(r.loss - std::log(3.0)) < 1e-9);
}

TEST_CASE("nt-xent: aligned positives and orthogonal negatives vanish at small tau") {
    std::vector<RealSeries> a = {{1, 0, 0, 0}, {0, 1, 0, 0}};
    std::vector<RealSeries> b = a;  // positives identical to anchors
    const auto r = nt_xent_loss(a, b, 0.05);
    CHECK(r.loss < 1e-6);
    CHECK(r.loss >= 0.0);
}

TEST_CASE("nt-xent: batch of one has no negatives") {
    CHECK_THROWS_AS((void)nt_xent_loss({{1, 0}}, {{0, 1}}, 0.5), ConfigError);
    CHECK_THROWS_AS((void)nt_xent_loss(random_batch(3, 4, 1), random_batch(2, 4, 2), 0.5),
                    ShapeError);
}

TEST_CASE("nt-xent: analytic gradients match central differences over 20 seeded configs") {
    const double eps = 1e-5;
    double worst = 0.0;
    for (std::uint64_t cfg_i = 0; cfg_i < 20; ++cfg_i) {
        const std::size_t b = 2 + cfg_i % 3;
        const std::size_t d = 3 + (cfg_i / 3) % 5;
        const double tau = 0.2 + 0.15 * static_cast<double>(cfg_i % 4);
        auto a = random_batch(b, d, 100 + cfg_i);
        auto bb = random_batch(b, d, 200 + cfg_i);
        const auto r = nt_xent_loss(a, bb, tau);

        double gmax = 0.0;
        for (const auto& g : r.grad_a)
            for (double v : g) gmax = std::max(gmax, std::abs(v));
        for (const auto& g : r.grad_b)
            for (double v : g) gmax = std::max(gmax, std::abs(v));
        REQUIRE(gmax > 0.0);

        for (std::size_t i = 0; i < b; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                a[i][k] += eps;
                const double up = loss_only(a, bb, tau);
                a[i][k] -= 2 * eps;
                const double dn = loss_only(a, bb, tau);
                a[i][k] += eps;
                worst = std::max(worst,
                                 std::abs((up - dn) / (2 * eps) - r.grad_a[i][k]) / gmax);

                bb[i][k] += eps;
                const double up2 = loss_only(a, bb, tau);
                bb[i][k] -= 2 * eps;
                const double dn2 = loss_only(a, bb, tau);
                bb[i][k] += eps;
                worst = std::max(worst,
                                 std::abs((up2 - dn2) / (2 * eps) - r.grad_b[i][k]) / gmax);
            }
        }
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("nt-xent: invariant to a common permutation of the pair indices") {
    const auto a = random_batch(5, 6, 31);
    const auto b = random_batch(5, 6, 32);
    const double base = loss_only(a, b, 0.5);
    const std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
    std::vector<RealSeries> pa, pb;
    for (std::size_t i : perm) {
        pa.push_back(a[i]);
        pb.push_back(b[i]);
    }
    CHECK(loss_only(pa, pb, 0.5) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("nt-xent: invariant to positive per-vector rescaling") {
    auto a = random_batch(4, 5, 41);
    auto b = random_batch(4, 5, 42);
    const double base = loss_only(a, b, 0.5);
    Rng rng(43);
    for (auto& v : a) {
        const double c = rng.uniform(0.1, 10.0);
        for (double& x : v) x *= c;
    }
    for (auto& v : b) {
        const double c = rng.uniform(0.1, 10.0);
        for (double& x : v) x *= c;
    }
    CHECK(loss_only(a, b, 0.5) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("mlp: forward/backward gradient check through both activations") {
    for (auto act : {EncoderConfig::Activation::relu, EncoderConfig::Activation::tanh}) {
        Rng rng(7);
        Mlp net(6, {5, 4}, 3, act, rng);
        RealSeries x(6);
        for (double& v : x) v = rng.normal();

        // Scalar objective: sum of squared outputs.
        Mlp::Tape tape;
        RealSeries out = net.forward(x, tape);
        RealSeries dout(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) dout[i] = 2.0 * out[i];
        Mlp grads = net.zeros_like();
        net.backward(tape, dout, grads);

        const double eps = 1e-6;
        for (std::size_t l = 0; l < net.weights.size(); ++l) {
            for (std::size_t w = 0; w < net.weights[l].size(); w += 7) {
                const double orig = net.weights[l][w];
                auto eval = [&](double v) {
                    net.weights[l][w] = v;
                    const RealSeries o = net.forward(x);
                    double s = 0.0;
                    for (double u : o) s += u * u;
                    return s;
                };
                const double num = (eval(orig + eps) - eval(orig - eps)) / (2 * eps);
                net.weights[l][w] = orig;
                CHECK(std::abs(num - grads.weights[l][w]) < 1e-4 * (1.0 + std::abs(num)));
            }
        }
    }
}

TEST_CASE("pretrain: zero epochs returns the initialization, seeds reproduce") {
    SynthConfig scfg;
    scfg.samples_per_class = 5;
    scfg.sample_len = 40;
    scfg.seed = 9;
    const auto ds = gen_dataset(DatasetId::parse("A1"), scfg);

    ContrastiveData data;
    data.train = ds.samples;

    EncoderConfig enc;
    enc.hidden_sizes = {16};
    enc.embedding_dim = 8;
    enc.seed = 123;

    ViewSpec view;
    view.aug1.kind = AugKind::jitter;

    TrainConfig cfg;
    cfg.pretrain_epochs = 0;
    cfg.seed = 5;
    const auto r0 = pretrain(enc, data, view, cfg);
    CHECK(r0.encoder == Mlp::encoder(40, enc));

    cfg.pretrain_epochs = 3;
    cfg.batch_size = 10;
    cfg.learning_rate = 0.05;
    const auto r1 = pretrain(enc, data, view, cfg);
    const auto r2 = pretrain(enc, data, view, cfg);
    CHECK(r1.encoder == r2.encoder);
    CHECK(r1.epoch_loss == r2.epoch_loss);
    CHECK(r1.encoder.weights != r0.encoder.weights);
}

TEST_CASE("pretrain: held-out loss decreases in at least 9 of 10 seeded runs") {
    SynthConfig scfg;
    scfg.samples_per_class = 10;
    scfg.sample_len = 50;
    scfg.seed = 77;
    scfg.phase_jitter = false;
    scfg.normalize_components = true;
    const auto ds = gen_dataset(DatasetId::parse("A1"), scfg);

    ContrastiveData data;
    data.train.assign(ds.samples.begin(), ds.samples.begin() + 48);
    data.val.assign(ds.samples.begin() + 48, ds.samples.end());

    EncoderConfig enc;
    enc.hidden_sizes = {32};
    enc.embedding_dim = 16;
    ViewSpec view;
    view.aug1.kind = AugKind::resize;

    TrainConfig cfg;
    cfg.pretrain_epochs = 8;
    cfg.batch_size = 16;
    cfg.learning_rate = 0.1;

    int improved = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        cfg.seed = seed;
        enc.seed = seed;
        const auto r = pretrain(enc, data, view, cfg);
        if (r.final_val_loss < r.initial_val_loss) ++improved;
        CHECK(r.epoch_loss.size() == 8);
    }
    CHECK(improved >= 9);
}

TEST_CASE("finetune: perfectly separable toy reaches macro-F1 1.0") {
    // Two classes on opposite sides of a hyperplane, generous margins.
    LabeledSplit train, test;
    Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        RealSeries x(8);
        const int y = i % 2;
        for (double& v : x) v = 0.1 * rng.normal() + (y == 0 ? 1.0 : -1.0);
        (i < 40 ? train : test).x.push_back(x);
        (i < 40 ? train : test).y.push_back(y);
    }
    EncoderConfig enc;
    enc.hidden_sizes = {8};
    enc.embedding_dim = 4;
    enc.seed = 2;
    const Mlp encoder = Mlp::encoder(8, enc);

    TrainConfig cfg;
    cfg.finetune_epochs = 60;
    cfg.learning_rate = 0.2;
    cfg.batch_size = 16;
    cfg.label_ratio = 1.0;
    cfg.seed = 8;
    const auto m = finetune_and_test(encoder, train, {}, test, cfg, 2);
    CHECK(m.macro_f1 == doctest::Approx(1.0));
    CHECK(m.accuracy == doctest::Approx(1.0));
}

TEST_CASE("finetune: random labels sit at chance level") {
    LabeledSplit train, test;
    Rng rng(21);
    const int C = 4;
    for (int i = 0; i < 600; ++i) {
        RealSeries x(6);
        for (double& v : x) v = rng.normal();
        LabeledSplit& dst = i < 300 ? train : test;
        dst.x.push_back(x);
        dst.y.push_back(static_cast<int>(rng.next_below(C)));
    }
    EncoderConfig enc;
    enc.hidden_sizes = {8};
    enc.embedding_dim = 4;
    const Mlp encoder = Mlp::encoder(6, enc);
    TrainConfig cfg;
    cfg.finetune_epochs = 10;
    cfg.learning_rate = 0.05;
    cfg.label_ratio = 1.0;
    cfg.seed = 13;
    const auto m = finetune_and_test(encoder, train, {}, test, cfg, C);
    CHECK(m.accuracy == doctest::Approx(1.0 / C).epsilon(0.35));
}

TEST_CASE("finetune: a class missing from the training split is an error") {
    LabeledSplit train, test;
    for (int i = 0; i < 10; ++i) {
        train.x.push_back(RealSeries(4, static_cast<double>(i)));
        train.y.push_back(0);  // class 1 never appears
        test.x.push_back(RealSeries(4, static_cast<double>(i)));
        test.y.push_back(i % 2);
    }
    EncoderConfig enc;
    enc.hidden_sizes = {4};
    enc.embedding_dim = 2;
    const Mlp encoder = Mlp::encoder(4, enc);
    TrainConfig cfg;
    CHECK_THROWS_AS((void)finetune_and_test(encoder, train, {}, test, cfg, 2),
                    StratificationError);
}

TEST_CASE("rank_augmentations: margin arithmetic and tie chaining") {
    // Gap 0.005 within margin 0.008: one tie group.
    auto r = rank_augmentations({{"a", 0.90}, {"b", 0.895}}, 0.80);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].name == "a");
    CHECK(r.entries[0].rank == 1);
    CHECK(r.entries[1].rank == 2);
    CHECK(r.entries[0].tie_group == r.entries[1].tie_group);

    // All equal: a single group of nine.
    std::map<std::string, double> equal;
    for (const auto& name : method_universe()) equal[name] = 0.5;
    r = rank_augmentations(equal, 0.5);
    CHECK(r.entries.size() == 9);
    for (const auto& e : r.entries) CHECK(e.tie_group == 0);

    // Spacing of twice the margin: strict order, no ties.
    std::map<std::string, double> spaced;
    double f = 0.9;
    for (const auto& name : method_universe()) {
        spaced[name] = f;
        f -= 0.02;  // margin is 0.01 * 0.5 = 0.005
    }
    r = rank_augmentations(spaced, 0.5);
    for (std::size_t i = 0; i + 1 < r.entries.size(); ++i)
        CHECK(r.entries[i].tie_group != r.entries[i + 1].tie_group);
}

TEST_CASE("rank_augmentations: invariant to map construction order") {
    std::map<std::string, double> m1, m2;
    m1["x"] = 0.5;
    m1["y"] = 0.7;
    m1["z"] = 0.1;
    m2["z"] = 0.1;
    m2["y"] = 0.7;
    m2["x"] = 0.5;
    const auto r1 = rank_augmentations(m1, 0.4);
    const auto r2 = rank_augmentations(m2, 0.4);
    REQUIRE(r1.entries.size() == r2.entries.size());
    for (std::size_t i = 0; i < r1.entries.size(); ++i) {
        CHECK(r1.entries[i].name == r2.entries[i].name);
        CHECK(r1.entries[i].tie_group == r2.entries[i].tie_group);
    }
}

TEST_CASE("stratified_split: fractions and class balance") {
    SynthConfig scfg;
    scfg.samples_per_class = 20;
    scfg.sample_len = 30;
    scfg.seed = 15;
    const auto ds = gen_dataset(DatasetId::parse("A1"), scfg);
    Rng rng(5);
    const auto split = stratified_split(ds, 0.7, 0.1, rng);
    CHECK(split.train.x.size() == 84);  // 6 classes x round(0.7 * 20)
    CHECK(split.val.x.size() == 12);
    CHECK(split.test.x.size() == 24);
    std::map<int, int> counts;
    for (int y : split.train.y) counts[y]++;
    for (const auto& [cls, n] : counts) {
        (void)cls;
        CHECK(n == 14);
    }
}

TEST_CASE("benchmark_run: double-view specs train end to end") {
    SynthConfig scfg;
    scfg.samples_per_class = 6;
    scfg.sample_len = 30;
    scfg.seed = 51;
    scfg.normalize_components = true;
    const auto ds = gen_dataset(DatasetId::parse("A1"), scfg);
    Rng rng(4);
    const auto split = stratified_split(ds, 0.7, 0.1, rng);

    ViewSpec both;
    both.mode = PairMode::double_view;
    both.aug1.kind = AugKind::resize;
    both.aug2 = AugSpec{};
    both.aug2->kind = AugKind::jitter;
    CHECK(both.name() == "resizing+jittering");

    TrainConfig cfg;
    cfg.repeats = 1;
    cfg.pretrain_epochs = 2;
    cfg.finetune_epochs = 2;
    cfg.batch_size = 8;
    cfg.seed = 1;
    const auto report = benchmark_run(split, {both}, cfg);
    REQUIRE(report.methods.size() == 2);
    CHECK(report.methods[0].name == "resizing+jittering");
    CHECK(report.methods[0].repeats.size() == 1);
}

TEST_CASE("benchmark_run: deterministic report with per-repeat rows") {
    SynthConfig scfg;
    scfg.samples_per_class = 8;
    scfg.sample_len = 40;
    scfg.seed = 23;
    scfg.normalize_components = true;
    const auto ds = gen_dataset(DatasetId::parse("A1"), scfg);
    Rng rng(2);
    const auto split = stratified_split(ds, 0.7, 0.1, rng);

    ViewSpec flip_view;
    flip_view.aug1.kind = AugKind::flip;

    TrainConfig cfg;
    cfg.repeats = 2;
    cfg.pretrain_epochs = 2;
    cfg.finetune_epochs = 3;
    cfg.batch_size = 8;
    cfg.seed = 99;

    const auto r1 = benchmark_run(split, {flip_view}, cfg);
    const auto r2 = benchmark_run(split, {flip_view}, cfg);
    REQUIRE(r1.methods.size() == 2);  // flipping + no_pretraining
    CHECK(r1.methods[0].name == "flipping");
    CHECK(r1.methods[1].name == "no_pretraining");
    for (const auto& m : r1.methods) CHECK(m.repeats.size() == 2);
    for (std::size_t i = 0; i < r1.methods.size(); ++i) {
        CHECK(r1.methods[i].mean.macro_f1 == r2.methods[i].mean.macro_f1);
        for (std::size_t rep = 0; rep < 2; ++rep)
            CHECK(r1.methods[i].repeats[rep].accuracy == r2.methods[i].repeats[rep].accuracy);
    }
    CHECK(r1.ranking.entries.size() == 2);
}

}  // TEST_SUITE
