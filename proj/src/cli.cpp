#include "tsarm/cli.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsarm/contrastive.hpp"
#include "tsarm/errors.hpp"
#include "tsarm/io.hpp"
#include "tsarm/recommend.hpp"
#include "tsarm/stl.hpp"
#include "tsarm/synth.hpp"

namespace tsarm {

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;  // override with --seed

constexpr int kExitOk = 0;
constexpr int kExitNoMatch = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBadCsv = 65;

std::string sidecar_path(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    return (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".json";
}

AugSpec spec_from_flags(const std::string& name, double sigma, double scale_lo, double scale_hi,
                        bool scale_per_step, int segments, double crop, double mask) {
    AugSpec spec;
    spec.kind = aug_from_name(name);
    spec.sigma = sigma;
    spec.scale_lo = scale_lo;
    spec.scale_hi = scale_hi;
    spec.scale_per_step = scale_per_step;
    spec.num_segments = segments;
    spec.crop_fraction = crop;
    spec.mask_fraction = mask;
    return spec;
}

int cmd_synth(const std::string& id_str, const std::string& out, const SynthConfig& cfg) {
    const DatasetId id = DatasetId::parse(id_str);
    SynthConfig c = cfg;
    c.w1 = id.w1();
    const LabeledDataset ds = gen_dataset(id, c);
    write_dataset_csv(ds, out);
    write_file(sidecar_path(out), synth_sidecar(id, c).dump(2) + "\n");
    std::cerr << "wrote " << ds.size() << " samples to " << out << "\n";
    return kExitOk;
}

int cmd_augment(const std::string& in, const std::string& out, const AugSpec& spec,
                std::uint64_t seed) {
    if (spec.kind == AugKind::time_neighbor)
        throw ConfigError("time_neighbor forms sample pairs and cannot rewrite a CSV; "
                          "pick one of the seven value transforms");
    const LabeledDataset ds = read_dataset_csv(in);
    LabeledDataset aug = ds;
    Rng rng(seed);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        Rng row = rng.split(i);
        aug.samples[i] = apply_augmentation(ds.samples[i], spec, row);
    }
    write_dataset_csv(aug, out);
    write_file(sidecar_path(out), aug_spec_to_json(spec, seed).dump(2) + "\n");
    std::cerr << "wrote " << aug.size() << " augmented samples to " << out << "\n";
    return kExitOk;
}

int cmd_decompose(const std::string& in, std::vector<std::size_t> periods, int iterations,
                  std::size_t sample_index, const std::string& prefix) {
    const LabeledDataset ds = read_dataset_csv(in);
    if (periods.empty()) periods = default_periods(ds.samples[0].size());
    if (sample_index >= ds.samples.size())
        throw ConfigError("--sample out of range (dataset has " +
                          std::to_string(ds.samples.size()) + " rows)");

    for (std::size_t p : periods) {
        const Decomposition d = stl_decompose(ds.samples[sample_index], p, iterations);
        const std::string path =
            prefix + "_sample" + std::to_string(sample_index) + "_p" + std::to_string(p) + ".csv";
        write_file(path, decomposition_to_csv(ds.samples[sample_index], d));
        std::cerr << "wrote " << path << "\n";
    }
    const DatasetProfile profile = dataset_profile(ds.samples, periods, iterations);
    const std::string ppath = prefix + "_profile.json";
    write_file(ppath, to_json(profile).dump(2) + "\n");
    std::cerr << "wrote " << ppath << "\n";
    return kExitOk;
}

int cmd_recommend(const std::string& in, const std::string& fixture,
                  std::vector<std::size_t> periods, int iterations, int k, double threshold,
                  const std::string& rankings_path, const std::string& method,
                  std::uint64_t seed) {
    RankingTable table = canonical_synthetic_rankings();
    if (!rankings_path.empty()) table = parse_ranking_table(read_file(rankings_path));

    RecommendationReport report;
    report.k = k;
    if (method == "popularity") {
        report.method = "popularity";
        report.top_k = popularity_recommend(table, k);
        std::cout << to_json(report).dump(2) << "\n";
        return kExitOk;
    }
    if (method == "random") {
        report.method = "random";
        Rng rng(seed);
        report.top_k = random_recommend(k, rng);
        std::cout << to_json(report).dump(2) << "\n";
        return kExitOk;
    }
    if (method != "trend_seasonality")
        throw ConfigError("unknown method '" + method +
                          "' (trend_seasonality, popularity, random)");

    SimilarityReport sim;
    if (!fixture.empty()) {
        const auto& fixtures = realworld_profile_fixtures();
        auto it = fixtures.find(fixture);
        if (it == fixtures.end()) {
            std::string names;
            for (const auto& [n, unused] : fixtures) {
                (void)unused;
                names += names.empty() ? n : ", " + n;
            }
            throw ConfigError("unknown fixture '" + fixture + "' (shipped: " + names + ")");
        }
        sim = it->second;
    } else {
        const LabeledDataset ds = read_dataset_csv(in);
        if (periods.empty()) periods = default_periods(ds.samples[0].size());
        const DatasetProfile profile = dataset_profile(ds.samples, periods, iterations);
        sim = component_similarities(profile);
    }

    try {
        report = recommend_from_report(sim, table, k, threshold);
    } catch (const InapplicableError& e) {
        std::cerr << "no recommendation: " << e.what() << " (ds_trend=" << sim.ds_trend
                  << ", ds_season=" << sim.ds_season << ")\n";
        return kExitNoMatch;
    }
    std::cout << to_json(report).dump(2) << "\n";
    return kExitOk;
}

int cmd_benchmark(const std::string& in, const std::vector<std::string>& aug_names,
                  const TrainConfig& cfg, int jobs, const std::string& out) {
    const LabeledDataset ds = read_dataset_csv(in);
    Rng split_rng(mix_seed(cfg.seed, 0x5B117));
    const SplitDataset splits = stratified_split(ds, 0.7, 0.1, split_rng);

    std::vector<ViewSpec> views;
    for (const auto& name : aug_names) {
        ViewSpec v;
        v.aug1.kind = aug_from_name(name);
        views.push_back(v);
    }
    const BenchmarkReport report = benchmark_run(splits, views, cfg, jobs);
    const std::string text = to_json(report).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return kExitOk;
}

int cmd_evaluate(const std::string& recommended_path, const std::string& truth_path,
                 const std::string& truth_dataset, std::vector<int> ks) {
    const json rec = json::parse(read_file(recommended_path));
    std::vector<std::string> top_k;
    for (const auto& name : rec.at("top_k")) top_k.push_back(name.get<std::string>());

    RankedAugmentations truth;
    if (!truth_dataset.empty()) {
        const auto& table = canonical_realworld_rankings();
        auto it = table.by_dataset.find(truth_dataset);
        if (it == table.by_dataset.end())
            throw ConfigError("no shipped truth ranking for '" + truth_dataset + "'");
        truth = it->second;
    } else {
        truth = ranked_from_json(json::parse(read_file(truth_path)));
    }

    if (ks.empty()) ks = {static_cast<int>(top_k.size())};
    json out;
    out["schema_version"] = 1;
    out["kind"] = "recall_report";
    json recalls = json::object();
    for (int k : ks)
        recalls["recall@" + std::to_string(k)] = recall_at_k(top_k, truth, k);
    out["recalls"] = recalls;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"trend/seasonality-based augmentation recommendation toolkit"};
    app.require_subcommand(1);

    // synth ------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset (A1..D3)");
    std::string synth_id, synth_out;
    SynthConfig scfg;
    scfg.seed = kDefaultSeed;
    bool no_phase_jitter = false;
    synth->add_option("--dataset", synth_id, "dataset id, A1..D3")->required();
    synth->add_option("--out", synth_out, "output CSV path")->required();
    synth->add_option("--samples-per-class", scfg.samples_per_class);
    synth->add_option("--len", scfg.sample_len, "sample length");
    synth->add_option("--seed", scfg.seed);
    synth->add_option("--cycles", scfg.cycles_per_sample, "trig cycles per sample");
    synth->add_option("--w3", scfg.w3, "residual weight");
    synth->add_flag("--normalize", scfg.normalize_components,
                    "scale components to unit power before weighting");
    synth->add_flag("--no-phase-jitter", no_phase_jitter, "fixed phi=0 for trig seasonality");

    // augment ----------------------------------------------------------
    auto* augment = app.add_subcommand("augment", "apply one augmentation to every row");
    std::string aug_in, aug_out, aug_name_str;
    std::uint64_t aug_seed = kDefaultSeed;
    double a_sigma = 0.1, a_lo = 0.5, a_hi = 1.5, a_crop = 0.5, a_mask = 0.2;
    bool a_per_step = false;
    int a_segments = 4;
    augment->add_option("--in", aug_in)->required();
    augment->add_option("--aug", aug_name_str, "jitter|scale|flip|permute|resize|time_mask|freq_mask")
        ->required();
    augment->add_option("--out", aug_out, "output CSV (default: <in>_aug.csv)");
    augment->add_option("--seed", aug_seed);
    augment->add_option("--sigma", a_sigma, "jitter noise std");
    augment->add_option("--scale-lo", a_lo);
    augment->add_option("--scale-hi", a_hi);
    augment->add_flag("--scale-per-step", a_per_step);
    augment->add_option("--segments", a_segments, "permutation segments");
    augment->add_option("--crop-fraction", a_crop);
    augment->add_option("--mask-fraction", a_mask);

    // decompose ----------------------------------------------------------
    auto* decompose = app.add_subcommand("decompose", "STL decomposition and dataset profile");
    std::string dec_in, dec_prefix = "decomposition";
    std::vector<std::size_t> dec_periods;
    int dec_iterations = 2;
    std::size_t dec_sample = 0;
    decompose->add_option("--in", dec_in)->required();
    decompose->add_option("--period,--periods", dec_periods,
                          "candidate periods (default: len/2, len/4, len/8, len/16)")
        ->delimiter(',');
    decompose->add_option("--iterations", dec_iterations);
    decompose->add_option("--sample", dec_sample, "row to export as decomposition CSV");
    decompose->add_option("--out-prefix", dec_prefix);

    // recommend ----------------------------------------------------------
    auto* recommend = app.add_subcommand("recommend", "recommend augmentations for a dataset");
    std::string rec_in, rec_fixture, rec_rankings, rec_method = "trend_seasonality";
    std::vector<std::size_t> rec_periods;
    int rec_iterations = 2, rec_k = 3;
    double rec_threshold = kDivergenceThreshold;
    std::uint64_t rec_seed = kDefaultSeed;
    auto* rec_in_opt = recommend->add_option("--in", rec_in, "query dataset CSV");
    recommend->add_option("--fixture", rec_fixture, "shipped real-world profile name")
        ->excludes(rec_in_opt);
    recommend->add_option("--periods", rec_periods)->delimiter(',');
    recommend->add_option("--iterations", rec_iterations);
    recommend->add_option("--k", rec_k, "number of recommendations");
    recommend->add_option("--threshold", rec_threshold, "divergence-score threshold");
    recommend->add_option("--rankings", rec_rankings, "ranking-table JSON replacing the built-in");
    recommend->add_option("--method", rec_method, "trend_seasonality|popularity|random");
    recommend->add_option("--seed", rec_seed, "seed for --method random");

    // benchmark ----------------------------------------------------------
    auto* benchmark = app.add_subcommand("benchmark", "contrastive benchmark of augmentations");
    std::string bench_in, bench_out;
    TrainConfig tcfg;
    tcfg.seed = kDefaultSeed;
    int bench_jobs = 0;
    std::vector<std::string> bench_augs = {"jittering",    "scaling",      "flipping",
                                           "permutation",  "resizing",     "time_masking",
                                           "freq_masking", "time_neighboring"};
    benchmark->add_option("--in", bench_in)->required();
    benchmark->add_option("--augs", bench_augs, "augmentations to benchmark")->delimiter(',');
    benchmark->add_option("--repeats", tcfg.repeats);
    benchmark->add_option("--pretrain-epochs", tcfg.pretrain_epochs);
    benchmark->add_option("--finetune-epochs", tcfg.finetune_epochs);
    benchmark->add_option("--batch", tcfg.batch_size);
    benchmark->add_option("--lr", tcfg.learning_rate);
    benchmark->add_option("--temperature", tcfg.temperature);
    benchmark->add_option("--label-ratio", tcfg.label_ratio);
    benchmark->add_option("--seed", tcfg.seed);
    benchmark->add_option("--jobs", bench_jobs, "worker pool bound (0 = default)");
    benchmark->add_option("--out", bench_out, "report path (default: stdout)");

    // evaluate ----------------------------------------------------------
    auto* evaluate = app.add_subcommand("evaluate", "Recall@K of a recommendation vs truth");
    std::string eval_rec, eval_truth, eval_truth_dataset;
    std::vector<int> eval_ks;
    evaluate->add_option("--recommended", eval_rec, "recommendation report JSON")->required();
    auto* truth_opt = evaluate->add_option("--truth", eval_truth, "truth ranking JSON");
    evaluate->add_option("--truth-dataset", eval_truth_dataset,
                         "shipped real-world truth (HAR, PTB, FD, MP, ElecD, SPX500)")
        ->excludes(truth_opt);
    evaluate->add_option("--k", eval_ks, "one or more K values")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (synth->parsed()) {
            scfg.phase_jitter = !no_phase_jitter;
            return cmd_synth(synth_id, synth_out, scfg);
        }
        if (augment->parsed()) {
            if (aug_out.empty()) aug_out = sidecar_path(aug_in) + "_aug.csv";
            return cmd_augment(aug_in, aug_out,
                               spec_from_flags(aug_name_str, a_sigma, a_lo, a_hi, a_per_step,
                                               a_segments, a_crop, a_mask),
                               aug_seed);
        }
        if (decompose->parsed())
            return cmd_decompose(dec_in, dec_periods, dec_iterations, dec_sample, dec_prefix);
        if (recommend->parsed())
            return cmd_recommend(rec_in, rec_fixture, rec_periods, rec_iterations, rec_k,
                                 rec_threshold, rec_rankings, rec_method, rec_seed);
        if (benchmark->parsed())
            return cmd_benchmark(bench_in, bench_augs, tcfg, bench_jobs, bench_out);
        if (evaluate->parsed())
            return cmd_evaluate(eval_rec, eval_truth, eval_truth_dataset, eval_ks);
    } catch (const CsvError& e) {
        std::cerr << "csv error: " << e.what() << "\n";
        return kExitBadCsv;
    } catch (const InapplicableError& e) {
        std::cerr << "no recommendation: " << e.what() << "\n";
        return kExitNoMatch;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace tsarm
