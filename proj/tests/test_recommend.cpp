#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "tsarm/errors.hpp"
#include "tsarm/io.hpp"
#include "tsarm/numerics.hpp"
#include "tsarm/recommend.hpp"
#include "tsarm/stl.hpp"
#include "tsarm/synth.hpp"

using namespace tsarm;

TEST_SUITE("recommend") {

TEST_CASE("divergence score: equal inputs, reference rows, symmetry, scale invariance") {
    CHECK(divergence_score(0.42, 0.42) == 0.0);
    // ElecD and PTB trend rows; PTB prints 0.1094 from rounded inputs.
    CHECK(divergence_score(0.4271, 0.3652) == doctest::Approx(0.1562).epsilon(0.0032));
    CHECK(std::abs(divergence_score(0.4271, 0.3652) - 0.1562) < 0.0005);
    CHECK(std::abs(divergence_score(0.1768, 0.1585) - 0.1092) < 0.0005);

    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const double a = rng.uniform(0.0001, 1.0);
        const double b = rng.uniform(0.0001, 1.0);
        const double c = rng.uniform(0.01, 100.0);
        const double ds = divergence_score(a, b);
        CHECK(ds == doctest::Approx(divergence_score(b, a)).epsilon(1e-12));
        CHECK(ds == doctest::Approx(divergence_score(c * a, c * b)).epsilon(1e-9));
        CHECK(ds >= 0.0);
        CHECK(ds <= 2.0);
    }
    CHECK_THROWS_AS((void)divergence_score(-0.5, 0.2), DegenerateVectorError);
    CHECK_THROWS_AS((void)divergence_score(0.0, 0.0), DegenerateVectorError);
}

TEST_CASE("weight assignment: reference power pairs and band boundaries") {
    CHECK(weight_assignment(0.1431, 0.5752) == std::pair{0.1, 0.9});   // ElecD
    CHECK(weight_assignment(0.2414, 0.3990) == std::pair{0.5, 0.5});   // PTB
    CHECK(weight_assignment(0.9999, 0.0003) == std::pair{0.9, 0.1});   // SPX500
    CHECK(weight_assignment(0.8794, 0.0933) == std::pair{0.9, 0.1});   // HAR
    CHECK(weight_assignment(0.0177, 0.5565) == std::pair{0.1, 0.9});   // FD
    CHECK(weight_assignment(0.7471, 0.2466) == std::pair{0.5, 0.5});   // MP

    // Exact boundary coverage: <= 5/9 low band, >= 5 high band, no gaps.
    CHECK(weight_assignment(5.0, 9.0) == std::pair{0.1, 0.9});
    CHECK(weight_assignment(5.0 + 1e-9, 9.0) == std::pair{0.5, 0.5});
    CHECK(weight_assignment(5.0, 1.0) == std::pair{0.9, 0.1});
    CHECK(weight_assignment(5.0 - 1e-9, 1.0) == std::pair{0.5, 0.5});
    CHECK(weight_assignment(1.0, 0.0) == std::pair{0.9, 0.1});

    // Monotone in the ratio.
    double last_w1 = 0.0;
    for (double ratio : {0.01, 0.5, 1.0, 4.0, 6.0, 100.0}) {
        const auto [w1, w2] = weight_assignment(ratio, 1.0);
        CHECK(w1 >= last_w1);
        CHECK(w1 + w2 == doctest::Approx(1.0));
        last_w1 = w1;
    }
}

TEST_CASE("select_twin on the shipped fixtures") {
    const auto& fixtures = realworld_profile_fixtures();
    REQUIRE(fixtures.size() == 6);

    const auto elecd = select_twin(fixtures.at("ElecD"));
    CHECK(elecd.kind == TwinDecision::Kind::single);
    CHECK(elecd.first == "A1");
    CHECK(elecd.trend_used);
    CHECK(elecd.season_used);

    const auto spx = select_twin(fixtures.at("SPX500"));
    CHECK(spx.kind == TwinDecision::Kind::single);
    CHECK(spx.first == "A3");

    const auto ptb = select_twin(fixtures.at("PTB"));
    CHECK(ptb.kind == TwinDecision::Kind::single);
    CHECK(ptb.first == "B2");

    const auto fd = select_twin(fixtures.at("FD"));
    CHECK(fd.kind == TwinDecision::Kind::pair);
    CHECK(fd.first == "A1");
    CHECK(fd.second == "C1");
    CHECK_FALSE(fd.trend_used);

    const auto har = select_twin(fixtures.at("HAR"));
    CHECK(har.kind == TwinDecision::Kind::pair);
    CHECK(har.first == "A3");
    CHECK(har.second == "C3");

    const auto mp = select_twin(fixtures.at("MP"));
    CHECK(mp.kind == TwinDecision::Kind::no_match);
}

TEST_CASE("strict ranks spread the unclaimed tail over missing methods") {
    const auto& table = canonical_synthetic_rankings();
    // A1 lists 7 methods; scaling and freq_masking share (8+9)/2.
    const auto ranks = strict_ranks(table.by_dataset.at("A1"));
    CHECK(ranks.at("resizing") == 1.0);
    CHECK(ranks.at("no_pretraining") == 7.0);
    CHECK(ranks.at("scaling") == 8.5);
    CHECK(ranks.at("freq_masking") == 8.5);
    // B1 lists all nine.
    const auto full = strict_ranks(table.by_dataset.at("B1"));
    CHECK(full.at("no_pretraining") == 9.0);
}

TEST_CASE("recommend_topk: single twins follow the listed order") {
    const auto& table = canonical_synthetic_rankings();
    TwinDecision twin;
    twin.kind = TwinDecision::Kind::single;
    twin.first = "A1";
    CHECK(recommend_topk(twin, table, 3) ==
          std::vector<std::string>{"resizing", "jittering", "time_masking"});
    twin.first = "A3";
    CHECK(recommend_topk(twin, table, 1) == std::vector<std::string>{"resizing"});
    twin.first = "B2";
    CHECK(recommend_topk(twin, table, 3) ==
          std::vector<std::string>{"time_masking", "jittering", "flipping"});
}

TEST_CASE("recommend_topk: pair fusion by average strict rank") {
    const auto& table = canonical_synthetic_rankings();
    TwinDecision twin;
    twin.kind = TwinDecision::Kind::pair;
    twin.first = "A1";
    twin.second = "C1";
    // Hand fusion of the A1 and C1 lists: resizing (1+1)/2, then the 4.0
    // tie {permutation(best 2), time_masking(best 3), time_neighboring(best 3)}.
    CHECK(recommend_topk(twin, table, 3) ==
          std::vector<std::string>{"resizing", "permutation", "time_masking"});

    twin.first = "A3";
    twin.second = "C3";
    CHECK(recommend_topk(twin, table, 3) ==
          std::vector<std::string>{"time_masking", "resizing", "jittering"});

    TwinDecision none;
    none.kind = TwinDecision::Kind::no_match;
    CHECK_THROWS_AS((void)recommend_topk(none, table, 3), InapplicableError);
    twin.first = "A1";
    CHECK_THROWS_AS((void)recommend_topk(twin, table, 0), ConfigError);
    CHECK_THROWS_AS((void)recommend_topk(twin, table, 10), ConfigError);
}

TEST_CASE("popularity: brute-force oracle over the shipped table") {
    const auto& table = canonical_synthetic_rankings();

    // Independent recomputation straight from the shipped JSON text.
    nlohmann::json j = nlohmann::json::parse(
        read_file(std::string(TSARM_SOURCE_DIR) + "/data/synthetic_rankings.json"));
    std::map<std::string, double> totals;
    for (const auto& name : method_universe()) totals[name] = 0.0;
    for (const auto& [ds, arr] : j["datasets"].items()) {
        (void)ds;
        std::set<std::string> listed;
        for (const auto& e : arr) {
            totals[e["name"].get<std::string>()] += e["rank"].get<double>();
            listed.insert(e["name"].get<std::string>());
        }
        const double tail = (static_cast<double>(listed.size()) + 1.0 + 9.0) / 2.0;
        for (const auto& name : method_universe())
            if (!listed.count(name)) totals[name] += tail;
    }
    std::vector<std::pair<double, std::string>> expect;
    for (const auto& [name, total] : totals) expect.push_back({total, name});
    std::sort(expect.begin(), expect.end());

    const auto got = popularity_recommend(table, 9);
    REQUIRE(got.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) CHECK(got[i] == expect[i].second);

    // The strongest overall method across the benchmark tables comes out on top.
    CHECK(got[0] == "time_masking");
    CHECK(popularity_recommend(table, 1) == std::vector<std::string>{"time_masking"});

    // Query independence is structural: there is no query argument; repeated
    // calls agree.
    CHECK(popularity_recommend(table, 4) == popularity_recommend(table, 4));
}

TEST_CASE("random recommendation: completeness, determinism, chance-level recall") {
    Rng rng(17);
    const auto all = random_recommend(9, rng);
    std::set<std::string> uniq(all.begin(), all.end());
    CHECK(uniq.size() == 9);

    Rng r1(5), r2(5);
    CHECK(random_recommend(3, r1) == random_recommend(3, r2));

    // Expected Recall@1 against a fixed truth is 1/9.
    const auto& truth = canonical_realworld_rankings().by_dataset.at("ElecD");
    double total = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        Rng r(static_cast<std::uint64_t>(t) + 1000);
        total += recall_at_k(random_recommend(1, r), truth, 1);
    }
    CHECK(total / trials == doctest::Approx(1.0 / 9.0).epsilon(0.08));
}

TEST_CASE("recall@k: boundary examples") {
    RankedAugmentations truth;
    truth.source = "x";
    int rank = 1;
    for (const auto& name : {"resizing", "jittering", "time_neighboring", "time_masking"})
        truth.entries.push_back({name, rank++, 0});

    CHECK(recall_at_k({"resizing", "jittering", "time_neighboring"}, truth, 3) == 1.0);
    CHECK(recall_at_k({"scaling", "flipping", "permutation"}, truth, 3) == 0.0);
    // The ElecD worked example: two of three recommendations hit.
    CHECK(recall_at_k({"resizing", "jittering", "time_masking"}, truth, 3) ==
          doctest::Approx(2.0 / 3.0));
    // Order within the top-k does not matter.
    CHECK(recall_at_k({"jittering", "resizing", "time_masking"}, truth, 3) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(recall_at_k({"resizing"}, truth, 1) == 1.0);

    CHECK_THROWS_AS((void)recall_at_k({"resizing"}, truth, 0), ConfigError);
    CHECK_THROWS_AS((void)recall_at_k({"resizing"}, truth, 2), ConfigError);
}

TEST_CASE("component_similarities: self-similarity of a pure template profile") {
    // A profile whose trend is exactly the linear ramp template.
    PeriodProfile pp;
    pp.period = 20;
    pp.mean_trend = gen_trend(TrendKind::linear, 100, 0.37);
    pp.mean_seasonal_full = gen_seasonality(SeasonKind::trig, 100, 0.5,
                                            6.283185307179586 / 20.0, 0.0);
    pp.mean_seasonal = fold_seasonal(pp.mean_seasonal_full, 20);
    pp.mean_trend_power = mean_power(pp.mean_trend);
    pp.mean_seasonal_power = mean_power(pp.mean_seasonal_full);
    DatasetProfile profile;
    profile.per_period.push_back(pp);

    const auto report = component_similarities(profile);
    CHECK(report.sim_t1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.sim_s1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.sim_t1 > report.sim_t2);
    CHECK(report.sim_s1 > report.sim_s2);

    // Scale invariance of the similarities.
    for (double& v : profile.per_period[0].mean_trend) v *= 17.0;
    const auto scaled = component_similarities(profile);
    CHECK(scaled.sim_t1 == doctest::Approx(report.sim_t1).epsilon(1e-9));
    CHECK(scaled.sim_t2 == doctest::Approx(report.sim_t2).epsilon(1e-9));

    // Degenerate profile trips the similarity, not a silent zero.
    profile.per_period[0].mean_trend.assign(100, 0.0);
    CHECK_THROWS_AS((void)component_similarities(profile), DegenerateVectorError);
}

TEST_CASE("select_twin: argmax depends only on similarity order, not magnitude") {
    SimilarityReport r;
    r.sim_t1 = 0.08;
    r.sim_t2 = 0.02;
    r.sim_s1 = 0.01;
    r.sim_s2 = 0.4;
    r.ds_trend = divergence_score(r.sim_t1, r.sim_t2);
    r.ds_season = divergence_score(r.sim_s1, r.sim_s2);
    r.p_trend = 1.0;
    r.p_season = 1.0;
    const auto t1 = select_twin(r);
    // Rescaling all similarities by a positive constant changes nothing.
    r.sim_t1 *= 7;
    r.sim_t2 *= 7;
    r.sim_s1 *= 7;
    r.sim_s2 *= 7;
    r.ds_trend = divergence_score(r.sim_t1, r.sim_t2);
    r.ds_season = divergence_score(r.sim_s1, r.sim_s2);
    const auto t2 = select_twin(r);
    CHECK(t1.kind == t2.kind);
    CHECK(t1.first == t2.first);
    CHECK(t1.first == "B2");  // linear trend, morlet season, even powers
}

TEST_CASE("end-to-end fixture reports match the reference recall values") {
    const auto& synth_table = canonical_synthetic_rankings();
    const auto& truth_table = canonical_realworld_rankings();
    const auto& fixtures = realworld_profile_fixtures();

    const auto elecd = recommend_from_report(fixtures.at("ElecD"), synth_table, 3);
    CHECK(recall_at_k(elecd.top_k, truth_table.by_dataset.at("ElecD"), 1) == 1.0);
    CHECK(recall_at_k(elecd.top_k, truth_table.by_dataset.at("ElecD"), 2) == 1.0);
    CHECK(recall_at_k(elecd.top_k, truth_table.by_dataset.at("ElecD"), 3) ==
          doctest::Approx(2.0 / 3.0));

    CHECK_THROWS_AS((void)recommend_from_report(fixtures.at("MP"), synth_table, 3),
                    InapplicableError);
}

TEST_CASE("top-k lists have the requested length and no duplicates at every k") {
    const auto& table = canonical_synthetic_rankings();
    const auto& fixtures = realworld_profile_fixtures();
    for (const auto& [name, fx] : fixtures) {
        if (name == "MP") continue;  // inapplicable by design
        for (int k = 1; k <= 9; ++k) {
            const auto rec = recommend_from_report(fx, table, k);
            CHECK(rec.top_k.size() == static_cast<std::size_t>(k));
            std::set<std::string> uniq(rec.top_k.begin(), rec.top_k.end());
            CHECK(uniq.size() == rec.top_k.size());
        }
    }
    for (int k = 1; k <= 9; ++k) {
        CHECK(popularity_recommend(table, k).size() == static_cast<std::size_t>(k));
        Rng rng(static_cast<std::uint64_t>(k));
        CHECK(random_recommend(k, rng).size() == static_cast<std::size_t>(k));
    }
}

TEST_CASE("shipped data assets match their pinned checksums") {
    const std::string root = std::string(TSARM_SOURCE_DIR) + "/data/";
    CHECK(fnv1a64(read_file(root + "synthetic_rankings.json")) == 0x2FD659DDC395F789ULL);
    CHECK(fnv1a64(read_file(root + "realworld_rankings.json")) == 0xBB90D998C55FB1E1ULL);
    CHECK(fnv1a64(read_file(root + "realworld_profiles.json")) == 0x31371F5C5360170EULL);

    // The compiled-in copies are the same documents.
    const auto on_disk = parse_ranking_table(read_file(root + "synthetic_rankings.json"));
    const auto& embedded = canonical_synthetic_rankings();
    REQUIRE(on_disk.by_dataset.size() == embedded.by_dataset.size());
    for (const auto& [name, ranking] : on_disk.by_dataset) {
        const auto& other = embedded.by_dataset.at(name);
        REQUIRE(ranking.entries.size() == other.entries.size());
        for (std::size_t i = 0; i < ranking.entries.size(); ++i)
            CHECK(ranking.entries[i].name == other.entries[i].name);
    }
}

TEST_CASE("closure spot check: a fresh synthetic dataset finds itself") {
    // The acceptance suite runs all 12; here two representatives, one per
    // seasonal family, end to end through profile -> twin.
    const auto& table = canonical_synthetic_rankings();
    for (const char* name : {"C1", "D2"}) {
        const DatasetId id = DatasetId::parse(name);
        SynthConfig cfg;
        cfg.samples_per_class = 10;
        cfg.seed = 3;
        cfg.w1 = id.w1();
        cfg.phase_jitter = false;
        cfg.normalize_components = true;
        const auto ds = gen_dataset(id, cfg);
        const std::size_t period = id.season() == SeasonKind::trig ? 25 : 16;
        const auto profile = dataset_profile(ds.samples, {period});
        const auto rec = recommend_from_profile(profile, table, 3);
        CHECK(rec.twin.kind == TwinDecision::Kind::single);
        CHECK(rec.twin.first == name);
    }
}

TEST_CASE("ranking table rejects malformed inputs") {
    CHECK_THROWS_AS((void)parse_ranking_table("{}"), ConfigError);
    CHECK_THROWS_AS(
        (void)parse_ranking_table(
            R"({"datasets": {"A1": [{"name": "rotation", "rank": 1, "tie_group": 0}]}})"),
        ConfigError);
    CHECK_THROWS_AS(
        (void)parse_ranking_table(
            R"({"datasets": {"A1": [{"name": "resizing", "rank": 2, "tie_group": 0}]}})"),
        ConfigError);
}

}  // TEST_SUITE
