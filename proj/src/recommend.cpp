#include "tsarm/recommend.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "tsarm/embedded_data.hpp"
#include "tsarm/errors.hpp"
#include "tsarm/numerics.hpp"
#include "tsarm/synth.hpp"

namespace tsarm {

using nlohmann::json;

const std::array<std::string, 9>& method_universe() {
    static const std::array<std::string, 9> u = {
        "jittering",     "scaling",      "flipping",        "permutation", "resizing",
        "time_masking",  "freq_masking", "time_neighboring", "no_pretraining"};
    return u;
}

RankingTable parse_ranking_table(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.contains("datasets") || !j["datasets"].is_object())
        throw ConfigError("ranking table: missing 'datasets' object");
    RankingTable table;
    const auto& universe = method_universe();
    for (const auto& [name, arr] : j["datasets"].items()) {
        RankedAugmentations r;
        r.source = name;
        int expected_rank = 1;
        for (const auto& e : arr) {
            RankEntry entry;
            entry.name = e.at("name").get<std::string>();
            entry.rank = e.at("rank").get<int>();
            entry.tie_group = e.at("tie_group").get<int>();
            if (std::find(universe.begin(), universe.end(), entry.name) == universe.end())
                throw ConfigError("ranking table: unknown method '" + entry.name + "'");
            if (entry.rank != expected_rank++)
                throw ConfigError("ranking table: ranks of " + name + " are not 1..n");
            for (const auto& prev : r.entries)
                if (prev.name == entry.name)
                    throw ConfigError("ranking table: duplicate method in " + name);
            r.entries.push_back(std::move(entry));
        }
        if (r.entries.empty()) throw ConfigError("ranking table: empty list for " + name);
        table.by_dataset.emplace(name, std::move(r));
    }
    return table;
}

const RankingTable& canonical_synthetic_rankings() {
    static const RankingTable table = parse_ranking_table(embedded::kSyntheticRankingsJson);
    return table;
}

const RankingTable& canonical_realworld_rankings() {
    static const RankingTable table = parse_ranking_table(embedded::kRealworldRankingsJson);
    return table;
}

const std::map<std::string, SimilarityReport>& realworld_profile_fixtures() {
    static const std::map<std::string, SimilarityReport> fixtures = [] {
        std::map<std::string, SimilarityReport> out;
        json j = json::parse(embedded::kRealworldProfilesJson);
        for (const auto& [name, e] : j.at("datasets").items()) {
            SimilarityReport r;
            r.sim_t1 = e.at("sim_t1").get<double>();
            r.sim_t2 = e.at("sim_t2").get<double>();
            r.sim_s1 = e.at("sim_s1").get<double>();
            r.sim_s2 = e.at("sim_s2").get<double>();
            r.p_trend = e.at("p_trend").get<double>();
            r.p_season = e.at("p_season").get<double>();
            r.ds_trend = divergence_score(r.sim_t1, r.sim_t2);
            r.ds_season = divergence_score(r.sim_s1, r.sim_s2);
            out.emplace(name, r);
        }
        return out;
    }();
    return fixtures;
}

double divergence_score(double sim_a, double sim_b) {
    const double sum = sim_a + sim_b;
    if (!(sum > 0.0))
        throw DegenerateVectorError("divergence_score: similarity sum must be positive");
    return 2.0 * (std::max(sim_a, sim_b) - std::min(sim_a, sim_b)) / sum;
}

std::pair<double, double> weight_assignment(double p_trend, double p_season) {
    if (p_trend < 0.0 || p_season < 0.0)
        throw ConfigError("weight_assignment: powers must be non-negative");
    if (p_season == 0.0) return {0.9, 0.1};  // ratio -> +inf
    const double ratio = p_trend / p_season;
    if (ratio <= 5.0 / 9.0) return {0.1, 0.9};
    if (ratio >= 5.0) return {0.9, 0.1};
    return {0.5, 0.5};
}

SimilarityReport component_similarities(const DatasetProfile& profile) {
    if (profile.per_period.empty())
        throw ConfigError("component_similarities: empty profile");
    SimilarityReport r;
    for (const PeriodProfile& pp : profile.per_period) {
        const std::size_t len = pp.mean_trend.size();
        const std::size_t period = pp.period;
        const RealSeries t1 = gen_trend(TrendKind::linear, len, 1.0);
        const RealSeries t2 = gen_trend(TrendKind::power, len, 0.2);
        // Season templates over the sample length: one trig cycle of the
        // profile's period, tiled (that is just the sinusoid itself), and the
        // Morlet pulse spanning the sample. Comparing folded single periods
        // instead cannot tell the two apart - one period of a Morlet is a
        // plain sinusoid cycle.
        const RealSeries s1 = gen_seasonality(
            SeasonKind::trig, len, 0.5,
            6.283185307179586476925286766559 / static_cast<double>(period), 0.0);
        const RealSeries s2 = gen_seasonality(SeasonKind::morlet, len, 5.0, 0.0, 0.0);
        r.sim_t1 += cosine_similarity(pp.mean_trend, t1);
        r.sim_t2 += cosine_similarity(pp.mean_trend, t2);
        r.sim_s1 += cosine_similarity(pp.mean_seasonal_full, s1);
        r.sim_s2 += cosine_similarity(pp.mean_seasonal_full, s2);
        r.p_trend += pp.mean_trend_power;
        r.p_season += pp.mean_seasonal_power;
    }
    const double inv = 1.0 / static_cast<double>(profile.per_period.size());
    r.sim_t1 *= inv;
    r.sim_t2 *= inv;
    r.sim_s1 *= inv;
    r.sim_s2 *= inv;
    r.p_trend *= inv;
    r.p_season *= inv;
    r.ds_trend = divergence_score(r.sim_t1, r.sim_t2);
    r.ds_season = divergence_score(r.sim_s1, r.sim_s2);
    return r;
}

namespace {

int suffix_for_w1(double w1) { return w1 == 0.1 ? 1 : w1 == 0.5 ? 2 : 3; }

}  // namespace

TwinDecision select_twin(const SimilarityReport& report, double threshold) {
    TwinDecision d;
    d.ds_trend = report.ds_trend;
    d.ds_season = report.ds_season;
    d.trend_used = report.ds_trend >= threshold;
    d.season_used = report.ds_season >= threshold;
    const auto [w1, w2] = weight_assignment(report.p_trend, report.p_season);
    (void)w2;
    d.assigned_w1 = w1;
    const int suffix = suffix_for_w1(w1);
    const bool trend_linear = report.sim_t1 >= report.sim_t2;
    const bool season_trig = report.sim_s1 >= report.sim_s2;

    if (d.trend_used && d.season_used) {
        d.kind = TwinDecision::Kind::single;
        const char group = trend_linear ? (season_trig ? 'A' : 'B') : (season_trig ? 'C' : 'D');
        d.first = std::string(1, group) + std::to_string(suffix);
    } else if (d.season_used) {
        // Trend is neutral: the twin pair spans both trend groups.
        d.kind = TwinDecision::Kind::pair;
        d.first = std::string(1, season_trig ? 'A' : 'B') + std::to_string(suffix);
        d.second = std::string(1, season_trig ? 'C' : 'D') + std::to_string(suffix);
    } else if (d.trend_used) {
        d.kind = TwinDecision::Kind::pair;
        d.first = std::string(1, trend_linear ? 'A' : 'C') + std::to_string(suffix);
        d.second = std::string(1, trend_linear ? 'B' : 'D') + std::to_string(suffix);
    } else {
        d.kind = TwinDecision::Kind::no_match;
    }
    return d;
}

std::map<std::string, double> strict_ranks(const RankedAugmentations& ranking) {
    std::map<std::string, double> out;
    for (const auto& e : ranking.entries) out[e.name] = static_cast<double>(e.rank);
    const auto& universe = method_universe();
    const std::size_t listed = ranking.entries.size();
    const std::size_t missing = universe.size() - listed;
    if (missing > 0) {
        // Unclaimed positions are listed+1 .. 9; every absent method gets
        // their average so totals stay comparable across datasets.
        const double tail_avg =
            (static_cast<double>(listed + 1) + static_cast<double>(universe.size())) / 2.0;
        for (const auto& name : universe)
            if (!out.count(name)) out[name] = tail_avg;
    }
    return out;
}

namespace {

const RankedAugmentations& ranking_for(const RankingTable& table, const std::string& id) {
    auto it = table.by_dataset.find(id);
    if (it == table.by_dataset.end())
        throw ConfigError("no canonical ranking for dataset '" + id + "'");
    return it->second;
}

void check_k(int k) {
    if (k < 1 || k > static_cast<int>(method_universe().size()))
        throw ConfigError("k must be in 1..9");
}

}  // namespace

std::vector<std::string> recommend_topk(const TwinDecision& twin, const RankingTable& table,
                                        int k) {
    check_k(k);
    if (twin.kind == TwinDecision::Kind::no_match)
        throw InapplicableError(
            "query matches neither trend nor seasonality template; no recommendation",
            twin.ds_trend, twin.ds_season);

    struct Scored {
        std::string name;
        double score;
        double best;
    };
    std::vector<Scored> scored;

    if (twin.kind == TwinDecision::Kind::single) {
        const auto ranks = strict_ranks(ranking_for(table, twin.first));
        for (const auto& [name, r] : ranks) scored.push_back({name, r, r});
    } else {
        const auto ra = strict_ranks(ranking_for(table, twin.first));
        const auto rb = strict_ranks(ranking_for(table, twin.second));
        for (const auto& [name, r] : ra) {
            const double r2 = rb.at(name);
            scored.push_back({name, (r + r2) / 2.0, std::min(r, r2)});
        }
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score < b.score;
        if (a.best != b.best) return a.best < b.best;
        return a.name < b.name;
    });
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i) out.push_back(scored[static_cast<std::size_t>(i)].name);
    return out;
}

std::vector<std::string> popularity_recommend(const RankingTable& table, int k) {
    check_k(k);
    if (table.by_dataset.empty()) throw ConfigError("popularity: empty ranking table");
    std::map<std::string, double> totals;
    for (const auto& [id, ranking] : table.by_dataset)
        for (const auto& [name, r] : strict_ranks(ranking)) totals[name] += r;
    std::vector<std::pair<std::string, double>> order(totals.begin(), totals.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i) out.push_back(order[static_cast<std::size_t>(i)].first);
    return out;
}

std::vector<std::string> random_recommend(int k, Rng& rng) {
    check_k(k);
    std::vector<std::string> pool(method_universe().begin(), method_universe().end());
    for (int i = 0; i < k; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) + rng.next_below(pool.size() - static_cast<std::size_t>(i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

double recall_at_k(const std::vector<std::string>& recommended,
                   const RankedAugmentations& truth, int k) {
    if (k == 0) throw ConfigError("recall_at_k: k must be >= 1");
    if (k < 0 || static_cast<std::size_t>(k) > recommended.size() ||
        static_cast<std::size_t>(k) > truth.entries.size())
        throw ConfigError("recall_at_k: k exceeds a list length");
    int hits = 0;
    for (int i = 0; i < k; ++i) {
        const std::string& t = truth.entries[static_cast<std::size_t>(i)].name;
        for (int j = 0; j < k; ++j)
            if (recommended[static_cast<std::size_t>(j)] == t) {
                ++hits;
                break;
            }
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

RecommendationReport recommend_from_report(const SimilarityReport& report,
                                           const RankingTable& table, int k,
                                           double threshold) {
    RecommendationReport out;
    out.similarity = report;
    out.twin = select_twin(report, threshold);
    out.k = k;
    if (out.twin.kind == TwinDecision::Kind::no_match)
        throw InapplicableError("query matches neither template family (divergence below " +
                                    std::to_string(threshold) + ")",
                                report.ds_trend, report.ds_season);
    out.top_k = recommend_topk(out.twin, table, k);
    return out;
}

RecommendationReport recommend_from_profile(const DatasetProfile& profile,
                                            const RankingTable& table, int k,
                                            double threshold) {
    return recommend_from_report(component_similarities(profile), table, k, threshold);
}

}  // namespace tsarm
