#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tsarm/rng.hpp"
#include "tsarm/stl.hpp"

namespace tsarm {

inline constexpr double kDivergenceThreshold = 0.05;

// The nine recommendable methods: the eight augmentations plus the
// no-pretraining baseline.
const std::array<std::string, 9>& method_universe();

// Similarities of a query profile against the synthetic templates, the
// derived divergence scores, and the component powers.
struct SimilarityReport {
    double sim_t1 = 0, sim_t2 = 0;  // trend vs linear ramp / power curve
    double sim_s1 = 0, sim_s2 = 0;  // seasonal vs trig cycle / Morlet pulse
    double ds_trend = 0, ds_season = 0;
    double p_trend = 0, p_season = 0;
};

struct RankEntry {
    std::string name;
    int rank = 0;       // strict listed position, 1-based
    int tie_group = 0;  // entries within the ranking margin share a group
};

struct RankedAugmentations {
    std::string source;  // dataset this ranking came from
    std::vector<RankEntry> entries;
};

struct RankingTable {
    std::map<std::string, RankedAugmentations> by_dataset;
};

// Parse/serialize the ranking-table JSON shipped under data/.
RankingTable parse_ranking_table(const std::string& json_text);

// Tables compiled in from the data/ assets.
const RankingTable& canonical_synthetic_rankings();
const RankingTable& canonical_realworld_rankings();

// Pre-computed profile summaries of the six real-world datasets.
const std::map<std::string, SimilarityReport>& realworld_profile_fixtures();

// 2 * (max - min) / (sim_a + sim_b). Throws DegenerateVectorError when the
// denominator is not positive. In [0, 2] for non-negative similarities.
double divergence_score(double sim_a, double sim_b);

// (w1, w2) from the power ratio: <= 5/9 -> (0.1, 0.9), >= 5 -> (0.9, 0.1),
// in between -> (0.5, 0.5). p_season == 0 counts as an infinite ratio.
std::pair<double, double> weight_assignment(double p_trend, double p_season);

// Compare the profile against the four templates, averaging similarities and
// powers across the profile's periods.
SimilarityReport component_similarities(const DatasetProfile& profile);

struct TwinDecision {
    enum class Kind { single, pair, no_match };
    Kind kind = Kind::no_match;
    std::string first;   // twin id; for pairs, the linear-trend-group member
    std::string second;  // second pair member, empty otherwise
    bool trend_used = false;
    bool season_used = false;
    double assigned_w1 = 0.5;
    double ds_trend = 0.0;  // the scores behind trend_used/season_used
    double ds_season = 0.0;
};

TwinDecision select_twin(const SimilarityReport& report,
                         double threshold = kDivergenceThreshold);

// Top-k methods for a twin. Single twins follow its listed order; pairs fuse
// the two lists by average strict rank (absent methods get the average of the
// unclaimed tail positions), tie-broken by best rank then name. Throws
// InapplicableError for no_match twins.
std::vector<std::string> recommend_topk(const TwinDecision& twin, const RankingTable& table,
                                        int k);

// Fixed, query-independent ranking: ascending total strict rank over all
// datasets in the table, ties broken by name.
std::vector<std::string> popularity_recommend(const RankingTable& table, int k);

// k distinct methods drawn uniformly without replacement.
std::vector<std::string> random_recommend(int k, Rng& rng);

// |top-k(recommended) ∩ top-k(truth)| / k with the truth taken in strict
// listed order. Throws ConfigError for k == 0 or k beyond either list.
double recall_at_k(const std::vector<std::string>& recommended,
                   const RankedAugmentations& truth, int k);

// Strict rank of every method in the universe: listed position when present,
// otherwise the average of the positions the list left unclaimed.
std::map<std::string, double> strict_ranks(const RankedAugmentations& ranking);

struct RecommendationReport {
    SimilarityReport similarity;
    TwinDecision twin;
    std::vector<std::string> top_k;
    std::string method = "trend_seasonality";  // or "popularity" / "random"
    int k = 0;
};

// The six-step pipeline from an already computed profile / report.
RecommendationReport recommend_from_profile(const DatasetProfile& profile,
                                            const RankingTable& table, int k,
                                            double threshold = kDivergenceThreshold);
RecommendationReport recommend_from_report(const SimilarityReport& report,
                                           const RankingTable& table, int k,
                                           double threshold = kDivergenceThreshold);

}  // namespace tsarm
