#include "tsarm/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tsarm/embedded_data.hpp"
#include "tsarm/errors.hpp"

namespace tsarm {

using nlohmann::json;

namespace {

// Shortest representation that round-trips the double exactly.
std::string format_double(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

}  // namespace

std::string dataset_to_csv(const LabeledDataset& ds) {
    if (ds.samples.size() != ds.labels.size())
        throw ShapeError("dataset_to_csv: samples/labels size mismatch");
    const std::size_t n = ds.samples.empty() ? 0 : ds.samples[0].size();
    std::string out = "label";
    for (std::size_t i = 0; i < n; ++i) out += ",v" + std::to_string(i);
    out += "\n";
    for (std::size_t r = 0; r < ds.samples.size(); ++r) {
        if (ds.samples[r].size() != n) throw ShapeError("dataset_to_csv: ragged dataset");
        out += std::to_string(ds.labels[r]);
        for (double v : ds.samples[r]) {
            out += ',';
            out += format_double(v);
        }
        out += "\n";
    }
    return out;
}

void write_dataset_csv(const LabeledDataset& ds, const std::string& path) {
    write_file(path, dataset_to_csv(ds));
}

LabeledDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path + "'", 0, 0);
    std::string line;
    if (!std::getline(in, line)) throw CsvError("missing header row", 1, 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    // Header must be exactly label,v0,v1,...; anything channel-shaped means a
    // multivariate file, which this tool does not take.
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    if (cols.empty() || cols[0] != "label")
        throw CsvError("header must start with 'label'", 1, 1);
    for (std::size_t i = 1; i < cols.size(); ++i) {
        const std::string expect = "v" + std::to_string(i - 1);
        if (cols[i] != expect)
            throw CsvError("header column must be '" + expect + "' (got '" + cols[i] +
                               "'); univariate series only - select one channel",
                           1, i + 1);
    }
    const std::size_t width = cols.size() - 1;
    if (width == 0) throw CsvError("header has no value columns", 1, 2);

    LabeledDataset ds;
    ds.source_id = path;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t col = 1;
        const char* p = line.data();
        const char* endp = p + line.size();

        int label = 0;
        auto rc = std::from_chars(p, endp, label);
        if (rc.ec != std::errc() || (rc.ptr != endp && *rc.ptr != ','))
            throw CsvError("bad label", row, col);
        p = rc.ptr;

        RealSeries values;
        values.reserve(width);
        while (p != endp) {
            if (*p != ',') throw CsvError("expected ','", row, col);
            ++p;
            ++col;
            double v = 0.0;
            auto vc = std::from_chars(p, endp, v);
            if (vc.ec != std::errc() || (vc.ptr != endp && *vc.ptr != ','))
                throw CsvError("bad numeric value", row, col);
            if (!std::isfinite(v)) throw CsvError("non-finite value", row, col);
            values.push_back(v);
            p = vc.ptr;
        }
        if (values.size() != width)
            throw CsvError("row has " + std::to_string(values.size()) + " values, header has " +
                               std::to_string(width),
                           row, values.size() + 1);
        ds.labels.push_back(label);
        ds.samples.push_back(std::move(values));
    }
    if (ds.samples.empty()) throw CsvError("no data rows", row + 1, 1);
    return ds;
}

json synth_sidecar(DatasetId id, const SynthConfig& cfg) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "synth_sidecar";
    j["dataset"] = id.str();
    j["seed"] = cfg.seed;
    j["config"] = {{"sample_len", cfg.sample_len},
                   {"w1", id.w1()},
                   {"w2", 1.0 - id.w1()},
                   {"w3", cfg.w3},
                   {"samples_per_class", cfg.samples_per_class},
                   {"cycles_per_sample", cfg.cycles_per_sample},
                   {"phase_jitter", cfg.phase_jitter},
                   {"normalize_components", cfg.normalize_components}};
    return j;
}

std::string decomposition_to_csv(const RealSeries& input, const Decomposition& d) {
    if (input.size() != d.trend.size()) throw ShapeError("decomposition_to_csv: size mismatch");
    std::string out = "t,input,trend,seasonal,residual\n";
    for (std::size_t i = 0; i < input.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(input[i]);
        out += ',';
        out += format_double(d.trend[i]);
        out += ',';
        out += format_double(d.seasonal[i]);
        out += ',';
        out += format_double(d.residual[i]);
        out += '\n';
    }
    return out;
}

json to_json(const SimilarityReport& r) {
    return json{{"sim_t1", r.sim_t1},   {"sim_t2", r.sim_t2},   {"sim_s1", r.sim_s1},
                {"sim_s2", r.sim_s2},   {"ds_trend", r.ds_trend}, {"ds_season", r.ds_season},
                {"p_trend", r.p_trend}, {"p_season", r.p_season}};
}

json to_json(const TwinDecision& t) {
    json j;
    switch (t.kind) {
        case TwinDecision::Kind::single: j["kind"] = "single"; break;
        case TwinDecision::Kind::pair: j["kind"] = "pair"; break;
        case TwinDecision::Kind::no_match: j["kind"] = "no_match"; break;
    }
    j["first"] = t.first;
    if (!t.second.empty()) j["second"] = t.second;
    j["trend_used"] = t.trend_used;
    j["season_used"] = t.season_used;
    j["assigned_w1"] = t.assigned_w1;
    j["assigned_w2"] = 1.0 - t.assigned_w1;
    return j;
}

json to_json(const RecommendationReport& r) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "recommendation_report";
    j["method"] = r.method;
    j["k"] = r.k;
    j["similarities"] = {{"sim_t1", r.similarity.sim_t1},
                         {"sim_t2", r.similarity.sim_t2},
                         {"sim_s1", r.similarity.sim_s1},
                         {"sim_s2", r.similarity.sim_s2}};
    j["divergence_scores"] = {{"trend", r.similarity.ds_trend},
                              {"season", r.similarity.ds_season}};
    j["powers"] = {{"trend", r.similarity.p_trend}, {"season", r.similarity.p_season}};
    j["weights"] = {{"w1", r.twin.assigned_w1}, {"w2", 1.0 - r.twin.assigned_w1}};
    j["twin"] = to_json(r.twin);
    j["top_k"] = r.top_k;
    return j;
}

json to_json(const RankedAugmentations& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"name", e.name}, {"rank", e.rank}, {"tie_group", e.tie_group}});
    return json{{"source", r.source}, {"entries", entries}};
}

json to_json(const ClassificationMetrics& m) {
    return json{{"accuracy", m.accuracy},
                {"macro_precision", m.macro_precision},
                {"macro_recall", m.macro_recall},
                {"macro_f1", m.macro_f1}};
}

json to_json(const BenchmarkReport& r) {
    json methods = json::array();
    for (const auto& m : r.methods) {
        json reps = json::array();
        for (const auto& met : m.repeats) reps.push_back(to_json(met));
        methods.push_back({{"name", m.name}, {"repeats", reps}, {"mean", to_json(m.mean)}});
    }
    return json{{"schema_version", 1},
                {"kind", "benchmark_report"},
                {"dataset", r.dataset},
                {"config",
                 {{"temperature", r.cfg.temperature},
                  {"batch_size", r.cfg.batch_size},
                  {"pretrain_epochs", r.cfg.pretrain_epochs},
                  {"finetune_epochs", r.cfg.finetune_epochs},
                  {"learning_rate", r.cfg.learning_rate},
                  {"label_ratio", r.cfg.label_ratio},
                  {"repeats", r.cfg.repeats},
                  {"seed", r.cfg.seed}}},
                {"methods", methods},
                {"ranking", to_json(r.ranking)}};
}

json to_json(const DatasetProfile& p) {
    json periods = json::array();
    for (const auto& pp : p.per_period) {
        periods.push_back({{"period", pp.period},
                           {"mean_trend", pp.mean_trend},
                           {"mean_seasonal", pp.mean_seasonal},
                           {"mean_seasonal_full", pp.mean_seasonal_full},
                           {"mean_trend_power", pp.mean_trend_power},
                           {"mean_seasonal_power", pp.mean_seasonal_power}});
    }
    return json{{"schema_version", 1}, {"kind", "dataset_profile"}, {"periods", periods}};
}

json aug_spec_to_json(const AugSpec& spec, std::uint64_t seed) {
    json params;
    switch (spec.kind) {
        case AugKind::jitter: params["sigma"] = spec.sigma; break;
        case AugKind::scale:
            params["lo"] = spec.scale_lo;
            params["hi"] = spec.scale_hi;
            params["per_step"] = spec.scale_per_step;
            break;
        case AugKind::flip: break;
        case AugKind::permute: params["num_segments"] = spec.num_segments; break;
        case AugKind::resize: params["crop_fraction"] = spec.crop_fraction; break;
        case AugKind::time_mask:
        case AugKind::freq_mask: params["mask_fraction"] = spec.mask_fraction; break;
        case AugKind::time_neighbor: break;
    }
    return json{{"kind", aug_name(spec.kind)}, {"params", params}, {"seed", seed}};
}

AugSpec aug_spec_from_json(const json& j) {
    AugSpec spec;
    spec.kind = aug_from_name(j.at("kind").get<std::string>());
    const json& p = j.value("params", json::object());
    if (p.contains("sigma")) spec.sigma = p["sigma"].get<double>();
    if (p.contains("lo")) spec.scale_lo = p["lo"].get<double>();
    if (p.contains("hi")) spec.scale_hi = p["hi"].get<double>();
    if (p.contains("per_step")) spec.scale_per_step = p["per_step"].get<bool>();
    if (p.contains("num_segments")) spec.num_segments = p["num_segments"].get<int>();
    if (p.contains("crop_fraction")) spec.crop_fraction = p["crop_fraction"].get<double>();
    if (p.contains("mask_fraction")) spec.mask_fraction = p["mask_fraction"].get<double>();
    return spec;
}

RankedAugmentations ranked_from_json(const json& j) {
    RankedAugmentations r;
    r.source = j.value("source", "");
    const json& entries = j.contains("entries") ? j.at("entries") : j;
    for (const auto& e : entries) {
        RankEntry entry;
        entry.name = e.at("name").get<std::string>();
        entry.rank = e.at("rank").get<int>();
        entry.tie_group = e.value("tie_group", 0);
        r.entries.push_back(std::move(entry));
    }
    return r;
}

std::string validate_against_schema(const json& doc, const json& schema) {
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        const bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                        (t == "string" && doc.is_string()) ||
                        (t == "number" && doc.is_number()) ||
                        (t == "integer" && doc.is_number_integer()) ||
                        (t == "boolean" && doc.is_boolean());
        if (!ok) return "expected type '" + t + "', got " + std::string(doc.type_name());
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"]) {
            const std::string k = key.get<std::string>();
            if (!doc.contains(k)) return "missing required key '" + k + "'";
        }
    if (schema.contains("properties") && doc.is_object())
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (!doc.contains(key)) continue;
            const std::string err = validate_against_schema(doc[key], sub);
            if (!err.empty()) return "at '" + key + "': " + err;
        }
    if (schema.contains("items") && doc.is_array())
        for (const auto& item : doc) {
            const std::string err = validate_against_schema(item, schema["items"]);
            if (!err.empty()) return "in array: " + err;
        }
    return "";
}

const json& recommendation_report_schema() {
    static const json schema = json::parse(embedded::kRecommendationReportSchema);
    return schema;
}

const json& benchmark_report_schema() {
    static const json schema = json::parse(embedded::kBenchmarkReportSchema);
    return schema;
}

const json& recall_report_schema() {
    static const json schema = json::parse(embedded::kRecallReportSchema);
    return schema;
}

const json& synth_sidecar_schema() {
    static const json schema = json::parse(embedded::kSynthSidecarSchema);
    return schema;
}

const json& augmentation_schema() {
    static const json schema = json::parse(embedded::kAugmentationSchema);
    return schema;
}

const json& dataset_profile_schema() {
    static const json schema = json::parse(embedded::kDatasetProfileSchema);
    return schema;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
}

}  // namespace tsarm
