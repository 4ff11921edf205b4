#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "tsarm/contrastive.hpp"
#include "tsarm/recommend.hpp"
#include "tsarm/stl.hpp"
#include "tsarm/synth.hpp"
#include "tsarm/types.hpp"

namespace tsarm {

// Dataset CSV: header "label,v0,...,v{N-1}", one row per sample, '.' decimal
// separator. Doubles are printed round-trip exact, so equal datasets produce
// byte-identical files.
std::string dataset_to_csv(const LabeledDataset& ds);
void write_dataset_csv(const LabeledDataset& ds, const std::string& path);

// Throws CsvError with 1-based row/column on malformed input; multi-channel
// style headers are rejected (univariate series only).
LabeledDataset read_dataset_csv(const std::string& path);

// Companion sidecar recording the generation setup.
nlohmann::json synth_sidecar(DatasetId id, const SynthConfig& cfg);

// Per-series decomposition export: t,input,trend,seasonal,residual.
std::string decomposition_to_csv(const RealSeries& input, const Decomposition& d);

nlohmann::json to_json(const SimilarityReport& r);
nlohmann::json to_json(const TwinDecision& t);
nlohmann::json to_json(const RecommendationReport& r);
nlohmann::json to_json(const RankedAugmentations& r);
nlohmann::json to_json(const ClassificationMetrics& m);
nlohmann::json to_json(const BenchmarkReport& r);
nlohmann::json to_json(const DatasetProfile& p);
nlohmann::json aug_spec_to_json(const AugSpec& spec, std::uint64_t seed);
AugSpec aug_spec_from_json(const nlohmann::json& j);

RankedAugmentations ranked_from_json(const nlohmann::json& j);

// Minimal structural validator for the shipped schemas: checks "type",
// "required" and "properties" recursively. Returns an empty string when the
// document conforms, else a description of the first violation.
std::string validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema);

// Schemas shipped under data/schemas, compiled in.
const nlohmann::json& recommendation_report_schema();
const nlohmann::json& benchmark_report_schema();
const nlohmann::json& recall_report_schema();
const nlohmann::json& synth_sidecar_schema();
const nlohmann::json& augmentation_schema();
const nlohmann::json& dataset_profile_schema();

// FNV-1a 64-bit checksum used to pin the canonical data assets.
std::uint64_t fnv1a64(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tsarm
