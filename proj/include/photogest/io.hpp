#pragma once

// File formats: waveform traces (CSV), dataset manifests and configs (JSON),
// evaluation reports (JSON + confusion CSV), feature matrices and segment
// reports (CSV). Floats in outputs carry 9 significant digits.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "photogest/pipeline.hpp"

namespace photogest {

using nlohmann::json;

std::string format_number(double x);

void write_waveform_csv(const std::filesystem::path& path, const Waveform& w);
/// Reads `t_s,current_mA`; the rate is recovered from the time column, which
/// must be uniform.
Waveform read_waveform_csv(const std::filesystem::path& path);

void to_json(json& j, const GestureSpec& g);
void from_json(const json& j, GestureSpec& g);
void to_json(json& j, const SolarCellSpec& c);
void from_json(const json& j, SolarCellSpec& c);
void to_json(json& j, const LightEnvironment& e);
void from_json(const json& j, LightEnvironment& e);
void to_json(json& j, const CorruptionModel& m);
void from_json(const json& j, CorruptionModel& m);
void to_json(json& j, const GenerationConfig& g);
void from_json(const json& j, GenerationConfig& g);
void to_json(json& j, const SegmenterConfig& s);
void from_json(const json& j, SegmenterConfig& s);
void to_json(json& j, const PipelineOptions& p);
void from_json(const json& j, PipelineOptions& p);
void to_json(json& j, const ExperimentConfig& c);
void from_json(const json& j, ExperimentConfig& c);

/// Parses a config file; missing keys keep their defaults.
ExperimentConfig read_config(const std::filesystem::path& path);

inline constexpr const char* kManifestFormat = "photogest-dataset/1";

/// Writes `manifest.json` and `traces/*.csv` under `dir`.
void write_dataset(const std::filesystem::path& dir, const LabeledDataset& ds,
                   const ExperimentConfig& cfg);

struct LoadedDataset {
  LabeledDataset dataset;
  ExperimentConfig config;
};

LoadedDataset read_dataset(const std::filesystem::path& dir);

json report_json(const E2eResult& result, const ExperimentConfig& cfg);
void write_confusion_csv(const std::filesystem::path& path, const EvalReport& report);
void write_features_csv(const std::filesystem::path& path, const LabeledFeatures& data,
                        FeatureSchema schema);
void write_segments_csv(const std::filesystem::path& path,
                        const std::vector<GestureWindow>& windows);

/// Writes through a temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace photogest
