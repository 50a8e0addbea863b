#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "photogest/dsp/wavelet.hpp"
#include "photogest/signal.hpp"

namespace photogest {

enum class FeatureSchema { Stat22, Dwt16 };

std::string_view to_string(FeatureSchema schema) noexcept;
std::optional<FeatureSchema> parse_feature_schema(std::string_view name) noexcept;

inline constexpr Index kFeatureWindow = 512;
inline constexpr Index kStatFeatureCount = 22;
inline constexpr Index kDwtFeatureCount = 16;

/// Column names of the statistical schema, in output order.
const std::array<std::string_view, kStatFeatureCount>& stat22_names();

struct FeatureVector {
  SignalXd values;
  FeatureSchema schema = FeatureSchema::Dwt16;
  std::string source_id;
};

Index feature_width(FeatureSchema schema) noexcept;

/// Time and frequency statistics of a 512-sample window sampled at
/// `sample_rate` Hz. Degenerate moments (zero variance) are reported as 0.
FeatureVector statistical_features(const SignalXd& window, double sample_rate);

/// Level-5 periodized detail coefficients: 16 values for every wavelet.
FeatureVector wavelet_features(const SignalXd& window,
                               dsp::WaveletKind wavelet = dsp::WaveletKind::Db2);

}  // namespace photogest
