#pragma once

#include "lifespan/stats.hpp"
#include "lifespan/types.hpp"

namespace lifespan {

// Corpus-level reference statistics from the 2013 GitHub snapshot that the
// shipped default parameters were calibrated on. Per-row observation counts
// were not published with these statistics; counts are placeholders of 1.
const std::vector<LanguageStatsRow>& reference_language_table();
const std::vector<LabelStatsRow>& reference_label_table();

inline constexpr double kReferenceGlobalMeanLifespan = 149.4;
inline constexpr double kDefaultAlpha = 1.204;  // mean days per project file
inline constexpr double kDefaultBeta = 0.8;
inline constexpr const char* kDefaultBaselineLanguage = "Java";

// Default parameters: shipped alpha/beta plus factors and offsets derived
// from the reference tables above.
ModelParams default_model_params();

}  // namespace lifespan
