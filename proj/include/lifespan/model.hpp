#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lifespan/stats.hpp"
#include "lifespan/types.hpp"

namespace lifespan {

// factor(L) = average life-span of L / average of the baseline language;
// the baseline maps to exactly 1.0. Throws when the baseline row is absent.
std::map<std::string, double> derive_language_factors(
    const std::vector<LanguageStatsRow>& language_table, const std::string& baseline = "Java");

// offset(label) = average life-span of the label minus the global mean.
// Throws when global_mean <= 0.
std::map<std::string, double> derive_label_offsets(const std::vector<LabelStatsRow>& label_table,
                                                   double global_mean);

// alpha = mean over records of (actual days / file count): the average time
// spent per project file. Throws on empty input or a zero file count.
double calibrate_alpha(const std::vector<std::pair<FeatureVector, double>>& records);

// The multiplicative and additive pieces of one prediction.
// lp = max(0, base_term + label_term) with
//   base_term  = alpha * log2_n * language_factor * log2_m
//   label_term = beta * label_offset
// log2_n / log2_m clamp their argument to at least 2, so each log factor is
// at least 1 and defined at n, m in {0, 1}.
struct PredictionBreakdown {
    double log2_n = 0.0;
    double log2_m = 0.0;
    double language_factor = 1.0;
    double label_offset = 0.0;  // mean offset of the labels known to the params
    double base_term = 0.0;
    double label_term = 0.0;
    double lp = 0.0;
    bool unknown_language = false;  // language non-empty but absent from the factor table
};

PredictionBreakdown predict_breakdown(const FeatureVector& features, const ModelParams& params);

// Predicted life-span in days, never negative.
double predict_lifespan(const FeatureVector& features, const ModelParams& params);

struct EvalRow {
    std::string project_id;
    double predicted = 0.0;
    double actual = 0.0;
    double relative_error = 0.0;
};

struct EvaluationReport {
    std::vector<EvalRow> rows;
    // (threshold, fraction of rows with relative_error <= threshold)
    std::vector<std::pair<double, double>> cdf_points;

    double fraction_below(double threshold) const;
};

std::vector<double> default_error_thresholds();  // 0.1, 0.2, ..., 1.0

// Keeps the projects whose non-working ratio is strictly below max_ratio,
// predicts each with the given params, and reports relative errors plus the
// error CDF at the given thresholds. Throws when the filter leaves nothing
// or a kept project has a non-positive actual life-span.
EvaluationReport evaluate(const std::vector<std::pair<FeatureVector, LifespanRecord>>& dataset,
                          const ModelParams& params, double max_ratio = 0.3,
                          const std::vector<double>& thresholds = default_error_thresholds());

// Single-document JSON serialization of ModelParams (keys: alpha, beta,
// baseline, language_factors, label_offsets, global_mean_lifespan).
// Loading throws std::runtime_error on malformed or inconsistent input.
ModelParams load_model_params(std::istream& in);
void save_model_params(std::ostream& out, const ModelParams& params);

}  // namespace lifespan
