#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lifespan {

enum class QuantileMethod { linear_interpolation, nearest_rank };

// Sample Pearson correlation coefficient. Throws std::invalid_argument
// ("undefined correlation: ...") on length mismatch, fewer than two points,
// zero variance, or NaN input.
double pearson(std::span<const double> x, std::span<const double> y);

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

// Quantiles at p = 0.25 / 0.5 / 0.75 over the sorted values. The default
// interpolates at index h = (n-1)p; nearest_rank takes the value at rank
// ceil(p*n). Throws on empty or NaN input.
Quartiles quartiles(std::span<const double> values,
                    QuantileMethod method = QuantileMethod::linear_interpolation);

// One row of the per-language life-span table.
struct LanguageStatsRow {
    std::string language;
    double average = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    std::int64_t count = 0;
};

// One row of the per-label life-span table.
struct LabelStatsRow {
    std::string label;
    double average = 0.0;
    std::int64_t count = 0;
};

// Groups (language, life-span days) pairs into rows with at least min_count
// observations, sorted by average ascending (ties by name).
std::vector<LanguageStatsRow> language_lifespan_table(
    const std::vector<std::pair<std::string, double>>& pairs, std::int64_t min_count = 1,
    QuantileMethod method = QuantileMethod::linear_interpolation);

// A project with k labels contributes its days to each of the k labels.
// Rows sorted by average descending (ties by name).
std::vector<LabelStatsRow> label_lifespan_table(
    const std::vector<std::pair<std::set<std::string>, double>>& pairs);

struct BinnedPoint {
    double center = 0.0;
    double mean = 0.0;
    std::int64_t count = 0;
};

// Mean of y per half-open x-bin [k*w, (k+1)*w); empty bins omitted, bins
// ordered by center. Throws on length mismatch, w <= 0, or NaN input.
std::vector<BinnedPoint> binned_mean_series(std::span<const double> x,
                                            std::span<const double> y, double bin_width);

}  // namespace lifespan
