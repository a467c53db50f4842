#include "lifespan/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lifespan {

namespace {

void reject_nan(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (std::isnan(v)) throw std::invalid_argument(std::string("NaN in ") + what);
    }
}

double mean_of(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double quantile_sorted(const std::vector<double>& sorted, double p, QuantileMethod method) {
    std::size_t n = sorted.size();
    if (method == QuantileMethod::nearest_rank) {
        std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
        if (rank == 0) rank = 1;
        return sorted[std::min(rank, n) - 1];
    }
    double h = p * static_cast<double>(n - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = static_cast<std::size_t>(std::ceil(h));
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("undefined correlation: length mismatch");
    if (x.size() < 2)
        throw std::invalid_argument("undefined correlation: fewer than two points");
    reject_nan(x, "correlation input x");
    reject_nan(y, "correlation input y");

    double mx = mean_of(x);
    double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("undefined correlation: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

Quartiles quartiles(std::span<const double> values, QuantileMethod method) {
    if (values.empty()) throw std::invalid_argument("quartiles of empty input");
    reject_nan(values, "quartile input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return {quantile_sorted(sorted, 0.25, method), quantile_sorted(sorted, 0.5, method),
            quantile_sorted(sorted, 0.75, method)};
}

std::vector<LanguageStatsRow> language_lifespan_table(
    const std::vector<std::pair<std::string, double>>& pairs, std::int64_t min_count,
    QuantileMethod method) {
    std::map<std::string, std::vector<double>> groups;
    for (const auto& [language, days] : pairs) {
        if (std::isnan(days)) throw std::invalid_argument("NaN life-span for '" + language + "'");
        groups[language].push_back(days);
    }
    std::vector<LanguageStatsRow> rows;
    for (const auto& [language, days] : groups) {
        if (static_cast<std::int64_t>(days.size()) < min_count) continue;
        Quartiles q = quartiles(days, method);
        rows.push_back({language, mean_of(days), q.q1, q.median, q.q3,
                        static_cast<std::int64_t>(days.size())});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.average != b.average) return a.average < b.average;
        return a.language < b.language;
    });
    return rows;
}

std::vector<LabelStatsRow> label_lifespan_table(
    const std::vector<std::pair<std::set<std::string>, double>>& pairs) {
    std::map<std::string, std::pair<double, std::int64_t>> groups;  // label -> (sum, count)
    for (const auto& [labels, days] : pairs) {
        if (std::isnan(days)) throw std::invalid_argument("NaN life-span in label table");
        for (const auto& label : labels) {
            auto& [sum, count] = groups[label];
            sum += days;
            ++count;
        }
    }
    std::vector<LabelStatsRow> rows;
    rows.reserve(groups.size());
    for (const auto& [label, acc] : groups)
        rows.push_back({label, acc.first / static_cast<double>(acc.second), acc.second});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.average != b.average) return a.average > b.average;
        return a.label < b.label;
    });
    return rows;
}

std::vector<BinnedPoint> binned_mean_series(std::span<const double> x,
                                            std::span<const double> y, double bin_width) {
    if (x.size() != y.size()) throw std::invalid_argument("binned series: length mismatch");
    if (!(bin_width > 0)) throw std::invalid_argument("binned series: bin width must be > 0");
    reject_nan(x, "binned series input x");
    reject_nan(y, "binned series input y");

    std::map<std::int64_t, std::pair<double, std::int64_t>> bins;  // k -> (sum y, count)
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto k = static_cast<std::int64_t>(std::floor(x[i] / bin_width));
        auto& [sum, count] = bins[k];
        sum += y[i];
        ++count;
    }
    std::vector<BinnedPoint> out;
    out.reserve(bins.size());
    for (const auto& [k, acc] : bins) {
        out.push_back({(static_cast<double>(k) + 0.5) * bin_width,
                       acc.first / static_cast<double>(acc.second), acc.second});
    }
    return out;
}

}  // namespace lifespan
