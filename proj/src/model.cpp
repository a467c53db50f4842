#include "lifespan/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace lifespan {

std::map<std::string, double> derive_language_factors(
    const std::vector<LanguageStatsRow>& language_table, const std::string& baseline) {
    const LanguageStatsRow* base = nullptr;
    for (const auto& row : language_table) {
        if (row.language == baseline) {
            base = &row;
            break;
        }
    }
    if (!base) throw std::invalid_argument("baseline language '" + baseline + "' not in table");
    if (!(base->average > 0))
        throw std::invalid_argument("baseline language '" + baseline + "' has non-positive mean");

    std::map<std::string, double> factors;
    for (const auto& row : language_table) factors[row.language] = row.average / base->average;
    factors[baseline] = 1.0;  // exact, independent of rounding
    return factors;
}

std::map<std::string, double> derive_label_offsets(const std::vector<LabelStatsRow>& label_table,
                                                   double global_mean) {
    if (!(global_mean > 0)) throw std::invalid_argument("global mean life-span must be > 0");
    std::map<std::string, double> offsets;
    for (const auto& row : label_table) offsets[row.label] = row.average - global_mean;
    return offsets;
}

double calibrate_alpha(const std::vector<std::pair<FeatureVector, double>>& records) {
    if (records.empty()) throw std::invalid_argument("cannot calibrate alpha on empty input");
    double sum = 0.0;
    for (const auto& [features, actual] : records) {
        if (features.n <= 0)
            throw std::invalid_argument("cannot calibrate alpha: project with zero file count");
        sum += actual / static_cast<double>(features.n);
    }
    return sum / static_cast<double>(records.size());
}

namespace {

double clamped_log2(std::int64_t v) {
    return std::log2(static_cast<double>(std::max<std::int64_t>(v, 2)));
}

}  // namespace

PredictionBreakdown predict_breakdown(const FeatureVector& features, const ModelParams& params) {
    PredictionBreakdown b;
    b.log2_n = clamped_log2(features.n);
    b.log2_m = clamped_log2(features.m);

    auto lang = params.language_factors.find(features.language);
    if (lang != params.language_factors.end()) {
        b.language_factor = lang->second;
    } else {
        b.language_factor = 1.0;  // baseline
        b.unknown_language = !features.language.empty();
    }

    double offset_sum = 0.0;
    std::int64_t known = 0;
    for (const auto& label : features.labels) {
        auto it = params.label_offsets.find(label);
        if (it == params.label_offsets.end()) continue;
        offset_sum += it->second;
        ++known;
    }
    b.label_offset = known > 0 ? offset_sum / static_cast<double>(known) : 0.0;

    b.base_term = params.alpha * b.log2_n * b.language_factor * b.log2_m;
    b.label_term = params.beta * b.label_offset;
    b.lp = std::max(0.0, b.base_term + b.label_term);
    return b;
}

double predict_lifespan(const FeatureVector& features, const ModelParams& params) {
    return predict_breakdown(features, params).lp;
}

std::vector<double> default_error_thresholds() {
    std::vector<double> t;
    for (int i = 1; i <= 10; ++i) t.push_back(i / 10.0);
    return t;
}

double EvaluationReport::fraction_below(double threshold) const {
    if (rows.empty()) return 0.0;
    std::int64_t hit = 0;
    for (const auto& row : rows)
        if (row.relative_error <= threshold) ++hit;
    return static_cast<double>(hit) / static_cast<double>(rows.size());
}

EvaluationReport evaluate(const std::vector<std::pair<FeatureVector, LifespanRecord>>& dataset,
                          const ModelParams& params, double max_ratio,
                          const std::vector<double>& thresholds) {
    EvaluationReport report;
    for (const auto& [features, record] : dataset) {
        if (!(record.non_working_ratio < max_ratio)) continue;
        if (record.days <= 0)
            throw std::invalid_argument("project '" + record.project_id +
                                        "' kept by the ratio filter has no positive life-span");
        double predicted = predict_lifespan(features, params);
        double actual = static_cast<double>(record.days);
        report.rows.push_back(
            {record.project_id, predicted, actual, std::abs(predicted - actual) / actual});
    }
    if (report.rows.empty()) throw std::runtime_error("no projects satisfy ratio filter");

    for (double t : thresholds) report.cdf_points.emplace_back(t, report.fraction_below(t));
    return report;
}

ModelParams load_model_params(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed model params JSON: ") + e.what());
    }
    ModelParams p;
    try {
        p.alpha = doc.at("alpha").get<double>();
        p.beta = doc.at("beta").get<double>();
        p.baseline = doc.at("baseline").get<std::string>();
        p.global_mean_lifespan = doc.at("global_mean_lifespan").get<double>();
        for (const auto& [key, value] : doc.at("language_factors").items())
            p.language_factors[key] = value.get<double>();
        for (const auto& [key, value] : doc.at("label_offsets").items())
            p.label_offsets[key] = value.get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed model params JSON: ") + e.what());
    }
    std::string problem = p.check();
    if (!problem.empty()) throw std::runtime_error("invalid model params: " + problem);
    return p;
}

void save_model_params(std::ostream& out, const ModelParams& params) {
    nlohmann::json doc;
    doc["alpha"] = params.alpha;
    doc["beta"] = params.beta;
    doc["baseline"] = params.baseline;
    doc["language_factors"] = params.language_factors;
    doc["label_offsets"] = params.label_offsets;
    doc["global_mean_lifespan"] = params.global_mean_lifespan;
    out << doc.dump(2) << "\n";
}

}  // namespace lifespan
