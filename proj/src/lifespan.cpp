#include "lifespan/lifespan.hpp"

#include <algorithm>
#include <stdexcept>

namespace lifespan {

GapStats non_working_ratio(const CommitTimeline& timeline, std::int64_t lifespan_days,
                           const GapPolicy& policy) {
    if (lifespan_days < 0) throw std::invalid_argument("lifespan_days must be >= 0");
    const auto& dates = timeline.commit_dates;
    if (dates.size() < 2) return {};

    std::int64_t span = days_between(dates.front(), dates.back());
    if (lifespan_days < span)
        throw std::invalid_argument("lifespan shorter than commit span for project '" +
                                    timeline.project_id + "'");

    std::int64_t gap_mass = 0;
    for (std::size_t i = 1; i < dates.size(); ++i) {
        std::int64_t dl = days_between(dates[i - 1], dates[i]);
        if (dl > policy.threshold_days) gap_mass += policy.exclusive ? dl - 1 : dl;
    }
    double ratio = lifespan_days > 0 ? static_cast<double>(gap_mass) / lifespan_days : 0.0;
    return {gap_mass, ratio};
}

LifespanRecord compute_lifespan(const ProjectRecord& project, const CommitTimeline& timeline,
                                const GapPolicy& policy) {
    LifespanRecord rec;
    rec.project_id = project.id;
    rec.born = to_date(project.created_at);
    rec.died = timeline.commit_dates.empty() ? rec.born
                                             : std::max(rec.born, timeline.commit_dates.back());
    rec.days = days_between(rec.born, rec.died);

    // Commits predating the creation timestamp are dataset noise; they fall
    // outside the life period and would otherwise push the ratio above 1.
    CommitTimeline lived;
    lived.project_id = timeline.project_id;
    auto first = std::lower_bound(timeline.commit_dates.begin(), timeline.commit_dates.end(),
                                  rec.born);
    lived.commit_dates.assign(first, timeline.commit_dates.end());

    GapStats gaps = non_working_ratio(lived, rec.days, policy);
    rec.non_working_days = gaps.non_working_days;
    rec.non_working_ratio = gaps.ratio;
    return rec;
}

std::string HistogramSpec::check() const {
    if (bin_edges.empty()) return "bin_edges must be non-empty";
    if (bin_edges.front() < 1) return "bin edges must be >= 1";
    for (std::size_t i = 1; i < bin_edges.size(); ++i) {
        if (bin_edges[i] <= bin_edges[i - 1]) return "bin edges must be strictly increasing";
    }
    return "";
}

std::size_t HistogramSpec::bin_index(std::int64_t days) const {
    auto it = std::lower_bound(bin_edges.begin(), bin_edges.end(), days);
    return static_cast<std::size_t>(it - bin_edges.begin());
}

std::string HistogramSpec::bin_label(std::size_t index) const {
    if (index == 0) return "<=" + std::to_string(bin_edges.front()) + "d";
    if (index >= bin_edges.size()) return ">" + std::to_string(bin_edges.back()) + "d";
    return "(" + std::to_string(bin_edges[index - 1]) + "," + std::to_string(bin_edges[index]) +
           "]d";
}

std::vector<std::pair<std::string, std::int64_t>> lifespan_histogram(
    const std::vector<LifespanRecord>& records, const HistogramSpec& spec) {
    std::string spec_error = spec.check();
    if (!spec_error.empty()) throw std::invalid_argument("bad histogram spec: " + spec_error);

    std::vector<std::int64_t> counts(spec.bin_count(), 0);
    for (const auto& rec : records) ++counts[spec.bin_index(rec.days)];

    std::vector<std::pair<std::string, std::int64_t>> out;
    out.reserve(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) out.emplace_back(spec.bin_label(i), counts[i]);
    return out;
}

}  // namespace lifespan
