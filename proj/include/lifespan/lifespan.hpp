#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lifespan/types.hpp"

namespace lifespan {

// How commit gaps turn into non-working days. A gap of dl calendar days
// between consecutive commit dates counts only when dl > threshold_days.
// The counted mass is dl itself; with `exclusive` set it is dl - 1 (the two
// endpoint days are commit days).
struct GapPolicy {
    int threshold_days = 6;
    bool exclusive = false;
};

struct GapStats {
    std::int64_t non_working_days = 0;
    double ratio = 0.0;
};

// Sum of counted gaps over the timeline, divided by the life-span length.
// Fewer than two commit dates means no observable gaps: (0, 0).
// Throws std::invalid_argument when lifespan_days is negative or shorter
// than the commit span (that would allow a ratio above 1).
GapStats non_working_ratio(const CommitTimeline& timeline, std::int64_t lifespan_days,
                           const GapPolicy& policy = {});

// born = creation date, died = max(born, last commit date), days = whole-day
// difference. Commit dates before creation are ignored for gap accounting.
LifespanRecord compute_lifespan(const ProjectRecord& project, const CommitTimeline& timeline,
                                const GapPolicy& policy = {});

// Day-boundary edges for the life-span histogram. With edges e1 < ... < ek
// the bins are <=e1, (e1,e2], ..., (e[k-1],ek], >ek.
struct HistogramSpec {
    std::vector<std::int64_t> bin_edges{1, 10, 30, 90, 180, 365, 1095};

    std::size_t bin_count() const { return bin_edges.size() + 1; }
    std::size_t bin_index(std::int64_t days) const;
    std::string bin_label(std::size_t index) const;
    // Empty string when the spec is well formed (edges strictly increasing, all >= 1).
    std::string check() const;
};

// Counts records per bin; every record lands in exactly one bin.
std::vector<std::pair<std::string, std::int64_t>> lifespan_histogram(
    const std::vector<LifespanRecord>& records, const HistogramSpec& spec = {});

}  // namespace lifespan
