#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lifespan/time.hpp"

namespace lifespan {

// Static metadata of one repository, one line of the projects file.
struct ProjectRecord {
    std::string id;
    Timestamp created_at{};
    bool deleted = false;
    std::optional<std::string> forked_from;
    std::string language;  // normalized; may be empty
    std::int64_t file_count = 0;
    std::set<std::string> labels;
    std::set<std::string> core_developer_ids;  // owner included, never empty
    std::int64_t description_word_count = 0;
};

// Sorted distinct commit dates of one project; may be empty.
struct CommitTimeline {
    std::string project_id;
    std::vector<Date> commit_dates;  // strictly increasing
};

struct DeveloperProfile {
    std::string id;
    std::int64_t follower_count = 0;
};

// Life-span of one project: whole days from creation to last commit, plus
// the non-working gap mass.
struct LifespanRecord {
    std::string project_id;
    Date born{};
    Date died{};
    std::int64_t days = 0;
    std::int64_t non_working_days = 0;
    double non_working_ratio = 0.0;
};

// Inputs of the prediction formula plus the descriptive-analysis columns.
struct FeatureVector {
    std::int64_t n = 0;  // file count
    std::string language;
    std::int64_t m = 0;  // aggregated follower count over core developers
    std::set<std::string> labels;
    std::int64_t core_dev_count = 1;
    std::int64_t description_word_count = 0;
};

// Calibrated prediction parameters. language_factors always maps the
// baseline language to exactly 1.0.
struct ModelParams {
    double alpha = 0.0;  // days per (log2-file x log2-follower) unit
    double beta = 0.0;   // label weight
    std::string baseline = "Java";
    std::map<std::string, double> language_factors;
    std::map<std::string, double> label_offsets;  // days, may be negative
    double global_mean_lifespan = 0.0;

    // Empty string when valid, otherwise the first violated constraint.
    std::string check() const;
};

// Trims surrounding whitespace and maps case-insensitive matches of the
// well-known language names onto their canonical spelling. Anything else
// passes through verbatim (languages are free strings).
std::string normalize_language(std::string_view raw);

}  // namespace lifespan
