#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifespan/lifespan.hpp"
#include "lifespan/types.hpp"

namespace lifespan {

// Malformed canonical input. Carries the 1-based line number of the
// offending record (0 for stream-level problems).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + reason : reason),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Line-delimited JSON parsers for the canonical dataset files. Blank lines
// are skipped; unknown keys are ignored. Line numbers count physical lines.
std::vector<ProjectRecord> parse_projects(std::istream& in);
std::map<std::string, CommitTimeline> parse_commits(std::istream& in);
std::map<std::string, DeveloperProfile> parse_developers(std::istream& in);

// Study selection rules: (a) no commit date strictly after
// cutoff - quiescence_days, (b) not a fork, (c) not deleted, (d) life-span
// of at least min_lifespan_days. min_lifespan_days = 10 selects the
// naturally-dead subset used by the characteristic analyses.
struct StudyFilterConfig {
    Date cutoff{};
    int quiescence_days = 180;
    bool exclude_forks = true;
    bool exclude_deleted = true;
    std::int64_t min_lifespan_days = 0;
    GapPolicy gaps{};

    // Empty when valid. A zero window is accepted for the identity
    // configuration (cutoff at the dataset snapshot keeps everything).
    std::string check() const {
        return quiescence_days >= 0 ? "" : "quiescence_days must be >= 0";
    }
};

// Per-rule outcome tally. A project may fail several rules; each failed_*
// counter counts every project violating that rule, so for each rule
// (total - failed_rule) + failed_rule == total.
struct FilterSummary {
    std::int64_t total = 0;
    std::int64_t kept = 0;
    std::int64_t failed_recent_activity = 0;
    std::int64_t failed_fork = 0;
    std::int64_t failed_deleted = 0;
    std::int64_t failed_min_lifespan = 0;
    // Set when the activity threshold predates every commit in the dataset
    // (rule (a) then drops every project with commits); worth a warning.
    bool threshold_precedes_all_commits = false;
};

// Returns the retained projects in input order. Projects without a timeline
// entry are treated as having no commits.
std::vector<ProjectRecord> apply_study_filter(
    const std::vector<ProjectRecord>& projects,
    const std::map<std::string, CommitTimeline>& timelines, const StudyFilterConfig& cfg,
    FilterSummary* summary = nullptr);

}  // namespace lifespan
