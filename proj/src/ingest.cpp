#include "lifespan/ingest.hpp"

#include <algorithm>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "lifespan/features.hpp"

namespace lifespan {

namespace {

using nlohmann::json;

// Applies fn to every non-blank line with its 1-based line number.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object()) throw ParseError(line_no, "record is not a JSON object");
        fn(line_no, record);
    }
}

const json& require_key(const json& record, const char* key, std::size_t line_no) {
    auto it = record.find(key);
    if (it == record.end())
        throw ParseError(line_no, std::string("missing required field '") + key + "'");
    return *it;
}

std::string require_string(const json& record, const char* key, std::size_t line_no) {
    const json& v = require_key(record, key, line_no);
    if (!v.is_string())
        throw ParseError(line_no, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::int64_t require_nonneg_int(const json& record, const char* key, std::size_t line_no) {
    const json& v = require_key(record, key, line_no);
    if (!v.is_number_integer())
        throw ParseError(line_no, std::string("field '") + key + "' must be an integer");
    auto value = v.get<std::int64_t>();
    if (value < 0)
        throw ParseError(line_no, std::string("field '") + key + "' must be non-negative");
    return value;
}

Timestamp require_timestamp(const json& record, const char* key, std::size_t line_no) {
    std::string text = require_string(record, key, line_no);
    auto ts = parse_rfc3339_utc(text);
    if (!ts)
        throw ParseError(line_no, std::string("field '") + key + "' is not an RFC 3339 UTC " +
                                      "timestamp: '" + text + "'");
    return *ts;
}

}  // namespace

std::vector<ProjectRecord> parse_projects(std::istream& in) {
    std::vector<ProjectRecord> projects;
    std::unordered_set<std::string> seen;
    for_each_record(in, [&](std::size_t line_no, const json& record) {
        ProjectRecord p;
        p.id = require_string(record, "id", line_no);
        if (p.id.empty()) throw ParseError(line_no, "field 'id' must be non-empty");
        if (!seen.insert(p.id).second)
            throw ParseError(line_no, "duplicate project id '" + p.id + "'");
        p.created_at = require_timestamp(record, "created_at", line_no);

        const json& deleted = require_key(record, "deleted", line_no);
        if (!deleted.is_boolean()) throw ParseError(line_no, "field 'deleted' must be a boolean");
        p.deleted = deleted.get<bool>();

        if (auto it = record.find("forked_from"); it != record.end() && !it->is_null()) {
            if (!it->is_string())
                throw ParseError(line_no, "field 'forked_from' must be a string or null");
            p.forked_from = it->get<std::string>();
        }

        p.language = normalize_language(require_string(record, "language", line_no));
        p.file_count = require_nonneg_int(record, "file_count", line_no);

        const json& labels = require_key(record, "labels", line_no);
        if (!labels.is_array()) throw ParseError(line_no, "field 'labels' must be an array");
        for (const auto& label : labels) {
            if (!label.is_string())
                throw ParseError(line_no, "field 'labels' must contain strings");
            p.labels.insert(label.get<std::string>());
        }

        const json& devs = require_key(record, "core_developers", line_no);
        if (!devs.is_array() || devs.empty())
            throw ParseError(line_no, "field 'core_developers' must be a non-empty array");
        for (const auto& dev : devs) {
            if (!dev.is_string())
                throw ParseError(line_no, "field 'core_developers' must contain strings");
            p.core_developer_ids.insert(dev.get<std::string>());
        }

        p.description_word_count = require_nonneg_int(record, "description_word_count", line_no);
        // Optional raw description text; its recount wins over the number.
        if (auto it = record.find("description"); it != record.end() && it->is_string())
            p.description_word_count = description_word_count(it->get<std::string>());

        projects.push_back(std::move(p));
    });
    return projects;
}

std::map<std::string, CommitTimeline> parse_commits(std::istream& in) {
    std::map<std::string, std::vector<Date>> dates;
    for_each_record(in, [&](std::size_t line_no, const json& record) {
        std::string project_id = require_string(record, "project_id", line_no);
        if (project_id.empty()) throw ParseError(line_no, "field 'project_id' must be non-empty");
        Timestamp at = require_timestamp(record, "committed_at", line_no);
        dates[project_id].push_back(to_date(at));
    });

    std::map<std::string, CommitTimeline> timelines;
    for (auto& [project_id, days] : dates) {
        std::sort(days.begin(), days.end());
        days.erase(std::unique(days.begin(), days.end()), days.end());
        timelines.emplace(project_id, CommitTimeline{project_id, std::move(days)});
    }
    return timelines;
}

std::map<std::string, DeveloperProfile> parse_developers(std::istream& in) {
    std::map<std::string, DeveloperProfile> developers;
    for_each_record(in, [&](std::size_t line_no, const json& record) {
        DeveloperProfile dev;
        dev.id = require_string(record, "id", line_no);
        if (dev.id.empty()) throw ParseError(line_no, "field 'id' must be non-empty");
        dev.follower_count = require_nonneg_int(record, "followers", line_no);
        if (!developers.emplace(dev.id, dev).second)
            throw ParseError(line_no, "duplicate developer id '" + dev.id + "'");
    });
    return developers;
}

std::vector<ProjectRecord> apply_study_filter(
    const std::vector<ProjectRecord>& projects,
    const std::map<std::string, CommitTimeline>& timelines, const StudyFilterConfig& cfg,
    FilterSummary* summary) {
    std::string cfg_error = cfg.check();
    if (!cfg_error.empty()) throw std::invalid_argument("bad filter config: " + cfg_error);

    const Date activity_threshold = cfg.cutoff - std::chrono::days{cfg.quiescence_days};
    static const CommitTimeline kEmptyTimeline{};

    FilterSummary local;
    local.total = static_cast<std::int64_t>(projects.size());

    bool any_commits = false;
    Date earliest_commit = Date::max();
    for (const auto& [id, timeline] : timelines) {
        if (timeline.commit_dates.empty()) continue;
        any_commits = true;
        earliest_commit = std::min(earliest_commit, timeline.commit_dates.front());
    }
    local.threshold_precedes_all_commits = any_commits && activity_threshold < earliest_commit;

    std::vector<ProjectRecord> kept;
    for (const auto& p : projects) {
        auto it = timelines.find(p.id);
        const CommitTimeline& timeline = it != timelines.end() ? it->second : kEmptyTimeline;

        bool recent = !timeline.commit_dates.empty() &&
                      timeline.commit_dates.back() > activity_threshold;
        bool fork = cfg.exclude_forks && p.forked_from.has_value();
        bool deleted = cfg.exclude_deleted && p.deleted;
        bool short_lived =
            compute_lifespan(p, timeline, cfg.gaps).days < cfg.min_lifespan_days;

        local.failed_recent_activity += recent;
        local.failed_fork += fork;
        local.failed_deleted += deleted;
        local.failed_min_lifespan += short_lived;
        if (!recent && !fork && !deleted && !short_lived) {
            kept.push_back(p);
            ++local.kept;
        }
    }

    if (summary) *summary = local;
    return kept;
}

}  // namespace lifespan
