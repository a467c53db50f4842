#include "lifespan/validate.hpp"

#include <algorithm>
#include <unordered_set>

namespace lifespan {

namespace {

const std::string kCanonicalNames[] = {
    "Java", "C#", "JavaScript", "Objective-C", "C++", "PHP",
    "C",    "Python", "Ruby",   "Shell",       "Perl",
};

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

}  // namespace

std::string normalize_language(std::string_view raw) {
    std::size_t b = raw.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    std::size_t e = raw.find_last_not_of(" \t\r\n");
    std::string trimmed(raw.substr(b, e - b + 1));
    std::string lowered = ascii_lower(trimmed);
    for (const auto& name : kCanonicalNames) {
        if (lowered == ascii_lower(name)) return name;
    }
    return trimmed;
}

std::string ModelParams::check() const {
    if (!(alpha > 0)) return "alpha must be > 0";
    if (baseline.empty()) return "baseline language must be set";
    auto it = language_factors.find(baseline);
    if (it == language_factors.end()) return "language_factors missing baseline '" + baseline + "'";
    if (it->second != 1.0) return "baseline language factor must be exactly 1.0";
    for (const auto& [lang, factor] : language_factors) {
        if (!(factor > 0)) return "language factor for '" + lang + "' must be > 0";
    }
    if (!(global_mean_lifespan > 0)) return "global_mean_lifespan must be > 0";
    return "";
}

std::vector<Violation> validate_dataset(
    const std::vector<ProjectRecord>& projects,
    const std::map<std::string, CommitTimeline>& timelines,
    const std::map<std::string, DeveloperProfile>& developers) {
    std::vector<Violation> report;
    auto add = [&report](const std::string& subject, std::string message) {
        report.push_back({subject, std::move(message)});
    };

    std::unordered_set<std::string> project_ids;
    project_ids.reserve(projects.size());
    for (const auto& p : projects) {
        if (p.id.empty()) {
            add(p.id, "empty project id");
            continue;
        }
        if (!project_ids.insert(p.id).second) add(p.id, "duplicate project id");
        if (p.forked_from && *p.forked_from == p.id) add(p.id, "project forked from itself");
        if (p.core_developer_ids.empty()) add(p.id, "empty core developer set");
        if (p.file_count < 0) add(p.id, "negative file count");
        if (p.description_word_count < 0) add(p.id, "negative description word count");
        for (const auto& dev : p.core_developer_ids) {
            if (!developers.count(dev)) add(p.id, "unresolved core developer '" + dev + "'");
        }
    }

    for (const auto& [id, timeline] : timelines) {
        if (timeline.project_id != id)
            add(id, "timeline keyed under '" + id + "' names project '" + timeline.project_id + "'");
        if (!project_ids.count(timeline.project_id)) add(id, "dangling project reference");
        const auto& dates = timeline.commit_dates;
        for (std::size_t i = 1; i < dates.size(); ++i) {
            if (dates[i] <= dates[i - 1]) {
                add(id, "commit dates not strictly increasing");
                break;
            }
        }
    }

    for (const auto& [id, dev] : developers) {
        if (id.empty()) add(id, "empty developer id");
        if (dev.id != id) add(id, "developer keyed under '" + id + "' names '" + dev.id + "'");
        if (dev.follower_count < 0) add(id, "negative follower count");
    }

    return report;
}

}  // namespace lifespan
