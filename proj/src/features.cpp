#include "lifespan/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lifespan {

FeatureVector extract_features(const ProjectRecord& project,
                               const std::map<std::string, DeveloperProfile>& developers,
                               FollowerAggregation aggregation) {
    FeatureVector fv;
    fv.n = project.file_count;
    fv.language = project.language;
    fv.labels = project.labels;
    fv.core_dev_count = static_cast<std::int64_t>(project.core_developer_ids.size());
    fv.description_word_count = project.description_word_count;

    std::int64_t sum = 0;
    std::int64_t max = 0;
    for (const auto& dev_id : project.core_developer_ids) {
        auto it = developers.find(dev_id);
        if (it == developers.end())
            throw std::invalid_argument("unresolved developer '" + dev_id + "' in project '" +
                                        project.id + "'");
        sum += it->second.follower_count;
        max = std::max(max, it->second.follower_count);
    }
    switch (aggregation) {
        case FollowerAggregation::sum:
            fv.m = sum;
            break;
        case FollowerAggregation::mean:
            fv.m = fv.core_dev_count > 0
                       ? std::llround(static_cast<double>(sum) / fv.core_dev_count)
                       : 0;
            break;
        case FollowerAggregation::max:
            fv.m = max;
            break;
    }
    return fv;
}

std::int64_t description_word_count(std::string_view text) {
    std::int64_t words = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
        if (!ws && !in_word) ++words;
        in_word = !ws;
    }
    return words;
}

std::vector<std::pair<std::string, double>> language_usage(
    const std::vector<ProjectRecord>& projects) {
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;
    for (const auto& p : projects) {
        if (p.language.empty()) continue;
        ++counts[p.language];
        ++total;
    }
    std::vector<std::pair<std::string, double>> shares;
    shares.reserve(counts.size());
    for (const auto& [language, count] : counts)
        shares.emplace_back(language, static_cast<double>(count) / total);
    std::sort(shares.begin(), shares.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return shares;
}

std::vector<std::pair<std::int64_t, std::int64_t>> core_dev_count_distribution(
    const std::vector<ProjectRecord>& projects) {
    std::map<std::int64_t, std::int64_t> tally;
    for (const auto& p : projects) ++tally[static_cast<std::int64_t>(p.core_developer_ids.size())];
    return {tally.begin(), tally.end()};
}

}  // namespace lifespan
