#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "lifespan/types.hpp"

namespace lifespan {

// How follower counts of the core developers aggregate into m. Sum is the
// default; mean rounds to the nearest whole follower.
enum class FollowerAggregation { sum, mean, max };

// Builds the model inputs for one project. Throws std::invalid_argument
// naming the first core developer id missing from the map.
FeatureVector extract_features(const ProjectRecord& project,
                               const std::map<std::string, DeveloperProfile>& developers,
                               FollowerAggregation aggregation = FollowerAggregation::sum);

// Number of maximal non-whitespace runs. No markup stripping.
std::int64_t description_word_count(std::string_view text);

// Share of each non-empty language over the projects carrying one, sorted
// by share descending (ties by name). Shares sum to 1 when non-empty.
std::vector<std::pair<std::string, double>> language_usage(
    const std::vector<ProjectRecord>& projects);

// Tally of projects per core-developer count, ascending by count.
std::vector<std::pair<std::int64_t, std::int64_t>> core_dev_count_distribution(
    const std::vector<ProjectRecord>& projects);

}  // namespace lifespan
