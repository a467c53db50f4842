#pragma once

#include <map>
#include <string>
#include <vector>

#include "lifespan/types.hpp"

namespace lifespan {

// One invariant breach found in a dataset. Violations are data, not errors:
// validation never throws and never mutates its input.
struct Violation {
    std::string subject;  // offending project / developer / timeline id
    std::string message;

    bool operator==(const Violation&) const = default;
};

// Checks every domain invariant and cross-file reference of a loaded
// dataset. Empty result means the dataset is fully consistent.
std::vector<Violation> validate_dataset(
    const std::vector<ProjectRecord>& projects,
    const std::map<std::string, CommitTimeline>& timelines,
    const std::map<std::string, DeveloperProfile>& developers);

}  // namespace lifespan
