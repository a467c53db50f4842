#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lifespan/types.hpp"

namespace lifespan {

struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

struct RealRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Everything the generator needs; identical configs yield byte-identical
// files. `params` is the planted ground truth the timelines realize.
struct GenConfig {
    std::uint64_t seed = 0;
    std::int64_t project_count = 1;
    std::vector<std::pair<std::string, double>> language_weights;
    IntRange file_count_range{32, 4096};
    IntRange follower_range{16, 1024};  // per core developer
    std::vector<std::pair<std::string, double>> label_pool;  // (label, attach probability)
    RealRange target_nonworking_ratio_range{0.0, 0.6};
    double noise_sd = 0.0;  // additive days on the planted life-span
    ModelParams params;

    // Empty when valid.
    std::string check() const;
};

// 1000 projects, seed 42, no noise, the shipped default parameters planted.
GenConfig default_gen_config();

// The four canonical files as JSON-lines payloads, assembled in project
// order. truth_jsonl rows: {"id","planted_lp","planted_ratio"}.
struct GeneratedDataset {
    std::string projects_jsonl;
    std::string commits_jsonl;
    std::string developers_jsonl;
    std::string truth_jsonl;
};

// Throws std::runtime_error naming the project index when a drawn
// non-working target cannot be realized inside the configured range.
GeneratedDataset generate(const GenConfig& cfg);

// Commit-day offsets realizing the requested non-working ratio: first day 0,
// last day lifespan_days, recomputed ratio within target_ratio +/-
// 2/lifespan_days. Gaps longer than gap_threshold days carry the
// non-working mass. Throws std::invalid_argument on an infeasible target.
std::vector<std::int64_t> realize_timeline(std::int64_t lifespan_days, double target_ratio,
                                           int gap_threshold, std::uint64_t seed);

}  // namespace lifespan
