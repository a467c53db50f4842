#include "lifespan/syngen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "lifespan/lifespan.hpp"
#include "lifespan/model.hpp"
#include "lifespan/parallel.hpp"
#include "lifespan/reference.hpp"

namespace lifespan {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled draws so the byte stream does not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t state = seed ^ (0xA0761D6478BD642Full * (stream + 1));
        return Rng(splitmix64(state));
    }

    std::uint64_t next() { return engine_(); }

    std::uint64_t below(std::uint64_t n) {  // [0, n)
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // [lo, hi]
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double gauss() {  // Box-Muller
        double u1 = std::max(unit(), 1e-300);
        double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
    }

private:
    std::mt19937_64 engine_;
};

// Achievable non-working masses for life-span L and minimum countable gap G
// are {0} plus [G, L]; a target is realizable when some achievable mass lies
// within the +/- 2-day tolerance.
bool target_achievable(double target, std::int64_t lifespan, std::int64_t min_gap) {
    double mass = target * static_cast<double>(lifespan);
    if (mass <= 2.0 + 1e-9) return true;
    return lifespan >= min_gap && mass >= static_cast<double>(min_gap) - 2.0 - 1e-9 &&
           mass <= static_cast<double>(lifespan) + 2.0;
}

// Nearest realizable target to `t` inside [range.lo, range.hi], if any.
std::optional<double> nearest_feasible_target(double t, std::int64_t lifespan,
                                              const RealRange& range, std::int64_t min_gap) {
    if (target_achievable(t, lifespan, min_gap)) return t;
    double l = static_cast<double>(lifespan);
    std::optional<double> best;
    auto consider = [&](double lo, double hi) {
        lo = std::max(lo, range.lo);
        hi = std::min(hi, range.hi);
        if (lo > hi) return;
        double candidate = std::clamp(t, lo, hi);
        if (!target_achievable(candidate, lifespan, min_gap)) return;
        if (!best || std::abs(candidate - t) < std::abs(*best - t)) best = candidate;
    };
    consider(0.0, 2.0 / l);
    if (lifespan >= min_gap) consider((static_cast<double>(min_gap) - 2.0) / l, 1.0);
    return best;
}

std::string json_line(const nlohmann::json& value) { return value.dump() + "\n"; }

}  // namespace

std::vector<std::int64_t> realize_timeline(std::int64_t lifespan_days, double target_ratio,
                                           int gap_threshold, std::uint64_t seed) {
    if (lifespan_days < 1) throw std::invalid_argument("lifespan_days must be >= 1");
    if (gap_threshold < 0) throw std::invalid_argument("gap_threshold must be >= 0");
    const std::int64_t min_gap = gap_threshold + 1;
    const double mass_target = target_ratio * static_cast<double>(lifespan_days);

    std::int64_t mass = 0;  // nearest achievable non-working mass
    if (lifespan_days >= min_gap) {
        std::int64_t big = std::clamp<std::int64_t>(std::llround(mass_target), min_gap,
                                                    lifespan_days);
        if (std::abs(static_cast<double>(big) - mass_target) < std::abs(mass_target)) mass = big;
    }
    if (std::abs(static_cast<double>(mass) - mass_target) > 2.0 + 1e-9)
        throw std::invalid_argument("infeasible non-working target " +
                                    std::to_string(target_ratio) + " for life-span " +
                                    std::to_string(lifespan_days) + " days");

    std::vector<std::int64_t> days;
    if (mass == 0) {  // daily commits, no countable gap
        days.resize(static_cast<std::size_t>(lifespan_days) + 1);
        for (std::int64_t d = 0; d <= lifespan_days; ++d)
            days[static_cast<std::size_t>(d)] = d;
        return days;
    }
    if (mass == lifespan_days) return {0, lifespan_days};

    Rng rng(seed);

    // Cut the mass into gaps of at least min_gap days each.
    std::vector<std::int64_t> gaps;
    std::int64_t remaining = mass;
    while (remaining > 0) {
        if (remaining < 2 * min_gap) {
            gaps.push_back(remaining);
            remaining = 0;
        } else {
            std::int64_t gap =
                min_gap + static_cast<std::int64_t>(
                              rng.below(static_cast<std::uint64_t>(remaining - 2 * min_gap) + 1));
            gaps.push_back(gap);
            remaining -= gap;
        }
    }

    // Spread the working days over the stretches around the gaps.
    const std::int64_t working = lifespan_days - mass;
    const std::size_t slots = gaps.size() + 1;
    std::vector<double> weights(slots);
    double weight_sum = 0.0;
    for (auto& w : weights) {
        w = rng.unit() + 0.01;
        weight_sum += w;
    }
    std::vector<std::int64_t> stretch(slots);
    std::int64_t assigned = 0;
    for (std::size_t j = 0; j < slots; ++j) {
        stretch[j] = static_cast<std::int64_t>(
            std::floor(static_cast<double>(working) * weights[j] / weight_sum));
        assigned += stretch[j];
    }
    for (std::size_t j = 0; assigned < working; j = (j + 1) % slots) {
        ++stretch[j];
        ++assigned;
    }

    days.push_back(0);
    std::int64_t pos = 0;
    for (std::size_t j = 0; j < slots; ++j) {
        for (std::int64_t s = 0; s < stretch[j]; ++s) days.push_back(++pos);
        if (j < gaps.size()) {
            pos += gaps[j];
            days.push_back(pos);
        }
    }
    if (pos != lifespan_days)
        throw std::logic_error("timeline construction did not land on the last day");
    return days;
}

std::string GenConfig::check() const {
    if (project_count < 1) return "project_count must be >= 1";
    if (language_weights.empty()) return "language_weights must be non-empty";
    double weight_sum = 0.0;
    for (const auto& [language, weight] : language_weights) {
        if (language.empty()) return "language weight with empty name";
        if (weight < 0) return "negative weight for language '" + language + "'";
        weight_sum += weight;
    }
    if (!(weight_sum > 0)) return "language weights sum to zero";
    if (file_count_range.lo < 0 || file_count_range.lo > file_count_range.hi)
        return "file_count_range is empty or negative";
    if (follower_range.lo < 0 || follower_range.lo > follower_range.hi)
        return "follower_range is empty or negative";
    for (const auto& [label, probability] : label_pool) {
        if (label.empty()) return "label pool entry with empty name";
        if (probability < 0 || probability > 1)
            return "attach probability for label '" + label + "' outside [0,1]";
    }
    const auto& r = target_nonworking_ratio_range;
    if (r.lo < 0 || r.hi > 0.95 || r.lo > r.hi)
        return "target_nonworking_ratio_range must lie inside [0, 0.95]";
    if (noise_sd < 0) return "noise_sd must be >= 0";
    std::string params_problem = params.check();
    if (!params_problem.empty()) return "params: " + params_problem;
    return "";
}

GenConfig default_gen_config() {
    GenConfig cfg;
    cfg.seed = 42;
    cfg.project_count = 1000;
    cfg.language_weights = {
        {"JavaScript", 0.25}, {"Ruby", 0.15}, {"Java", 0.14},  {"Python", 0.10},
        {"PHP", 0.10},        {"C++", 0.08},  {"C", 0.06},     {"C#", 0.05},
        {"Objective-C", 0.04}, {"Shell", 0.02}, {"Perl", 0.01},
    };
    cfg.label_pool = {
        {"web", 0.15}, {"server", 0.10}, {"Maps", 0.10}, {"build", 0.05}, {"data IO", 0.05},
    };
    cfg.params = default_model_params();
    return cfg;
}

GeneratedDataset generate(const GenConfig& cfg) {
    std::string cfg_problem = cfg.check();
    if (!cfg_problem.empty()) throw std::invalid_argument("bad generator config: " + cfg_problem);

    double weight_sum = 0.0;
    for (const auto& [language, weight] : cfg.language_weights) weight_sum += weight;

    const Date epoch = Date{std::chrono::year{2012} / 1 / 1};
    const GapPolicy gap_policy{};  // threshold 6, inclusive mass
    const std::size_t count = static_cast<std::size_t>(cfg.project_count);

    struct Fragment {
        std::string project, commits, developers, truth;
    };
    std::vector<Fragment> fragments(count);

    parallel_for(count, [&](std::size_t index) {
        Rng rng = Rng::for_stream(cfg.seed, index);
        Fragment& frag = fragments[index];

        char id_buf[32];
        std::snprintf(id_buf, sizeof id_buf, "p%06zu", index);
        std::string project_id = id_buf;

        // language
        double pick = rng.unit() * weight_sum;
        std::string language = cfg.language_weights.back().first;
        for (const auto& [name, weight] : cfg.language_weights) {
            if (pick < weight) {
                language = name;
                break;
            }
            pick -= weight;
        }

        std::int64_t file_count =
            rng.uniform_int(cfg.file_count_range.lo, cfg.file_count_range.hi);

        // core developer count, heavily skewed toward single-owner projects
        double u = rng.unit();
        std::int64_t dev_count = u < 0.70 ? 1 : u < 0.85 ? 2 : u < 0.93 ? 3 : u < 0.97 ? 4 : 5;

        std::vector<std::pair<std::string, std::int64_t>> devs;
        std::int64_t follower_sum = 0;
        for (std::int64_t d = 0; d < dev_count; ++d) {
            char dev_buf[40];
            std::snprintf(dev_buf, sizeof dev_buf, "d%06zu_%lld", index,
                          static_cast<long long>(d));
            std::int64_t followers =
                rng.uniform_int(cfg.follower_range.lo, cfg.follower_range.hi);
            devs.emplace_back(dev_buf, followers);
            follower_sum += followers;
        }

        std::set<std::string> labels;
        for (const auto& [label, probability] : cfg.label_pool) {
            if (rng.unit() < probability) labels.insert(label);
        }

        std::int64_t description_words = rng.uniform_int(0, 800);

        Timestamp created{epoch + std::chrono::days(rng.uniform_int(0, 364))};
        created += std::chrono::seconds{rng.uniform_int(0, 86399)};

        FeatureVector features{file_count, language, follower_sum, labels, dev_count,
                               description_words};
        double planted_lp = predict_lifespan(features, cfg.params);
        double noise = cfg.noise_sd > 0 ? rng.gauss() * cfg.noise_sd : 0.0;
        std::int64_t lifespan_days = std::max<std::int64_t>(1, std::llround(planted_lp + noise));

        double target = rng.uniform_real(cfg.target_nonworking_ratio_range.lo,
                                         cfg.target_nonworking_ratio_range.hi);
        auto feasible = nearest_feasible_target(target, lifespan_days,
                                                cfg.target_nonworking_ratio_range,
                                                gap_policy.threshold_days + 1);
        if (!feasible)
            throw std::runtime_error("project " + std::to_string(index) +
                                     ": infeasible non-working-ratio target " +
                                     std::to_string(target) + " for life-span " +
                                     std::to_string(lifespan_days) + " days");
        std::vector<std::int64_t> offsets =
            realize_timeline(lifespan_days, *feasible, gap_policy.threshold_days, rng.next());

        Date born = to_date(created);
        CommitTimeline timeline{project_id, {}};
        timeline.commit_dates.reserve(offsets.size());
        for (std::int64_t offset : offsets)
            timeline.commit_dates.push_back(born + std::chrono::days(offset));
        double realized_ratio = non_working_ratio(timeline, lifespan_days, gap_policy).ratio;

        nlohmann::json project{{"id", project_id},
                               {"created_at", format_timestamp(created)},
                               {"deleted", false},
                               {"forked_from", nullptr},
                               {"language", language},
                               {"file_count", file_count},
                               {"labels", labels},
                               {"core_developers", nlohmann::json::array()},
                               {"description_word_count", description_words}};
        for (const auto& [dev_id, followers] : devs) project["core_developers"].push_back(dev_id);
        frag.project = json_line(project);

        frag.commits.reserve(timeline.commit_dates.size() * 64);
        for (Date day : timeline.commit_dates) {
            frag.commits += "{\"committed_at\":\"";
            frag.commits += format_date(day);
            frag.commits += "T12:00:00Z\",\"project_id\":\"";
            frag.commits += project_id;
            frag.commits += "\"}\n";
        }

        for (const auto& [dev_id, followers] : devs)
            frag.developers += json_line({{"followers", followers}, {"id", dev_id}});

        frag.truth = json_line(
            {{"id", project_id}, {"planted_lp", planted_lp}, {"planted_ratio", realized_ratio}});
    });

    GeneratedDataset out;
    for (const auto& frag : fragments) {
        out.projects_jsonl += frag.project;
        out.commits_jsonl += frag.commits;
        out.developers_jsonl += frag.developers;
        out.truth_jsonl += frag.truth;
    }
    return out;
}

}  // namespace lifespan
