#include <doctest.h>

#include <random>
#include <sstream>

#include "lifespan/ingest.hpp"

#include "test_util.hpp"

using namespace lifespan;
using testutil::make_date;

namespace {

constexpr const char* kProjectLine =
    R"({"id":"p1","created_at":"2012-03-01T08:00:00Z","deleted":false,"forked_from":null,)"
    R"("language":"php","file_count":300,"labels":["web","Maps"],)"
    R"("core_developers":["d1","d2"],"description_word_count":42})";

std::vector<ProjectRecord> parse_projects_text(const std::string& text) {
    std::istringstream in(text);
    return parse_projects(in);
}

std::map<std::string, CommitTimeline> parse_commits_text(const std::string& text) {
    std::istringstream in(text);
    return parse_commits(in);
}

}  // namespace

TEST_CASE("parse_projects echoes a well-formed line") {
    auto projects = parse_projects_text(std::string(kProjectLine) + "\n");
    REQUIRE(projects.size() == 1);
    const ProjectRecord& p = projects[0];
    CHECK(p.id == "p1");
    CHECK(to_date(p.created_at) == make_date(2012, 3, 1));
    CHECK_FALSE(p.deleted);
    CHECK_FALSE(p.forked_from.has_value());
    CHECK(p.language == "PHP");  // normalized casing
    CHECK(p.file_count == 300);
    CHECK(p.labels == std::set<std::string>{"web", "Maps"});
    CHECK(p.core_developer_ids == std::set<std::string>{"d1", "d2"});
    CHECK(p.description_word_count == 42);
}

TEST_CASE("parse_projects details") {
    SUBCASE("unknown keys are ignored") {
        std::string line = kProjectLine;
        line.insert(line.size() - 1, R"(,"stars":999)");
        CHECK(parse_projects_text(line).size() == 1);
    }
    SUBCASE("forked_from string is kept") {
        std::string line = kProjectLine;
        line.replace(line.find("null"), 4, "\"p0\"");
        auto projects = parse_projects_text(line);
        REQUIRE(projects[0].forked_from.has_value());
        CHECK(*projects[0].forked_from == "p0");
    }
    SUBCASE("description text recount wins over the numeric field") {
        std::string line = kProjectLine;
        line.insert(line.size() - 1, R"(,"description":"three short words")");
        CHECK(parse_projects_text(line)[0].description_word_count == 3);
    }
    SUBCASE("missing created_at fails at the right line") {
        std::string bad = R"({"id":"p2","deleted":false,"language":"C","file_count":1,)"
                          R"("labels":[],"core_developers":["d"],"description_word_count":0})";
        try {
            parse_projects_text(std::string(kProjectLine) + "\n" + bad + "\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("created_at") != std::string::npos);
        }
    }
    SUBCASE("duplicate id names the id") {
        try {
            parse_projects_text(std::string(kProjectLine) + "\n" + kProjectLine + "\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("duplicate project id 'p1'") != std::string::npos);
        }
    }
    SUBCASE("negative file_count rejected") {
        std::string line = kProjectLine;
        line.replace(line.find("300"), 3, "-3");
        CHECK_THROWS_AS(parse_projects_text(line), ParseError);
    }
    SUBCASE("empty core_developers rejected") {
        std::string line = kProjectLine;
        line.replace(line.find(R"(["d1","d2"])"), 11, "[]");
        CHECK_THROWS_AS(parse_projects_text(line), ParseError);
    }
    SUBCASE("invalid JSON carries the line number") {
        try {
            parse_projects_text(std::string(kProjectLine) + "\n{oops\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
}

TEST_CASE("parse_commits dedupes same-day commits") {
    auto timelines = parse_commits_text(
        R"({"project_id":"p1","committed_at":"2012-01-03T10:00:00Z"})"
        "\n"
        R"({"project_id":"p1","committed_at":"2012-01-03T23:59:59Z"})"
        "\n");
    REQUIRE(timelines.count("p1") == 1);
    CHECK(timelines["p1"].commit_dates == std::vector<Date>{make_date(2012, 1, 3)});
}

TEST_CASE("parse_commits sorts out-of-order input") {
    auto timelines = parse_commits_text(
        R"({"project_id":"p1","committed_at":"2012-02-01T00:00:00Z"})"
        "\n"
        R"({"project_id":"p1","committed_at":"2012-01-05T00:00:00Z"})"
        "\n"
        R"({"project_id":"p1","committed_at":"2012-03-09T00:00:00Z"})"
        "\n");
    CHECK(timelines["p1"].commit_dates ==
          std::vector<Date>{make_date(2012, 1, 5), make_date(2012, 2, 1),
                            make_date(2012, 3, 9)});
}

TEST_CASE("parse_commits edge cases") {
    CHECK(parse_commits_text("").empty());
    CHECK(parse_commits_text("\n\n").empty());

    try {
        parse_commits_text(R"({"project_id":"p1","committed_at":"not a time"})" "\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("parse_developers") {
    std::istringstream in(R"({"id":"d1","followers":5})" "\n");
    auto developers = parse_developers(in);
    REQUIRE(developers.count("d1") == 1);
    CHECK(developers["d1"].follower_count == 5);

    std::istringstream negative(R"({"id":"d1","followers":-2})" "\n");
    CHECK_THROWS_AS(parse_developers(negative), ParseError);

    std::istringstream dup(R"({"id":"d1","followers":1})" "\n"
                           R"({"id":"d1","followers":2})" "\n");
    CHECK_THROWS_AS(parse_developers(dup), ParseError);
}

namespace {

struct FilterFixture {
    std::vector<ProjectRecord> projects;
    std::map<std::string, CommitTimeline> timelines;

    void add(const std::string& id, Date created, std::vector<Date> commits,
             bool deleted = false, std::optional<std::string> fork = std::nullopt) {
        ProjectRecord p = testutil::make_project(id, created);
        p.deleted = deleted;
        p.forked_from = std::move(fork);
        projects.push_back(p);
        timelines[id] = CommitTimeline{id, std::move(commits)};
    }

    std::vector<std::string> kept_ids(const StudyFilterConfig& cfg) const {
        std::vector<std::string> ids;
        for (const auto& p : apply_study_filter(projects, timelines, cfg)) ids.push_back(p.id);
        return ids;
    }
};

}  // namespace

TEST_CASE("study filter recency rule uses cutoff minus quiescence") {
    FilterFixture fx;
    // cutoff 2013-10-30 with 180 quiet days puts the boundary at 2013-05-03
    fx.add("included", make_date(2013, 1, 1), {make_date(2013, 5, 1)});
    fx.add("boundary", make_date(2013, 1, 1), {make_date(2013, 5, 3)});
    fx.add("excluded", make_date(2013, 1, 1), {make_date(2013, 6, 1)});

    StudyFilterConfig cfg;
    cfg.cutoff = make_date(2013, 10, 30);
    CHECK(fx.kept_ids(cfg) == std::vector<std::string>{"included", "boundary"});
}

TEST_CASE("study filter fork / deleted / lifespan rules") {
    FilterFixture fx;
    Date created = make_date(2013, 1, 1);
    std::vector<Date> commits{created, make_date(2013, 1, 31)};  // 30-day life
    fx.add("ok", created, commits);
    fx.add("fork", created, commits, false, "upstream");
    fx.add("gone", created, commits, true);
    fx.add("brief", created, {created, make_date(2013, 1, 5)});
    fx.add("silent", created, {});

    StudyFilterConfig cfg;
    cfg.cutoff = make_date(2013, 10, 30);
    cfg.min_lifespan_days = 10;
    CHECK(fx.kept_ids(cfg) == std::vector<std::string>{"ok"});

    SUBCASE("keep flags disable the rules") {
        cfg.exclude_forks = false;
        cfg.exclude_deleted = false;
        cfg.min_lifespan_days = 0;
        CHECK(fx.kept_ids(cfg) ==
              std::vector<std::string>{"ok", "fork", "gone", "brief", "silent"});
    }
    SUBCASE("commit-less projects survive rules (a)-(c) but not a minimum life-span") {
        cfg.exclude_forks = false;
        cfg.exclude_deleted = false;
        cfg.min_lifespan_days = 1;
        CHECK(fx.kept_ids(cfg) == std::vector<std::string>{"ok", "fork", "gone", "brief"});
    }
}

TEST_CASE("study filter summary counts every rule independently") {
    FilterFixture fx;
    Date created = make_date(2013, 1, 1);
    fx.add("both", created, {make_date(2013, 9, 1)}, true);  // recent AND deleted
    fx.add("ok", created, {make_date(2013, 2, 1)});

    StudyFilterConfig cfg;
    cfg.cutoff = make_date(2013, 10, 30);
    FilterSummary summary;
    auto kept = apply_study_filter(fx.projects, fx.timelines, cfg, &summary);
    CHECK(kept.size() == 1);
    CHECK(summary.total == 2);
    CHECK(summary.kept == 1);
    CHECK(summary.failed_recent_activity == 1);
    CHECK(summary.failed_deleted == 1);
    CHECK(summary.failed_fork == 0);
    CHECK(summary.failed_min_lifespan == 0);
}

TEST_CASE("study filter warns when the threshold predates every commit") {
    FilterFixture fx;
    fx.add("p", make_date(2013, 1, 1), {make_date(2013, 2, 1)});
    StudyFilterConfig cfg;
    cfg.cutoff = make_date(2013, 1, 10);  // boundary 2012-07-14, before all commits
    FilterSummary summary;
    auto kept = apply_study_filter(fx.projects, fx.timelines, cfg, &summary);
    CHECK(kept.empty());
    CHECK(summary.threshold_precedes_all_commits);
}

TEST_CASE("study filter properties: subset, idempotence, identity") {
    std::mt19937_64 rng(2024);
    FilterFixture fx;
    Date base = make_date(2012, 1, 1);
    for (int i = 0; i < 200; ++i) {
        Date created = base + std::chrono::days(static_cast<int>(rng() % 300));
        std::vector<Date> commits;
        Date day = created;
        int hops = static_cast<int>(rng() % 12);
        for (int h = 0; h < hops; ++h) {
            day += std::chrono::days(1 + static_cast<int>(rng() % 90));
            commits.push_back(day);
        }
        fx.add("p" + std::to_string(i), created, std::move(commits), rng() % 5 == 0,
               rng() % 4 == 0 ? std::optional<std::string>("up") : std::nullopt);
    }

    StudyFilterConfig cfg;
    cfg.cutoff = make_date(2013, 6, 1);
    cfg.min_lifespan_days = 10;

    auto once = fx.kept_ids(cfg);
    CHECK(once.size() <= fx.projects.size());

    // idempotence: filtering the filtered set changes nothing
    FilterFixture again;
    for (const auto& p : apply_study_filter(fx.projects, fx.timelines, cfg)) {
        again.projects.push_back(p);
        again.timelines[p.id] = fx.timelines[p.id];
    }
    CHECK(again.kept_ids(cfg) == once);

    // every retained project's last commit respects the boundary
    Date boundary = cfg.cutoff - std::chrono::days(cfg.quiescence_days);
    for (const auto& id : once) {
        const auto& dates = fx.timelines[id].commit_dates;
        if (!dates.empty()) CHECK(dates.back() <= boundary);
    }

    // identity configuration keeps everything
    StudyFilterConfig identity;
    identity.cutoff = make_date(2099, 1, 1);
    identity.quiescence_days = 0;
    identity.exclude_forks = false;
    identity.exclude_deleted = false;
    identity.min_lifespan_days = 0;
    CHECK(fx.kept_ids(identity).size() == fx.projects.size());
}
