#include <doctest.h>

#include <cmath>
#include <random>

#include "lifespan/reference.hpp"
#include "lifespan/stats.hpp"

using namespace lifespan;

namespace {

// Definitional oracle: n*Sxy - Sx*Sy over the product of the raw-moment
// standard deviations, written independently of the implementation.
double pearson_bruteforce(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
    }
    return (n * sxy - sx * sy) / (std::sqrt(n * sxx - sx * sx) * std::sqrt(n * syy - sy * sy));
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale) {
    std::vector<double> v(n);
    for (auto& value : v) value = scale * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    return v;
}

}  // namespace

TEST_CASE("pearson: exact correlations") {
    std::vector<double> up{1, 2, 3};
    std::vector<double> down{3, 2, 1};
    CHECK(pearson(up, up) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson(up, down) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pearson matches the definitional formula") {
    std::vector<double> x{1, 2, 4, 5};
    std::vector<double> y{2, 1, 5, 6};
    double expected = pearson_bruteforce(x, y);
    CHECK(pearson(x, y) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pearson(x, y) == doctest::Approx(12.0 / std::sqrt(170.0)).epsilon(1e-12));
}

TEST_CASE("pearson rejects undefined inputs") {
    std::vector<double> a{1, 2, 3};
    std::vector<double> b{1, 2};
    std::vector<double> flat{5, 5, 5};
    std::vector<double> nan{1, std::nan(""), 3};
    CHECK_THROWS_WITH_AS(pearson(a, b), doctest::Contains("undefined correlation"),
                         std::invalid_argument);
    CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(pearson(a, flat), doctest::Contains("zero variance"),
                         std::invalid_argument);
    CHECK_THROWS_AS(pearson(a, nan), std::invalid_argument);
}

TEST_CASE("pearson properties over random vectors") {
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t n = 2 + rng() % 99;
        auto x = random_vector(rng, n, 100.0);
        auto y = random_vector(rng, n, 40.0);
        x[0] += 1.0;  // ensure variance
        y[0] += 1.0;

        double r = pearson(x, y);
        CHECK(std::abs(r) <= 1.0 + 1e-12);
        CHECK(r == doctest::Approx(pearson_bruteforce(x, y)).epsilon(1e-9));
        CHECK(pearson(y, x) == r);  // symmetric by construction

        // positive affine maps preserve r; negative scale flips it
        std::vector<double> ax(x);
        for (auto& value : ax) value = 3.5 * value + 11.0;
        CHECK(pearson(ax, y) == doctest::Approx(r).epsilon(1e-9));
        for (auto& value : ax) value = -value;
        CHECK(pearson(ax, y) == doctest::Approx(-r).epsilon(1e-9));
    }
}

TEST_CASE("quartiles: interpolation rule") {
    CHECK(quartiles(std::vector<double>{5}).q1 == 5);
    CHECK(quartiles(std::vector<double>{5}).median == 5);
    CHECK(quartiles(std::vector<double>{5}).q3 == 5);

    Quartiles q = quartiles(std::vector<double>{1, 2, 3, 4});
    CHECK(q.q1 == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(q.median == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(q.q3 == doctest::Approx(3.25).epsilon(1e-12));

    Quartiles nr = quartiles(std::vector<double>{1, 2, 3, 4}, QuantileMethod::nearest_rank);
    CHECK(nr.q1 == 1);
    CHECK(nr.median == 2);
    CHECK(nr.q3 == 3);

    CHECK_THROWS_AS(quartiles(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(quartiles(std::vector<double>{1, std::nan("")}), std::invalid_argument);
}

TEST_CASE("quartile invariants over random lists") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t n = 1 + rng() % 60;
        auto values = random_vector(rng, n, 500.0);

        Quartiles q = quartiles(values);
        double lo = *std::min_element(values.begin(), values.end());
        double hi = *std::max_element(values.begin(), values.end());
        CHECK(lo <= q.q1);
        CHECK(q.q1 <= q.median);
        CHECK(q.median <= q.q3);
        CHECK(q.q3 <= hi);

        auto shuffled = values;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        Quartiles qs = quartiles(shuffled);
        CHECK(qs.q1 == q.q1);
        CHECK(qs.median == q.median);
        CHECK(qs.q3 == q.q3);

        auto extended = values;
        extended.push_back(hi + 1.0);
        CHECK(quartiles(extended).q3 >= q.q3);
    }
}

TEST_CASE("language_lifespan_table groups and sorts ascending by average") {
    std::vector<std::pair<std::string, double>> pairs{
        {"Java", 10}, {"Java", 20}, {"Perl", 100}};
    auto rows = language_lifespan_table(pairs);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].language == "Java");
    CHECK(rows[0].average == doctest::Approx(15.0));
    CHECK(rows[0].count == 2);
    CHECK(rows[1].language == "Perl");
    CHECK(rows[1].average == doctest::Approx(100.0));

    CHECK(language_lifespan_table({}).empty());

    SUBCASE("min_count drops sparse languages") {
        auto filtered = language_lifespan_table(pairs, 2);
        REQUIRE(filtered.size() == 1);
        CHECK(filtered[0].language == "Java");
    }
    SUBCASE("row averages stay inside the group range and counts add up") {
        std::mt19937_64 rng(3);
        std::vector<std::pair<std::string, double>> data;
        const char* names[] = {"A", "B", "C", "D"};
        for (int i = 0; i < 400; ++i)
            data.emplace_back(names[rng() % 4], static_cast<double>(rng() % 1000));
        std::int64_t total = 0;
        for (const auto& row : language_lifespan_table(data)) {
            total += row.count;
            double lo = 1e18, hi = -1e18;
            for (const auto& [language, days] : data) {
                if (language != row.language) continue;
                lo = std::min(lo, days);
                hi = std::max(hi, days);
            }
            CHECK(row.average >= lo);
            CHECK(row.average <= hi);
            CHECK(row.q1 <= row.median);
            CHECK(row.median <= row.q3);
        }
        CHECK(total == 400);
    }
}

TEST_CASE("reference language table rows satisfy the quartile ordering") {
    for (const auto& row : reference_language_table()) {
        CHECK(row.q1 <= row.median);
        CHECK(row.median <= row.q3);
        CHECK(row.count >= 1);
    }
}

TEST_CASE("label_lifespan_table contributes multi-label projects to every label") {
    std::vector<std::pair<std::set<std::string>, double>> pairs{
        {{"editor"}, 577}, {{"editor", "Linux"}, 551}};
    auto rows = label_lifespan_table(pairs);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].label == "editor");  // sorted by average descending
    CHECK(rows[0].average == doctest::Approx(564.0));
    CHECK(rows[0].count == 2);
    CHECK(rows[1].label == "Linux");
    CHECK(rows[1].average == doctest::Approx(551.0));

    CHECK(label_lifespan_table({}).empty());
    CHECK(label_lifespan_table({{{}, 100.0}}).empty());

    SUBCASE("counts sum to the number of (project, label) contributions") {
        std::mt19937_64 rng(41);
        std::vector<std::pair<std::set<std::string>, double>> data;
        std::int64_t contributions = 0;
        const char* names[] = {"x", "y", "z"};
        for (int i = 0; i < 200; ++i) {
            std::set<std::string> labels;
            for (int l = 0; l < 3; ++l)
                if (rng() % 2) labels.insert(names[l]);
            contributions += static_cast<std::int64_t>(labels.size());
            data.emplace_back(std::move(labels), static_cast<double>(rng() % 700));
        }
        std::int64_t total = 0;
        for (const auto& row : label_lifespan_table(data)) total += row.count;
        CHECK(total == contributions);
    }
}

TEST_CASE("binned_mean_series") {
    std::vector<double> x{1, 2, 11};
    std::vector<double> y{10, 20, 30};
    auto series = binned_mean_series(x, y, 10);
    REQUIRE(series.size() == 2);
    CHECK(series[0].center == doctest::Approx(5.0));
    CHECK(series[0].mean == doctest::Approx(15.0));
    CHECK(series[0].count == 2);
    CHECK(series[1].center == doctest::Approx(15.0));
    CHECK(series[1].mean == doctest::Approx(30.0));
    CHECK(series[1].count == 1);

    auto single = binned_mean_series(std::vector<double>{4}, std::vector<double>{9}, 10);
    REQUIRE(single.size() == 1);
    CHECK(single[0].mean == 9);

    CHECK_THROWS_AS(binned_mean_series(x, std::vector<double>{1}, 10), std::invalid_argument);
    CHECK_THROWS_AS(binned_mean_series(x, y, 0), std::invalid_argument);

    SUBCASE("count-weighted bin means reproduce the global mean") {
        std::mt19937_64 rng(13);
        for (int iter = 0; iter < 100; ++iter) {
            std::size_t n = 1 + rng() % 200;
            std::vector<double> bx(n), by(n);
            double total = 0;
            for (std::size_t i = 0; i < n; ++i) {
                bx[i] = static_cast<double>(rng() % 5000) / 7.0;
                by[i] = static_cast<double>(rng() % 900);
                total += by[i];
            }
            double weighted = 0;
            std::int64_t counted = 0;
            for (const auto& p : binned_mean_series(bx, by, 25.0)) {
                weighted += p.mean * static_cast<double>(p.count);
                counted += p.count;
            }
            CHECK(counted == static_cast<std::int64_t>(n));
            CHECK(weighted / static_cast<double>(n) ==
                  doctest::Approx(total / static_cast<double>(n)).epsilon(1e-9));
        }
    }
}
