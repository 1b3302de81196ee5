#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "blindeval/correlation.hpp"
#include "blindeval/errors.hpp"
#include "oracles.hpp"

using namespace blindeval;

TEST_CASE("pearson frozen value and edge cases") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{1, 3, 2, 5};
    CHECK(*pearson(x, y) == doctest::Approx(0.8315218406202999).epsilon(1e-12));

    const std::vector<double> line{2, 4, 6, 8};
    CHECK(*pearson(x, line) == 1.0);
    const std::vector<double> anti{8, 6, 4, 2};
    CHECK(*pearson(x, anti) == -1.0);

    const std::vector<double> flat{3, 3, 3, 3};
    CHECK_FALSE(pearson(x, flat).has_value());
    CHECK_FALSE(pearson(flat, x).has_value());

    const std::vector<double> one{1};
    CHECK_THROWS_AS(pearson(one, one), UsageError);
    CHECK_THROWS_AS(pearson(x, one), UsageError);
    const std::vector<double> with_nan{1, std::nan(""), 2, 3};
    CHECK_THROWS_AS(pearson(x, with_nan), DataError);
}

TEST_CASE("pearson matches a naive long-double oracle") {
    std::mt19937 gen(15);
    std::uniform_real_distribution<double> value(-10, 10);
    for (int round = 0; round < 50; ++round) {
        std::vector<double> x(30), y(30);
        for (std::size_t i = 0; i < 30; ++i) {
            x[i] = value(gen);
            y[i] = 0.4 * x[i] + value(gen);
        }
        CHECK(*pearson(x, y) ==
              doctest::Approx(testoracle::pearson_naive(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("fractional ranks") {
    const std::vector<double> x{10, 20, 20, 30};
    CHECK(fractional_ranks(x) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
    const std::vector<double> all_tied{5, 5, 5};
    CHECK(fractional_ranks(all_tied) == std::vector<double>{2.0, 2.0, 2.0});
    const std::vector<double> rev{3, 2, 1};
    CHECK(fractional_ranks(rev) == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("spearman frozen value") {
    const std::vector<double> x{1, 2, 2, 4};
    const std::vector<double> y{1, 3, 2, 4};
    CHECK(*spearman(x, y) == doctest::Approx(0.9486832980505139).epsilon(1e-12));
    const std::vector<double> flat{1, 1, 1, 1};
    CHECK_FALSE(spearman(x, flat).has_value());
}

TEST_CASE("kendall tau-b frozen values") {
    CHECK(*kendall_tau(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 2}) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*kendall_tau(std::vector<double>{1, 2, 3, 4, 5},
                       std::vector<double>{3, 1, 4, 2, 5}) ==
          doctest::Approx(0.4).epsilon(1e-12));
    CHECK(*kendall_tau(std::vector<double>{5, 4, 3, 2, 1},
                       std::vector<double>{1, 2, 3, 4, 5}) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(*kendall_tau(std::vector<double>{1, 2, 2, 3, 3, 3},
                       std::vector<double>{2, 1, 3, 3, 2, 3}) ==
          doctest::Approx(0.36363636363636365).epsilon(1e-12));
    CHECK_FALSE(kendall_tau(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3})
                    .has_value());
}

TEST_CASE("tau-a equals tau-b without ties and differs with them") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{3, 1, 4, 2, 5};
    CHECK(*kendall_tau(x, y, TauVariant::a) == *kendall_tau(x, y, TauVariant::b));

    const std::vector<double> tx{1, 1, 2};
    const std::vector<double> ty{1, 2, 2};
    // 1 concordant pair of 3 total
    CHECK(*kendall_tau(tx, ty, TauVariant::a) == doctest::Approx(1.0 / 3.0));
    CHECK(*kendall_tau(tx, ty, TauVariant::b) == doctest::Approx(0.5));
}

TEST_CASE("kendall and swap match the brute-force census") {
    std::mt19937 gen(7);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 2 + gen() % 19;
        const int limit = round % 2 == 0 ? 4 : 1000;  // force ties half the time
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(static_cast<int>(gen() % limit));
            y[i] = static_cast<double>(static_cast<int>(gen() % limit));
        }
        const auto census = testoracle::census(x, y);
        const auto tb = kendall_tau(x, y);
        const auto tb_oracle = testoracle::tau_b(census);
        REQUIRE(tb.has_value() == tb_oracle.has_value());
        if (tb) CHECK(*tb == doctest::Approx(*tb_oracle).epsilon(1e-12));

        const auto ta = kendall_tau(x, y, TauVariant::a);
        const auto ta_oracle = testoracle::tau_a(census);
        REQUIRE(ta.has_value() == ta_oracle.has_value());
        if (ta) CHECK(*ta == doctest::Approx(*ta_oracle).epsilon(1e-12));

        const auto sw = swap_pct(x, y);
        const auto sw_oracle = testoracle::swap_pct(census);
        REQUIRE(sw.has_value() == sw_oracle.has_value());
        if (sw) CHECK(*sw == doctest::Approx(*sw_oracle).epsilon(1e-12));
    }
}

TEST_CASE("swap percentage on tie-free inputs is 50(1 - tau)") {
    std::mt19937 gen(444);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 3 + gen() % 15;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(i);
            y[i] = static_cast<double>(gen()) / 1e9;
        }
        std::shuffle(x.begin(), x.end(), gen);
        const auto tau = kendall_tau(x, y);
        const auto sw = swap_pct(x, y);
        REQUIRE(tau.has_value());
        REQUIRE(sw.has_value());
        CHECK(*sw == doctest::Approx(50.0 * (1.0 - *tau)).epsilon(1e-9));
    }
}

TEST_CASE("swap percentage worked example") {
    // (1,2,3,4,5) vs (3,1,4,2,5): 3 discordant of 10 untied pairs
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{3, 1, 4, 2, 5};
    CHECK(*swap_pct(x, y) == doctest::Approx(30.0).epsilon(1e-12));
    const std::vector<double> same{1, 2, 3};
    CHECK(*swap_pct(same, same) == 0.0);
    const std::vector<double> flat{1, 1, 1};
    CHECK_FALSE(swap_pct(flat, same).has_value());
}

TEST_CASE("triangle test frozen reference") {
    const TriangleVerdict v = triangle_test(0.73, 0.61, 0.66, 120);
    REQUIRE(v.t_statistic.has_value());
    REQUIRE(v.p_value.has_value());
    CHECK(*v.t_statistic == doctest::Approx(2.3784416622766704).epsilon(1e-9));
    CHECK(*v.p_value == doctest::Approx(0.019005436382468367).epsilon(1e-9));
    CHECK(v.df == 117);
    CHECK(v.significant_05);
    CHECK_FALSE(v.significant_01);
    CHECK(v.note.empty());
}

TEST_CASE("triangle test is symmetric in sign") {
    const TriangleVerdict ab = triangle_test(0.73, 0.61, 0.66, 120);
    const TriangleVerdict ba = triangle_test(0.61, 0.73, 0.66, 120);
    CHECK(*ab.t_statistic == doctest::Approx(-*ba.t_statistic));
    CHECK(*ab.p_value == doctest::Approx(*ba.p_value));

    const TriangleVerdict same = triangle_test(0.5, 0.5, 0.3, 50);
    CHECK(*same.t_statistic == 0.0);
    CHECK(*same.p_value == 1.0);
}

TEST_CASE("triangle test preconditions") {
    CHECK_THROWS_AS(triangle_test(1.0, 0.5, 0.5, 50), DataError);
    CHECK_THROWS_AS(triangle_test(0.5, -1.0, 0.5, 50), DataError);
    CHECK_THROWS_AS(triangle_test(0.5, 0.5, 1.0, 50), DataError);
    CHECK_THROWS_AS(triangle_test(1.2, 0.5, 0.5, 50), DataError);
    CHECK_THROWS_AS(triangle_test(0.5, 0.4, 0.3, 3), DataError);

    // infeasible correlation triple: determinant goes non-positive
    const TriangleVerdict bad = triangle_test(0.9, 0.9, -0.9, 50);
    CHECK_FALSE(bad.t_statistic.has_value());
    CHECK_FALSE(bad.p_value.has_value());
    CHECK_FALSE(bad.note.empty());
    CHECK_FALSE(bad.significant_05);
}
