#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "blindeval/errors.hpp"
#include "blindeval/score_combine.hpp"
#include "blindeval/synthetic.hpp"
#include "helpers.hpp"

using namespace blindeval;
using testhelp::make_matrix;

TEST_CASE("round robin scores everyone against everyone else") {
    const LabelMatrix matrix = make_matrix({{1, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 1}});
    const EstimatedScores est = round_robin(matrix);
    CHECK(est.trial_count == 3);
    REQUIRE(est.trials.size() == 3);

    // self slots are unscored
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK_FALSE(est.trials[k][k].has_value());
        std::size_t defined = 0;
        for (const auto& trial : est.trials[k]) defined += trial.has_value() ? 1 : 0;
        CHECK(defined == 2);
    }

    // classifier 0 against classifier 1's labels: one disagreement
    const MetricScores s01 = *est.trials[0][1];
    CHECK(*s01[Metric::acc] == doctest::Approx(0.75));
    // mean over the two reference trials, acc: vs c1 0.75, vs c2 0.5
    const MetricScores s02 = *est.trials[0][2];
    CHECK(*s02[Metric::acc] == doctest::Approx(0.5));
    CHECK(*est.means[0][Metric::acc] == doctest::Approx(0.625));

    CHECK_THROWS_AS(round_robin(make_matrix({{1, 0, 1}})), UsageError);
}

TEST_CASE("round robin undefined trials are excluded from the mean") {
    // against c1 (all zero) recall is undefined; against c2 it is defined
    const LabelMatrix matrix = make_matrix({{1, 0, 1}, {0, 0, 0}, {1, 1, 1}});
    const EstimatedScores est = round_robin(matrix);
    CHECK_FALSE((*est.trials[0][1])[Metric::rec].has_value());
    CHECK(*(*est.trials[0][2])[Metric::rec] == doctest::Approx(2.0 / 3.0));
    CHECK(*est.means[0][Metric::rec] == doctest::Approx(2.0 / 3.0));
    CHECK(est.undefined_trials[0][static_cast<std::size_t>(Metric::rec)] == 1);
}

TEST_CASE("sampling is deterministic per seed") {
    const LabelMatrix matrix = make_matrix({{1, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 1}});
    SamplingConfig config;
    config.xi = 200;
    config.seed = 11;
    const EstimatedScores a = sample_pseudo_gold(matrix, config);
    const EstimatedScores b = sample_pseudo_gold(matrix, config);
    CHECK(a.trial_count == 200);
    for (std::size_t k = 0; k < 3; ++k) {
        for (Metric m : kAllMetrics) {
            CHECK(a.means[k][m].has_value() == b.means[k][m].has_value());
            if (a.means[k][m]) CHECK(*a.means[k][m] == *b.means[k][m]);
        }
    }
    config.seed = 12;
    const EstimatedScores c = sample_pseudo_gold(matrix, config);
    CHECK(*a.means[0][Metric::acc] != *c.means[0][Metric::acc]);
}

TEST_CASE("sampling does not depend on stored item order") {
    const std::vector<std::vector<int>> rows{{1, 1, 0, 1, 0, 1}, {1, 0, 0, 1, 1, 0},
                                             {0, 1, 1, 1, 0, 1}};
    const LabelMatrix matrix = make_matrix(rows);

    // same data, items stored in reverse order
    std::vector<std::string> items;
    std::vector<std::uint8_t> labels;
    for (std::size_t m = matrix.item_count(); m-- > 0;) items.push_back(matrix.item_ids()[m]);
    for (std::size_t k = 0; k < matrix.classifier_count(); ++k)
        for (std::size_t m = matrix.item_count(); m-- > 0;)
            labels.push_back(matrix.label(k, m));
    const LabelMatrix reversed(matrix.classifier_ids(), items, labels);

    SamplingConfig config;
    config.xi = 64;
    config.seed = 5;
    const EstimatedScores a = sample_pseudo_gold(matrix, config);
    const EstimatedScores b = sample_pseudo_gold(reversed, config);
    for (std::size_t k = 0; k < 3; ++k) {
        for (Metric m : kAllMetrics) {
            REQUIRE(a.means[k][m].has_value() == b.means[k][m].has_value());
            if (a.means[k][m]) CHECK(*a.means[k][m] == *b.means[k][m]);
        }
    }
}

TEST_CASE("sampling means approach the exact enumeration") {
    const LabelMatrix matrix = make_matrix({{1, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 1}});
    SamplingConfig config;
    config.xi = 4000;
    config.seed = 3;
    const EstimatedScores est = sample_pseudo_gold(matrix, config);
    const auto exact = enumerate_sampling_expectation(matrix, Metric::acc);
    for (std::size_t k = 0; k < 3; ++k) {
        // acc per trial is an average of 4 indicators; its sd is below 0.5
        const double se = 0.5 / std::sqrt(4000.0);
        CHECK(std::abs(*est.means[k][Metric::acc] - *exact[k]) < 4 * se);
    }
}

TEST_CASE("exclude_self drops self-authored labels from the counts") {
    const LabelMatrix matrix = make_matrix({{1, 1}, {0, 0}});
    SamplingConfig config;
    config.xi = 500;
    config.seed = 21;
    config.exclude_self = true;
    const EstimatedScores est = sample_pseudo_gold(matrix, config);
    CHECK(est.trial_count == 500);
    // whenever both items draw from classifier k, k's own trial is empty and
    // the complement classifier scores 0 accuracy; overall means stay defined
    for (std::size_t k = 0; k < 2; ++k) {
        REQUIRE(est.means[k][Metric::acc].has_value());
        CHECK(*est.means[k][Metric::acc] < 0.5);  // scored only against the other's labels
    }

    config.exclude_self = false;
    const EstimatedScores keep = sample_pseudo_gold(matrix, config);
    // with self labels kept, each classifier agrees with its own picks
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(*keep.means[k][Metric::acc] > *est.means[k][Metric::acc]);
}

TEST_CASE("sampling config validation") {
    const LabelMatrix matrix = make_matrix({{1, 0}, {0, 1}});
    SamplingConfig config;
    config.xi = 0;
    CHECK_THROWS_AS(sample_pseudo_gold(matrix, config), UsageError);
}
