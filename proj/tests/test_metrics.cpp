#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "blindeval/errors.hpp"
#include "blindeval/metrics.hpp"
#include "helpers.hpp"

using namespace blindeval;
using testhelp::make_matrix;
using testhelp::make_judgments;

TEST_CASE("metric names round-trip") {
    for (Metric m : kAllMetrics) {
        CHECK(metric_from_string(to_string(m)) == m);
    }
    CHECK_FALSE(metric_from_string("f1").has_value());
}

TEST_CASE("count_confusion on a worked example") {
    const std::vector<std::uint8_t> pred{1, 1, 0, 0, 1};
    const std::vector<std::uint8_t> ref{1, 0, 0, 1, 1};
    const ConfusionCounts c = count_confusion(pred, ref);
    CHECK(c.tp == 2);
    CHECK(c.fp == 1);
    CHECK(c.tn == 1);
    CHECK(c.fn == 1);
    CHECK(c.total() == 5);

    const MetricScores s = scores(c);
    CHECK(*s[Metric::acc] == doctest::Approx(0.6));
    CHECK(*s[Metric::pre] == doctest::Approx(2.0 / 3.0));
    CHECK(*s[Metric::rec] == doctest::Approx(2.0 / 3.0));
    CHECK(*s[Metric::spe] == doctest::Approx(0.5));

    const std::vector<std::uint8_t> short_ref{1, 0};
    CHECK_THROWS_AS(count_confusion(pred, short_ref), UsageError);
}

TEST_CASE("zero denominators are undefined, not clamped") {
    // all-negative reference: no positives to recall
    const std::vector<std::uint8_t> pred{0, 0, 0};
    const std::vector<std::uint8_t> ref{0, 0, 0};
    const MetricScores s = scores(count_confusion(pred, ref));
    CHECK(*s[Metric::acc] == 1.0);
    CHECK_FALSE(s[Metric::pre].has_value());  // tp+fp = 0
    CHECK_FALSE(s[Metric::rec].has_value());  // tp+fn = 0
    CHECK(*s[Metric::spe] == 1.0);

    const std::vector<std::uint8_t> all_pos{1, 1, 1};
    const MetricScores s2 = scores(count_confusion(all_pos, all_pos));
    CHECK_FALSE(s2[Metric::spe].has_value());
    CHECK(*s2[Metric::rec] == 1.0);

    CHECK_THROWS_AS(scores(ConfusionCounts{}), UsageError);
}

TEST_CASE("confusion over judgment sets uses the coverage intersection") {
    const LabelMatrix matrix = make_matrix({{1, 0, 1, 0}, {1, 1, 0, 0}});
    const JudgmentSet ref = make_judgments(matrix, {1, 0, 0, 1});
    const ConfusionCounts c0 = confusion(matrix, 0, ref);
    CHECK(c0.tp == 1);
    CHECK(c0.fp == 1);
    CHECK(c0.tn == 1);
    CHECK(c0.fn == 1);

    // partial reference: only two items judged
    JudgmentSet partial({{"i0000", 1}, {"i0002", 0}}, JudgmentSource::gold);
    const ConfusionCounts cp = confusion(matrix, 0, partial);
    CHECK(cp.total() == 2);
    CHECK(cp.tp == 1);
    CHECK(cp.fp == 1);

    JudgmentSet pred({{"i0000", 1}, {"i0001", 0}}, JudgmentSource::pseudo_gold);
    JudgmentSet other({{"i0002", 1}}, JudgmentSource::gold);
    CHECK_THROWS_AS(confusion(pred, other), DataError);
}

TEST_CASE("per_item_correct follows sorted item order") {
    const LabelMatrix matrix = make_matrix({{1, 0, 1}, {0, 0, 1}});
    const JudgmentSet ref = make_judgments(matrix, {1, 1, 1});
    const auto correct = per_item_correct(matrix, 0, ref);
    CHECK(correct == std::vector<std::uint8_t>{1, 0, 1});
    const auto correct1 = per_item_correct(matrix, 1, ref);
    CHECK(correct1 == std::vector<std::uint8_t>{0, 0, 1});
}

TEST_CASE("confusion counts are invariant to item permutation") {
    std::mt19937 gen(404);
    for (int round = 0; round < 20; ++round) {
        const LabelMatrix matrix = testhelp::random_matrix(gen, 3, 12);
        const JudgmentSet ref = make_judgments(
            matrix, std::vector<int>(matrix.row(2).begin(), matrix.row(2).end()));
        const ConfusionCounts base = confusion(matrix, 0, ref);

        std::vector<std::size_t> perm(12);
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<std::vector<int>> rows(3, std::vector<int>(12));
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t m = 0; m < 12; ++m) rows[k][m] = matrix.label(k, perm[m]);
        // same ids in permuted stored order via distinct id set
        std::vector<std::string> items;
        for (std::size_t m = 0; m < 12; ++m) items.push_back(matrix.item_ids()[perm[m]]);
        std::vector<std::uint8_t> labels;
        for (const auto& row : rows)
            for (int cell : row) labels.push_back(static_cast<std::uint8_t>(cell));
        const LabelMatrix shuffled(matrix.classifier_ids(), items, labels);
        const ConfusionCounts moved = confusion(shuffled, 0, ref);
        CHECK(moved.tp == base.tp);
        CHECK(moved.fp == base.fp);
        CHECK(moved.tn == base.tn);
        CHECK(moved.fn == base.fn);
    }
}

TEST_CASE("jaccard overlap") {
    const LabelMatrix matrix = make_matrix({{1, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 0}});
    const auto overlap = jaccard_overlap(matrix);
    REQUIRE(overlap.size() == 9);
    CHECK(overlap[0 * 3 + 0] == 1.0);
    CHECK(overlap[0 * 3 + 1] == doctest::Approx(1.0 / 3.0));  // {i0,i1} vs {i0,i2}
    CHECK(overlap[1 * 3 + 0] == doctest::Approx(1.0 / 3.0));
    CHECK(overlap[0 * 3 + 2] == 0.0);  // vs empty set
    CHECK(overlap[2 * 3 + 2] == 1.0);  // both empty on the diagonal

    const LabelMatrix two_empty = make_matrix({{0, 0}, {0, 0}});
    CHECK(jaccard_overlap(two_empty)[1] == 1.0);  // empty vs empty
}

TEST_CASE("fleiss kappa frozen values") {
    // two raters, zero chance-corrected agreement
    const LabelMatrix zero = make_matrix({{1, 1, 0, 0}, {1, 0, 1, 0}});
    CHECK(*fleiss_kappa(zero) == doctest::Approx(0.0).epsilon(1e-12));

    // three raters, five items; reference value from an external package
    const LabelMatrix three =
        make_matrix({{1, 1, 0, 1, 0}, {1, 0, 0, 1, 1}, {1, 1, 1, 1, 0}});
    CHECK(*fleiss_kappa(three) == doctest::Approx(0.0999999999999999).epsilon(1e-9));

    const LabelMatrix perfect = make_matrix({{1, 0, 1}, {1, 0, 1}});
    CHECK(*fleiss_kappa(perfect) == doctest::Approx(1.0));

    // unanimous single category: expected agreement 1, kappa undefined
    const LabelMatrix unanimous = make_matrix({{1, 1}, {1, 1}});
    CHECK_FALSE(fleiss_kappa(unanimous).has_value());
}
