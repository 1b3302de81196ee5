#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blindeval/label_store.hpp"
#include "blindeval/metrics.hpp"
#include "blindeval/score_combine.hpp"

namespace blindeval {

enum class Verdict : std::uint8_t { win, loss, tie };

const char* to_string(Verdict verdict);

struct PairedTestResult {
    Verdict verdict = Verdict::tie;
    double t_statistic = 0.0;  // +-inf when differences have zero variance
    double p_value = 1.0;
    std::size_t n = 0;  // pairs used
};

// Two-tailed paired t-test on aligned evidence vectors, n-1 df. Identical
// vectors are a tie with p = 1; p < alpha otherwise decides win/loss by
// the sign of the mean difference. Throws on length mismatch or n < 2.
PairedTestResult paired_test(std::span<const double> a, std::span<const double> b, double alpha);

// All-pairs verdicts for one metric. Row-major K x K storage; cell (a, b)
// holds a's verdict against b. Antisymmetric with a tie diagonal.
// Classifiers whose metric is undefined are marked excluded; their cells
// are ties and they take no part in the ranking.
struct PairwiseVerdicts {
    std::vector<std::string> classifier_ids;
    Metric metric = Metric::acc;
    double alpha = 0.05;
    std::vector<Verdict> verdicts;
    std::vector<double> p_values;
    std::vector<std::uint8_t> excluded;  // per classifier

    std::size_t size() const { return classifier_ids.size(); }
    Verdict verdict(std::size_t a, std::size_t b) const { return verdicts[a * size() + b]; }
    double p_value(std::size_t a, std::size_t b) const { return p_values[a * size() + b]; }
};

struct RankingEntry {
    std::string classifier_id;
    std::optional<double> score;      // mean estimated metric
    std::optional<int> copeland;      // wins - losses; nullopt when excluded
    std::optional<std::size_t> rank;  // 1 = best, competition ranking
};

struct RankingWithTies {
    std::vector<RankingEntry> entries;  // in classifier order
};

// Evidence built from per-item correctness against one judgment set. The
// paired vectors for a pair (a, b) cover the metric's item subset,
// intersected across both classifiers:
//   acc: every common item, correctness indicators
//   rec: reference-positive items; spe: reference-negative items
//   pre: items BOTH classifiers predicted positive (the only aligned
//        construction; its indicator is the reference label, so single-set
//        precision evidence always ties)
// A subset with fewer than two items is a tie outright.
PairwiseVerdicts pairwise_from_judgments(const LabelMatrix& matrix, const JudgmentSet& ref,
                                         Metric metric, double alpha);

// Evidence from an estimator's trial table: pairs are per-trial scores on
// the trials where both classifiers have the metric defined.
PairwiseVerdicts pairwise_from_trials(const EstimatedScores& est, Metric metric, double alpha);

// Copeland score = pairwise wins - losses over the non-excluded
// classifiers; ranks are standard competition ranks (1, 1, 3, ...).
// Scores in the result come from the optional per-classifier means.
RankingWithTies copeland_rank(const PairwiseVerdicts& verdicts,
                              std::span<const std::optional<double>> means = {});

}  // namespace blindeval
