#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blindeval/consensus_sup.hpp"
#include "blindeval/consensus_unsup.hpp"
#include "blindeval/correlation.hpp"
#include "blindeval/label_store.hpp"
#include "blindeval/metrics.hpp"
#include "blindeval/ranking.hpp"
#include "blindeval/score_combine.hpp"

namespace blindeval {

enum class Method {
    mv,
    em,
    calibrated_mv,
    nb,
    glm,
    svm,
    adaboost,
    round_robin,
    sampling,
    direct_crowd,
};

const char* to_string(Method method);
std::optional<Method> method_from_string(const std::string& name);
bool is_supervised(Method method);   // trained on crowd labels
bool needs_crowd(Method method);     // supervised or direct_crowd
bool is_trial_based(Method method);  // score & combine estimators

struct RunConfig {
    Method method = Method::mv;
    std::vector<Metric> metrics = {Metric::acc, Metric::pre, Metric::rec, Metric::spe};
    double alpha = 0.05;
    std::uint64_t seed = 0;
    double mv_threshold = 0.5;
    std::size_t xi = 1000;
    bool sampling_exclude_self = false;
    Metric calibration_target = Metric::acc;
    EMConfig em;
};

struct MetricEvaluation {
    Metric metric = Metric::acc;
    PairwiseVerdicts verdicts;
    RankingWithTies ranking;
};

// One method's complete evaluation: per-classifier score estimates and,
// per requested metric, the significance-aware ranking.
struct MethodEvaluation {
    std::string method_name;
    std::vector<std::string> classifier_ids;
    std::vector<MetricScores> estimated;
    std::vector<MetricEvaluation> per_metric;
    std::optional<JudgmentSet> pseudo_gold;           // judgment-based methods
    std::optional<MetricScores> pseudo_gold_quality;  // vs gold, when both exist
    std::size_t trial_count = 0;                      // trial-based methods
    std::vector<std::array<std::size_t, 4>> undefined_trials;
};

struct TriangleEntry {
    Metric metric = Metric::acc;
    std::string measure;  // pearson | spearman | kendall | swap
    std::optional<TriangleVerdict> verdict;
    std::string error;  // why the test could not run, when it could not
};

// Everything a run produces. Rebuilding with the same inputs, config, and
// seed reproduces the report byte for byte.
struct EvaluationReport {
    std::string library_version;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::vector<Metric> metrics;
    RunConfig config;                    // primary config echo
    std::optional<RunConfig> config_q;  // compare() only
    MethodEvaluation primary;
    std::optional<MethodEvaluation> secondary;  // compare() only
    std::optional<MethodEvaluation> actual;     // gold-based, when gold present
    // Estimated-vs-actual fidelity per metric: Pearson on scores, the rank
    // measures on the significance-aware competition ranks.
    std::vector<std::pair<Metric, CorrelationReport>> correlations;
    std::vector<std::pair<Metric, CorrelationReport>> correlations_secondary;
    std::vector<TriangleEntry> triangles;  // compare() only
};

EvaluationReport run(const Dataset& dataset, const RunConfig& config);

// Runs both methods and adds, per metric and correlation measure, the
// dependent-correlation triangle test of gold-vs-p against gold-vs-q.
// Swap % enters as 1 - swap/50 so it lives on the correlation scale.
EvaluationReport compare(const Dataset& dataset, const RunConfig& config_p,
                         const RunConfig& config_q);

struct QualityRow {
    std::string method_name;
    MetricScores quality;  // pseudo-gold vs gold
    std::vector<std::pair<Metric, CorrelationReport>> fidelity;
};

struct SecondaryCorrelation {
    Metric metric = Metric::acc;
    std::string measure;
    std::optional<double> r;  // undefined on zero variance
};

// Label quality vs evaluation fidelity across >= 3 combine & score
// methods: per method its pseudo-gold quality and primary correlations,
// then the Pearson r between pseudo-gold accuracy and each correlation
// value across methods.
struct QualityReport {
    std::string library_version;
    std::uint64_t seed = 0;
    std::vector<RunConfig> configs;  // one per method row
    std::vector<QualityRow> rows;
    std::vector<SecondaryCorrelation> secondary;
};

QualityReport quality_vs_fidelity(const Dataset& dataset,
                                  const std::vector<RunConfig>& methods);

// Deterministic serializations (LF line endings, fixed key order).
std::string to_json(const EvaluationReport& report);
std::string to_csv(const EvaluationReport& report);
std::string to_json(const QualityReport& report);
std::string to_csv(const QualityReport& report);

void write_text(const std::string& text, const std::string& path);

}  // namespace blindeval
