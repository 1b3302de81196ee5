#include "blindeval/score_combine.hpp"

#include "blindeval/errors.hpp"
#include "blindeval/stats.hpp"

namespace blindeval {

namespace {

constexpr std::uint64_t kStreamSampling = 0x7367;  // "sg"

// Like scores(), but an empty count set yields all-undefined instead of
// throwing: an exclude_self trial can run out of items.
MetricScores scores_or_undefined(const ConfusionCounts& counts) {
    if (counts.total() == 0) return MetricScores{};
    return scores(counts);
}

void finalize(EstimatedScores& est) {
    const std::size_t K = est.trials.size();
    est.means.assign(K, MetricScores{});
    est.undefined_trials.assign(K, {0, 0, 0, 0});
    for (std::size_t k = 0; k < K; ++k) {
        for (Metric metric : kAllMetrics) {
            double sum = 0.0;
            std::size_t defined = 0;
            std::size_t undefined = 0;
            for (const auto& trial : est.trials[k]) {
                if (!trial) continue;  // not scored in this trial
                if (const auto value = (*trial)[metric]) {
                    sum += *value;
                    ++defined;
                } else {
                    ++undefined;
                }
            }
            if (defined > 0) est.means[k][metric] = sum / static_cast<double>(defined);
            est.undefined_trials[k][static_cast<std::size_t>(metric)] = undefined;
        }
    }
}

}  // namespace

EstimatedScores round_robin(const LabelMatrix& matrix) {
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (K < 2) throw UsageError("round_robin: need at least two classifiers");
    if (M < 1) throw UsageError("round_robin: empty matrix");

    EstimatedScores est;
    est.classifier_ids = matrix.classifier_ids();
    est.trial_count = K;
    est.trials.assign(K, std::vector<std::optional<MetricScores>>(K));
    for (std::size_t ref = 0; ref < K; ++ref) {
        for (std::size_t k = 0; k < K; ++k) {
            if (k == ref) continue;
            est.trials[k][ref] = scores(count_confusion(matrix.row(k), matrix.row(ref)));
        }
    }
    finalize(est);
    return est;
}

EstimatedScores sample_pseudo_gold(const LabelMatrix& matrix, const SamplingConfig& config) {
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (K < 2) throw UsageError("sample_pseudo_gold: need at least two classifiers");
    if (M < 1) throw UsageError("sample_pseudo_gold: empty matrix");
    if (config.xi < 1) throw UsageError("sample_pseudo_gold: xi must be >= 1");

    std::vector<std::uint64_t> item_hash(M);
    for (std::size_t m = 0; m < M; ++m) item_hash[m] = fnv1a64(matrix.item_ids()[m]);

    EstimatedScores est;
    est.classifier_ids = matrix.classifier_ids();
    est.trial_count = config.xi;
    est.trials.assign(K, std::vector<std::optional<MetricScores>>(config.xi));

    std::vector<std::size_t> pick(M);
    std::vector<std::uint8_t> pseudo(M);
    for (std::size_t t = 0; t < config.xi; ++t) {
        for (std::size_t m = 0; m < M; ++m) {
            SplitMix64 gen{derive_state(config.seed, {kStreamSampling, t, item_hash[m]})};
            pick[m] = static_cast<std::size_t>(uniform_below(gen, K));
            pseudo[m] = matrix.label(pick[m], m);
        }
        for (std::size_t k = 0; k < K; ++k) {
            ConfusionCounts counts;
            for (std::size_t m = 0; m < M; ++m) {
                if (config.exclude_self && pick[m] == k) continue;
                if (pseudo[m]) {
                    matrix.label(k, m) ? ++counts.tp : ++counts.fn;
                } else {
                    matrix.label(k, m) ? ++counts.fp : ++counts.tn;
                }
            }
            est.trials[k][t] = scores_or_undefined(counts);
        }
    }
    finalize(est);
    return est;
}

}  // namespace blindeval
