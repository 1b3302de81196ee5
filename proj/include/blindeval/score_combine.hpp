#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "blindeval/label_store.hpp"
#include "blindeval/metrics.hpp"

namespace blindeval {

struct SamplingConfig {
    std::size_t xi = 1000;   // pseudo-gold sets drawn
    std::uint64_t seed = 0;
    // When set, items whose pseudo-gold label came from classifier k are
    // dropped from k's own counts. Off by default: the sample space is all
    // K^M labelings with no exclusion rule.
    bool exclude_self = false;
};

// Per-classifier estimates plus the per-trial score table the ranking
// stage pairs on. Trials align by index across classifiers; a nullopt
// trial entry means the classifier was not scored in that trial (the
// round-robin self slot).
struct EstimatedScores {
    std::vector<std::string> classifier_ids;
    std::size_t trial_count = 0;
    std::vector<std::vector<std::optional<MetricScores>>> trials;  // [classifier][trial]
    // Mean of defined per-trial values; nullopt when no trial defined it.
    std::vector<MetricScores> means;
    // Scored trials whose metric came out undefined (excluded from means).
    std::vector<std::array<std::size_t, 4>> undefined_trials;
};

// Round-robin: trial j scores every classifier except j against
// classifier j's labels over all items. Each classifier's estimate is the
// unweighted mean of its K-1 trials.
EstimatedScores round_robin(const LabelMatrix& matrix);

// Sampling: each trial draws one pseudo-gold set (per item, one uniformly
// chosen classifier's label) and scores all classifiers against it. The
// per-item draw is derived from (seed, trial, item id), so results do not
// depend on item order or on how trials are scheduled.
EstimatedScores sample_pseudo_gold(const LabelMatrix& matrix, const SamplingConfig& config = {});

}  // namespace blindeval
