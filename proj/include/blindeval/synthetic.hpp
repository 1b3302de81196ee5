#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "blindeval/label_store.hpp"
#include "blindeval/metrics.hpp"

namespace blindeval {

// Conditionally independent binary classifiers over Bernoulli gold labels.
// channels[k] = (sensitivity, specificity) of classifier k.
struct EnsembleSpec {
    std::size_t items = 0;
    double prevalence = 0.5;  // P(gold = 1), in (0, 1)
    std::vector<std::pair<double, double>> channels;
    std::uint64_t seed = 0;
};

// Deterministic per seed. Ids are zero-padded ("c03", "i0042") so the
// sorted judgment order matches the stored matrix order.
Dataset generate(const EnsembleSpec& spec);

// Exact per-classifier mean metric over all K^M equiprobable pseudo-gold
// labelings, with the same undefined-trial exclusion as the sampling
// estimator. Guarded to K^M <= 10^6. Independent of the estimator code on
// purpose; used to check it.
std::vector<std::optional<double>> enumerate_sampling_expectation(const LabelMatrix& matrix,
                                                                  Metric metric);

// Exact argmax of the smoothed hard-assignment likelihood over all 2^M
// membership assignments (guarded to 2^M <= 10^6). Assignments tied in
// likelihood (the all-flipped twin always is) resolve by majority-vote
// agreement, then lexicographically in item order.
JudgmentSet enumerate_em_map(const LabelMatrix& matrix, double smoothing = 1e-9);

}  // namespace blindeval
