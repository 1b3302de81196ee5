#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blindeval/label_store.hpp"

namespace blindeval {

// Majority vote: item labeled 1 iff its mean label >= threshold. The one
// exception: an exact half split at threshold 0.5 is broken by a seeded
// fair coin (consumed in stored item order) instead of defaulting to 1.
struct MVConfig {
    double threshold = 0.5;  // any t >= 0; t=0 labels everything 1
    std::uint64_t seed = 0;  // tie coin only
};

struct MVResult {
    JudgmentSet labels;                  // source = pseudo_gold, method "mv"
    std::vector<std::size_t> tie_items;  // matrix item indices resolved by coin
};

MVResult majority_vote(const LabelMatrix& matrix, const MVConfig& config = {});

struct EMConfig {
    std::size_t max_iters = 100;
    double tol = 1e-6;        // stop when the objective gains less than this
    double smoothing = 1e-9;  // additive count smoothing, >= 0
    bool hard = false;        // indicator memberships in the E-step
};

// Two-class latent-membership state. class_prior is (p0, p1); confusion[k]
// is row-major 2x2 with [i*2+j] = Pr(classifier k says j | true class i);
// membership[m] is the item's posterior (T_m0, T_m1). All rows sum to 1.
struct EMState {
    std::array<double, 2> class_prior{0.5, 0.5};
    std::vector<std::array<double, 4>> confusion;
    std::vector<std::array<double, 2>> membership;
    double log_likelihood = 0.0;  // final value of the fitted objective
};

struct EMResult {
    JudgmentSet labels;                  // source = pseudo_gold, method "em"
    EMState state;
    std::vector<double> log_likelihood;  // objective after each iteration
    bool converged = false;
    std::size_t iterations = 0;
    std::vector<std::size_t> argmax_ties;  // exact 0.5 posteriors, labeled 1
};

// Alternates M-step (smoothed count ratios) and E-step (posterior
// memberships) until the objective gain drops below tol. The objective is
// the data log-likelihood plus smoothing * sum of the logs of every
// estimated probability; with that penalty the smoothed M-step is the
// exact maximizer, so in soft mode the recorded per-iteration sequence is
// non-decreasing. Hard mode trades that guarantee for 0/1 indicator
// memberships. Output label = argmax membership, ties -> 1.
// init, when given, seeds memberships with its hard labels (its items must
// exist in the matrix); uncovered items start at their vote fraction.
EMResult em_fit(const LabelMatrix& matrix, const EMConfig& config = {},
                const std::optional<JudgmentSet>& init = std::nullopt);

// The objective above, evaluated for an explicit state. Exposed for tests.
double em_objective(const LabelMatrix& matrix, const EMState& state, double smoothing);

}  // namespace blindeval
