#include "blindeval/consensus_unsup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "blindeval/errors.hpp"
#include "blindeval/stats.hpp"

namespace blindeval {

namespace {

// Keeps the MV tie coin independent of every other consumer of the seed.
constexpr std::uint64_t kStreamMV = 0x6d76;  // "mv"

double logsumexp2(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

MVResult majority_vote(const LabelMatrix& matrix, const MVConfig& config) {
    if (config.threshold < 0.0) throw UsageError("majority_vote: threshold must be >= 0");
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (M == 0) throw UsageError("majority_vote: empty matrix");
    auto rng = rng_stream(config.seed, {kStreamMV});

    MVResult result;
    std::map<std::string, std::uint8_t> entries;
    for (std::size_t m = 0; m < M; ++m) {
        std::size_t ones = 0;
        for (std::size_t k = 0; k < K; ++k) ones += matrix.label(k, m);
        std::uint8_t label;
        if (config.threshold == 0.5 && 2 * ones == K) {
            label = coin_flip(rng) ? 1 : 0;
            result.tie_items.push_back(m);
        } else {
            const double mean = static_cast<double>(ones) / static_cast<double>(K);
            label = mean >= config.threshold ? 1 : 0;
        }
        entries.emplace(matrix.item_ids()[m], label);
    }
    result.labels = JudgmentSet(std::move(entries), JudgmentSource::pseudo_gold, "mv");
    return result;
}

double em_objective(const LabelMatrix& matrix, const EMState& state, double smoothing) {
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (state.confusion.size() != K) throw UsageError("em_objective: state does not match matrix");

    double data_ll = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        double log_joint[2];
        for (int i = 0; i < 2; ++i) {
            double acc = std::log(state.class_prior[i]);
            for (std::size_t k = 0; k < K; ++k)
                acc += std::log(state.confusion[k][2 * i + matrix.label(k, m)]);
            log_joint[i] = acc;
        }
        data_ll += logsumexp2(log_joint[0], log_joint[1]);
    }
    if (smoothing <= 0.0) return data_ll;

    double penalty = std::log(state.class_prior[0]) + std::log(state.class_prior[1]);
    for (std::size_t k = 0; k < K; ++k)
        for (int cell = 0; cell < 4; ++cell) penalty += std::log(state.confusion[k][cell]);
    return data_ll + smoothing * penalty;
}

EMResult em_fit(const LabelMatrix& matrix, const EMConfig& config,
                const std::optional<JudgmentSet>& init) {
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (config.smoothing < 0.0) throw UsageError("em_fit: smoothing must be >= 0");
    if (config.tol <= 0.0) throw UsageError("em_fit: tol must be positive");
    if (config.max_iters == 0) throw UsageError("em_fit: max_iters must be positive");
    if (M == 0) throw UsageError("em_fit: empty matrix");
    const double eps = config.smoothing;

    EMResult result;
    EMState& state = result.state;
    state.confusion.assign(K, {0.5, 0.5, 0.5, 0.5});
    state.membership.assign(M, {0.5, 0.5});

    // Soft-vote initialization; an init set overrides covered items with
    // hard memberships.
    for (std::size_t m = 0; m < M; ++m) {
        std::size_t ones = 0;
        for (std::size_t k = 0; k < K; ++k) ones += matrix.label(k, m);
        const double t1 = static_cast<double>(ones) / static_cast<double>(K);
        state.membership[m] = {1.0 - t1, t1};
    }
    if (init) {
        for (const auto& [item_id, label] : init->entries()) {
            const auto m = matrix.item_index(item_id);
            if (!m) throw DataError("em_fit: init item not in matrix: " + item_id);
            state.membership[*m] = label ? std::array<double, 2>{0.0, 1.0}
                                         : std::array<double, 2>{1.0, 0.0};
        }
    }

    double prev_objective = -std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        // M-step: smoothed count ratios from the current memberships.
        double class_mass[2] = {0.0, 0.0};
        for (std::size_t m = 0; m < M; ++m) {
            class_mass[0] += state.membership[m][0];
            class_mass[1] += state.membership[m][1];
        }
        for (int i = 0; i < 2; ++i)
            state.class_prior[i] = (class_mass[i] + eps) / (static_cast<double>(M) + 2.0 * eps);
        for (std::size_t k = 0; k < K; ++k) {
            double votes[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
            for (std::size_t m = 0; m < M; ++m) {
                const int j = matrix.label(k, m);
                votes[0][j] += state.membership[m][0];
                votes[1][j] += state.membership[m][1];
            }
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    state.confusion[k][2 * i + j] =
                        (votes[i][j] + eps) / (class_mass[i] + 2.0 * eps);
        }

        // E-step: posteriors under the new parameters, and the objective
        // at those parameters.
        double data_ll = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            double log_joint[2];
            for (int i = 0; i < 2; ++i) {
                double acc = std::log(state.class_prior[i]);
                for (std::size_t k = 0; k < K; ++k)
                    acc += std::log(state.confusion[k][2 * i + matrix.label(k, m)]);
                log_joint[i] = acc;
            }
            const double norm = logsumexp2(log_joint[0], log_joint[1]);
            double t1 = std::exp(log_joint[1] - norm);
            if (config.hard) t1 = t1 >= 0.5 ? 1.0 : 0.0;
            state.membership[m] = {1.0 - t1, t1};
            data_ll += norm;
        }
        double objective = data_ll;
        if (eps > 0.0) {
            double penalty = std::log(state.class_prior[0]) + std::log(state.class_prior[1]);
            for (std::size_t k = 0; k < K; ++k)
                for (int cell = 0; cell < 4; ++cell)
                    penalty += std::log(state.confusion[k][cell]);
            objective += eps * penalty;
        }

        result.log_likelihood.push_back(objective);
        result.iterations = iter + 1;
        if (iter > 0 && std::abs(objective - prev_objective) < config.tol) {
            result.converged = true;
            break;
        }
        prev_objective = objective;
    }
    state.log_likelihood = result.log_likelihood.back();

    // Hard output labels; exact posterior ties resolve to 1.
    std::map<std::string, std::uint8_t> entries;
    for (std::size_t m = 0; m < M; ++m) {
        std::uint8_t label;
        if (state.membership[m][1] > state.membership[m][0]) {
            label = 1;
        } else if (state.membership[m][1] < state.membership[m][0]) {
            label = 0;
        } else {
            label = 1;
            result.argmax_ties.push_back(m);
        }
        entries.emplace(matrix.item_ids()[m], label);
    }
    result.labels = JudgmentSet(std::move(entries), JudgmentSource::pseudo_gold, "em");
    return result;
}

}  // namespace blindeval
