#include "blindeval/consensus_sup.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "blindeval/errors.hpp"

namespace blindeval {

namespace {

std::uint8_t threshold_vote(std::span<const std::uint8_t> features, double threshold) {
    std::size_t ones = 0;
    for (std::uint8_t f : features) ones += f;
    const double mean = static_cast<double>(ones) / static_cast<double>(features.size());
    return mean >= threshold ? 1 : 0;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Stump vote in {-1, +1}: non-inverted stumps vote +1 on feature 1.
int stump_vote(const AdaBoostStump& stump, std::uint8_t feature) {
    const bool fires = stump.inverted ? feature == 0 : feature == 1;
    return fires ? 1 : -1;
}

}  // namespace

TrainingSet make_training_set(const LabelMatrix& matrix, const JudgmentSet& crowd) {
    const std::size_t K = matrix.classifier_count();
    TrainingSet train;
    train.classifier_ids = matrix.classifier_ids();
    for (std::size_t m = 0; m < matrix.item_count(); ++m) {
        const auto label = crowd.label(matrix.item_ids()[m]);
        if (!label) continue;
        train.item_ids.push_back(matrix.item_ids()[m]);
        for (std::size_t k = 0; k < K; ++k) train.features.push_back(matrix.label(k, m));
        train.targets.push_back(*label);
    }
    if (train.targets.empty())
        throw DataError("make_training_set: crowd covers no matrix items");
    return train;
}

const char* SupervisedModel::kind_name() const {
    switch (params.index()) {
        case 0: return "calibrated_mv";
        case 1: return "naive_bayes";
        case 2: return "glm";
        case 3: return "svm";
        case 4: return "adaboost";
    }
    return "unknown";
}

SupervisedModel train_calibrated_mv(const TrainingSet& train, Metric target_metric) {
    const std::size_t N = train.rows();
    const std::size_t K = train.cols();
    if (N < 1) throw UsageError("train_calibrated_mv: empty training set");

    std::optional<double> best_score;
    double best_t = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double t = static_cast<double>(i) / 20.0;
        ConfusionCounts counts;
        for (std::size_t row = 0; row < N; ++row) {
            const std::uint8_t pred =
                threshold_vote({train.features.data() + row * K, K}, t);
            if (train.targets[row]) {
                pred ? ++counts.tp : ++counts.fn;
            } else {
                pred ? ++counts.fp : ++counts.tn;
            }
        }
        const auto value = scores(counts)[target_metric];
        if (!value) continue;
        if (!best_score || *value > *best_score) {
            best_score = *value;
            best_t = t;
        }
    }
    if (!best_score)
        throw DataError("train_calibrated_mv: target metric undefined at every threshold");

    SupervisedModel model;
    model.classifier_ids = train.classifier_ids;
    model.params = CalibratedMVParams{best_t, target_metric, *best_score};
    return model;
}

SupervisedModel train_naive_bayes(const TrainingSet& train) {
    const std::size_t N = train.rows();
    const std::size_t K = train.cols();
    if (N < 1) throw UsageError("train_naive_bayes: empty training set");

    double class_count[2] = {0.0, 0.0};
    for (std::uint8_t t : train.targets) class_count[t] += 1.0;

    NaiveBayesParams params;
    params.log_prior = {
        std::log((class_count[0] + 1.0) / (static_cast<double>(N) + 2.0)),
        std::log((class_count[1] + 1.0) / (static_cast<double>(N) + 2.0)),
    };
    params.log_conditional.assign(K, {});
    for (std::size_t k = 0; k < K; ++k) {
        double ones[2] = {0.0, 0.0};  // feature==1 count per class
        for (std::size_t row = 0; row < N; ++row)
            if (train.feature(row, k)) ones[train.targets[row]] += 1.0;
        for (int c = 0; c < 2; ++c) {
            const double p1 = (ones[c] + 1.0) / (class_count[c] + 2.0);
            params.log_conditional[k][2 * c + 0] = std::log(1.0 - p1);
            params.log_conditional[k][2 * c + 1] = std::log(p1);
        }
    }

    SupervisedModel model;
    model.classifier_ids = train.classifier_ids;
    model.params = std::move(params);
    return model;
}

SupervisedModel train_glm(const TrainingSet& train) {
    const std::size_t N = train.rows();
    const std::size_t K = train.cols();
    if (N < 1) throw UsageError("train_glm: empty training set");
    const double ridge = 1e-6;
    const double tol = 1e-8;
    const std::size_t max_iters = 50;
    const std::size_t dims = K + 1;  // coefficients then intercept

    Eigen::MatrixXd X(N, dims);
    Eigen::VectorXd y(N);
    for (std::size_t row = 0; row < N; ++row) {
        for (std::size_t k = 0; k < K; ++k) X(row, k) = train.feature(row, k);
        X(row, K) = 1.0;
        y(row) = train.targets[row];
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(dims);
    GlmParams params;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        params.iterations = iter + 1;
        Eigen::VectorXd mu(N);
        Eigen::VectorXd w(N);
        const Eigen::VectorXd eta = X * beta;
        for (std::size_t row = 0; row < N; ++row) {
            mu(row) = sigmoid(eta(row));
            w(row) = mu(row) * (1.0 - mu(row));
        }
        const Eigen::VectorXd grad = X.transpose() * (mu - y) + ridge * beta;
        Eigen::MatrixXd hess = X.transpose() * w.asDiagonal() * X;
        hess.diagonal().array() += ridge;
        Eigen::VectorXd step = hess.ldlt().solve(grad);
        // Cap the Newton step; separable data can make early steps wild.
        const double step_max = step.cwiseAbs().maxCoeff();
        if (step_max > 10.0) step *= 10.0 / step_max;
        beta -= step;
        if (step.cwiseAbs().maxCoeff() < tol) {
            params.converged = true;
            break;
        }
    }

    params.beta.assign(beta.data(), beta.data() + K);
    params.intercept = beta(K);

    SupervisedModel model;
    model.classifier_ids = train.classifier_ids;
    model.params = std::move(params);
    return model;
}

SupervisedModel train_svm(const TrainingSet& train) {
    const std::size_t N = train.rows();
    const std::size_t K = train.cols();
    if (N < 1) throw UsageError("train_svm: empty training set");

    SupervisedModel model;
    model.classifier_ids = train.classifier_ids;

    const bool has_pos = std::find(train.targets.begin(), train.targets.end(), 1) !=
                         train.targets.end();
    const bool has_neg = std::find(train.targets.begin(), train.targets.end(), 0) !=
                         train.targets.end();
    if (!has_pos || !has_neg) {
        SvmParams params;
        params.weights.assign(K, 0.0);
        params.bias = has_pos ? 1.0 : -1.0;
        params.converged = true;
        model.params = std::move(params);
        return model;
    }

    // Dual coordinate descent on the bias-augmented problem: each row
    // gains a constant 1 feature, so the bias is regularized with w.
    const double C = 1.0;
    const double gap_tol = 1e-4;
    const std::size_t max_sweeps = 20000;

    std::vector<double> alpha(N, 0.0);
    std::vector<double> w(K + 1, 0.0);  // [K] is the bias
    std::vector<double> sq_norm(N);
    std::vector<double> sign(N);
    for (std::size_t row = 0; row < N; ++row) {
        double ones = 0.0;
        for (std::size_t k = 0; k < K; ++k) ones += train.feature(row, k);
        sq_norm[row] = ones + 1.0;
        sign[row] = train.targets[row] ? 1.0 : -1.0;
    }

    SvmParams params;
    params.weights.assign(K, 0.0);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        params.sweeps = sweep + 1;
        for (std::size_t row = 0; row < N; ++row) {
            double margin = w[K];
            for (std::size_t k = 0; k < K; ++k)
                if (train.feature(row, k)) margin += w[k];
            margin *= sign[row];
            const double gradient = margin - 1.0;
            const double next = std::clamp(alpha[row] - gradient / sq_norm[row], 0.0, C);
            const double delta = next - alpha[row];
            if (delta == 0.0) continue;
            alpha[row] = next;
            const double scaled = delta * sign[row];
            for (std::size_t k = 0; k < K; ++k)
                if (train.feature(row, k)) w[k] += scaled;
            w[K] += scaled;
        }

        double wsq = 0.0;
        for (double v : w) wsq += v * v;
        double hinge = 0.0;
        for (std::size_t row = 0; row < N; ++row) {
            double margin = w[K];
            for (std::size_t k = 0; k < K; ++k)
                if (train.feature(row, k)) margin += w[k];
            hinge += std::max(0.0, 1.0 - sign[row] * margin);
        }
        double alpha_sum = 0.0;
        for (double a : alpha) alpha_sum += a;
        const double primal = 0.5 * wsq + C * hinge;
        const double dual = alpha_sum - 0.5 * wsq;
        if (primal - dual <= gap_tol) {
            params.converged = true;
            break;
        }
    }

    params.weights.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(K));
    params.bias = w[K];
    model.params = std::move(params);
    return model;
}

SupervisedModel train_adaboost(const TrainingSet& train, std::size_t rounds) {
    const std::size_t N = train.rows();
    const std::size_t K = train.cols();
    if (N < 1) throw UsageError("train_adaboost: empty training set");

    std::vector<double> weight(N, 1.0 / static_cast<double>(N));
    std::vector<int> target(N);
    std::size_t positives = 0;
    for (std::size_t row = 0; row < N; ++row) {
        target[row] = train.targets[row] ? 1 : -1;
        positives += train.targets[row];
    }

    AdaBoostParams params;
    params.fallback = 2 * positives >= N ? 1 : 0;
    for (std::size_t round = 0; round < rounds; ++round) {
        // Best stump under the current weights; ties keep the first
        // (smallest feature, non-inverted first).
        double best_error = std::numeric_limits<double>::infinity();
        AdaBoostStump best;
        for (std::size_t k = 0; k < K; ++k) {
            for (const bool inverted : {false, true}) {
                const AdaBoostStump stump{k, inverted, 0.0};
                double error = 0.0;
                for (std::size_t row = 0; row < N; ++row)
                    if (stump_vote(stump, train.feature(row, k)) != target[row])
                        error += weight[row];
                if (error < best_error) {
                    best_error = error;
                    best = stump;
                }
            }
        }

        if (best_error == 0.0) {
            best.alpha = 1.0;
            params.stumps = {best};
            break;
        }
        if (best_error >= 0.5) break;

        best.alpha = 0.5 * std::log((1.0 - best_error) / best_error);
        params.stumps.push_back(best);

        double total = 0.0;
        for (std::size_t row = 0; row < N; ++row) {
            const int vote = stump_vote(best, train.feature(row, best.feature));
            weight[row] *= std::exp(-best.alpha * vote * target[row]);
            total += weight[row];
        }
        for (double& v : weight) v /= total;
    }

    SupervisedModel model;
    model.classifier_ids = train.classifier_ids;
    model.params = std::move(params);
    return model;
}

std::uint8_t predict_row(const SupervisedModel& model, std::span<const std::uint8_t> features) {
    if (features.size() != model.classifier_ids.size())
        throw UsageError("predict_row: feature width mismatch");

    if (const auto* mv = std::get_if<CalibratedMVParams>(&model.params)) {
        return threshold_vote(features, mv->threshold);
    }
    if (const auto* nb = std::get_if<NaiveBayesParams>(&model.params)) {
        double log_joint[2] = {nb->log_prior[0], nb->log_prior[1]};
        for (std::size_t k = 0; k < features.size(); ++k)
            for (int c = 0; c < 2; ++c)
                log_joint[c] += nb->log_conditional[k][2 * c + features[k]];
        // Posterior of class 1 against the decision threshold; the 0.5
        // default is the argmax rule with ties going to 1.
        const double p1 = sigmoid(log_joint[1] - log_joint[0]);
        return p1 >= model.decision_threshold ? 1 : 0;
    }
    if (const auto* glm = std::get_if<GlmParams>(&model.params)) {
        double eta = glm->intercept;
        for (std::size_t k = 0; k < features.size(); ++k)
            if (features[k]) eta += glm->beta[k];
        return sigmoid(eta) >= model.decision_threshold ? 1 : 0;
    }
    if (const auto* svm = std::get_if<SvmParams>(&model.params)) {
        double g = svm->bias;
        for (std::size_t k = 0; k < features.size(); ++k)
            if (features[k]) g += svm->weights[k];
        return g >= 0.0 ? 1 : 0;
    }
    const auto& ada = std::get<AdaBoostParams>(model.params);
    if (ada.stumps.empty()) return ada.fallback;
    double sum = 0.0;
    for (const auto& stump : ada.stumps)
        sum += stump.alpha * stump_vote(stump, features[stump.feature]);
    return sum >= 0.0 ? 1 : 0;
}

JudgmentSet predict(const SupervisedModel& model, const LabelMatrix& matrix) {
    if (matrix.classifier_ids() != model.classifier_ids)
        throw UsageError("predict: classifier set does not match training");
    const std::size_t K = matrix.classifier_count();
    std::vector<std::uint8_t> row(K);
    std::map<std::string, std::uint8_t> entries;
    for (std::size_t m = 0; m < matrix.item_count(); ++m) {
        for (std::size_t k = 0; k < K; ++k) row[k] = matrix.label(k, m);
        entries.emplace(matrix.item_ids()[m], predict_row(model, row));
    }
    return JudgmentSet(std::move(entries), JudgmentSource::pseudo_gold, model.kind_name());
}

}  // namespace blindeval
