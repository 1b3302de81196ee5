#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "blindeval/label_store.hpp"
#include "blindeval/metrics.hpp"

namespace blindeval {

// Supervision pairs: classifier label vectors (features) on the items the
// crowd judged, with the crowd labels as targets.
struct TrainingSet {
    std::vector<std::string> classifier_ids;  // feature order
    std::vector<std::string> item_ids;        // matrix item order
    std::vector<std::uint8_t> features;       // row-major N x K
    std::vector<std::uint8_t> targets;        // N

    std::size_t rows() const { return targets.size(); }
    std::size_t cols() const { return classifier_ids.size(); }
    std::uint8_t feature(std::size_t row, std::size_t col) const {
        return features[row * cols() + col];
    }
};

// Rows are the intersection of matrix items and crowd coverage, in matrix
// item order. Throws DataError when the intersection is empty.
TrainingSet make_training_set(const LabelMatrix& matrix, const JudgmentSet& crowd);

struct CalibratedMVParams {
    double threshold = 0.5;  // grid-searched t*
    Metric target = Metric::acc;
    double train_score = 0.0;  // target metric of MV(t*) on the training set
};

struct NaiveBayesParams {
    std::array<double, 2> log_prior{};  // add-1 smoothed
    // [k][2*c + label] = log P(classifier k says label | class c)
    std::vector<std::array<double, 4>> log_conditional;
};

struct GlmParams {
    std::vector<double> beta;  // per-feature logistic coefficients
    double intercept = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

struct SvmParams {
    std::vector<double> weights;  // primal w; the kernel is the dot product
    double bias = 0.0;
    bool converged = false;
    std::size_t sweeps = 0;
};

struct AdaBoostStump {
    std::size_t feature = 0;
    bool inverted = false;  // vote +1 on feature==0 instead of feature==1
    double alpha = 0.0;
};

struct AdaBoostParams {
    std::vector<AdaBoostStump> stumps;
    std::uint8_t fallback = 1;  // training-majority class, used when empty
};

struct SupervisedModel {
    std::variant<CalibratedMVParams, NaiveBayesParams, GlmParams, SvmParams, AdaBoostParams>
        params;
    double decision_threshold = 0.5;  // probabilistic kinds (nb, glm)
    std::vector<std::string> classifier_ids;  // training feature order

    const char* kind_name() const;
};

// Grid-search t over {0.0, 0.05, ..., 1.0} for the best target metric of
// threshold voting against the targets; ties take the smallest t. Throws
// DataError when the metric is undefined at every grid point.
SupervisedModel train_calibrated_mv(const TrainingSet& train, Metric target_metric);

// Class priors and per-classifier conditionals with add-1 smoothing.
SupervisedModel train_naive_bayes(const TrainingSet& train);

// Logistic regression via iteratively reweighted least squares, ridge
// 1e-6 on all coefficients (keeps separable data finite), max 50
// iterations, coefficient-change tolerance 1e-8.
SupervisedModel train_glm(const TrainingSet& train);

// Linear SVM, hinge loss, C = 1, trained by dual coordinate descent on
// the bias-augmented formulation to duality gap 1e-4. Single-class
// training degenerates to a constant model.
SupervisedModel train_svm(const TrainingSet& train);

// Discrete AdaBoost over single-feature stumps (either polarity).
// A zero-error stump becomes the whole model; a round with weighted error
// >= 0.5 stops training; no usable stump at all falls back to the
// training-majority class.
SupervisedModel train_adaboost(const TrainingSet& train, std::size_t rounds = 50);

// Label for one feature row (classifier labels in training order).
std::uint8_t predict_row(const SupervisedModel& model, std::span<const std::uint8_t> features);

// Pseudo-gold over all matrix items. The matrix must carry the same
// classifiers in the same order as training.
JudgmentSet predict(const SupervisedModel& model, const LabelMatrix& matrix);

}  // namespace blindeval
