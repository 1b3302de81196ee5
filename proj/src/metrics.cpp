#include "blindeval/metrics.hpp"

#include "blindeval/errors.hpp"

namespace blindeval {

const char* to_string(Metric metric) {
    switch (metric) {
        case Metric::acc: return "acc";
        case Metric::pre: return "pre";
        case Metric::rec: return "rec";
        case Metric::spe: return "spe";
    }
    return "unknown";
}

std::optional<Metric> metric_from_string(const std::string& name) {
    if (name == "acc") return Metric::acc;
    if (name == "pre") return Metric::pre;
    if (name == "rec") return Metric::rec;
    if (name == "spe") return Metric::spe;
    return std::nullopt;
}

ConfusionCounts count_confusion(std::span<const std::uint8_t> pred,
                                std::span<const std::uint8_t> ref) {
    if (pred.size() != ref.size()) throw UsageError("confusion: length mismatch");
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (ref[i]) {
            pred[i] ? ++c.tp : ++c.fn;
        } else {
            pred[i] ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

ConfusionCounts confusion(const JudgmentSet& pred, const JudgmentSet& ref) {
    ConfusionCounts c;
    for (const auto& [item_id, ref_label] : ref.entries()) {
        const auto pred_label = pred.label(item_id);
        if (!pred_label) continue;
        if (ref_label) {
            *pred_label ? ++c.tp : ++c.fn;
        } else {
            *pred_label ? ++c.fp : ++c.tn;
        }
    }
    if (c.total() == 0) throw DataError("confusion: empty item intersection");
    return c;
}

ConfusionCounts confusion(const LabelMatrix& matrix, std::size_t classifier,
                          const JudgmentSet& ref) {
    ConfusionCounts c;
    for (const auto& [item_id, ref_label] : ref.entries()) {
        const auto m = matrix.item_index(item_id);
        if (!m) continue;
        const std::uint8_t pred_label = matrix.label(classifier, *m);
        if (ref_label) {
            pred_label ? ++c.tp : ++c.fn;
        } else {
            pred_label ? ++c.fp : ++c.tn;
        }
    }
    if (c.total() == 0) throw DataError("confusion: empty item intersection");
    return c;
}

MetricScores scores(const ConfusionCounts& c) {
    if (c.total() <= 0) throw UsageError("scores: no evaluated items");
    const auto ratio = [](long long num, long long den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    MetricScores s;
    s[Metric::acc] = ratio(c.tp + c.tn, c.total());
    s[Metric::pre] = ratio(c.tp, c.tp + c.fp);
    s[Metric::rec] = ratio(c.tp, c.tp + c.fn);
    s[Metric::spe] = ratio(c.tn, c.tn + c.fp);
    return s;
}

std::vector<std::uint8_t> per_item_correct(const JudgmentSet& pred, const JudgmentSet& ref) {
    std::vector<std::uint8_t> correct;
    for (const auto& [item_id, ref_label] : ref.entries()) {
        const auto pred_label = pred.label(item_id);
        if (!pred_label) continue;
        correct.push_back(*pred_label == ref_label ? 1 : 0);
    }
    if (correct.empty()) throw DataError("per_item_correct: empty item intersection");
    return correct;
}

std::vector<std::uint8_t> per_item_correct(const LabelMatrix& matrix, std::size_t classifier,
                                           const JudgmentSet& ref) {
    std::vector<std::uint8_t> correct;
    for (const auto& [item_id, ref_label] : ref.entries()) {
        const auto m = matrix.item_index(item_id);
        if (!m) continue;
        correct.push_back(matrix.label(classifier, *m) == ref_label ? 1 : 0);
    }
    if (correct.empty()) throw DataError("per_item_correct: empty item intersection");
    return correct;
}

std::vector<double> jaccard_overlap(const LabelMatrix& matrix) {
    const std::size_t K = matrix.classifier_count();
    if (K < 2) throw UsageError("jaccard_overlap: need at least two classifiers");
    const std::size_t M = matrix.item_count();
    std::vector<double> overlap(K * K, 1.0);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = a + 1; b < K; ++b) {
            long long inter = 0;
            long long uni = 0;
            for (std::size_t m = 0; m < M; ++m) {
                const bool in_a = matrix.label(a, m) != 0;
                const bool in_b = matrix.label(b, m) != 0;
                inter += (in_a && in_b);
                uni += (in_a || in_b);
            }
            const double value = uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
            overlap[a * K + b] = value;
            overlap[b * K + a] = value;
        }
    }
    return overlap;
}

std::optional<double> fleiss_kappa(const LabelMatrix& matrix) {
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (K < 2) throw UsageError("fleiss_kappa: need at least two raters");
    if (M < 1) throw UsageError("fleiss_kappa: need at least one item");

    double sum_item_agreement = 0.0;
    double total_positive = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        long long ones = 0;
        for (std::size_t k = 0; k < K; ++k) ones += matrix.label(k, m);
        const long long zeros = static_cast<long long>(K) - ones;
        sum_item_agreement += static_cast<double>(ones * (ones - 1) + zeros * (zeros - 1)) /
                              static_cast<double>(K * (K - 1));
        total_positive += static_cast<double>(ones);
    }
    const double p_bar = sum_item_agreement / static_cast<double>(M);
    const double p1 = total_positive / static_cast<double>(M * K);
    const double p_e = p1 * p1 + (1.0 - p1) * (1.0 - p1);
    if (p_e >= 1.0) return std::nullopt;
    return (p_bar - p_e) / (1.0 - p_e);
}

}  // namespace blindeval
