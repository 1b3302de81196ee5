#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blindeval/label_store.hpp"

namespace blindeval {

enum class Metric { acc = 0, pre = 1, rec = 2, spe = 3 };

inline constexpr std::array<Metric, 4> kAllMetrics{Metric::acc, Metric::pre, Metric::rec,
                                                   Metric::spe};

const char* to_string(Metric metric);
std::optional<Metric> metric_from_string(const std::string& name);

struct ConfusionCounts {
    long long tp = 0;
    long long fp = 0;
    long long tn = 0;
    long long fn = 0;

    long long total() const { return tp + fp + tn + fn; }
};

// The four classification metrics. A metric whose denominator is zero is
// undefined (nullopt) rather than clamped; downstream ranking treats
// undefined as incomparable.
struct MetricScores {
    std::array<std::optional<double>, 4> values;

    std::optional<double>& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }
    const std::optional<double>& operator[](Metric m) const {
        return values[static_cast<std::size_t>(m)];
    }
};

// Counts over two aligned binary label sequences (prediction, reference).
ConfusionCounts count_confusion(std::span<const std::uint8_t> pred,
                                std::span<const std::uint8_t> ref);

// Counts over the intersection of the two judgment sets' coverage.
// Throws DataError when the intersection is empty.
ConfusionCounts confusion(const JudgmentSet& pred, const JudgmentSet& ref);

// Counts for one classifier row against a judgment set, over the items
// the judgment set covers (and the matrix contains).
ConfusionCounts confusion(const LabelMatrix& matrix, std::size_t classifier,
                          const JudgmentSet& ref);

MetricScores scores(const ConfusionCounts& counts);

// 1 where prediction equals reference, over the intersection items in
// sorted item-id order. Feeds the paired significance tests.
std::vector<std::uint8_t> per_item_correct(const JudgmentSet& pred, const JudgmentSet& ref);
std::vector<std::uint8_t> per_item_correct(const LabelMatrix& matrix, std::size_t classifier,
                                           const JudgmentSet& ref);

// K x K row-major Jaccard overlap between the classifiers' positive item
// sets. Two empty sets count as full overlap (1).
std::vector<double> jaccard_overlap(const LabelMatrix& matrix);

// Fleiss kappa over K raters, M items, 2 categories. Undefined when
// expected agreement is 1 (all raters unanimous on one category
// everywhere).
std::optional<double> fleiss_kappa(const LabelMatrix& matrix);

}  // namespace blindeval
