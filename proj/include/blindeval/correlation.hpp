#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blindeval {

// Sample Pearson correlation; undefined when either vector has zero
// variance. Inputs must be finite and equal length n >= 2.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Average (fractional) ranks, 1-based; ties share their mean position.
std::vector<double> fractional_ranks(std::span<const double> x);

// Pearson correlation of the fractional ranks.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

enum class TauVariant { b, a };  // b = tie-corrected (the default)

// Kendall rank correlation via O(n log n) pair counting. tau-b divides by
// sqrt((P - Tx)(P - Ty)) and is undefined when either vector is all tied;
// tau-a divides by P = n(n-1)/2.
std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y,
                                  TauVariant variant = TauVariant::b);

// Percentage of discordant pairs among the pairs untied in BOTH inputs
// (ranks or raw scores, the pair census only uses order). Undefined when
// no pair is eligible.
std::optional<double> swap_pct(std::span<const double> rank_x, std::span<const double> rank_y);

// All four fidelity measures for one metric. Rank measures are meant to
// be fed rankings (competition ranks); pearson the raw scores.
struct CorrelationReport {
    std::size_t n = 0;
    std::optional<double> pearson_r;
    std::optional<double> spearman_rho;
    std::optional<double> kendall_tau;
    std::optional<double> swap_pct;
};

// Dependent-correlation comparison for two correlations sharing variable
// x: are r_xy and r_xz significantly different, given r_yz? df = n - 3.
// An infeasible correlation triple (non-positive discriminant) yields an
// undefined verdict with the diagnostic kept in note.
struct TriangleVerdict {
    std::optional<double> t_statistic;
    std::optional<double> p_value;
    std::size_t df = 0;
    bool significant_05 = false;
    bool significant_01 = false;
    std::string note;
};

// Requires n >= 4 and |r| < 1 for all three correlations (throws
// DataError otherwise; +-1 correlations make the statistic degenerate).
TriangleVerdict triangle_test(double r_xy, double r_xz, double r_yz, std::size_t n);

}  // namespace blindeval
