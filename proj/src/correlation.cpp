#include "blindeval/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blindeval/errors.hpp"
#include "blindeval/stats.hpp"

namespace blindeval {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw UsageError("correlation: length mismatch");
    if (x.size() < 2) throw UsageError("correlation: need at least two points");
    for (double v : x)
        if (!std::isfinite(v)) throw DataError("correlation: non-finite value");
    for (double v : y)
        if (!std::isfinite(v)) throw DataError("correlation: non-finite value");
}

// Census of the n(n-1)/2 pairs: ties per side, joint ties, and discordant
// pairs (strictly opposite order). Concordant count follows from these.
struct PairCensus {
    long long total = 0;
    long long tied_x = 0;
    long long tied_y = 0;
    long long tied_both = 0;
    long long discordant = 0;
};

long long run_pairs(long long run) { return run * (run - 1) / 2; }

// Merge-sort inversion count; equal elements are not inversions.
long long count_inversions(std::vector<double>& values, std::vector<double>& scratch,
                           std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    long long count = count_inversions(values, scratch, lo, mid) +
                      count_inversions(values, scratch, mid, hi);
    std::size_t a = lo;
    std::size_t b = mid;
    for (std::size_t out = lo; out < hi; ++out) {
        if (a < mid && (b >= hi || values[a] <= values[b])) {
            scratch[out] = values[a++];
        } else {
            count += static_cast<long long>(mid - a);
            scratch[out] = values[b++];
        }
    }
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              values.begin() + static_cast<std::ptrdiff_t>(lo));
    return count;
}

PairCensus pair_census(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    PairCensus census;
    census.total = run_pairs(static_cast<long long>(n));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    // Tie runs in x and joint (x, y) runs over the sorted order.
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        census.tied_x += run_pairs(static_cast<long long>(j - i));
        for (std::size_t u = i; u < j;) {
            std::size_t v = u;
            while (v < j && y[order[v]] == y[order[u]]) ++v;
            census.tied_both += run_pairs(static_cast<long long>(v - u));
            u = v;
        }
        i = j;
    }
    {
        std::vector<double> ys(y.begin(), y.end());
        std::sort(ys.begin(), ys.end());
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j < n && ys[j] == ys[i]) ++j;
            census.tied_y += run_pairs(static_cast<long long>(j - i));
            i = j;
        }
    }

    // y values in x order; sorting within x groups by y means within-group
    // pairs never invert, so inversions = discordant pairs exactly.
    std::vector<double> seq(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = y[order[i]];
    std::vector<double> scratch(n);
    census.discordant = count_inversions(seq, scratch, 0, n);
    return census;
}

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::size_t n = x.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x *= inv_n;
    mean_y *= inv_n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j - 1) + 1.0;  // mean of positions i..j-1
        for (std::size_t u = i; u < j; ++u) ranks[order[u]] = avg;
        i = j;
    }
    return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    return pearson(fractional_ranks(x), fractional_ranks(y));
}

std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y,
                                  TauVariant variant) {
    check_pair(x, y);
    const PairCensus census = pair_census(x, y);
    const long long concordant =
        census.total - census.tied_x - census.tied_y + census.tied_both - census.discordant;
    const double numerator = static_cast<double>(concordant - census.discordant);
    if (variant == TauVariant::a)
        return std::clamp(numerator / static_cast<double>(census.total), -1.0, 1.0);
    const double dx = static_cast<double>(census.total - census.tied_x);
    const double dy = static_cast<double>(census.total - census.tied_y);
    if (dx == 0.0 || dy == 0.0) return std::nullopt;
    return std::clamp(numerator / std::sqrt(dx * dy), -1.0, 1.0);
}

std::optional<double> swap_pct(std::span<const double> rank_x, std::span<const double> rank_y) {
    check_pair(rank_x, rank_y);
    const PairCensus census = pair_census(rank_x, rank_y);
    const long long eligible =
        census.total - census.tied_x - census.tied_y + census.tied_both;
    if (eligible == 0) return std::nullopt;
    return 100.0 * static_cast<double>(census.discordant) / static_cast<double>(eligible);
}

TriangleVerdict triangle_test(double r_xy, double r_xz, double r_yz, std::size_t n) {
    for (double r : {r_xy, r_xz, r_yz}) {
        if (!std::isfinite(r) || std::abs(r) > 1.0)
            throw DataError("triangle_test: correlations must lie in [-1, 1]");
        if (std::abs(r) == 1.0)
            throw DataError("triangle_test: degenerate at |r| = 1");
    }
    if (n < 4) throw DataError("triangle_test: need n >= 4");

    TriangleVerdict verdict;
    verdict.df = n - 3;
    const double det =
        1.0 - r_xy * r_xy - r_xz * r_xz - r_yz * r_yz + 2.0 * r_xy * r_xz * r_yz;
    if (det <= 0.0) {
        verdict.note = "non-positive discriminant; correlation triple infeasible";
        return verdict;
    }
    const double t = (r_xy - r_xz) *
                     std::sqrt(static_cast<double>(n - 3) * (1.0 + r_yz)) /
                     std::sqrt(2.0 * det);
    verdict.t_statistic = t;
    verdict.p_value = student_t_two_tailed_p(t, static_cast<double>(verdict.df));
    verdict.significant_05 = *verdict.p_value < 0.05;
    verdict.significant_01 = *verdict.p_value < 0.01;
    return verdict;
}

}  // namespace blindeval
