#include "blindeval/ranking.hpp"

#include <cmath>
#include <limits>

#include "blindeval/errors.hpp"
#include "blindeval/stats.hpp"

namespace blindeval {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must be in (0, 1)");
}

PairedTestResult trivial_tie(std::size_t n) {
    PairedTestResult r;
    r.verdict = Verdict::tie;
    r.t_statistic = 0.0;
    r.p_value = 1.0;
    r.n = n;
    return r;
}

// Shared scaffolding for both evidence builders: runs the pair tests and
// fills the antisymmetric matrix, given a callback producing the aligned
// evidence vectors for one pair.
template <class EvidenceFn>
PairwiseVerdicts build_verdicts(std::vector<std::string> ids, Metric metric, double alpha,
                                std::vector<std::uint8_t> excluded, EvidenceFn&& evidence) {
    const std::size_t K = ids.size();
    PairwiseVerdicts out;
    out.classifier_ids = std::move(ids);
    out.metric = metric;
    out.alpha = alpha;
    out.excluded = std::move(excluded);
    out.verdicts.assign(K * K, Verdict::tie);
    out.p_values.assign(K * K, 1.0);

    std::vector<double> ev_a;
    std::vector<double> ev_b;
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = a + 1; b < K; ++b) {
            PairedTestResult r;
            if (out.excluded[a] || out.excluded[b]) {
                r = trivial_tie(0);
            } else {
                ev_a.clear();
                ev_b.clear();
                evidence(a, b, ev_a, ev_b);
                r = ev_a.size() < 2 ? trivial_tie(ev_a.size()) : paired_test(ev_a, ev_b, alpha);
            }
            out.verdicts[a * K + b] = r.verdict;
            out.verdicts[b * K + a] = r.verdict == Verdict::win    ? Verdict::loss
                                      : r.verdict == Verdict::loss ? Verdict::win
                                                                   : Verdict::tie;
            out.p_values[a * K + b] = r.p_value;
            out.p_values[b * K + a] = r.p_value;
        }
    }
    return out;
}

}  // namespace

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::win: return "win";
        case Verdict::loss: return "loss";
        case Verdict::tie: return "tie";
    }
    return "unknown";
}

PairedTestResult paired_test(std::span<const double> a, std::span<const double> b, double alpha) {
    check_alpha(alpha);
    if (a.size() != b.size()) throw UsageError("paired_test: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw UsageError("paired_test: need at least two pairs");

    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    const double mean = pairwise_sum(diff) / static_cast<double>(n);

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (diff[i] - mean) * (diff[i] - mean);
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);

    PairedTestResult result;
    result.n = n;
    if (var == 0.0) {
        if (mean == 0.0) return trivial_tie(n);
        // Constant nonzero difference: the statistic diverges.
        result.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), mean);
        result.p_value = 0.0;
        result.verdict = mean > 0.0 ? Verdict::win : Verdict::loss;
        return result;
    }
    result.t_statistic = mean / std::sqrt(var / static_cast<double>(n));
    result.p_value = student_t_two_tailed_p(result.t_statistic, static_cast<double>(n - 1));
    if (result.p_value < alpha) {
        result.verdict = mean > 0.0 ? Verdict::win : Verdict::loss;
    }
    return result;
}

PairwiseVerdicts pairwise_from_judgments(const LabelMatrix& matrix, const JudgmentSet& ref,
                                         Metric metric, double alpha) {
    check_alpha(alpha);
    const std::size_t K = matrix.classifier_count();

    // Common items, in stored matrix order.
    std::vector<std::size_t> items;
    std::vector<std::uint8_t> ref_label;
    for (const auto& [item_id, label] : ref.entries()) {
        if (const auto m = matrix.item_index(item_id)) {
            items.push_back(*m);
            ref_label.push_back(label);
        }
    }
    if (items.empty()) throw DataError("pairwise_from_judgments: empty item intersection");

    std::vector<std::uint8_t> excluded(K, 0);
    for (std::size_t k = 0; k < K; ++k) {
        ConfusionCounts counts;
        for (std::size_t i = 0; i < items.size(); ++i) {
            const std::uint8_t pred = matrix.label(k, items[i]);
            if (ref_label[i]) {
                pred ? ++counts.tp : ++counts.fn;
            } else {
                pred ? ++counts.fp : ++counts.tn;
            }
        }
        excluded[k] = scores(counts)[metric].has_value() ? 0 : 1;
    }

    auto evidence = [&](std::size_t a, std::size_t b, std::vector<double>& ev_a,
                        std::vector<double>& ev_b) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            const std::uint8_t pa = matrix.label(a, items[i]);
            const std::uint8_t pb = matrix.label(b, items[i]);
            const std::uint8_t r = ref_label[i];
            switch (metric) {
                case Metric::acc:
                    ev_a.push_back(pa == r ? 1.0 : 0.0);
                    ev_b.push_back(pb == r ? 1.0 : 0.0);
                    break;
                case Metric::rec:
                    if (r == 1) {
                        ev_a.push_back(pa);
                        ev_b.push_back(pb);
                    }
                    break;
                case Metric::spe:
                    if (r == 0) {
                        ev_a.push_back(pa == 0 ? 1.0 : 0.0);
                        ev_b.push_back(pb == 0 ? 1.0 : 0.0);
                    }
                    break;
                case Metric::pre:
                    if (pa == 1 && pb == 1) {
                        ev_a.push_back(r);
                        ev_b.push_back(r);
                    }
                    break;
            }
        }
    };
    return build_verdicts(matrix.classifier_ids(), metric, alpha, std::move(excluded), evidence);
}

PairwiseVerdicts pairwise_from_trials(const EstimatedScores& est, Metric metric, double alpha) {
    check_alpha(alpha);
    const std::size_t K = est.classifier_ids.size();
    std::vector<std::uint8_t> excluded(K, 0);
    for (std::size_t k = 0; k < K; ++k) excluded[k] = est.means[k][metric].has_value() ? 0 : 1;

    auto evidence = [&](std::size_t a, std::size_t b, std::vector<double>& ev_a,
                        std::vector<double>& ev_b) {
        for (std::size_t t = 0; t < est.trial_count; ++t) {
            const auto& ta = est.trials[a][t];
            const auto& tb = est.trials[b][t];
            if (!ta || !tb) continue;
            const auto va = (*ta)[metric];
            const auto vb = (*tb)[metric];
            if (!va || !vb) continue;
            ev_a.push_back(*va);
            ev_b.push_back(*vb);
        }
    };
    return build_verdicts(est.classifier_ids, metric, alpha, std::move(excluded), evidence);
}

RankingWithTies copeland_rank(const PairwiseVerdicts& verdicts,
                              std::span<const std::optional<double>> means) {
    const std::size_t K = verdicts.size();
    if (verdicts.verdicts.size() != K * K || verdicts.p_values.size() != K * K ||
        verdicts.excluded.size() != K)
        throw UsageError("copeland_rank: malformed verdict matrix");
    if (!means.empty() && means.size() != K) throw UsageError("copeland_rank: means size mismatch");
    for (std::size_t a = 0; a < K; ++a) {
        if (verdicts.verdict(a, a) != Verdict::tie)
            throw UsageError("copeland_rank: non-tie diagonal");
        for (std::size_t b = 0; b < K; ++b) {
            const Verdict ab = verdicts.verdict(a, b);
            const Verdict ba = verdicts.verdict(b, a);
            const bool ok = (ab == Verdict::tie && ba == Verdict::tie) ||
                            (ab == Verdict::win && ba == Verdict::loss) ||
                            (ab == Verdict::loss && ba == Verdict::win);
            if (!ok) throw UsageError("copeland_rank: verdict matrix not antisymmetric");
        }
    }

    RankingWithTies ranking;
    ranking.entries.resize(K);
    std::vector<int> copeland(K, 0);
    for (std::size_t a = 0; a < K; ++a) {
        if (verdicts.excluded[a]) continue;
        int score = 0;
        for (std::size_t b = 0; b < K; ++b) {
            if (b == a || verdicts.excluded[b]) continue;
            if (verdicts.verdict(a, b) == Verdict::win) ++score;
            if (verdicts.verdict(a, b) == Verdict::loss) --score;
        }
        copeland[a] = score;
    }
    for (std::size_t a = 0; a < K; ++a) {
        RankingEntry& entry = ranking.entries[a];
        entry.classifier_id = verdicts.classifier_ids[a];
        if (!means.empty()) entry.score = means[a];
        if (verdicts.excluded[a]) continue;
        entry.copeland = copeland[a];
        std::size_t better = 0;
        for (std::size_t b = 0; b < K; ++b) {
            if (b == a || verdicts.excluded[b]) continue;
            if (copeland[b] > copeland[a]) ++better;
        }
        entry.rank = better + 1;
    }
    return ranking;
}

}  // namespace blindeval
