#include "blindeval/synthetic.hpp"

#include <cmath>
#include <map>
#include <string>

#include "blindeval/errors.hpp"
#include "blindeval/stats.hpp"

namespace blindeval {

namespace {

constexpr std::uint64_t kStreamGold = 0x676f;     // "go"
constexpr std::uint64_t kStreamChannel = 0x6368;  // "ch"

std::string padded_id(char prefix, std::size_t index, std::size_t count) {
    std::size_t digits = 1;
    for (std::size_t v = count; v >= 10; v /= 10) ++digits;
    std::string number = std::to_string(index + 1);
    return prefix + std::string(digits - number.size(), '0') + number;
}

}  // namespace

Dataset generate(const EnsembleSpec& spec) {
    if (spec.items < 1) throw UsageError("generate: need at least one item");
    if (!(spec.prevalence > 0.0 && spec.prevalence < 1.0))
        throw UsageError("generate: prevalence must be in (0, 1)");
    if (spec.channels.empty()) throw UsageError("generate: need at least one classifier");
    for (const auto& [sens, spec_rate] : spec.channels) {
        if (!(sens >= 0.0 && sens <= 1.0 && spec_rate >= 0.0 && spec_rate <= 1.0))
            throw UsageError("generate: channel rates must be in [0, 1]");
    }
    const std::size_t K = spec.channels.size();
    const std::size_t M = spec.items;

    std::vector<std::string> classifier_ids(K);
    for (std::size_t k = 0; k < K; ++k) classifier_ids[k] = padded_id('c', k, K);
    std::vector<std::string> item_ids(M);
    for (std::size_t m = 0; m < M; ++m) item_ids[m] = padded_id('i', m, M);

    std::vector<std::uint8_t> gold(M);
    auto gold_rng = rng_stream(spec.seed, {kStreamGold});
    for (std::size_t m = 0; m < M; ++m) gold[m] = uniform01(gold_rng) < spec.prevalence ? 1 : 0;

    std::vector<std::uint8_t> labels(K * M);
    for (std::size_t k = 0; k < K; ++k) {
        auto rng = rng_stream(spec.seed, {kStreamChannel, k});
        const auto [sens, spec_rate] = spec.channels[k];
        for (std::size_t m = 0; m < M; ++m) {
            const double u = uniform01(rng);
            labels[k * M + m] = gold[m] ? (u < sens ? 1 : 0) : (u < spec_rate ? 0 : 1);
        }
    }

    std::map<std::string, std::uint8_t> gold_entries;
    for (std::size_t m = 0; m < M; ++m) gold_entries.emplace(item_ids[m], gold[m]);
    return Dataset{
        LabelMatrix(std::move(classifier_ids), std::move(item_ids), std::move(labels)),
        JudgmentSet(std::move(gold_entries), JudgmentSource::gold),
        std::nullopt,
    };
}

std::vector<std::optional<double>> enumerate_sampling_expectation(const LabelMatrix& matrix,
                                                                  Metric metric) {
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (K < 2) throw UsageError("enumerate_sampling_expectation: need at least two classifiers");
    if (M < 1) throw UsageError("enumerate_sampling_expectation: empty matrix");
    if (static_cast<double>(M) * std::log(static_cast<double>(K)) > std::log(1e6))
        throw UsageError("enumerate_sampling_expectation: K^M exceeds 10^6");

    std::vector<double> sums(K, 0.0);
    std::vector<std::size_t> defined(K, 0);
    std::vector<std::size_t> digits(M, 0);  // odometer over K^M labelings
    while (true) {
        for (std::size_t k = 0; k < K; ++k) {
            long long tp = 0;
            long long fp = 0;
            long long tn = 0;
            long long fn = 0;
            for (std::size_t m = 0; m < M; ++m) {
                const std::uint8_t truth = matrix.label(digits[m], m);
                const std::uint8_t pred = matrix.label(k, m);
                if (truth) {
                    pred ? ++tp : ++fn;
                } else {
                    pred ? ++fp : ++tn;
                }
            }
            long long num = 0;
            long long den = 0;
            switch (metric) {
                case Metric::acc: num = tp + tn; den = tp + fp + tn + fn; break;
                case Metric::pre: num = tp; den = tp + fp; break;
                case Metric::rec: num = tp; den = tp + fn; break;
                case Metric::spe: num = tn; den = tn + fp; break;
            }
            if (den > 0) {
                sums[k] += static_cast<double>(num) / static_cast<double>(den);
                ++defined[k];
            }
        }
        std::size_t pos = 0;
        while (pos < M && ++digits[pos] == K) digits[pos++] = 0;
        if (pos == M) break;
    }

    std::vector<std::optional<double>> expectation(K);
    for (std::size_t k = 0; k < K; ++k) {
        if (defined[k] > 0) expectation[k] = sums[k] / static_cast<double>(defined[k]);
    }
    return expectation;
}

JudgmentSet enumerate_em_map(const LabelMatrix& matrix, double smoothing) {
    const std::size_t K = matrix.classifier_count();
    const std::size_t M = matrix.item_count();
    if (M < 1) throw UsageError("enumerate_em_map: empty matrix");
    if (M > 19) throw UsageError("enumerate_em_map: 2^M exceeds 10^6");
    if (smoothing < 0.0) throw UsageError("enumerate_em_map: smoothing must be >= 0");
    const double eps = smoothing;

    // Deterministic majority labels (mean >= 0.5) for tie-breaking.
    std::vector<std::uint8_t> majority(M);
    for (std::size_t m = 0; m < M; ++m) {
        std::size_t ones = 0;
        for (std::size_t k = 0; k < K; ++k) ones += matrix.label(k, m);
        majority[m] = 2 * ones >= K ? 1 : 0;
    }

    const auto log_likelihood = [&](std::uint64_t bits) {
        // Counts under the hard assignment.
        double n1 = 0.0;
        for (std::size_t m = 0; m < M; ++m) n1 += (bits >> m) & 1;
        const double n0 = static_cast<double>(M) - n1;
        const double p1 = (n1 + eps) / (static_cast<double>(M) + 2.0 * eps);
        const double p0 = (n0 + eps) / (static_cast<double>(M) + 2.0 * eps);

        double ll = n1 * std::log(p1) + n0 * std::log(p0);
        if (eps > 0.0) ll += eps * (std::log(p0) + std::log(p1));
        for (std::size_t k = 0; k < K; ++k) {
            double c[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
            for (std::size_t m = 0; m < M; ++m)
                c[(bits >> m) & 1][matrix.label(k, m)] += 1.0;
            for (int i = 0; i < 2; ++i) {
                const double row = c[i][0] + c[i][1];
                for (int j = 0; j < 2; ++j) {
                    const double pi = (c[i][j] + eps) / (row + 2.0 * eps);
                    ll += c[i][j] * std::log(pi);
                    if (eps > 0.0) ll += eps * std::log(pi);
                }
            }
        }
        return ll;
    };

    const auto agreement = [&](std::uint64_t bits) {
        std::size_t score = 0;
        for (std::size_t m = 0; m < M; ++m) score += ((bits >> m) & 1) == majority[m];
        return score;
    };
    const auto lex_less = [&](std::uint64_t a, std::uint64_t b) {
        for (std::size_t m = 0; m < M; ++m) {
            const std::uint64_t bit_a = (a >> m) & 1;
            const std::uint64_t bit_b = (b >> m) & 1;
            if (bit_a != bit_b) return bit_a < bit_b;
        }
        return false;
    };

    std::uint64_t best_bits = 0;
    double best_ll = log_likelihood(0);
    std::size_t best_agreement = agreement(0);
    const double tol = 1e-9;
    for (std::uint64_t bits = 1; bits < (1ULL << M); ++bits) {
        const double ll = log_likelihood(bits);
        if (ll > best_ll + tol) {
            best_bits = bits;
            best_ll = ll;
            best_agreement = agreement(bits);
            continue;
        }
        if (ll < best_ll - tol) continue;
        const std::size_t agree = agreement(bits);
        if (agree > best_agreement || (agree == best_agreement && lex_less(bits, best_bits))) {
            best_bits = bits;
            best_ll = std::max(best_ll, ll);
            best_agreement = agree;
        }
    }

    std::map<std::string, std::uint8_t> entries;
    for (std::size_t m = 0; m < M; ++m)
        entries.emplace(matrix.item_ids()[m], static_cast<std::uint8_t>((best_bits >> m) & 1));
    return JudgmentSet(std::move(entries), JudgmentSource::pseudo_gold, "em_map_oracle");
}

}  // namespace blindeval
