#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace blindeval {

// Regularized incomplete beta function I_x(a, b), relative accuracy ~1e-14
// via the Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with df degrees of freedom.
double student_t_cdf(double t, double df);

// Two-tailed p-value for an observed t statistic: P(|T| >= |t|).
double student_t_two_tailed_p(double t, double df);

// Pairwise (cascade) summation. Deterministic regardless of how callers
// chunk the input, and better conditioned than a running sum.
double pairwise_sum(std::span<const double> values);

// SplitMix64 step, used to derive independent RNG streams.
std::uint64_t splitmix64(std::uint64_t x);

// Mixes (seed, path) into one 64-bit state. Different paths give
// independent states for the same seed.
std::uint64_t derive_state(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

// Deterministic RNG stream for (seed, path). Streams for different paths
// are independent, so trials can run serially or in parallel with
// identical results.
std::mt19937_64 rng_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

// Minimal generator for cases that need one independent stream per item
// or per trial; constructing mt19937_64 that often would dominate.
struct SplitMix64 {
    using result_type = std::uint64_t;
    std::uint64_t state = 0;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }
    result_type operator()() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// FNV-1a hash, for deriving per-item streams from item ids.
std::uint64_t fnv1a64(std::string_view text);

// Unbiased integer in [0, n) by rejection. Library distributions are
// implementation-defined; these keep results identical across toolchains.
template <class Gen>
std::uint64_t uniform_below(Gen& gen, std::uint64_t n) {
    const std::uint64_t rem = (~0ULL % n + 1) % n;  // 2^64 mod n
    std::uint64_t value = gen();
    if (rem != 0) {
        while (value > ~0ULL - rem) value = gen();
    }
    return value % n;
}

// Uniform double in [0, 1) with 53 random bits.
template <class Gen>
double uniform01(Gen& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// One fair coin flip from a generator.
bool coin_flip(std::mt19937_64& gen);

}  // namespace blindeval
