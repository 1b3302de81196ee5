#include "blindeval/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace blindeval {

namespace {

// Continued fraction for the incomplete beta function, modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
    const double tiny = 1e-300;
    const double tol = 1e-15;
    const int max_terms = 300;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= max_terms; ++m) {
        const double m2 = 2.0 * m;
        // even step
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        // odd step
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < tol) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta: a, b must be > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("student_t_cdf: df must be > 0");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_two_tailed_p(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("student_t_two_tailed_p: df must be > 0");
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(0.5 * df, 0.5, x);
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_state(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = splitmix64(seed);
    for (std::uint64_t p : path) {
        state = splitmix64(state ^ splitmix64(p));
    }
    return state;
}

std::mt19937_64 rng_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    return std::mt19937_64(derive_state(seed, path));
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

bool coin_flip(std::mt19937_64& gen) {
    return (gen() & 1ULL) != 0;
}

}  // namespace blindeval
