#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace testoracle {
namespace {

double t_density(double x, double df) {
    const double c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                     0.5 * std::log(df * M_PI);
    return std::exp(c - ((df + 1.0) / 2.0) * std::log1p(x * x / df));
}

double simpson(double (*f)(double, double), double df, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a, df) + 4.0 * f(m, df) + f(b, df));
}

double adaptive(double (*f)(double, double), double df, double a, double b, double whole,
                double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, df, a, m);
    const double right = simpson(f, df, m, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, df, a, m, left, eps / 2.0, depth - 1) +
           adaptive(f, df, m, b, right, eps / 2.0, depth - 1);
}

double integrate_density(double df, double a, double b) {
    return adaptive(&t_density, df, a, b, simpson(&t_density, df, a, b), 1e-13, 40);
}

}  // namespace

double t_cdf(double t, double df) {
    if (t == 0.0) return 0.5;
    const double area = integrate_density(df, 0.0, std::abs(t));
    return t > 0.0 ? 0.5 + area : 0.5 - area;
}

double t_two_tailed_p(double t, double df) {
    const double p = 2.0 * (1.0 - t_cdf(std::abs(t), df));
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

PairCensus census(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("census: length mismatch");
    PairCensus c;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ++c.total;
            const bool tx = x[i] == x[j];
            const bool ty = y[i] == y[j];
            if (tx && ty) {
                ++c.tied_both;
            } else if (tx) {
                ++c.tied_x;
            } else if (ty) {
                ++c.tied_y;
            } else if ((x[i] < x[j]) == (y[i] < y[j])) {
                ++c.concordant;
            } else {
                ++c.discordant;
            }
        }
    }
    return c;
}

std::optional<double> tau_b(const PairCensus& c) {
    // Tie counts here are exclusive; the classical Tx/Ty include joint ties.
    const double px = static_cast<double>(c.total - c.tied_x - c.tied_both);
    const double py = static_cast<double>(c.total - c.tied_y - c.tied_both);
    if (px == 0.0 || py == 0.0) return std::nullopt;
    return std::clamp(static_cast<double>(c.concordant - c.discordant) / std::sqrt(px * py),
                      -1.0, 1.0);
}

std::optional<double> tau_a(const PairCensus& c) {
    if (c.total == 0) return std::nullopt;
    return static_cast<double>(c.concordant - c.discordant) / static_cast<double>(c.total);
}

std::optional<double> swap_pct(const PairCensus& c) {
    const long long untied = c.concordant + c.discordant;
    if (untied == 0) return std::nullopt;
    return 100.0 * static_cast<double>(c.discordant) / static_cast<double>(untied);
}

double pearson_naive(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    long double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const long double mx = sx / n, my = sy / n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

std::vector<double> logistic_gd(const std::vector<double>& features, std::size_t n,
                                std::size_t k, const std::vector<double>& targets,
                                double ridge, double learning_rate, std::size_t iters) {
    std::vector<double> beta(k + 1, 0.0);
    std::vector<double> grad(k + 1);
    for (std::size_t it = 0; it < iters; ++it) {
        for (auto& g : grad) g = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double eta = beta[k];
            for (std::size_t j = 0; j < k; ++j) eta += beta[j] * features[i * k + j];
            const double mu = 1.0 / (1.0 + std::exp(-eta));
            const double r = mu - targets[i];
            for (std::size_t j = 0; j < k; ++j) grad[j] += r * features[i * k + j];
            grad[k] += r;
        }
        for (std::size_t j = 0; j <= k; ++j)
            beta[j] -= learning_rate * (grad[j] + ridge * beta[j]);
    }
    return beta;
}

double svm_primal(const std::vector<double>& weights, double bias, double cost,
                  const std::vector<double>& features, std::size_t n, std::size_t k,
                  const std::vector<double>& targets) {
    double obj = 0.5 * bias * bias;
    for (std::size_t j = 0; j < k; ++j) obj += 0.5 * weights[j] * weights[j];
    for (std::size_t i = 0; i < n; ++i) {
        double g = bias;
        for (std::size_t j = 0; j < k; ++j) g += weights[j] * features[i * k + j];
        const double y = targets[i] > 0.5 ? 1.0 : -1.0;
        const double hinge = 1.0 - y * g;
        if (hinge > 0.0) obj += cost * hinge;
    }
    return obj;
}

std::vector<double> svm_subgradient(const std::vector<double>& features, std::size_t n,
                                    std::size_t k, const std::vector<double>& targets,
                                    double cost, std::size_t iters) {
    std::vector<double> w(k + 1, 0.0);
    std::vector<double> g(k + 1);
    for (std::size_t it = 0; it < iters; ++it) {
        for (std::size_t j = 0; j <= k; ++j) g[j] = w[j];
        for (std::size_t i = 0; i < n; ++i) {
            double margin = w[k];
            for (std::size_t j = 0; j < k; ++j) margin += w[j] * features[i * k + j];
            const double y = targets[i] > 0.5 ? 1.0 : -1.0;
            if (y * margin < 1.0) {
                for (std::size_t j = 0; j < k; ++j) g[j] -= cost * y * features[i * k + j];
                g[k] -= cost * y;
            }
        }
        const double step = 1.0 / (1.0 + static_cast<double>(it) * 0.01);
        for (std::size_t j = 0; j <= k; ++j) w[j] -= 0.01 * step * g[j];
    }
    return w;
}

}  // namespace testoracle
