#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace distinguish {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Hermite rule for the weight exp(-x^2), via Newton iteration
/// on the orthonormal Hermite recurrence.
inline QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite needs n >= 1");
    constexpr double kEps = 1e-15;
    constexpr int kMaxIter = 100;
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);

    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    auto& x = rule.nodes;
    auto& w = rule.weights;
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < kMaxIter; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
    }
    return rule;
}

/// Symmetric discrete approximation of a zero-mean wrapped normal phase
/// distribution whose first circular moment <cos phi> equals `mean_cos`.
/// Narrow distributions use Gauss-Hermite nodes on the unwrapped normal;
/// wide ones use equispaced nodes on the circle weighted by the wrapped
/// density (Fourier series rho^{k^2} cos k phi).
inline QuadratureRule wrapped_normal_rule(double mean_cos, int n) {
    if (!(mean_cos >= 0.0 && mean_cos <= 1.0)) {
        throw std::invalid_argument("wrapped_normal_rule: mean_cos outside [0,1]");
    }
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("wrapped_normal_rule needs odd n >= 3");

    const double rho = mean_cos;
    constexpr double kNarrowSigma = 0.5;
    if (rho > std::exp(-0.5 * kNarrowSigma * kNarrowSigma)) {
        const double sigma = std::sqrt(-2.0 * std::log(rho));
        QuadratureRule gh = gauss_hermite(n);
        for (int i = 0; i < n; ++i) {
            gh.nodes[i] *= std::numbers::sqrt2 * sigma;
            gh.weights[i] /= std::sqrt(std::numbers::pi);
        }
        double total = 0.0;
        for (double w : gh.weights) total += w;
        for (double& w : gh.weights) w /= total;
        return gh;
    }

    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const int half = n / 2;
    double total = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n;
        double density = 1.0;
        for (int k = 1; k < 64; ++k) {
            const double term = std::pow(rho, static_cast<double>(k) * k);
            if (term < 1e-300) break;
            density += 2.0 * term * std::cos(k * phi);
        }
        rule.nodes[j + half] = phi;
        rule.weights[j + half] = density;
        total += density;
    }
    for (double& w : rule.weights) w /= total;
    return rule;
}

}  // namespace distinguish
