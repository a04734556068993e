#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's closed forms or its PRNG.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int k = 1; k < n; ++k) sum += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Pr(|h| >= x) for a Rayleigh amplitude with E|h|^2 = omega, by integrating the pdf.
inline double rayleigh_tail_by_quadrature(double x, double omega) {
    const auto pdf = [omega](double r) { return 2.0 * r / omega * std::exp(-r * r / omega); };
    const double upper = x + 40.0 * std::sqrt(omega);
    return simpson(pdf, x, upper, 200000);
}

// Pr(X >= t Y) for independent unit exponentials: int_0^inf e^{-y} e^{-t y} dy.
inline double exp_ratio_tail_by_quadrature(double t) {
    const auto f = [t](double y) { return std::exp(-y) * std::exp(-t * y); };
    return simpson(f, 0.0, 60.0 / (1.0 + t), 200000);
}

// Brute-force Pr(g_i d_i^-eta >= threshold * sum_{j != i} g_j d_j^-eta) with
// std::mt19937_64 and std::exponential_distribution.
inline double interference_tail_by_sampling(const std::vector<double>& d, double eta, std::size_t i,
                                            double threshold, std::uint64_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::exponential_distribution<double> expo(1.0);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
        double own = 0.0, others = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double g = expo(gen) * std::pow(d[j], -eta);
            (j == i ? own : others) += g;
        }
        if (own >= threshold * others) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

// A^t x0 by repeated squaring.
inline Eigen::VectorXd power_apply(const Eigen::MatrixXd& a, unsigned t, const Eigen::VectorXd& x0) {
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd base = a;
    while (t) {
        if (t & 1u) result = result * base;
        base = base * base;
        t >>= 1u;
    }
    return result * x0;
}

inline double binomial_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace oracle
