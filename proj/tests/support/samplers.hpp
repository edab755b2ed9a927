#pragma once

// Reference samplers for the test suites. Deliberately separate from the
// library's generators so either side can expose a bug in the other; all
// draws are fully determined by the seed.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testlib {

inline double uni(std::mt19937_64& g) {
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

// Devroye's rejection sampler for the Zipf distribution on {1, 2, ...}
// with exponent alpha > 1.
inline std::vector<double> zipf_sample(double alpha, std::size_t n,
                                       std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<double> out;
    out.reserve(n);
    const double b = std::pow(2.0, alpha - 1.0);
    while (out.size() < n) {
        const double u = uni(g);
        const double v = uni(g);
        const double x = std::floor(std::pow(u, -1.0 / (alpha - 1.0)));
        const double t = std::pow(1.0 + 1.0 / x, alpha - 1.0);
        if (v * x * (t - 1.0) / (b - 1.0) <= t / b) out.push_back(x);
    }
    return out;
}

// Zipf draws conditioned on x >= xmin. Conditioning a power law on its
// own upper support leaves a power law with the same exponent.
inline std::vector<double> zipf_tail(double alpha, double xmin, std::size_t n,
                                     std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<double> out;
    out.reserve(n);
    const double b = std::pow(2.0, alpha - 1.0);
    while (out.size() < n) {
        const double u = uni(g);
        const double v = uni(g);
        const double x = std::floor(std::pow(u, -1.0 / (alpha - 1.0)));
        const double t = std::pow(1.0 + 1.0 / x, alpha - 1.0);
        if (v * x * (t - 1.0) / (b - 1.0) <= t / b && x >= xmin)
            out.push_back(x);
    }
    return out;
}

// Box-Muller lognormal, rejecting any draw below `low`.
inline std::vector<double> lognormal_sample(double mu, double sigma,
                                            std::size_t n, std::uint64_t seed,
                                            double low = 0.0) {
    std::mt19937_64 g(seed);
    std::vector<double> out;
    out.reserve(n);
    while (out.size() < n) {
        const double u1 = uni(g);
        const double u2 = uni(g);
        const double z =
            std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        const double x = std::exp(mu + sigma * z);
        if (x >= low) out.push_back(x);
    }
    return out;
}

// low + Exp(lambda) by inversion.
inline std::vector<double> exponential_sample(double lambda, double low,
                                              std::size_t n,
                                              std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(low - std::log(uni(g)) / lambda);
    return out;
}

}  // namespace testlib
