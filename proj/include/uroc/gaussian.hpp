#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "uroc/detail/format.hpp"
#include "uroc/error.hpp"

namespace uroc {

constexpr std::array<std::array<double, 4>, 4> default_covariance() {
    return {{{1.0, 0.8, 0.5, 0.2},
             {0.8, 1.0, 0.8, 0.5},
             {0.5, 0.8, 1.0, 0.8},
             {0.2, 0.5, 0.8, 1.0}}};
}

/// Four-variate Gaussian simulation spec: correlation matrix for
/// (Y, X, X', X''), sample size, RNG seed.
struct GaussianSpec {
    std::array<std::array<double, 4>, 4> covariance = default_covariance();
    std::int64_t sample_size = 400;
    std::uint64_t seed = 1;
};

struct GaussianSample {
    std::vector<double> y, x1, x2, x3;
};

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// Quantile function of the standard normal, solved by bracketed Newton on
/// the CDF. Deterministic for a fixed build; accurate to full precision.
inline double inverse_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw Error(ErrorCode::OutOfRange, "probability must lie strictly inside (0, 1)");
    if (u == 0.5) return 0.0;
    if (u > 0.5) return -inverse_normal_cdf(1.0 - u);
    constexpr double inv_sqrt_2pi = 0.3989422804014326779;
    double lo = -40.0, hi = 0.0;
    double x = -std::sqrt(-2.0 * std::log(u));  // tail-order initial guess
    if (!(x > lo && x < hi)) x = -1.0;
    for (int iter = 0; iter < 80; ++iter) {
        const double f = normal_cdf(x) - u;
        if (f > 0.0)
            hi = x;
        else if (f < 0.0)
            lo = x;
        else
            break;
        const double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
        double next = x - f / pdf;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
        if (std::abs(f) <= 1e-16 * u) break;
    }
    return x;
}

namespace detail {

template <std::size_t K>
inline std::array<std::array<double, K>, K> cholesky_lower(
    const std::array<std::array<double, K>, K>& a) {
    for (std::size_t i = 0; i < K; ++i) {
        if (a[i][i] != 1.0)
            throw Error(ErrorCode::NotPositiveDefinite, "covariance must have unit diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (a[i][j] != a[j][i])
                throw Error(ErrorCode::NotPositiveDefinite, "covariance must be symmetric");
    }
    std::array<std::array<double, K>, K> l{};
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (!(s > 0.0))
                    throw Error(ErrorCode::NotPositiveDefinite,
                                "covariance is not positive definite");
                l[i][j] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

}  // namespace detail

/// Draw (Y, X, X', X'') via the Cholesky factor applied to independent
/// standard normals from a seeded mt19937_64 stream (53-bit uniforms mapped
/// through the inverse CDF). Identical seed, identical output.
inline GaussianSample sample_gaussian(const GaussianSpec& spec) {
    if (spec.sample_size < 1)
        throw Error(ErrorCode::OutOfRange, "sample size must be positive");
    const auto l = detail::cholesky_lower<4>(spec.covariance);
    std::mt19937_64 rng(spec.seed);
    const auto n = static_cast<std::size_t>(spec.sample_size);
    GaussianSample out;
    out.y.resize(n);
    out.x1.resize(n);
    out.x2.resize(n);
    out.x3.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::array<double, 4> z;
        for (double& zk : z) {
            const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            zk = inverse_normal_cdf(u);
        }
        out.y[i] = l[0][0] * z[0];
        out.x1[i] = l[1][0] * z[0] + l[1][1] * z[1];
        out.x2[i] = l[2][0] * z[0] + l[2][1] * z[1] + l[2][2] * z[2];
        out.x3[i] = l[3][0] * z[0] + l[3][1] * z[1] + l[3][2] * z[2] + l[3][3] * z[3];
    }
    return out;
}

inline void write_gaussian_csv(std::ostream& os, const GaussianSample& sample) {
    os << "y,x1,x2,x3\n";
    for (std::size_t i = 0; i < sample.y.size(); ++i)
        os << detail::num17(sample.y[i]) << ',' << detail::num17(sample.x1[i]) << ','
           << detail::num17(sample.x2[i]) << ',' << detail::num17(sample.x3[i]) << '\n';
}

/// Elementwise indicator 1{y >= theta}.
inline std::vector<double> threshold_event(std::span<const double> outcomes, double theta) {
    if (!std::isfinite(theta))
        throw Error(ErrorCode::NonFiniteValue, "threshold must be finite");
    std::vector<double> out(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!std::isfinite(outcomes[i]))
            throw Error(ErrorCode::NonFiniteValue, "non-finite outcome value",
                        static_cast<long long>(i + 1));
        out[i] = outcomes[i] >= theta ? 1.0 : 0.0;
    }
    return out;
}

}  // namespace uroc
