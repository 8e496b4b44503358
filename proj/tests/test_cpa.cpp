#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "support/oracles.hpp"
#include "uroc/cpa.hpp"
#include "uroc/detail/int128.hpp"
#include "uroc/roc.hpp"

using namespace uroc;

namespace {

// exact equality of two fractions via cross multiplication
bool same_fraction(int128 n1, int128 d1, int128 n2, int128 d2) {
    return n1 * d2 == n2 * d1;
}

}  // namespace

TEST_CASE("checked 128-bit arithmetic reports overflow") {
    const int128 big = int128(1) << 100;
    CHECK_THROWS_AS(detail::checked_mul(big, big), Error);
    CHECK(detail::checked_mul(big, 2) == big * 2);
}

TEST_CASE("cpa_fast on the worked three-point example") {
    const CpaResult r = cpa_fast(validate(std::vector<double>{2, 1, 3},
                                          std::vector<double>{1, 2, 3}));
    CHECK(r.value == 0.75);
    CHECK(same_fraction(r.numerator, r.denominator, 3, 4));
}

TEST_CASE("cpa reduces to AUC for binary outcomes") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::randint(rng, 2, 80));
        std::vector<double> x = oracle::random_values(rng, n, (trial & 1) != 0);
        std::vector<double> y(n);
        for (double& v : y) v = (rng() & 1) ? 1.0 : 0.0;
        if (!oracle::has_two_distinct(y)) {
            y[0] = 0.0;
            y[1] = 1.0;
        }
        const PairedSample s = validate(x, y);
        const CpaResult cpa = cpa_fast(s);
        const RocCurve curve = roc_curve(x, y);
        // CPA = AUC as exact rationals
        CHECK(same_fraction(cpa.numerator, cpa.denominator, curve.auc_num,
                            2 * int128(curve.n_neg) * curve.n_pos));
        CHECK(std::abs(cpa.value - curve.auc) <= 1e-15);
        // CPA = (D+1)/2
        const double d = somers_d(x, y);
        CHECK(std::abs(cpa.value - 0.5 * (d + 1.0)) <= 1e-15);
        // C index also reduces to AUC for binary outcomes
        CHECK(std::abs(c_index(s) - curve.auc) <= 1e-15);
    }
}

TEST_CASE("perfect, anti-perfect and constant features") {
    const std::vector<double> y{1, 2, 3, 4, 5};
    std::vector<double> x(y);
    CHECK(cpa_fast(validate(x, y)).value == 1.0);
    CHECK(c_index(validate(x, y)) == 1.0);
    std::vector<double> neg(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];
    CHECK(cpa_fast(validate(neg, y)).value == 0.0);
    CHECK(cpa_fast(validate(std::vector<double>(5, 3.0), y)).value == 0.5);
    CHECK(cpa_covariance(validate(std::vector<double>(5, 3.0), y)).value == 0.5);
}

TEST_CASE("three routes agree on random tied samples") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::randint(rng, 2, 60));
        auto [x, y] = oracle::random_sample(rng, n);
        const PairedSample s = validate(x, y);
        const CpaResult fast = cpa_fast(s);
        const CpaResult pair = cpa_pairwise(s);
        const CpaResult cov = cpa_covariance(s);
        // fast == pairwise in exact integer arithmetic
        CHECK(fast.numerator == pair.numerator);
        CHECK(fast.denominator == pair.denominator);
        // and both equal the independent oracle
        const auto [onum, oden] = oracle::cpa_pairwise_exact(x, y);
        CHECK(fast.numerator == onum);
        CHECK(fast.denominator == oden);
        CHECK(std::abs(fast.value - cov.value) <= 1e-12);
        CHECK(same_fraction(fast.numerator, fast.denominator, cov.numerator, cov.denominator));
        CHECK(fast.value >= 0.0);
        CHECK(fast.value <= 1.0);
    }
}

TEST_CASE("reversing feature orientation flips CPA exactly") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::randint(rng, 2, 50));
        auto [x, y] = oracle::random_sample(rng, n);
        std::vector<double> nx(n);
        for (std::size_t i = 0; i < n; ++i) nx[i] = -x[i];
        const CpaResult a = cpa_fast(validate(x, y));
        const CpaResult b = cpa_fast(validate(nx, y));
        CHECK(a.denominator == b.denominator);
        CHECK(b.numerator == a.denominator - a.numerator);  // CPA(-x, y) = 1 - CPA(x, y)
    }
}

TEST_CASE("C index weighs concordance differently than CPA") {
    // m = 3 with one far-class discordance
    const std::vector<double> x{1, 3, 2, 0};
    const std::vector<double> y{1, 2, 3, 3};
    const PairedSample s = validate(x, y);
    const auto [cn, cd] = oracle::c_index_exact(x, y);
    const auto [pn, pd] = oracle::cpa_pairwise_exact(x, y);
    CHECK(!same_fraction(cn, cd, pn, pd));  // brute-force inequality
    CHECK(c_index(s) == detail::to_double(cn) / detail::to_double(cd));
    CHECK(c_index(s) == 0.4);
    CHECK(cpa_fast(s).value == detail::to_double(pn) / detail::to_double(pd));
    CHECK(same_fraction(cpa_fast(s).numerator, cpa_fast(s).denominator, 3, 7));
}

TEST_CASE("c_index agrees with its quadratic oracle") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::randint(rng, 2, 70));
        auto [x, y] = oracle::random_sample(rng, n);
        const auto [onum, oden] = oracle::c_index_exact(x, y);
        CHECK(c_index(validate(x, y)) == detail::to_double(onum) / detail::to_double(oden));
    }
}

TEST_CASE("CPA is asymmetric under ties and symmetric without") {
    // with ties on both sides, transposing roles changes the value
    {
        const std::vector<double> x{1, 1, 2, 3};
        const std::vector<double> y{1, 2, 2, 3};
        const CpaResult xy = cpa_fast(validate(x, y));
        const CpaResult yx = cpa_fast(validate(y, x));
        CHECK(same_fraction(xy.numerator, xy.denominator, 11, 12));
        CHECK(same_fraction(yx.numerator, yx.denominator, 13, 14));
        CHECK(!same_fraction(xy.numerator, xy.denominator, yx.numerator, yx.denominator));
    }
    // tie-free: symmetric
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::randint(rng, 2, 60));
        const std::vector<double> x = oracle::random_values(rng, n, false);
        const std::vector<double> y = oracle::random_values(rng, n, false);
        const CpaResult xy = cpa_fast(validate(x, y));
        const CpaResult yx = cpa_fast(validate(y, x));
        CHECK(same_fraction(xy.numerator, xy.denominator, yx.numerator, yx.denominator));
    }
}

TEST_CASE("strictly increasing maps on either coordinate leave CPA unchanged") {
    std::mt19937_64 rng(36);
    auto [x, y] = oracle::random_sample(rng, 80);
    const CpaResult base = cpa_fast(validate(x, y));
    auto apply = [](const std::vector<double>& v, auto&& phi) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = phi(v[i]);
        return out;
    };
    const std::vector<std::function<double(double)>> maps{
        [](double v) { return 2.5 * v + 7.0; },
        [](double v) { return std::cbrt(v); },
        [](double v) { return std::exp(0.2 * v); }};

    for (const auto& phi : maps) {
        const CpaResult fx = cpa_fast(validate(apply(x, phi), y));
        CHECK(fx.numerator == base.numerator);
        CHECK(fx.denominator == base.denominator);
        const CpaResult fy = cpa_fast(validate(x, apply(y, phi)));
        CHECK(fy.numerator == base.numerator);
        CHECK(fy.denominator == base.denominator);
        const CpaResult fxy = cpa_fast(validate(apply(x, phi), apply(y, phi)));
        CHECK(fxy.numerator == base.numerator);
        CHECK(fxy.denominator == base.denominator);
    }
}

TEST_CASE("pairwise oracle size cap") {
    std::vector<double> x(6000), y(6000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = static_cast<double>(i % 97);
        y[i] = static_cast<double>(i % 13);
    }
    const PairedSample s = validate(x, y);
    CHECK_THROWS_AS(cpa_pairwise(s), Error);
    CHECK_NOTHROW(cpa_pairwise(s, 6000));  // explicit override
}
