#include <doctest.h>

#include <cmath>
#include <random>

#include "ruinkit/ratlap.hpp"

using namespace ruinkit;

namespace {

// random stable rational: poles on the negative axis, numerator of lower degree
RationalLT random_stable_rational(std::mt19937& rng, int den_deg) {
    std::uniform_real_distribution<double> upole(0.2, 5.0), ucoef(-2.0, 2.0);
    std::vector<double> den = {1.0};
    double last = 0.0;
    for (int i = 0; i < den_deg; ++i) {
        last += upole(rng);  // distinct, increasing pole magnitudes
        den = poly::mul(den, std::vector<double>{last, 1.0});
    }
    std::vector<double> num(den_deg);
    for (auto& v : num) v = ucoef(rng);
    if (std::abs(num.back()) < 0.1) num.back() = 0.5;
    return RationalLT(num, den);
}

} // namespace

TEST_SUITE("ratlap") {

TEST_CASE("pade of the exponential series") {
    // e^{-s}: c = (1, -1, 1/2, -1/6); (1,1) gives (1 - s/2)/(1 + s/2)
    std::vector<double> c = {1.0, -1.0, 0.5, -1.0 / 6.0};
    RationalLT r = pade(c, 1, 1);
    for (double s : {0.3, 1.0, 2.5})
        CHECK(r(s) == doctest::Approx((1 - s / 2) / (1 + s / 2)).epsilon(1e-12));
    auto back = series_of(r, 3);
    CHECK(back[0] == doctest::Approx(1.0));
    CHECK(back[1] == doctest::Approx(-1.0));
    CHECK(back[2] == doctest::Approx(0.5));
}

TEST_CASE("pade is exact on rational input of matching type") {
    // phi for exponential claims is a (1,1) rational
    const double rho = 0.8, m1 = 2.0;
    auto phi = RationalLT({1 - rho, (1 - rho) * m1}, {1 - rho, m1});
    auto c = series_of(phi, 3);
    RationalLT r = pade(c, 1, 1);
    for (double s : {0.1, 0.7, 3.0}) CHECK(r(s) == doctest::Approx(phi(s)).epsilon(1e-11));
}

TEST_CASE("pade handles rank-deficient (lower-degree) input via cancellation") {
    // series of 1/(1+2s) fed to a (1,2) solve collapses back to type (0,1)
    std::vector<double> c = {1.0, -2.0, 4.0, -8.0};
    RationalLT r = pade(c, 1, 2);
    for (double s : {0.2, 1.0, 5.0})
        CHECK(r(s) == doctest::Approx(1.0 / (1 + 2 * s)).epsilon(1e-10));
}

TEST_CASE("two-point pade: idempotence and degenerate reduction") {
    // exact (1,2) rational: num (2, 1), den (6, 5, 1)
    RationalLT exact({2.0, 1.0}, {6.0, 5.0, 1.0});
    auto c = series_of(exact, 2);
    // expansion at infinity: d1 = 1 (monic ratio), d2 = num[0] - den[1] d1
    std::vector<double> inf = {1.0, 2.0 - 5.0};
    RationalLT rec = two_point_pade(c, inf, 1, 2);
    for (double s : {0.1, 1.0, 10.0}) CHECK(rec(s) == doctest::Approx(exact(s)).epsilon(1e-10));

    // exponential-claims ruin transform is (0,1); the (1,2) two-point system is
    // rank deficient but consistent, and the spurious factor cancels
    const double rho = 10.0 / 13, gamma = (1 - rho) / 2.0, m1 = 2.0;
    const double l1 = rho / gamma, l2 = rho / (gamma * gamma);
    std::vector<double> c0 = {l1, -l2};
    std::vector<double> infv = {rho, -rho * (1 - rho) / m1};
    RationalLT r = two_point_pade(c0, infv, 1, 2);
    for (double s : {0.1, 1.0, 4.0})
        CHECK(r(s) == doctest::Approx(rho / (s + gamma)).epsilon(1e-9));
}

TEST_CASE("series_of basics and errors") {
    RationalLT r({1.0, -0.5}, {1.0, 0.5});
    auto c = series_of(r, 3);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(-1.0));
    CHECK(c[2] == doctest::Approx(0.5));
    CHECK_THROWS_AS(series_of(RationalLT({1.0}, {0.0, 1.0}), 2), PoleAtZero);
}

TEST_CASE("partial fractions: Harris example") {
    // 2(s^2 + 2s + 3) / ((s+1)(s+2)(s+3))
    std::vector<double> num = {6.0, 4.0, 2.0};
    std::vector<double> den = poly::mul(
        poly::mul(std::vector<double>{1.0, 1.0}, std::vector<double>{2.0, 1.0}),
        std::vector<double>{3.0, 1.0});
    ExpPolyMixture mix = partial_fractions(RationalLT(num, den));
    REQUIRE(mix.terms().size() == 3);
    std::vector<std::pair<double, double>> rw;
    for (const auto& t : mix.terms()) {
        CHECK(t.power == 0);
        rw.push_back({t.rate.real(), t.weight.real()});
    }
    std::sort(rw.begin(), rw.end());
    CHECK(rw[0].second == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rw[1].second == doctest::Approx(-6.0).epsilon(1e-12));
    CHECK(rw[2].second == doctest::Approx(6.0).epsilon(1e-12));

    CHECK(mix.value(0.0) == doctest::Approx(2.0).epsilon(1e-12));          // density at 0
    CHECK(mix.integral_tail(0.0) == doctest::Approx(1.0).epsilon(1e-12));  // total mass
    CHECK(mixture_eval(mix, 0.0, MixtureKind::Density) == doctest::Approx(2.0));
    CHECK(mixture_eval(mix, 0.0, MixtureKind::Survival) == doctest::Approx(1.0));
    // far tail underflows cleanly to zero
    CHECK(mix.value(1e4) == 0.0);
}

TEST_CASE("partial fractions: confluent pole") {
    // 1/(s+1)^2 -> x e^{-x}
    ExpPolyMixture mix = partial_fractions(RationalLT({1.0}, {1.0, 2.0, 1.0}));
    REQUIRE(mix.terms().size() == 1);
    CHECK(mix.terms()[0].power == 1);
    CHECK(mix.terms()[0].rate.real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mix.value(2.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("partial fractions: unstable pole raises") {
    CHECK_THROWS_AS(partial_fractions(RationalLT({1.0}, {-1.0, 1.0})), UnstablePole);
}

TEST_CASE("atom at zero for equal degrees") {
    // (2s + 3)/(s + 1) = 2 + 1/(s+1)
    ExpPolyMixture mix = partial_fractions(RationalLT({3.0, 2.0}, {1.0, 1.0}));
    CHECK(mix.atom0() == doctest::Approx(2.0));
    REQUIRE(mix.terms().size() == 1);
    CHECK(mix.terms()[0].weight.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: pade order conditions on random moment series") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uw(0.1, 1.0), urate(0.3, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        // Maclaurin series of a random hyperexponential transform
        double w[3], r[3], wsum = 0;
        for (int i = 0; i < 3; ++i) {
            w[i] = uw(rng);
            r[i] = urate(rng) + i;
            wsum += w[i];
        }
        std::vector<double> c(6, 0.0);
        for (int k = 0; k < 6; ++k) {
            double red = 0;  // m_k / k! = sum w / r^k
            for (int i = 0; i < 3; ++i) red += (w[i] / wsum) * std::pow(1.0 / r[i], k);
            c[k] = (k % 2 ? -1.0 : 1.0) * red;
        }
        for (auto [m, n] : {std::pair{0, 1}, {1, 1}, {1, 2}, {2, 2}}) {
            RationalLT r2 = pade(std::span<const double>(c).first(m + n + 1), m, n);
            auto back = series_of(r2, m + n + 1);
            for (int k = 0; k <= m + n; ++k)
                CHECK(back[k] == doctest::Approx(c[k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: partial fractions invert the transform") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ur(0.1, 3.0), ui(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        RationalLT r = random_stable_rational(rng, 3 + trial % 2);
        ExpPolyMixture mix = partial_fractions(r);
        for (int i = 0; i < 20; ++i) {
            Complex s(ur(rng), ui(rng));
            Complex a = mix.laplace(s), b = r(s);
            CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("conjugate pairs keep evaluations real") {
    // denominator with complex roots: (s^2 + 2s + 5)(s + 1)
    std::vector<double> den =
        poly::mul(std::vector<double>{5.0, 2.0, 1.0}, std::vector<double>{1.0, 1.0});
    RationalLT r({1.0, 0.5}, den);
    ExpPolyMixture mix = partial_fractions(r);
    for (double x : {0.0, 0.3, 1.0, 4.0}) {
        double v = mix.value(x);  // the imaginary-residue guard would throw
        CHECK(std::isfinite(v));
    }
    Complex s(0.7, 0.4);
    CHECK(std::abs(mix.laplace(s) - r(s)) < 1e-10);
}

} // TEST_SUITE
