#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ruinkit/claims.hpp"

using namespace ruinkit;

namespace {

ClaimDistribution paper_hyperexp() {
    return ClaimDistribution(HyperExponential{
        {63.0 / 128, 7.0 / 32, 9.0 / 64, 3.0 / 32, 7.0 / 128}, {5.0, 4.0, 3.0, 2.0, 1.0}});
}

} // namespace

TEST_SUITE("claims") {

TEST_CASE("raw moments, closed forms") {
    ClaimDistribution g(GammaClaims{0.01, 100.0});
    CHECK(g.raw_moment(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.raw_moment(2) == doctest::Approx(101.0).epsilon(1e-14));
    CHECK(g.raw_moment(3) == doctest::Approx(20301.0).epsilon(1e-14));

    ClaimDistribution u(UniformInterval{0.0, 1.0});
    for (int k = 1; k <= 4; ++k)
        CHECK(u.raw_moment(k) == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));

    CHECK(paper_hyperexp().raw_moment(1) == doctest::Approx(193.0 / 640).epsilon(1e-14));

    ClaimDistribution erl(ErlangClaims{3, 2.0});
    CHECK(erl.raw_moment(2) == doctest::Approx(3.0 * 4.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("laplace transform values") {
    ClaimDistribution e(Exponential{1.0});
    CHECK(e.laplace(Complex(1.0, 0.0)).real() == doctest::Approx(0.5).epsilon(1e-14));

    ClaimDistribution g(GammaClaims{0.01, 100.0});
    CHECK(g.laplace(Complex(0.0, 0.0)).real() == doctest::Approx(1.0));
    // -d/ds f* at 0 equals m_1
    const double h = 1e-6;
    double der = (g.laplace(Complex(h, 0)).real() - g.laplace(Complex(-h, 0)).real()) / (2 * h);
    CHECK(-der == doctest::Approx(g.raw_moment(1)).epsilon(1e-6));

    CHECK_THROWS_AS(g.laplace(Complex(-0.02, 0.0)), DomainError);
    CHECK(std::isfinite(g.laplace(Complex(-5.0, 1.0)).real()));  // off-axis continuation

    ClaimDistribution mo(MomentsOnly{{1.0, 2.0}});
    CHECK_THROWS_AS(mo.laplace(Complex(1.0, 0.0)), TransformUnavailable);
}

TEST_CASE("survival transform and the s=0 fill") {
    ClaimDistribution u(UniformInterval{0.0, 1.0});
    CHECK(u.survival_laplace(Complex(0.0, 0.0)).real() == doctest::Approx(0.5).epsilon(1e-12));
    // continuity across the series switch at |s| = 1e-8
    double below = u.survival_laplace(Complex(9e-9, 0.0)).real();
    double above = u.survival_laplace(Complex(1.1e-8, 0.0)).real();
    CHECK(below == doctest::Approx(above).epsilon(1e-7));
}

TEST_CASE("equilibrium moments") {
    ClaimDistribution u(UniformInterval{0.0, 1.0});
    auto mt = u.equilibrium_moments(3);
    CHECK(mt[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(mt[1] == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(mt[2] == doctest::Approx(1.0 / 10).epsilon(1e-14));

    ClaimDistribution e(Exponential{0.7});
    auto me = e.equilibrium_moments(4);
    for (int k = 1; k <= 4; ++k)
        CHECK(me[k - 1] == doctest::Approx(e.raw_moment(k)).epsilon(1e-13));

    ClaimDistribution g(GammaClaims{0.01, 100.0});
    CHECK(g.equilibrium_moments(1)[0] == doctest::Approx(50.5).epsilon(1e-14));
}

TEST_CASE("rational transforms") {
    ClaimDistribution e(Exponential{2.0});
    RationalLT r = e.rational_lt();
    CHECK(r.num_degree() == 0);
    CHECK(r.den_degree() == 1);
    CHECK(r(Complex(1.0, 0.0)).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    RationalLT h = paper_hyperexp().rational_lt();
    CHECK(h.num_degree() == 4);
    CHECK(h.den_degree() == 5);
    auto poles = poly::roots(h.den());
    std::vector<double> re;
    for (auto z : poles) re.push_back(z.real());
    std::sort(re.begin(), re.end());
    for (int i = 0; i < 5; ++i) CHECK(re[i] == doctest::Approx(-(5.0 - i)).epsilon(1e-9));

    CHECK_THROWS_AS(ClaimDistribution(GammaClaims{1.0, 1.0}).rational_lt(), NotRational);
}

TEST_CASE("rational transform agrees with laplace at random complex points") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ur(0.1, 4.0), ui(-3.0, 3.0);
    for (const ClaimDistribution& d :
         {paper_hyperexp(), ClaimDistribution(Exponential{1.7}),
          ClaimDistribution(ErlangClaims{4, 2.5})}) {
        RationalLT r = d.rational_lt();
        for (int i = 0; i < 20; ++i) {
            Complex s(ur(rng), ui(rng));
            Complex a = r(s), b = d.laplace(s);
            CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
        }
    }
}

TEST_CASE("moment-transform consistency by finite differences") {
    // (-1)^k d^k/ds^k f*(0) == m_k; Richardson-extrapolated central stencils
    for (const ClaimDistribution& d :
         {ClaimDistribution(Exponential{1.3}), ClaimDistribution(GammaClaims{2.5, 1.0}),
          ClaimDistribution(UniformInterval{0.5, 2.0}), paper_hyperexp(),
          ClaimDistribution(ErlangClaims{2, 3.0})}) {
        const double h = 2e-3 / d.raw_moment(1);
        auto f = [&](double s) { return d.laplace(Complex(s, 0.0)).real(); };
        auto d1 = [&](double hh) { return (f(hh) - f(-hh)) / (2 * hh); };
        auto d2 = [&](double hh) { return (f(hh) - 2 * f(0) + f(-hh)) / (hh * hh); };
        auto d3 = [&](double hh) {
            return (f(2 * hh) - 2 * f(hh) + 2 * f(-hh) - f(-2 * hh)) / (2 * hh * hh * hh);
        };
        auto rich = [&](auto& g) { return (4 * g(h / 2) - g(h)) / 3.0; };
        CHECK(-rich(d1) == doctest::Approx(d.raw_moment(1)).epsilon(1e-6));
        CHECK(rich(d2) == doctest::Approx(d.raw_moment(2)).epsilon(1e-6));
        CHECK(-rich(d3) == doctest::Approx(d.raw_moment(3)).epsilon(1e-6));
    }
}

TEST_CASE("invariant validation") {
    CHECK_THROWS_AS(ClaimDistribution(HyperExponential{{0.5, 0.6}, {1.0, 2.0}}), Error);
    CHECK_THROWS_AS(ClaimDistribution(HyperExponential{{0.5, 0.5}, {1.0, 1.0}}), Error);
    CHECK_THROWS_AS(ClaimDistribution(HyperExponential{{1.5, -0.5}, {1.0, 2.0}}), Error);
    CHECK_THROWS_AS(ClaimDistribution(UniformInterval{2.0, 1.0}), Error);
    CHECK_THROWS_AS(ClaimDistribution(GammaClaims{-1.0, 1.0}), Error);
    CHECK_THROWS_AS(ClaimDistribution(MomentsOnly{{}}), Error);
    CHECK_THROWS_AS(ClaimDistribution(MomentsOnly{{1.0, 2.0}}).raw_moment(3), MomentUnavailable);
}

} // TEST_SUITE
