#include "ruinkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ruinkit {

RationalLT exact_ruin_transform(const RiskModel& model) {
    RationalLT f = model.claims().rational_lt();
    const auto& Nf = f.num();
    const auto& Df = f.den();
    const double lam = model.lambda(), c = model.premium(), sig = model.sigma();
    const double p = model.profit_rate();

    // kappa(s) = Kn(s)/Df(s), Kn = (c s + sigma^2 s^2/2 - lambda) Df + lambda Nf
    std::vector<double> front = {-lam, c, 0.5 * sig * sig};
    if (sig == 0.0) front.pop_back();
    std::vector<double> Kn = poly::axpy(poly::mul(front, Df), Nf, lam);

    // kappa(0) = 0: deflate one factor of s on coefficients
    double kscale = 0.0;
    for (double v : Kn) kscale = std::max(kscale, std::abs(v));
    if (std::abs(Kn[0]) > 1e-9 * kscale)
        throw NumericalInconsistency("exact_ruin_transform: kappa(0) != 0");
    std::vector<double> Kt(Kn.begin() + 1, Kn.end());

    // Psi* = (Kt - p Df) / (s Kt); the numerator also vanishes at 0
    std::vector<double> G = poly::axpy(Kt, Df, -p);
    double gscale = 0.0;
    for (double v : G) gscale = std::max(gscale, std::abs(v));
    if (std::abs(G[0]) > 1e-9 * gscale)
        throw NumericalInconsistency("exact_ruin_transform: kappa'(0) != p");
    std::vector<double> num(G.begin() + 1, G.end());
    return RationalLT(std::move(num), std::move(Kt));
}

ExpPolyMixture exact_ruin_rational(const RiskModel& model) {
    return partial_fractions(exact_ruin_transform(model));
}

double talbot_invert(const LaplaceEvaluator& F, double t) {
    if (!(t > 0.0)) throw Error("talbot_invert: t must be positive");
    using LC = std::complex<long double>;
    constexpr int M = 64;
    const long double pi = std::numbers::pi_v<long double>;
    const long double r = static_cast<long double>(2 * M) / (5.0L * static_cast<long double>(t));
    LC total = std::exp(r * static_cast<long double>(t)) * F(LC(r, 0.0L)) / 2.0L;
    for (int k = 1; k < M; ++k) {
        const long double theta = static_cast<long double>(k) * pi / M;
        const long double cot = std::cos(theta) / std::sin(theta);
        const LC s(r * theta * cot, r * theta);
        const long double sigma = theta + (theta * cot - 1.0L) * cot;
        total += std::exp(s * static_cast<long double>(t)) * F(s) * LC(1.0L, sigma);
    }
    const long double result = (r / M) * total.real();
    if (!std::isfinite(static_cast<double>(result)))
        throw ContourFailure("talbot_invert: contour sum is not finite");
    return static_cast<double>(result);
}

double talbot_ruin(const RiskModel& model, double t) {
    return talbot_invert(
        [&](std::complex<long double> s) { return model.ruin_transform(s); }, t);
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

// splitmix64; used to derive per-stream seeds and as the per-stream generator
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d4a8df58e06d75ULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // (0, 1)
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
    double exponential(double rate) { return -std::log(uniform()) / rate; }
    // Marsaglia-Tsang, valid for shape > 1
    double gamma(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double cc = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double u1 = uniform(), u2 = uniform();
            double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            double v = 1.0 + cc * z;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
            if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
        }
    }
};

// One draw from the equilibrium (stationary excess) distribution of the claims.
struct EquilibriumSampler {
    const ClaimDistribution::Variant* v;

    explicit EquilibriumSampler(const ClaimDistribution& dist) : v(&dist.value()) {
        if (std::holds_alternative<MomentsOnly>(*v))
            throw SamplerUnavailable("mc_aggregate_loss: no equilibrium sampler for this claim model");
    }

    double operator()(SplitMix64& rng) const {
        if (const auto* e = std::get_if<Exponential>(v)) {
            return rng.exponential(e->rate);  // equilibrium of exponential is itself
        }
        if (const auto* h = std::get_if<HyperExponential>(v)) {
            // equilibrium mixture weights w_i / (r_i m_1)
            double m1 = 0.0;
            for (std::size_t i = 0; i < h->rates.size(); ++i)
                m1 += h->weights[i] / h->rates[i];
            double u = rng.uniform() * m1;
            std::size_t pick = h->rates.size() - 1;
            double acc = 0.0;
            for (std::size_t i = 0; i < h->rates.size(); ++i) {
                acc += h->weights[i] / h->rates[i];
                if (u <= acc) {
                    pick = i;
                    break;
                }
            }
            return rng.exponential(h->rates[pick]);
        }
        if (const auto* g = std::get_if<GammaClaims>(v)) {
            // stationary excess = U * (size-biased claim) = U * Gamma(alpha+1, beta)
            return rng.uniform() * g->scale * rng.gamma(g->shape + 1.0);
        }
        if (const auto* e = std::get_if<ErlangClaims>(v)) {
            return rng.uniform() * rng.gamma(e->shape + 1.0) / e->rate;
        }
        const auto* u = std::get_if<UniformInterval>(v);
        // inverse cdf of Fbar(x)/m1 piecewise on [0,a] and [a,b]
        const double m1 = 0.5 * (u->a + u->b);
        double y = rng.uniform() * m1;
        if (y <= u->a) return y;
        const double w = u->b - u->a;
        // y = a + [w^2 - (b-x)^2] / (2w)  =>  b - x = sqrt(w^2 - 2w(y-a))
        return u->b - std::sqrt(std::max(0.0, w * w - 2.0 * w * (y - u->a)));
    }
};

constexpr long long kStreams = 512;

McEstimate run_mc(const RiskModel& model, std::vector<double> grid, long long n,
                  std::uint64_t seed, bool parallel) {
    if (n < 10000) throw Error("mc_aggregate_loss: n must be at least 1e4");
    for (double x : grid)
        if (x < 0.0) throw Error("mc_aggregate_loss: grid points must be nonnegative");
    EquilibriumSampler sample_eq(model.claims());

    const double rho = model.rho();
    const double log_rho = std::log(rho);
    const double sig = model.sigma();
    const double creep_rate = sig > 0.0 ? 2.0 * model.premium() / (sig * sig) : 0.0;
    const int G = static_cast<int>(grid.size());

    std::vector<std::vector<long long>> counts(kStreams, std::vector<long long>(G, 0));

    auto run_stream = [&](long long stream) {
        SplitMix64 seeder{seed};
        seeder.state ^= 0x5851f42d4c957f2dULL * static_cast<std::uint64_t>(stream + 1);
        SplitMix64 rng{seeder.next()};
        const long long lo = n * stream / kStreams;
        const long long hi = n * (stream + 1) / kStreams;
        auto& cnt = counts[static_cast<std::size_t>(stream)];
        for (long long i = lo; i < hi; ++i) {
            // N ladders, geometric: P[N = k] = (1 - rho) rho^k
            const long long N = static_cast<long long>(std::log(rng.uniform()) / log_rho);
            double L = 0.0;
            if (sig > 0.0) L += rng.exponential(creep_rate);
            for (long long k = 0; k < N; ++k) {
                L += sample_eq(rng);
                if (sig > 0.0) L += rng.exponential(creep_rate);
            }
            for (int gidx = 0; gidx < G; ++gidx)
                if (L > grid[gidx]) ++cnt[gidx];
        }
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long stream = 0; stream < kStreams; ++stream) run_stream(stream);
    } else {
        for (long long stream = 0; stream < kStreams; ++stream) run_stream(stream);
    }

    McEstimate est;
    est.grid = std::move(grid);
    est.n_samples = n;
    est.seed = seed;
    est.psi_hat.resize(G);
    est.half_width_95.resize(G);
    for (int gidx = 0; gidx < G; ++gidx) {
        long long total = 0;
        for (const auto& cnt : counts) total += cnt[gidx];
        const double ph = static_cast<double>(total) / static_cast<double>(n);
        est.psi_hat[gidx] = ph;
        est.half_width_95[gidx] = 1.96 * std::sqrt(ph * (1.0 - ph) / static_cast<double>(n));
    }
    return est;
}

} // namespace

McEstimate mc_aggregate_loss(const RiskModel& model, std::vector<double> grid, long long n,
                             std::uint64_t seed, const McOptions& opt) {
    return run_mc(model, std::move(grid), n, seed, opt.parallel);
}

McEstimate mc_aggregate_loss_serial(const RiskModel& model, std::vector<double> grid,
                                    long long n, std::uint64_t seed) {
    return run_mc(model, std::move(grid), n, seed, false);
}

} // namespace ruinkit
