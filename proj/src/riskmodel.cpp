#include "ruinkit/riskmodel.hpp"

#include <cmath>

namespace ruinkit {

RiskModel::RiskModel(double lambda, double premium, double sigma, ClaimDistribution claims)
    : lambda_(lambda), c_(premium), sigma_(sigma), claims_(std::move(claims)) {
    if (!(lambda_ > 0.0)) throw Error("RiskModel: lambda must be positive");
    if (sigma_ < 0.0) throw Error("RiskModel: sigma must be nonnegative");
    const double m1 = claims_.raw_moment(1);
    p_ = c_ - lambda_ * m1;
    if (!(p_ > 0.0)) throw Error("RiskModel: profit rate c - lambda m_1 must be positive");
    theta_ = p_ / (lambda_ * m1);
    rho_ = lambda_ * m1 / c_;
}

RiskModel RiskModel::from_loading(double lambda, double theta, double sigma,
                                  ClaimDistribution claims) {
    const double m1 = claims.raw_moment(1);
    return RiskModel(lambda, (1.0 + theta) * lambda * m1, sigma, std::move(claims));
}

double RiskModel::kappa2() const { return lambda_ * claims_.raw_moment(2) + sigma_ * sigma_; }

namespace {

template <class T>
std::complex<T> kappa_over_s(const RiskModel& m, std::complex<T> s) {
    return static_cast<T>(m.premium()) -
           static_cast<T>(m.lambda()) * m.claims().survival_laplace(s) +
           static_cast<T>(m.sigma()) * static_cast<T>(m.sigma()) * s / T(2);
}

template <class T>
std::complex<T> ruin_transform_impl(const RiskModel& m, std::complex<T> s) {
    if (std::abs(s) < T(1e-8)) {
        auto agg = m.aggregate_loss_moments(2);
        return static_cast<T>(agg.lam[0]) - static_cast<T>(agg.lam[1]) * s;
    }
    std::complex<T> phi = static_cast<T>(m.profit_rate()) / kappa_over_s(m, s);
    return (std::complex<T>(1.0) - phi) / s;
}

} // namespace

Complex RiskModel::laplace_exponent(Complex s) const { return s * kappa_over_s(*this, s); }

std::complex<long double> RiskModel::laplace_exponent(std::complex<long double> s) const {
    return s * kappa_over_s(*this, s);
}

Complex RiskModel::phi(Complex s) const { return p_ / kappa_over_s(*this, s); }

std::complex<long double> RiskModel::phi(std::complex<long double> s) const {
    return static_cast<long double>(p_) / kappa_over_s(*this, s);
}

Complex RiskModel::ruin_transform(Complex s) const { return ruin_transform_impl(*this, s); }

std::complex<long double> RiskModel::ruin_transform(std::complex<long double> s) const {
    return ruin_transform_impl(*this, s);
}

AggregateLossMoments RiskModel::aggregate_loss_moments(int K) const {
    if (K < 1) throw Error("aggregate_loss_moments: K must be >= 1");
    std::vector<double> lam(K);
    if (sigma_ == 0.0) {
        // theta lambda_n = mu~_n + sum_{k<n} mu~_k lambda_{n-k}
        std::vector<double> mut(K);
        double fact = 1.0;
        for (int k = 1; k <= K; ++k) {
            fact *= k;
            mut[k - 1] = claims_.raw_moment(k + 1) / ((k + 1) * claims_.raw_moment(1) * fact);
        }
        for (int n = 1; n <= K; ++n) {
            double acc = mut[n - 1];
            for (int k = 1; k < n; ++k) acc += mut[k - 1] * lam[n - k - 1];
            lam[n - 1] = acc / theta_;
        }
    } else {
        if (K > 8)
            throw NotSupported("aggregate_loss_moments: K > 8 not supported for sigma > 0");
        // phi = p / (kappa(s)/s); series reciprocal of the denominator
        std::vector<double> d(K + 1);
        d[0] = p_;
        d[1] = kappa2() / 2.0;
        double fact = 2.0;
        for (int k = 2; k <= K; ++k) {
            fact *= (k + 1);
            double sign = (k % 2 == 0) ? -1.0 : 1.0; // (-1)^{k+1}
            d[k] = sign * lambda_ * claims_.raw_moment(k + 1) / fact;
        }
        std::vector<double> e(K + 1);
        e[0] = 1.0;
        for (int k = 1; k <= K; ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) acc += d[j] * e[k - j];
            e[k] = -acc / d[0];
        }
        for (int k = 1; k <= K; ++k) lam[k - 1] = ((k % 2 == 0) ? 1.0 : -1.0) * e[k];
    }
    return {std::move(lam), rho_};
}

double RiskModel::adjustment_coefficient() const {
    if (!claims_.has_transform() || std::holds_alternative<UniformInterval>(claims_.value()))
        throw NotSupported("adjustment_coefficient: continuation not implemented for this claim model");
    const double s_max = claims_.transform_boundary();
    auto g = [&](double s) { return kappa_over_s(*this, Complex(s, 0.0)).real(); };

    // expand geometrically from -1e-8 toward the boundary until g changes sign
    double lo = -1e-8; // g(lo) > 0 since g(0) = p > 0
    if (g(lo) <= 0.0) lo = -1e-300;
    double hi = 0.0;
    bool bracketed = false;
    double step = 1e-8;
    while (step < s_max) {
        double cand = -std::min(2.0 * step, s_max * (1.0 - 1e-12));
        step *= 2.0;
        if (g(cand) <= 0.0) {
            hi = cand;
            bracketed = true;
            break;
        }
        lo = cand;
    }
    if (!bracketed) {
        // creep toward the boundary
        for (int j = 4; j <= 12 && !bracketed; ++j) {
            double cand = -s_max * (1.0 - std::pow(10.0, -j));
            if (cand >= lo) continue;
            if (g(cand) <= 0.0) {
                hi = cand;
                bracketed = true;
            } else {
                lo = cand;
            }
        }
    }
    if (!bracketed)
        throw NoRoot("adjustment_coefficient: no sign change before the continuation boundary");

    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return -0.5 * (lo + hi);
}

std::array<double, 4> RiskModel::ruin_derivatives_at_zero(double f0, double f1, double f2) const {
    if (sigma_ != 0.0)
        throw PerturbedNotSupported("ruin_derivatives_at_zero: sigma > 0 not supported");
    const double m1 = claims_.raw_moment(1);
    const double n0c = lambda_ / c_;
    const double d1 = -rho_ * (1.0 - rho_) / m1;
    const double d2 = -d1 * (f0 - n0c);
    const double d3 = -d1 * (f1 + 2.0 * n0c * f0 - n0c * n0c);
    const double d4 = -d1 * (f2 + 2.0 * n0c * f1 - n0c * f0 * f0 + 3.0 * n0c * n0c * f0 -
                             n0c * n0c * n0c);
    return {d1, d2, d3, d4};
}

} // namespace ruinkit
