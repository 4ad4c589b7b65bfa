#ifndef RUINKIT_RISKMODEL_HPP
#define RUINKIT_RISKMODEL_HPP

#include <array>

#include "ruinkit/claims.hpp"

namespace ruinkit {

/// Factorially reduced moments lambda_1..lambda_K of the maximal aggregate
/// loss L, plus the mass rho of its continuous part.
struct AggregateLossMoments {
    std::vector<double> lam;
    double rho;
};

/// The (optionally Brownian-perturbed) Cramer-Lundberg surplus process
/// u + c t - sum of claims + sigma W(t). Requires positive profit rate
/// p = c - lambda m_1.
class RiskModel {
public:
    RiskModel(double lambda, double premium, double sigma, ClaimDistribution claims);
    /// Convenience: premium from the loading factor, c = (1+theta) lambda m_1.
    static RiskModel from_loading(double lambda, double theta, double sigma,
                                  ClaimDistribution claims);

    double lambda() const { return lambda_; }
    double premium() const { return c_; }
    double sigma() const { return sigma_; }
    const ClaimDistribution& claims() const { return claims_; }

    double profit_rate() const { return p_; }     // p = c - lambda m_1
    double loading() const { return theta_; }     // p / (lambda m_1)
    double rho() const { return rho_; }           // lambda m_1 / c
    double kappa2() const;                        // lambda m_2 + sigma^2
    bool perturbed() const { return sigma_ > 0.0; }

    /// Laplace exponent kappa(s) = s (c - lambda Fbar*(s) + sigma^2 s / 2).
    Complex laplace_exponent(Complex s) const;
    std::complex<long double> laplace_exponent(std::complex<long double> s) const;

    /// phi(s) = E e^{-sL} = kappa'(0) / (kappa(s)/s).
    Complex phi(Complex s) const;
    std::complex<long double> phi(std::complex<long double> s) const;

    /// Pollaczek-Khinchine transform Psi*(s) = 1/s - kappa'(0)/kappa(s);
    /// the s -> 0 limit is filled with lambda_1.
    Complex ruin_transform(Complex s) const;
    std::complex<long double> ruin_transform(std::complex<long double> s) const;

    AggregateLossMoments aggregate_loss_moments(int K) const;

    /// Adjustment coefficient: magnitude of the largest negative root of
    /// kappa(s) = 0, by bracketed bisection toward the continuation boundary.
    double adjustment_coefficient() const;

    /// (Psi'(0), Psi''(0), Psi'''(0), Psi''''(0)) for the unperturbed model,
    /// given claim density boundary data f(0), f'(0), f''(0).
    std::array<double, 4> ruin_derivatives_at_zero(double f0, double f1, double f2) const;

private:
    double lambda_, c_, sigma_;
    ClaimDistribution claims_;
    double p_, theta_, rho_;
};

} // namespace ruinkit

#endif
