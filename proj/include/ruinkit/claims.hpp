#ifndef RUINKIT_CLAIMS_HPP
#define RUINKIT_CLAIMS_HPP

#include <string>
#include <variant>
#include <vector>

#include "ruinkit/ratlap.hpp"

namespace ruinkit {

struct Exponential {
    double rate;
};

struct HyperExponential {
    std::vector<double> weights;
    std::vector<double> rates;
};

struct GammaClaims {
    double shape;  // alpha
    double scale;  // beta
};

struct UniformInterval {
    double a;
    double b;
};

struct ErlangClaims {
    int shape;
    double rate;
};

/// Raw moments m_1, m_2, ... with no density model behind them; only
/// moment-consuming operations apply.
struct MomentsOnly {
    std::vector<double> m;
};

/// Parametric claim-size distribution with exact moments, Laplace transform
/// f*(s) = E e^{-sZ}, and a rational transform where one exists.
class ClaimDistribution {
public:
    using Variant = std::variant<Exponential, HyperExponential, GammaClaims,
                                 UniformInterval, ErlangClaims, MomentsOnly>;

    explicit ClaimDistribution(Variant v);

    double raw_moment(int k) const;
    std::vector<double> equilibrium_moments(int K) const;  // m~_1..m~_K

    Complex laplace(Complex s) const;
    std::complex<long double> laplace(std::complex<long double> s) const;
    /// F-bar*(s) = (1 - f*(s))/s, with the removable singularity at 0 filled.
    Complex survival_laplace(Complex s) const;
    std::complex<long double> survival_laplace(std::complex<long double> s) const;

    RationalLT rational_lt() const;

    bool has_transform() const;  // false for MomentsOnly
    bool is_rational() const;
    /// f* is analytic for Re s > -transform_boundary(); +inf when entire.
    double transform_boundary() const;
    /// Largest k with a moment available (INT_MAX for parametric variants).
    int max_moment_order() const;

    const Variant& value() const { return v_; }
    std::string label() const;

private:
    Variant v_;
};

} // namespace ruinkit

#endif
