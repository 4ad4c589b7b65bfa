#ifndef RUINKIT_RATLAP_HPP
#define RUINKIT_RATLAP_HPP

#include <complex>
#include <span>
#include <vector>

#include "ruinkit/errors.hpp"

namespace ruinkit {

using Complex = std::complex<double>;

// Polynomials are coefficient vectors in ascending powers: c[0] + c[1] s + ...
namespace poly {

std::vector<double> trimmed(std::vector<double> c, double rel_tol = 1e-13);
double eval(std::span<const double> c, double x);
Complex eval(std::span<const double> c, Complex s);
std::complex<long double> eval(std::span<const double> c, std::complex<long double> s);
std::vector<double> mul(std::span<const double> a, std::span<const double> b);
// a + scale * b
std::vector<double> axpy(std::span<const double> a, std::span<const double> b, double scale = 1.0);
std::vector<double> derivative(std::span<const double> c);
std::vector<Complex> roots(std::span<const double> c);
// real polynomial with the given roots (conjugate pairs combined), times lead
std::vector<double> from_roots(std::span<const Complex> rts, double lead);

} // namespace poly

/// Rational function of the Laplace variable s, stored as num/den coefficient
/// vectors with the denominator normalized to be monic. Construction trims
/// negligible leading coefficients and cancels numerically common roots.
class RationalLT {
public:
    RationalLT(std::vector<double> num, std::vector<double> den);

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }
    int num_degree() const { return static_cast<int>(num_.size()) - 1; }
    int den_degree() const { return static_cast<int>(den_.size()) - 1; }

    double operator()(double s) const;
    Complex operator()(Complex s) const;
    std::complex<long double> operator()(std::complex<long double> s) const;

private:
    std::vector<double> num_, den_;
};

/// First n Maclaurin coefficients of r, by long division.
std::vector<double> series_of(const RationalLT& r, int n);

/// Classic Padé approximant of type (m, n) to the power series c; the linear
/// system for the denominator is solved first, the numerator follows. A
/// rank-deficient but consistent system yields a reduced-order approximant
/// (common factors between the returned num/den are cancelled on
/// construction); an inconsistent one throws SingularSystem.
RationalLT pade(std::span<const double> series, int m, int n);

/// Two-point Padé of type (m, n), m < n: matches the series at 0 through
/// order series0.size()-1 and the expansion F(s) ~ inf_values[0]/s +
/// inf_values[1]/s^2 + ... at infinity. Requires
/// series0.size() + inf_values.size() == m + n + 1.
RationalLT two_point_pade(std::span<const double> series0,
                          std::span<const double> inf_values, int m, int n);

struct ExpTerm {
    Complex weight;
    Complex rate;   // term is weight * x^power * exp(-rate x), Re(rate) > 0
    int power = 0;
};

enum class MixtureKind { Density, Survival };

/// Finite combination of terms w * x^k * e^{-r x} plus an optional atom at 0.
/// Complex rates occur in conjugate pairs so pointwise values are real.
class ExpPolyMixture {
public:
    ExpPolyMixture() = default;
    explicit ExpPolyMixture(std::vector<ExpTerm> terms, double atom0 = 0.0);

    const std::vector<ExpTerm>& terms() const { return terms_; }
    double atom0() const { return atom0_; }

    /// Pointwise value sum w x^k e^{-rx} at x >= 0.
    double value(double x) const;
    /// Tail integral int_x^inf of the pointwise value.
    double integral_tail(double x) const;
    /// Laplace transform sum w k!/(s+r)^{k+1} + atom0.
    Complex laplace(Complex s) const;

    /// Mixture representing -d/dx of this one (used to test monotonicity of
    /// a ruin function: Psi nonincreasing iff -Psi' is a nonnegative mixture).
    ExpPolyMixture negative_derivative() const;

    double min_rate() const;       // min Re(rate)
    double weight_scale() const;   // sum |w|
    bool empty() const { return terms_.empty(); }

private:
    std::vector<ExpTerm> terms_;
    double atom0_ = 0.0;
};

/// Spec'd evaluation entry point: Density is the pointwise value, Survival
/// the tail integral of it.
double mixture_eval(const ExpPolyMixture& mix, double x, MixtureKind kind);

/// Inverse Laplace transform of a rational function via its poles
/// (companion-matrix eigenvalues) and residues. Poles clustered within
/// 1e-7 relative spacing are promoted to a confluent x^k term. A pole with
/// Re >= 0 and non-negligible residue throws UnstablePole. If
/// deg num == deg den the constant part goes into atom0.
ExpPolyMixture partial_fractions(const RationalLT& r);

} // namespace ruinkit

#endif
