#ifndef RUINKIT_JTFIT_HPP
#define RUINKIT_JTFIT_HPP

#include <optional>
#include <span>
#include <utility>

#include "ruinkit/riskmodel.hpp"

namespace ruinkit {

struct ErlangComponent {
    double weight;
    double stage_mean;  // x_i; each Erlang stage rate is 1/x_i
};

/// Common-order-n Erlang mixture matching three raw moments.
struct ErlangMixtureFit {
    long long order = 1;
    std::vector<ErlangComponent> components;
    double b0 = 0, b1 = 0, b2 = 0, discriminant = 0;  // diagnostics at the fit order

    double raw_moment(int k) const;
    /// Density and survival evaluated in log space; valid for any order.
    double density_at(double x) const;
    double survival_at(double x) const;
    /// Density sum_i w_i x^{n-1} e^{-x/x_i} / ((n-1)! x_i^n) as a mixture.
    /// Mixture forms require order <= 170 (factorials in double).
    ExpPolyMixture density() const;
    /// Survival function of the fit, as a pointwise-value mixture.
    ExpPolyMixture survival_function() const;
    /// Laplace transform sum_i w_i (1 + x_i s)^{-n}.
    RationalLT laplace() const;
};

/// Explicit JT index of degree 3:
/// ceil(max{1/(mh2-1), (2 mh2 - mh3)/(mh3 - mh2)}), mh2 = m2/m1^2,
/// mh3 = m3/(m1 m2). Near-integer values are snapped before the ceiling.
long long jt_index_3(std::span<const double> m);

/// Erlang reduced moments mu_k = m_k / (n (n+1) ... (n+k-1)).
std::vector<double> erlang_reduce(std::span<const double> m, long long n);

/// Three-moment Johnson-Taaffe fit. Searches upward from the degree-3 index
/// (or min_order) until the reduced moments are strictly inside the Stieltjes
/// cone; boundary data (b0 ~ 0) degenerates to a single component.
ErlangMixtureFit jt_fit3(std::span<const double> m, std::optional<long long> min_order = {});

/// Smallest n <= 1e5 whose Erlang-reduced moments (degree 3 or 5) admit a
/// nonnegative discrete measure on (0, inf), by Hankel principal minors with
/// rank-degenerate boundaries accepted; doubling-then-bisect search.
long long jt_index_degree(std::span<const double> m, int degree);

/// De Prony: K-point measure matching mu_0 = 1, mu_1..mu_{2K-1}.
std::vector<std::pair<double, double>> prony_fit(std::span<const double> mu, int K);

/// Ramsay-vs-Beekman-Bowers comparison data for a model (Theorem-style
/// aggregate-loss indices).
struct IndexReport {
    long long jt3_claims = 0;
    long long jt3_equilibrium = 0;
    double partial_J_aggregate = 0;    // J(L)
    double partial_J_equilibrium = 0;  // J(L_i)
    double nu_L = 0, nu_Li = 0;
    double l2_hat = 0, l3_hat = 0;
    bool aggregate_needs_lower_order = false;  // case (a): J(L) < J(L_i)
    double case_a_threshold = 0;               // (3/2 - nu_Li)/(nu_Li - 1)
    std::optional<long long> case_b_order;     // n with (n+2)/(n+1) <= nu_Li <= (n+1)/n
    double case_b_x1 = 0, case_b_x2 = 0;
    bool case_b_only_equilibrium = false;
    double case_c_bound = 0;  // mh~3/(mh~3 - mh~2)
    std::string verdict;
};

IndexReport compare_indices(const RiskModel& model);

} // namespace ruinkit

#endif
