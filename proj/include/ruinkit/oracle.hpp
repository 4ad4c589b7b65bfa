#ifndef RUINKIT_ORACLE_HPP
#define RUINKIT_ORACLE_HPP

#include <cstdint>
#include <functional>

#include "ruinkit/riskmodel.hpp"

namespace ruinkit {

/// Psi*(s) assembled exactly on coefficients for rational-transform claims;
/// the root of kappa at s = 0 is deflated symbolically.
RationalLT exact_ruin_transform(const RiskModel& model);

/// Exact survival mixture Psi(x) from partial fractions of the above.
ExpPolyMixture exact_ruin_rational(const RiskModel& model);

using LaplaceEvaluator =
    std::function<std::complex<long double>(std::complex<long double>)>;

/// Fixed-Talbot numerical inversion at t > 0, M = 64 nodes. The contour sum
/// runs in extended precision; the evaluator is called on contour points.
double talbot_invert(const LaplaceEvaluator& F, double t);

/// Convenience: invert the model's ruin transform at t.
double talbot_ruin(const RiskModel& model, double t);

struct McEstimate {
    std::vector<double> grid;
    std::vector<double> psi_hat;
    std::vector<double> half_width_95;
    long long n_samples = 0;
    std::uint64_t seed = 0;
};

struct McOptions {
    bool parallel = true;  // OpenMP across sample streams when available
};

/// Monte-Carlo ladder simulation of the maximal aggregate loss. Samples are
/// split over fixed seed streams, so results are identical for a given seed
/// regardless of thread count; the serial reference path reproduces the
/// parallel kernel bit for bit.
McEstimate mc_aggregate_loss(const RiskModel& model, std::vector<double> grid, long long n,
                             std::uint64_t seed, const McOptions& opt = {});

/// Serial reference kernel (same stream decomposition as the parallel path).
McEstimate mc_aggregate_loss_serial(const RiskModel& model, std::vector<double> grid,
                                    long long n, std::uint64_t seed);

} // namespace ruinkit

#endif
