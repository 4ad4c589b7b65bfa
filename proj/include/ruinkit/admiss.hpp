#ifndef RUINKIT_ADMISS_HPP
#define RUINKIT_ADMISS_HPP

#include <array>

#include <Eigen/Dense>

#include "ruinkit/ratlap.hpp"

namespace ruinkit {

/// Closed admissibility criterion for survival coefficients (w1, w2, w3) on
/// the fixed rates (1, 2, 3): admissible iff -w2 <= 2 sqrt(w1 w3).
bool three_exp_criterion(const std::array<double, 3>& w);

struct AdmissibilityReport {
    bool density_nonneg = false;
    bool survival_monotone = false;
    double min_density = 0.0;
    double argmin = 0.0;
};

/// Sample the mixture on a geometric grid over [0, 20/min-rate], refine dips
/// by golden section, and decide the tail sign analytically from the
/// dominant term.
AdmissibilityReport numeric_admissibility(const ExpPolyMixture& mix);

/// PH(alpha, A): initial probability vector and subgenerator.
struct PhaseType {
    Eigen::VectorXd alpha;
    Eigen::MatrixXd generator;
};

/// f(x) = alpha e^{Ax} (-A 1), by scaling-and-squaring matrix exponential.
double ph_density(const PhaseType& ph, double x);

} // namespace ruinkit

#endif
