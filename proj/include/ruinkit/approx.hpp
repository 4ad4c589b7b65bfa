#ifndef RUINKIT_APPROX_HPP
#define RUINKIT_APPROX_HPP

#include <map>
#include <optional>
#include <string>

#include "ruinkit/riskmodel.hpp"

namespace ruinkit {

enum class Method {
    Renyi,
    DeVylder,
    RamsayPade12,
    TwoPointRamsay,
    Perturbed2M,
    Perturbed1M,
    JTRamsay,
    JTBeekman,
};

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);
/// Whether the method applies to a perturbed (sigma > 0) model.
bool method_is_perturbed(Method m);

/// A closed-form ruin-probability approximation. The `survival` mixture
/// represents Psi(x) pointwise; perturbed methods also carry the creeping
/// (Psi_d) and jump (Psi_j) components.
struct RuinApprox {
    Method method;
    ExpPolyMixture survival;
    std::optional<std::pair<ExpPolyMixture, ExpPolyMixture>> components;
    std::map<std::string, double> meta;

    double psi(double x) const { return survival.value(x); }
};

RuinApprox renyi(const RiskModel& model);
RuinApprox devylder(const RiskModel& model);
RuinApprox ramsay_pade12(const RiskModel& model);
RuinApprox two_point_ramsay(const RiskModel& model);
RuinApprox perturbed_2m(const RiskModel& model);
RuinApprox perturbed_1m(const RiskModel& model);
RuinApprox jt_ramsay(const RiskModel& model, std::optional<long long> order = {});
RuinApprox jt_beekman(const RiskModel& model, std::optional<long long> order = {});

RuinApprox run_method(const RiskModel& model, Method m);

/// Assemble Psi*(s) = rho (D - N) / (s (D - rho N)) from a rational
/// equilibrium transform f_e* = N/D with f_e*(0) = 1; the zero of D - N at
/// s = 0 is deflated on coefficients.
RationalLT ruin_transform_from_equilibrium(const RationalLT& fe, double rho);

} // namespace ruinkit

#endif
