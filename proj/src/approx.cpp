#include "ruinkit/approx.hpp"

#include <cmath>

#include "ruinkit/jtfit.hpp"

namespace ruinkit {

std::string method_name(Method m) {
    switch (m) {
        case Method::Renyi: return "renyi";
        case Method::DeVylder: return "devylder";
        case Method::RamsayPade12: return "ramsay";
        case Method::TwoPointRamsay: return "two_point";
        case Method::Perturbed2M: return "perturbed_2m";
        case Method::Perturbed1M: return "perturbed_1m";
        case Method::JTRamsay: return "jt_ramsay";
        case Method::JTBeekman: return "jt_beekman";
    }
    return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
    for (Method m : {Method::Renyi, Method::DeVylder, Method::RamsayPade12,
                     Method::TwoPointRamsay, Method::Perturbed2M, Method::Perturbed1M,
                     Method::JTRamsay, Method::JTBeekman})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

bool method_is_perturbed(Method m) {
    return m == Method::Perturbed2M || m == Method::Perturbed1M;
}

namespace {

void require_unperturbed(const RiskModel& model, const char* op) {
    if (model.perturbed())
        throw PerturbedNotSupported(std::string(op) + ": requires sigma = 0");
}

} // namespace

RationalLT ruin_transform_from_equilibrium(const RationalLT& fe, double rho) {
    std::vector<double> dmn = poly::axpy(fe.den(), fe.num(), -1.0);  // D - N
    double scale = 0.0;
    for (double v : dmn) scale = std::max(scale, std::abs(v));
    if (std::abs(dmn[0]) > 1e-9 * scale)
        throw NumericalInconsistency("ruin transform assembly: f_e*(0) != 1");
    dmn.erase(dmn.begin());  // divide by s
    for (double& v : dmn) v *= rho;
    std::vector<double> den = poly::axpy(fe.den(), fe.num(), -rho);  // D - rho N
    return RationalLT(std::move(dmn), std::move(den));
}

RuinApprox renyi(const RiskModel& model) {
    require_unperturbed(model, "renyi");
    const double rho = model.rho();
    const double mt1 = model.claims().equilibrium_moments(1)[0];
    const double rate = (1.0 - rho) / mt1;
    RuinApprox out{Method::Renyi, ExpPolyMixture({{rho, rate, 0}}), {}, {}};
    out.meta["rate"] = rate;
    out.meta["rho"] = rho;
    return out;
}

RuinApprox devylder(const RiskModel& model) {
    require_unperturbed(model, "devylder");
    const double lam = model.lambda(), p = model.profit_rate();
    const double m2 = model.claims().raw_moment(2), m3 = model.claims().raw_moment(3);
    const double den = 3.0 * lam * m2 * m2 + 2.0 * p * m3;
    const double a = 3.0 * lam * m2 * m2 / den;
    const double alpha = 6.0 * p * m2 / den;
    RuinApprox out{Method::DeVylder, ExpPolyMixture({{a, alpha, 0}}), {}, {}};
    out.meta["a"] = a;
    out.meta["alpha"] = alpha;
    return out;
}

RuinApprox ramsay_pade12(const RiskModel& model) {
    require_unperturbed(model, "ramsay_pade12");
    auto mt = model.claims().equilibrium_moments(3);
    // Pade (1,2) of the equilibrium transform series 1 - m~1 s + m~2 s^2/2 - ...
    const std::vector<double> series = {1.0, -mt[0], mt[1] / 2.0, -mt[2] / 6.0};
    RationalLT fe = pade(series, 1, 2);
    RationalLT psi = ruin_transform_from_equilibrium(fe, model.rho());
    RuinApprox out{Method::RamsayPade12, partial_fractions(psi), {}, {}};
    const double mu1 = mt[0], mu2 = mt[1] / 2.0, mu3 = mt[2] / 6.0;
    out.meta["b0"] = mu2 - mu1 * mu1;
    out.meta["b1"] = mu3 - mu2 * mu1;
    out.meta["b2"] = mu1 * mu3 - mu2 * mu2;
    out.meta["a1"] = out.meta["b1"] - mu1 * out.meta["b0"];
    return out;
}

RuinApprox two_point_ramsay(const RiskModel& model) {
    require_unperturbed(model, "two_point_ramsay");
    auto agg = model.aggregate_loss_moments(2);
    const double rho = model.rho();
    const double m1 = model.claims().raw_moment(1);
    const std::vector<double> series0 = {agg.lam[0], -agg.lam[1]};
    const std::vector<double> inf_values = {rho, -rho * (1.0 - rho) / m1};
    RationalLT psi = two_point_pade(series0, inf_values, 1, 2);
    RuinApprox out{Method::TwoPointRamsay, partial_fractions(psi), {}, {}};
    const double m2 = model.claims().raw_moment(2), m3 = model.claims().raw_moment(3);
    out.meta["b2"] = (2.0 * m1 * m3 - 3.0 * m2 * m2) / 6.0;
    out.meta["b1"] = (m3 - 3.0 * m1 * m2) / 3.0;
    out.meta["b0"] = m2 - 2.0 * m1 * m1;
    out.meta["a1"] = out.meta["b2"] / m1;
    return out;
}

namespace {

RuinApprox perturbed_from(const RiskModel& model, double a_d, double a_j, Method which) {
    const double sig2 = model.sigma() * model.sigma();
    const double b1 = a_d + a_j + 2.0 * model.profit_rate() / sig2;
    const double b0 = a_d * 2.0 * model.profit_rate() / sig2;
    double disc = b1 * b1 - 4.0 * b0;
    if (disc < -1e-10 * b1 * b1)
        throw NumericalInconsistency("perturbed approximation: negative discriminant");
    RuinApprox out{which, {}, {}, {}};
    out.meta["a_d"] = a_d;
    out.meta["a_j"] = a_j;
    if (disc <= 1e-10 * b1 * b1) {
        // confluent roots: Psi_d = (1 + (a_d - mu)x) e^{-mu x}, Psi_j = a_j x e^{-mu x}
        const double mu = 0.5 * b1;
        ExpPolyMixture psi_d({{1.0, mu, 0}, {a_d - mu, mu, 1}});
        ExpPolyMixture psi_j({{a_j, mu, 1}});
        out.survival = ExpPolyMixture({{1.0, mu, 0}, {a_d - mu + a_j, mu, 1}});
        out.components = {std::move(psi_d), std::move(psi_j)};
        out.meta["mu1"] = mu;
        out.meta["mu2"] = mu;
        return out;
    }
    const double q = 0.5 * (b1 + std::sqrt(disc));
    const double mu1 = b0 / q;
    const double mu2 = q;
    if (!(mu1 < a_d && a_d < mu2))
        throw NumericalInconsistency("perturbed approximation: root ordering mu1 < a_d < mu2 failed");
    const double gap = mu2 - mu1;
    ExpPolyMixture psi_d({{(a_d - mu1) / gap, mu1, 0}, {(mu2 - a_d) / gap, mu2, 0}});
    ExpPolyMixture psi_j({{a_j / gap, mu1, 0}, {-a_j / gap, mu2, 0}});
    out.survival = ExpPolyMixture(
        {{(a_d - mu1 + a_j) / gap, mu1, 0}, {(mu2 - a_d - a_j) / gap, mu2, 0}});
    out.components = {std::move(psi_d), std::move(psi_j)};
    out.meta["mu1"] = mu1;
    out.meta["mu2"] = mu2;
    return out;
}

} // namespace

RuinApprox perturbed_2m(const RiskModel& model) {
    if (!model.perturbed()) throw NotPerturbed("perturbed_2m: requires sigma > 0");
    const double m2 = model.claims().raw_moment(2), m3 = model.claims().raw_moment(3);
    const double a_d = 3.0 * m2 / m3;
    const double a_j = 3.0 * model.lambda() * m2 * m2 / (model.sigma() * model.sigma() * m3);
    return perturbed_from(model, a_d, a_j, Method::Perturbed2M);
}

RuinApprox perturbed_1m(const RiskModel& model) {
    if (!model.perturbed()) throw NotPerturbed("perturbed_1m: requires sigma > 0");
    const double m1 = model.claims().raw_moment(1), m2 = model.claims().raw_moment(2);
    const double a_d = 2.0 * m1 / m2;
    const double a_j = 2.0 * model.lambda() * m1 / (model.sigma() * model.sigma());
    return perturbed_from(model, a_d, a_j, Method::Perturbed1M);
}

RuinApprox jt_ramsay(const RiskModel& model, std::optional<long long> order) {
    require_unperturbed(model, "jt_ramsay");
    auto mt = model.claims().equilibrium_moments(3);
    ErlangMixtureFit fit = jt_fit3(mt, order);
    RationalLT psi = ruin_transform_from_equilibrium(fit.laplace(), model.rho());
    RuinApprox out{Method::JTRamsay, partial_fractions(psi), {}, {}};
    out.meta["order"] = static_cast<double>(fit.order);
    for (std::size_t i = 0; i < fit.components.size(); ++i) {
        out.meta["w" + std::to_string(i + 1)] = fit.components[i].weight;
        out.meta["x" + std::to_string(i + 1)] = fit.components[i].stage_mean;
    }
    return out;
}

RuinApprox jt_beekman(const RiskModel& model, std::optional<long long> order) {
    require_unperturbed(model, "jt_beekman");
    auto agg = model.aggregate_loss_moments(3);
    // raw moments of L | L > 0: l_k = k! lambda_k, divided by rho
    std::vector<double> cond(3);
    double fact = 1.0;
    for (int k = 1; k <= 3; ++k) {
        fact *= k;
        cond[k - 1] = fact * agg.lam[k - 1] / agg.rho;
    }
    ErlangMixtureFit fit = jt_fit3(cond, order);
    ExpPolyMixture surv = fit.survival_function();
    std::vector<ExpTerm> scaled = surv.terms();
    for (auto& t : scaled) t.weight *= agg.rho;
    RuinApprox out{Method::JTBeekman, ExpPolyMixture(std::move(scaled)), {}, {}};
    out.meta["order"] = static_cast<double>(fit.order);
    for (std::size_t i = 0; i < fit.components.size(); ++i) {
        out.meta["w" + std::to_string(i + 1)] = fit.components[i].weight;
        out.meta["x" + std::to_string(i + 1)] = fit.components[i].stage_mean;
    }
    return out;
}

RuinApprox run_method(const RiskModel& model, Method m) {
    switch (m) {
        case Method::Renyi: return renyi(model);
        case Method::DeVylder: return devylder(model);
        case Method::RamsayPade12: return ramsay_pade12(model);
        case Method::TwoPointRamsay: return two_point_ramsay(model);
        case Method::Perturbed2M: return perturbed_2m(model);
        case Method::Perturbed1M: return perturbed_1m(model);
        case Method::JTRamsay: return jt_ramsay(model);
        case Method::JTBeekman: return jt_beekman(model);
    }
    throw Error("run_method: unknown method");
}

} // namespace ruinkit
