#include "ruinkit/admiss.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace ruinkit {

bool three_exp_criterion(const std::array<double, 3>& w) {
    if (!(w[0] > 0.0) || !(w[2] > 0.0))
        throw NotApplicable("three_exp_criterion: requires w1 > 0 and w3 > 0");
    return -w[1] <= 2.0 * std::sqrt(w[0] * w[2]);
}

namespace {

// Sign of the asymptotically dominant term: smallest Re(rate), then highest
// power; oscillating (complex-rate) dominance cannot stay nonnegative.
bool tail_nonnegative(const ExpPolyMixture& mix) {
    const double scale = mix.weight_scale();
    // group terms sharing (rate, power)
    std::vector<ExpTerm> groups;
    for (const auto& t : mix.terms()) {
        bool merged = false;
        for (auto& g : groups) {
            if (std::abs(g.rate - t.rate) <= 1e-12 * (std::abs(g.rate) + 1.0) &&
                g.power == t.power) {
                g.weight += t.weight;
                merged = true;
                break;
            }
        }
        if (!merged) groups.push_back(t);
    }
    std::sort(groups.begin(), groups.end(), [](const ExpTerm& a, const ExpTerm& b) {
        if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
        return a.power > b.power;
    });
    for (const auto& g : groups) {
        if (std::abs(g.weight) <= 1e-13 * std::max(scale, 1e-300)) continue;
        if (std::abs(g.rate.imag()) > 1e-12 * std::abs(g.rate)) return false;
        return g.weight.real() > 0.0;
    }
    return true;  // identically ~0
}

double golden_min(const ExpPolyMixture& mix, double a, double b, double& xmin) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = mix.value(c), fd = mix.value(d);
    for (int it = 0; it < 60 && (b - a) > 1e-14 * std::max(1.0, b); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = mix.value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = mix.value(d);
        }
    }
    xmin = 0.5 * (a + b);
    return mix.value(xmin);
}

} // namespace

AdmissibilityReport numeric_admissibility(const ExpPolyMixture& mix) {
    AdmissibilityReport rep;
    if (mix.empty()) {
        rep.density_nonneg = rep.survival_monotone = true;
        return rep;
    }
    for (const auto& t : mix.terms())
        if (!(t.rate.real() > 0.0))
            throw Error("numeric_admissibility: requires Re(rate) > 0");

    const double horizon = 20.0 / mix.min_rate();
    const int n = 2000;
    std::vector<double> xs(n), fs(n);
    xs[0] = 0.0;
    fs[0] = mix.value(0.0);
    const double x1 = horizon * 1e-6;
    const double ratio = std::pow(horizon / x1, 1.0 / (n - 2));
    for (int i = 1; i < n; ++i) {
        xs[i] = x1 * std::pow(ratio, i - 1);
        fs[i] = mix.value(xs[i]);
    }
    double peak = 0.0;
    for (double v : fs) peak = std::max(peak, std::abs(v));
    rep.min_density = fs[0];
    rep.argmin = xs[0];
    for (int i = 0; i < n; ++i) {
        if (fs[i] < rep.min_density) {
            rep.min_density = fs[i];
            rep.argmin = xs[i];
        }
        // refine interior local minima
        if (i > 0 && i + 1 < n && fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1]) {
            double xm;
            double fm = golden_min(mix, xs[i - 1], xs[i + 1], xm);
            if (fm < rep.min_density) {
                rep.min_density = fm;
                rep.argmin = xm;
            }
        }
    }
    const double tol = -1e-10 * std::max(peak, 1e-300);
    const bool tail_ok = tail_nonnegative(mix);
    rep.density_nonneg = rep.min_density >= tol && tail_ok;

    // survival monotonicity on the same grid
    rep.survival_monotone = tail_ok;
    double prev = mix.integral_tail(0.0);
    double smax = std::abs(prev);
    for (int i = 1; i < n && rep.survival_monotone; ++i) {
        double cur = mix.integral_tail(xs[i]);
        smax = std::max(smax, std::abs(cur));
        if (cur > prev + 1e-10 * std::max(smax, 1e-300)) rep.survival_monotone = false;
        prev = cur;
    }
    return rep;
}

double ph_density(const PhaseType& ph, double x) {
    const auto n = ph.generator.rows();
    if (n == 0 || ph.generator.cols() != n || ph.alpha.size() != n)
        throw InvalidSubgenerator("ph_density: dimension mismatch");
    double scale = ph.generator.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * std::max(scale, 1.0);
    double alpha_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (ph.alpha(i) < -tol) throw InvalidSubgenerator("ph_density: negative alpha entry");
        alpha_sum += ph.alpha(i);
        double rowsum = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j && ph.generator(i, j) < -tol)
                throw InvalidSubgenerator("ph_density: negative off-diagonal entry");
            rowsum += ph.generator(i, j);
        }
        if (rowsum > tol) throw InvalidSubgenerator("ph_density: positive row sum");
    }
    if (alpha_sum > 1.0 + 1e-12) throw InvalidSubgenerator("ph_density: alpha sums beyond 1");
    if (x < 0.0) throw Error("ph_density: x must be nonnegative");

    Eigen::MatrixXd E = (ph.generator * x).exp();
    Eigen::VectorXd exit = -ph.generator * Eigen::VectorXd::Ones(n);
    return ph.alpha.dot(E * exit);
}

} // namespace ruinkit
