#include "ruinkit/jtfit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace ruinkit {

namespace {

constexpr long long kOrderCap = 100000;

double rising(long long n, int k) {
    double v = 1.0;
    for (int j = 0; j < k; ++j) v *= static_cast<double>(n + j);
    return v;
}

// ceil with snapping: values within 1e-9 (relative) of an integer land on it
long long snapped_ceil(double v) {
    double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(v));
}

void check_feasible_3(std::span<const double> m) {
    if (m.size() < 3) throw Error("three moments required");
    if (!(m[0] > 0.0)) throw InfeasibleMoments("m_1 must be positive");
    const double mh2 = m[1] / (m[0] * m[0]);
    const double mh3 = m[2] / (m[0] * m[1]);
    if (!(mh2 > 1.0) || !(mh3 > mh2))
        throw InfeasibleMoments("moments outside the Stieltjes cone");
}

} // namespace

long long jt_index_3(std::span<const double> m) {
    check_feasible_3(m);
    const double mh2 = m[1] / (m[0] * m[0]);
    const double mh3 = m[2] / (m[0] * m[1]);
    const double v = std::max(1.0 / (mh2 - 1.0), (2.0 * mh2 - mh3) / (mh3 - mh2));
    return std::max<long long>(1, snapped_ceil(v));
}

std::vector<double> erlang_reduce(std::span<const double> m, long long n) {
    if (n < 1) throw Error("erlang_reduce: n must be >= 1");
    std::vector<double> mu(m.size());
    for (std::size_t k = 0; k < m.size(); ++k)
        mu[k] = m[k] / rising(n, static_cast<int>(k) + 1);
    return mu;
}

ErlangMixtureFit jt_fit3(std::span<const double> m, std::optional<long long> min_order) {
    check_feasible_3(m);
    long long n = std::max<long long>(jt_index_3(m), min_order.value_or(1));
    for (; n <= kOrderCap; ++n) {
        auto mu = erlang_reduce(m.first(3), n);
        const double b0 = mu[1] - mu[0] * mu[0];
        const double b1 = mu[2] - mu[0] * mu[1];
        const double b2 = mu[0] * mu[2] - mu[1] * mu[1];
        const double tau0 = 1e-12 * std::max(mu[1], mu[0] * mu[0]);
        const double tau2 = 1e-12 * std::max(mu[0] * mu[2], mu[1] * mu[1]);
        ErlangMixtureFit fit;
        fit.order = n;
        fit.b0 = b0;
        fit.b1 = b1;
        fit.b2 = b2;
        if (b0 <= tau0) {
            // b0 = 0 forces a point mass at mu_1; accept it only when the
            // third moment agrees, otherwise a higher order is needed
            if (std::abs(mu[2] - mu[0] * mu[0] * mu[0]) <= 3e-12 * mu[0] * mu[0] * mu[0]) {
                fit.components = {{1.0, mu[0]}};
                fit.discriminant = 0.0;
                return fit;
            }
            continue;
        }
        if (b2 <= tau2) continue;  // strict-feasibility bump past the boundary
        double disc = b1 * b1 - 4.0 * b0 * b2;
        if (disc < 0.0) {
            if (disc < -1e-10 * b1 * b1) continue;
            disc = 0.0;
        }
        fit.discriminant = disc;
        // stable quadratic: roots of b0 x^2 - b1 x + b2
        const double q = 0.5 * (b1 + std::sqrt(disc));
        const double x1 = b2 / q;
        const double x2 = q / b0;
        const double w1 = (x2 - mu[0]) / (x2 - x1);
        if (!(x1 > 0.0) || !(x2 > x1) || w1 < -1e-12 || w1 > 1.0 + 1e-12)
            throw NumericalInconsistency("jt_fit3: invalid component solve");
        fit.components = {{w1, x1}, {1.0 - w1, x2}};
        return fit;
    }
    throw OrderCap("jt_fit3: no strictly feasible order below 1e5");
}

double ErlangMixtureFit::raw_moment(int k) const {
    double acc = 0.0;
    for (const auto& c : components) acc += c.weight * std::pow(c.stage_mean, k);
    return rising(order, k) * acc;
}

double ErlangMixtureFit::density_at(double x) const {
    if (x < 0.0) return 0.0;
    const double n = static_cast<double>(order);
    if (x == 0.0) {
        if (order > 1) return 0.0;
        double acc = 0.0;
        for (const auto& c : components) acc += c.weight / c.stage_mean;
        return acc;
    }
    double acc = 0.0;
    for (const auto& c : components) {
        double logv = (n - 1.0) * std::log(x) - x / c.stage_mean - std::lgamma(n) -
                      n * std::log(c.stage_mean);
        if (logv > -745.0) acc += c.weight * std::exp(logv);
    }
    return acc;
}

double ErlangMixtureFit::survival_at(double x) const {
    if (x <= 0.0) return 1.0;
    double acc = 0.0;
    for (const auto& c : components) {
        // P(Erlang_n > x) = e^{-z} sum_{j<n} z^j/j!, z = x / stage mean
        const double z = x / c.stage_mean;
        double tail = 0.0;
        for (long long j = 0; j < order; ++j) {
            double logt = j * std::log(z) - z - std::lgamma(static_cast<double>(j) + 1.0);
            if (logt > -745.0) tail += std::exp(logt);
        }
        acc += c.weight * std::min(1.0, tail);
    }
    return acc;
}

ExpPolyMixture ErlangMixtureFit::density() const {
    if (order > 170) throw NotSupported("ErlangMixtureFit: order too large for mixture form");
    std::vector<ExpTerm> terms;
    const int n = static_cast<int>(order);
    double fact = 1.0;
    for (int j = 2; j < n; ++j) fact *= j;  // (n-1)!
    for (const auto& c : components)
        terms.push_back({c.weight / (fact * std::pow(c.stage_mean, n)),
                         Complex(1.0 / c.stage_mean, 0.0), n - 1});
    return ExpPolyMixture(std::move(terms));
}

ExpPolyMixture ErlangMixtureFit::survival_function() const {
    if (order > 170) throw NotSupported("ErlangMixtureFit: order too large for mixture form");
    // sum_i w_i e^{-x/x_i} sum_{j<n} (x/x_i)^j / j!
    std::vector<ExpTerm> terms;
    const int n = static_cast<int>(order);
    for (const auto& c : components) {
        double fact = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j >= 2) fact *= j;
            terms.push_back({c.weight / (fact * std::pow(c.stage_mean, j)),
                             Complex(1.0 / c.stage_mean, 0.0), j});
        }
    }
    return ExpPolyMixture(std::move(terms));
}

RationalLT ErlangMixtureFit::laplace() const {
    const int n = static_cast<int>(order);
    std::vector<double> den = {1.0};
    for (const auto& c : components) {
        std::vector<double> f = {1.0, c.stage_mean};
        for (int j = 0; j < n; ++j) den = poly::mul(den, f);
    }
    std::vector<double> num = {0.0};
    for (std::size_t i = 0; i < components.size(); ++i) {
        std::vector<double> part = {components[i].weight};
        for (std::size_t j = 0; j < components.size(); ++j) {
            if (j == i) continue;
            std::vector<double> f = {1.0, components[j].stage_mean};
            for (int k = 0; k < n; ++k) part = poly::mul(part, f);
        }
        num = poly::axpy(num, part);
    }
    return RationalLT(std::move(num), std::move(den));
}

namespace {

// Leading principal minors (sizes 1..K) of the Hankel matrix with entries
// h[i+j], i,j = 0..K-1.
std::vector<double> hankel_minors(std::span<const double> h, int K) {
    std::vector<double> minors(K);
    for (int k = 1; k <= K; ++k) {
        Eigen::MatrixXd H(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) H(i, j) = h[i + j];
        minors[k - 1] = H.determinant();
    }
    return minors;
}

// Existence of a nonnegative discrete measure on (0, inf) with moments
// mu_0..mu_d: there is a rank r with both Hankel minor chains strictly
// positive through r and negligible beyond.
bool stieltjes_feasible(std::span<const double> mu_full, int degree) {
    const int K = (degree + 1) / 2;
    std::vector<double> h0(mu_full.begin(), mu_full.end());
    std::vector<double> h1(mu_full.begin() + 1, mu_full.end());
    auto m0 = hankel_minors(h0, K);
    auto m1 = hankel_minors(h1, K);
    auto tau = [&](int k, const std::vector<double>& h) {
        double scale = 1.0;
        for (int i = 0; i < k; ++i) scale *= std::max(std::abs(h[2 * i]), 1e-300);
        return 1e-12 * scale;
    };
    for (int r = K; r >= 1; --r) {
        bool ok = true;
        for (int k = 1; k <= r && ok; ++k)
            ok = m0[k - 1] > tau(k, h0) && m1[k - 1] > tau(k, h1);
        for (int k = r + 1; k <= K && ok; ++k)
            ok = std::abs(m0[k - 1]) <= tau(k, h0) && std::abs(m1[k - 1]) <= tau(k, h1);
        if (ok) return true;
    }
    return false;
}

} // namespace

long long jt_index_degree(std::span<const double> m, int degree) {
    if (degree != 3 && degree != 5) throw Error("jt_index_degree: degree must be 3 or 5");
    if (static_cast<int>(m.size()) < degree) throw Error("jt_index_degree: too few moments");
    check_feasible_3(m);
    auto feasible = [&](long long n) {
        auto mu = erlang_reduce(m.first(degree), n);
        std::vector<double> full = {1.0};
        full.insert(full.end(), mu.begin(), mu.end());
        return stieltjes_feasible(full, degree);
    };
    if (feasible(1)) return 1;
    long long lo = 1, hi = 2;
    while (hi <= kOrderCap && !feasible(hi)) {
        lo = hi;
        hi *= 2;
    }
    if (hi > kOrderCap) throw OrderCap("jt_index_degree: no feasible order below 1e5");
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::vector<std::pair<double, double>> prony_fit(std::span<const double> mu, int K) {
    if (K < 1 || static_cast<int>(mu.size()) < 2 * K - 1)
        throw Error("prony_fit: needs mu_1..mu_{2K-1}");
    std::vector<double> full = {1.0};
    full.insert(full.end(), mu.begin(), mu.end());
    if (K == 1) return {{1.0, full[1]}};

    // orthogonal-polynomial coefficients from the K x K Hankel system
    Eigen::MatrixXd H(K, K);
    Eigen::VectorXd rhs(K);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) H(i, j) = full[i + j];
        rhs(i) = -full[i + K];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(H);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible())
        throw SingularSystem("prony_fit: Hankel matrix numerically singular");
    Eigen::VectorXd coef = lu.solve(rhs);

    std::vector<double> p(coef.data(), coef.data() + K);
    p.push_back(1.0);
    auto rts = poly::roots(p);
    std::vector<double> x(K);
    for (int i = 0; i < K; ++i) {
        if (std::abs(rts[i].imag()) > 1e-8 * std::max(1.0, std::abs(rts[i])) ||
            !(rts[i].real() > 0.0))
            throw NegativeWeight("prony_fit: support not on the positive axis");
        x[i] = rts[i].real();
    }
    std::sort(x.begin(), x.end());

    Eigen::MatrixXd V(K, K);
    Eigen::VectorXd b(K);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) V(i, j) = std::pow(x[j], i);
        b(i) = full[i];
    }
    Eigen::VectorXd w = V.fullPivLu().solve(b);
    std::vector<std::pair<double, double>> out(K);
    for (int i = 0; i < K; ++i) {
        if (w(i) < -1e-10) throw NegativeWeight("prony_fit: negative weight");
        out[i] = {w(i), x[i]};
    }
    return out;
}

IndexReport compare_indices(const RiskModel& model) {
    if (model.perturbed())
        throw PerturbedNotSupported("compare_indices: sigma > 0 not supported");
    IndexReport rep;
    std::vector<double> mc = {model.claims().raw_moment(1), model.claims().raw_moment(2),
                              model.claims().raw_moment(3)};
    auto mt = model.claims().equilibrium_moments(3);
    rep.jt3_claims = jt_index_3(mc);
    rep.jt3_equilibrium = jt_index_3(mt);

    const double theta = model.loading();
    const double mh2 = mt[1] / (mt[0] * mt[0]);
    const double mh3 = mt[2] / (mt[0] * mt[1]);
    rep.nu_Li = mh3 / mh2;
    rep.partial_J_equilibrium = (2.0 * mh2 - mh3) / (mh3 - mh2);
    rep.l2_hat = 2.0 + theta * mh2;
    rep.l3_hat = 3.0 + theta * mh2 * (1.0 + theta * mh3) / (2.0 + theta * mh2);
    rep.nu_L = rep.l3_hat / rep.l2_hat;
    rep.partial_J_aggregate = (2.0 * rep.l2_hat - rep.l3_hat) / (rep.l3_hat - rep.l2_hat);

    rep.case_a_threshold = (1.5 - rep.nu_Li) / (rep.nu_Li - 1.0);
    rep.aggregate_needs_lower_order = theta * mh2 < rep.case_a_threshold;

    // case (b): the unique n >= 2 with (n+2)/(n+1) <= nu_Li <= (n+1)/n
    if (rep.nu_Li > 1.0 && rep.nu_Li <= 4.0 / 3.0) {
        long long n = snapped_ceil((2.0 - rep.nu_Li) / (rep.nu_Li - 1.0));
        if (n >= 2) {
            rep.case_b_order = n;
            const double a = rep.nu_Li;
            const double nd = static_cast<double>(n);
            const double rad = nd * nd + nd - a * (nd * nd - 1.0);
            const double denom = (nd + 1.0) * a - (nd + 2.0);
            if (rad >= 0.0 && denom != 0.0) {
                rep.case_b_x1 = (2.0 - std::sqrt(2.0) * std::sqrt(rad)) / denom;
                rep.case_b_x2 = (2.0 + std::sqrt(2.0) * std::sqrt(rad)) / denom;
                const double xv = theta * mh2;
                rep.case_b_only_equilibrium = rep.case_b_x1 < xv && xv < rep.case_b_x2;
            }
        }
    }
    rep.case_c_bound = mh3 / (mh3 - mh2);

    if (rep.aggregate_needs_lower_order)
        rep.verdict = "aggregate (Beekman-Bowers) index below equilibrium (Ramsay) index";
    else if (rep.partial_J_aggregate == rep.partial_J_equilibrium)
        rep.verdict = "indices coincide";
    else
        rep.verdict = "equilibrium (Ramsay) index at or below aggregate index";
    return rep;
}

} // namespace ruinkit
