#include "ruinkit/ratlap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace ruinkit {
namespace poly {

std::vector<double> trimmed(std::vector<double> c, double rel_tol) {
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return {0.0};
    while (c.size() > 1 && std::abs(c.back()) <= rel_tol * scale) c.pop_back();
    return c;
}

double eval(std::span<const double> c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Complex eval(std::span<const double> c, Complex s) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
}

std::complex<long double> eval(std::span<const double> c, std::complex<long double> s) {
    std::complex<long double> acc = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * s + static_cast<long double>(*it);
    return acc;
}

std::vector<double> mul(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> axpy(std::span<const double> a, std::span<const double> b, double scale) {
    std::vector<double> out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += scale * b[i];
    return out;
}

std::vector<double> derivative(std::span<const double> c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> out(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = static_cast<double>(i) * c[i];
    return out;
}

std::vector<Complex> roots(std::span<const double> c) {
    std::vector<double> p = trimmed({c.begin(), c.end()});
    int n = static_cast<int>(p.size()) - 1;
    if (n <= 0) return {};
    if (n == 1) return {Complex(-p[0] / p[1], 0.0)};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / p[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

std::vector<double> from_roots(std::span<const Complex> rts, double lead) {
    std::vector<Complex> pending(rts.begin(), rts.end());
    std::vector<double> p = {lead};
    const double pair_tol = 1e-9;
    while (!pending.empty()) {
        Complex z = pending.back();
        pending.pop_back();
        if (std::abs(z.imag()) <= pair_tol * (std::abs(z) + 1.0)) {
            p = mul(p, std::vector<double>{-z.real(), 1.0});
            continue;
        }
        // find and consume the conjugate partner, multiply by the real quadratic
        auto it = std::min_element(pending.begin(), pending.end(), [&](Complex a, Complex b) {
            return std::abs(a - std::conj(z)) < std::abs(b - std::conj(z));
        });
        if (it != pending.end()) pending.erase(it);
        p = mul(p, std::vector<double>{std::norm(z), -2.0 * z.real(), 1.0});
    }
    return p;
}

} // namespace poly

namespace {

// Cancel numerically common roots of num and den (relative tolerance 1e-9).
void cancel_common_roots(std::vector<double>& num, std::vector<double>& den) {
    if (num.size() <= 1 || den.size() <= 1) return;
    auto nr = poly::roots(num);
    auto dr = poly::roots(den);
    bool cancelled = false;
    for (auto it = nr.begin(); it != nr.end();) {
        auto match = std::find_if(dr.begin(), dr.end(), [&](Complex z) {
            return std::abs(z - *it) <= 1e-9 * std::max(1.0, std::abs(z));
        });
        if (match != dr.end()) {
            dr.erase(match);
            it = nr.erase(it);
            cancelled = true;
        } else {
            ++it;
        }
    }
    if (!cancelled) return;
    num = poly::from_roots(nr, num.back());
    den = poly::from_roots(dr, den.back());
}

} // namespace

RationalLT::RationalLT(std::vector<double> num, std::vector<double> den)
    : num_(poly::trimmed(std::move(num))), den_(poly::trimmed(std::move(den))) {
    double dscale = 0.0;
    for (double v : den_) dscale = std::max(dscale, std::abs(v));
    if (dscale == 0.0) throw Error("RationalLT: denominator is identically zero");
    cancel_common_roots(num_, den_);
    const double lead = den_.back();
    for (double& v : den_) v /= lead;
    for (double& v : num_) v /= lead;
}

double RationalLT::operator()(double s) const {
    return poly::eval(num_, s) / poly::eval(den_, s);
}

Complex RationalLT::operator()(Complex s) const {
    return poly::eval(num_, s) / poly::eval(den_, s);
}

std::complex<long double> RationalLT::operator()(std::complex<long double> s) const {
    return poly::eval(num_, s) / poly::eval(den_, s);
}

std::vector<double> series_of(const RationalLT& r, int n) {
    const auto& num = r.num();
    const auto& den = r.den();
    double dscale = 0.0;
    for (double v : den) dscale = std::max(dscale, std::abs(v));
    if (std::abs(den[0]) <= 1e-13 * dscale)
        throw PoleAtZero("series_of: denominator vanishes at s = 0");
    std::vector<double> c(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = k < static_cast<int>(num.size()) ? num[k] : 0.0;
        for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j)
            acc -= den[j] * c[k - j];
        c[k] = acc / den[0];
    }
    return c;
}

namespace {

// Solve A x = b, tolerating rank deficiency when the system is consistent.
// Throws `on_inconsistent` with `context` otherwise.
Eigen::VectorXd solve_allowing_rank_deficiency(const Eigen::MatrixXd& A,
                                               const Eigen::VectorXd& b,
                                               const char* context) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-12);
    Eigen::VectorXd x = lu.solve(b);
    double scale = A.cwiseAbs().maxCoeff() * std::max(1.0, x.cwiseAbs().maxCoeff()) +
                   b.cwiseAbs().maxCoeff();
    if (!x.allFinite() || (A * x - b).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1e-300))
        throw SingularSystem(std::string(context) + ": linear system has no solution");
    return x;
}

} // namespace

RationalLT pade(std::span<const double> series, int m, int n) {
    if (m < 0 || n < 0) throw Error("pade: negative order");
    if (static_cast<int>(series.size()) < m + n + 1)
        throw Error("pade: series too short for requested order");
    auto c = [&](int k) { return (k >= 0 && k < static_cast<int>(series.size())) ? series[k] : 0.0; };

    // q_0 = 1; orders m+1..m+n determine q_1..q_n
    std::vector<double> q(n + 1, 0.0);
    q[0] = 1.0;
    if (n > 0) {
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            int l = m + 1 + i;
            for (int j = 1; j <= n; ++j) A(i, j - 1) = c(l - j);
            b(i) = -c(l);
        }
        Eigen::VectorXd sol = solve_allowing_rank_deficiency(A, b, "pade");
        for (int j = 1; j <= n; ++j) q[j] = sol(j - 1);
    }
    std::vector<double> p(m + 1, 0.0);
    for (int l = 0; l <= m; ++l)
        for (int j = 0; j <= std::min(l, n); ++j) p[l] += q[j] * c(l - j);
    return RationalLT(std::move(p), std::move(q));
}

RationalLT two_point_pade(std::span<const double> series0,
                          std::span<const double> inf_values, int m, int n) {
    const int k0 = static_cast<int>(series0.size());
    const int ki = static_cast<int>(inf_values.size());
    if (m < 0 || n <= m)
        throw Error("two_point_pade: requires 0 <= m < n");
    if (k0 + ki != m + n + 1)
        throw InconsistentConstraints("two_point_pade: constraint count must equal m+n+1");

    // unknowns p_0..p_m, q_0..q_{n-1}; q_n = 1
    const int N = m + n + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(N);
    int row = 0;
    for (int l = 0; l < k0; ++l, ++row) {
        if (l <= m) A(row, l) = 1.0;
        for (int j = 0; j <= std::min(l, n); ++j) {
            double cj = series0[l - j];
            if (j < n)
                A(row, m + 1 + j) -= cj;
            else
                b(row) += cj;
        }
    }
    for (int r = 1; r <= ki; ++r, ++row) {
        int idx = n - r;
        if (idx >= 0 && idx <= m) A(row, idx) = 1.0;
        for (int t = 1; t <= r; ++t) {
            int qi = n - r + t;
            if (qi < 0) continue;
            if (qi < n)
                A(row, m + 1 + qi) -= inf_values[t - 1];
            else
                b(row) += inf_values[t - 1];
        }
    }
    Eigen::VectorXd sol;
    try {
        sol = solve_allowing_rank_deficiency(A, b, "two_point_pade");
    } catch (const SingularSystem&) {
        throw InconsistentConstraints("two_point_pade: constraints are not simultaneously satisfiable");
    }
    std::vector<double> p(m + 1), q(n + 1);
    for (int i = 0; i <= m; ++i) p[i] = sol(i);
    for (int j = 0; j < n; ++j) q[j] = sol(m + 1 + j);
    q[n] = 1.0;
    return RationalLT(std::move(p), std::move(q));
}

// ---------------------------------------------------------------------------
// ExpPolyMixture

ExpPolyMixture::ExpPolyMixture(std::vector<ExpTerm> terms, double atom0)
    : terms_(std::move(terms)), atom0_(atom0) {}

namespace {

double imag_guard(Complex acc, double scale, const char* what) {
    if (std::abs(acc.imag()) > 1e-10 * std::max(scale, 1e-300))
        throw NumericalInconsistency(std::string(what) +
                                     ": imaginary residue exceeds tolerance");
    return acc.real();
}

// w x^k e^{-rx}, computed through log magnitudes so huge x underflows to 0
// instead of producing inf * 0.
Complex term_value(const ExpTerm& t, double x) {
    if (x == 0.0) return t.power == 0 ? t.weight : Complex(0.0);
    double logmag = std::log(std::abs(t.weight) + 1e-300) + t.power * std::log(x) -
                    t.rate.real() * x;
    if (logmag < -745.0) return 0.0;
    double xp = std::pow(x, t.power);
    return t.weight * xp * std::exp(-t.rate * x);
}

// int_x^inf t^k e^{-rt} dt = e^{-rx} sum_{j=0}^k (k!/j!) x^j / r^{k-j+1}
Complex term_tail(const ExpTerm& t, double x) {
    Complex r = t.rate;
    int k = t.power;
    Complex sum = 0.0;
    double fact_ratio = 1.0; // k!/j! built downward from j=k
    // j runs k..0; k!/j! = prod_{i=j+1}^{k} i
    for (int j = k; j >= 0; --j) {
        double xj = (x == 0.0 && j == 0) ? 1.0 : std::pow(x, j);
        sum += fact_ratio * xj / std::pow(r, k - j + 1);
        fact_ratio *= j; // next iteration uses k!/(j-1)! = (k!/j!) * j
    }
    if (t.rate.real() * x > 745.0) return 0.0;
    return t.weight * std::exp(-r * x) * sum;
}

} // namespace

double ExpPolyMixture::value(double x) const {
    Complex acc = 0.0;
    double scale = 0.0;
    for (const auto& t : terms_) {
        Complex v = term_value(t, x);
        acc += v;
        scale += std::abs(v);
    }
    return imag_guard(acc, scale, "ExpPolyMixture::value");
}

double ExpPolyMixture::integral_tail(double x) const {
    Complex acc = 0.0;
    double scale = 0.0;
    for (const auto& t : terms_) {
        Complex v = term_tail(t, x);
        acc += v;
        scale += std::abs(v);
    }
    return imag_guard(acc, scale, "ExpPolyMixture::integral_tail");
}

Complex ExpPolyMixture::laplace(Complex s) const {
    Complex acc = atom0_;
    for (const auto& t : terms_) {
        double fact = 1.0;
        for (int j = 2; j <= t.power; ++j) fact *= j;
        acc += t.weight * fact / std::pow(s + t.rate, t.power + 1);
    }
    return acc;
}

ExpPolyMixture ExpPolyMixture::negative_derivative() const {
    // -d/dx [w x^k e^{-rx}] = w r x^k e^{-rx} - w k x^{k-1} e^{-rx}
    std::vector<ExpTerm> out;
    for (const auto& t : terms_) {
        out.push_back({t.weight * t.rate, t.rate, t.power});
        if (t.power > 0) out.push_back({-t.weight * static_cast<double>(t.power), t.rate, t.power - 1});
    }
    return ExpPolyMixture(std::move(out));
}

double ExpPolyMixture::min_rate() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) m = std::min(m, t.rate.real());
    return m;
}

double ExpPolyMixture::weight_scale() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.weight);
    return s;
}

double mixture_eval(const ExpPolyMixture& mix, double x, MixtureKind kind) {
    if (x < 0.0) throw Error("mixture_eval: x must be nonnegative");
    return kind == MixtureKind::Density ? mix.value(x) : mix.integral_tail(x);
}

// ---------------------------------------------------------------------------
// Partial fractions

namespace {

// Coefficients of p expanded in powers of (s - z0), by repeated synthetic
// division.
std::vector<Complex> taylor_shift(std::span<const double> c, Complex z0) {
    std::vector<Complex> b(c.begin(), c.end());
    const int n = static_cast<int>(b.size()) - 1;
    for (int j = 0; j <= n; ++j)
        for (int i = n - 1; i >= j; --i) b[i] += z0 * b[i + 1];
    return b;
}

} // namespace

ExpPolyMixture partial_fractions(const RationalLT& r) {
    std::vector<double> num = r.num();
    const std::vector<double>& den = r.den();
    const int dn = static_cast<int>(den.size()) - 1;
    if (static_cast<int>(num.size()) - 1 > dn)
        throw Error("partial_fractions: numerator degree exceeds denominator degree");
    double atom0 = 0.0;
    if (static_cast<int>(num.size()) - 1 == dn && dn >= 0) {
        atom0 = num[dn]; // den is monic
        num = poly::trimmed(poly::axpy(num, den, -atom0));
    }
    if (dn == 0) return ExpPolyMixture({}, atom0);

    auto rts = poly::roots(den);
    std::sort(rts.begin(), rts.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    // cluster poles within 1e-7 relative spacing
    std::vector<std::vector<Complex>> clusters;
    for (Complex z : rts) {
        bool placed = false;
        for (auto& cl : clusters) {
            Complex center = cl.front();
            if (std::abs(z - center) <= 1e-7 * std::max(1.0, std::abs(center))) {
                cl.push_back(z);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({z});
    }

    std::vector<ExpTerm> terms;
    std::vector<double> dden = poly::derivative(den);
    double weight_scale = 0.0;
    for (const auto& cl : clusters) {
        Complex z0 = 0.0;
        for (Complex z : cl) z0 += z;
        z0 /= static_cast<double>(cl.size());
        const int mlt = static_cast<int>(cl.size());
        if (mlt == 1) {
            Complex w = poly::eval(num, z0) / poly::eval(dden, z0);
            terms.push_back({w, -z0, 0});
            weight_scale += std::abs(w);
        } else {
            // num/den = sum_u h_u / (s - z0)^{mlt-u} with h = Taylor(num)/q,
            // q = den/(s-z0)^mlt expanded around z0.
            auto dt = taylor_shift(den, z0);
            std::vector<Complex> q(dt.begin() + mlt, dt.end());
            auto nt = taylor_shift(num, z0);
            nt.resize(std::max<std::size_t>(nt.size(), mlt), Complex(0.0));
            std::vector<Complex> h(mlt);
            for (int u = 0; u < mlt; ++u) {
                Complex acc = u < static_cast<int>(nt.size()) ? nt[u] : Complex(0.0);
                for (int j = 1; j <= u; ++j)
                    if (j < static_cast<int>(q.size())) acc -= q[j] * h[u - j];
                h[u] = acc / q[0];
            }
            for (int u = 0; u < mlt; ++u) {
                int power = mlt - u - 1;
                double fact = 1.0;
                for (int j = 2; j <= power; ++j) fact *= j;
                Complex w = h[u] / fact;
                terms.push_back({w, -z0, power});
                weight_scale += std::abs(w);
            }
        }
    }

    // Terms with negligible weight are artifacts of exact or near common
    // factors that survived cancellation; drop them before the stability check.
    std::vector<ExpTerm> kept;
    for (const auto& t : terms) {
        if (std::abs(t.weight) <= 1e-9 * weight_scale) continue;
        if (t.rate.real() <= 1e-12 * std::max(1.0, std::abs(t.rate)))
            throw UnstablePole("partial_fractions: pole with nonnegative real part");
        kept.push_back(t);
    }
    return ExpPolyMixture(std::move(kept), atom0);
}

} // namespace ruinkit
