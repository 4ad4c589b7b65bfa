#include "ruinkit/claims.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>

namespace ruinkit {

namespace {

void validate(const ClaimDistribution::Variant& v) {
    struct Checker {
        void operator()(const Exponential& e) const {
            if (!(e.rate > 0.0)) throw Error("Exponential: rate must be positive");
        }
        void operator()(const HyperExponential& h) const {
            if (h.weights.empty() || h.weights.size() != h.rates.size())
                throw Error("HyperExponential: weights/rates size mismatch");
            double sum = 0.0;
            for (double w : h.weights) {
                if (w < 0.0) throw Error("HyperExponential: negative weight");
                sum += w;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw Error("HyperExponential: weights must sum to 1");
            for (std::size_t i = 0; i < h.rates.size(); ++i) {
                if (!(h.rates[i] > 0.0)) throw Error("HyperExponential: rates must be positive");
                for (std::size_t j = i + 1; j < h.rates.size(); ++j)
                    if (h.rates[i] == h.rates[j])
                        throw Error("HyperExponential: rates must be distinct");
            }
        }
        void operator()(const GammaClaims& g) const {
            if (!(g.shape > 0.0) || !(g.scale > 0.0))
                throw Error("Gamma: shape and scale must be positive");
        }
        void operator()(const UniformInterval& u) const {
            if (!(0.0 <= u.a && u.a < u.b)) throw Error("Uniform: requires 0 <= a < b");
        }
        void operator()(const ErlangClaims& e) const {
            if (e.shape < 1 || !(e.rate > 0.0))
                throw Error("Erlang: shape >= 1 and rate > 0 required");
        }
        void operator()(const MomentsOnly& m) const {
            if (m.m.empty() || !(m.m[0] > 0.0))
                throw Error("MomentsOnly: m_1 must be present and positive");
        }
    };
    std::visit(Checker{}, v);
}

// log(1+z) and expm1(z) for complex arguments, via the stable real forms
template <class T>
std::complex<T> log1p_c(std::complex<T> z) {
    const T x = z.real(), y = z.imag();
    return {T(0.5) * std::log1p(T(2) * x + x * x + y * y), std::atan2(y, T(1) + x)};
}

template <class T>
std::complex<T> expm1_c(std::complex<T> z) {
    const T ex = std::expm1(z.real());
    const T sy = std::sin(z.imag()), shalf = std::sin(z.imag() / T(2));
    const T cy_m1 = -T(2) * shalf * shalf;  // cos y - 1
    return {ex * (cy_m1 + T(1)) + cy_m1, (ex + T(1)) * sy};
}

// (1 - e^{-z})/z
template <class T>
std::complex<T> one_minus_exp_over(std::complex<T> z) {
    if (std::abs(z) < T(1e-8)) return std::complex<T>(1.0) - z / T(2) + z * z / T(6);
    return -expm1_c(-z) / z;
}

// (e^{-z} - 1 + z)/z^2 = int_0^1 e^{-zt} (1-t) dt
template <class T>
std::complex<T> exp_remainder2(std::complex<T> z) {
    if (std::abs(z) < T(1e-4)) {
        return T(0.5) - z / T(6) + z * z / T(24) - z * z * z / T(120);
    }
    return (expm1_c(-z) + z) / (z * z);
}

template <class T>
std::complex<T> laplace_impl(const ClaimDistribution::Variant& v, std::complex<T> s) {
    using C = std::complex<T>;
    struct Eval {
        C s;
        C operator()(const Exponential& e) const {
            return static_cast<T>(e.rate) / (s + static_cast<T>(e.rate));
        }
        C operator()(const HyperExponential& h) const {
            C acc = 0.0;
            for (std::size_t i = 0; i < h.rates.size(); ++i)
                acc += static_cast<T>(h.weights[i]) * static_cast<T>(h.rates[i]) /
                       (s + static_cast<T>(h.rates[i]));
            return acc;
        }
        C operator()(const GammaClaims& g) const {
            // principal branch of (1 + beta s)^(-alpha); the cut sits on the
            // real axis left of -1/beta
            if (s.imag() == T(0) && s.real() <= -T(1) / static_cast<T>(g.scale))
                throw DomainError("Gamma transform: s on or beyond the branch cut");
            return std::pow(C(1.0) + static_cast<T>(g.scale) * s, -static_cast<T>(g.shape));
        }
        C operator()(const UniformInterval& u) const {
            // e^{-as} (1 - e^{-ws})/(ws), w = b - a; stable at small s
            C zw = static_cast<T>(u.b - u.a) * s;
            return std::exp(-static_cast<T>(u.a) * s) * one_minus_exp_over(zw);
        }
        C operator()(const ErlangClaims& e) const {
            return std::pow(static_cast<T>(e.rate) / (s + static_cast<T>(e.rate)), e.shape);
        }
        C operator()(const MomentsOnly&) const {
            throw TransformUnavailable("MomentsOnly has no Laplace transform");
        }
    };
    return std::visit(Eval{s}, v);
}

} // namespace

ClaimDistribution::ClaimDistribution(Variant v) : v_(std::move(v)) { validate(v_); }

double ClaimDistribution::raw_moment(int k) const {
    if (k < 1) throw Error("raw_moment: k must be >= 1");
    struct Moment {
        int k;
        double operator()(const Exponential& e) const {
            double m = 1.0;
            for (int j = 1; j <= k; ++j) m *= j / e.rate;
            return m;
        }
        double operator()(const HyperExponential& h) const {
            double fact = 1.0;
            for (int j = 2; j <= k; ++j) fact *= j;
            double acc = 0.0;
            for (std::size_t i = 0; i < h.rates.size(); ++i)
                acc += h.weights[i] / std::pow(h.rates[i], k);
            return fact * acc;
        }
        double operator()(const GammaClaims& g) const {
            double m = 1.0;
            for (int j = 0; j < k; ++j) m *= (g.shape + j) * g.scale;
            return m;
        }
        double operator()(const UniformInterval& u) const {
            // (b^{k+1} - a^{k+1}) / ((k+1)(b-a))
            return (std::pow(u.b, k + 1) - std::pow(u.a, k + 1)) / ((k + 1) * (u.b - u.a));
        }
        double operator()(const ErlangClaims& e) const {
            double m = 1.0;
            for (int j = 0; j < k; ++j) m *= (e.shape + j) / e.rate;
            return m;
        }
        double operator()(const MomentsOnly& mo) const {
            if (k > static_cast<int>(mo.m.size()))
                throw MomentUnavailable("MomentsOnly: moment order " + std::to_string(k) +
                                        " not provided");
            return mo.m[k - 1];
        }
    };
    return std::visit(Moment{k}, v_);
}

std::vector<double> ClaimDistribution::equilibrium_moments(int K) const {
    const double m1 = raw_moment(1);
    std::vector<double> out(K);
    for (int k = 1; k <= K; ++k) out[k - 1] = raw_moment(k + 1) / ((k + 1) * m1);
    return out;
}

Complex ClaimDistribution::laplace(Complex s) const { return laplace_impl(v_, s); }

std::complex<long double> ClaimDistribution::laplace(std::complex<long double> s) const {
    return laplace_impl(v_, s);
}

namespace {

// Fbar*(s) = (1 - f*(s))/s. Each variant gets a cancellation-free form; the
// removable singularity at s = 0 is filled with a 3-term moment series.
template <class T>
std::complex<T> survival_laplace_impl(const ClaimDistribution& dist, std::complex<T> s) {
    using C = std::complex<T>;
    if (std::abs(s) < T(1e-8)) {
        T m1 = static_cast<T>(dist.raw_moment(1));
        T m2 = static_cast<T>(dist.raw_moment(2));
        T m3 = static_cast<T>(dist.raw_moment(3));
        return m1 - m2 * s / T(2) + m3 * s * s / T(6);
    }
    struct Eval {
        C s;
        C operator()(const Exponential& e) const {
            return C(1.0) / (s + static_cast<T>(e.rate));
        }
        C operator()(const HyperExponential& h) const {
            C acc = 0.0;
            for (std::size_t i = 0; i < h.rates.size(); ++i)
                acc += static_cast<T>(h.weights[i]) / (s + static_cast<T>(h.rates[i]));
            return acc;
        }
        C operator()(const GammaClaims& g) const {
            if (s.imag() == T(0) && s.real() <= -T(1) / static_cast<T>(g.scale))
                throw DomainError("Gamma transform: s on or beyond the branch cut");
            // 1 - (1+bs)^{-a} = -expm1(-a log1p(bs))
            return -expm1_c(-static_cast<T>(g.shape) * log1p_c(static_cast<T>(g.scale) * s)) / s;
        }
        C operator()(const UniformInterval& u) const {
            // int_0^a e^{-sx} dx + e^{-as} w int_0^1 e^{-swt}(1-t) dt, w = b-a
            T a = static_cast<T>(u.a), w = static_cast<T>(u.b - u.a);
            return a * one_minus_exp_over(a * s) + std::exp(-a * s) * w * exp_remainder2(w * s);
        }
        C operator()(const ErlangClaims& e) const {
            return -expm1_c(-T(e.shape) * log1p_c(s / static_cast<T>(e.rate))) / s;
        }
        C operator()(const MomentsOnly&) const {
            throw TransformUnavailable("MomentsOnly has no Laplace transform");
        }
    };
    return std::visit(Eval{s}, dist.value());
}

} // namespace

Complex ClaimDistribution::survival_laplace(Complex s) const {
    return survival_laplace_impl(*this, s);
}

std::complex<long double> ClaimDistribution::survival_laplace(std::complex<long double> s) const {
    return survival_laplace_impl(*this, s);
}

RationalLT ClaimDistribution::rational_lt() const {
    struct Build {
        RationalLT operator()(const Exponential& e) const {
            return RationalLT({e.rate}, {e.rate, 1.0});
        }
        RationalLT operator()(const HyperExponential& h) const {
            const std::size_t K = h.rates.size();
            std::vector<double> den = {1.0};
            for (double r : h.rates) den = poly::mul(den, std::vector<double>{r, 1.0});
            std::vector<double> num = {0.0};
            for (std::size_t i = 0; i < K; ++i) {
                std::vector<double> part = {h.weights[i] * h.rates[i]};
                for (std::size_t j = 0; j < K; ++j)
                    if (j != i) part = poly::mul(part, std::vector<double>{h.rates[j], 1.0});
                num = poly::axpy(num, part);
            }
            return RationalLT(std::move(num), std::move(den));
        }
        RationalLT operator()(const ErlangClaims& e) const {
            std::vector<double> den = {1.0};
            double num = 1.0;
            for (int j = 0; j < e.shape; ++j) {
                den = poly::mul(den, std::vector<double>{e.rate, 1.0});
                num *= e.rate;
            }
            return RationalLT({num}, std::move(den));
        }
        RationalLT operator()(const GammaClaims&) const {
            throw NotRational("Gamma transform is not rational");
        }
        RationalLT operator()(const UniformInterval&) const {
            throw NotRational("Uniform transform is not rational");
        }
        RationalLT operator()(const MomentsOnly&) const {
            throw NotRational("MomentsOnly has no transform");
        }
    };
    return std::visit(Build{}, v_);
}

bool ClaimDistribution::has_transform() const {
    return !std::holds_alternative<MomentsOnly>(v_);
}

bool ClaimDistribution::is_rational() const {
    return std::holds_alternative<Exponential>(v_) ||
           std::holds_alternative<HyperExponential>(v_) ||
           std::holds_alternative<ErlangClaims>(v_);
}

double ClaimDistribution::transform_boundary() const {
    struct Boundary {
        double operator()(const Exponential& e) const { return e.rate; }
        double operator()(const HyperExponential& h) const {
            return *std::min_element(h.rates.begin(), h.rates.end());
        }
        double operator()(const GammaClaims& g) const { return 1.0 / g.scale; }
        double operator()(const UniformInterval&) const {
            return std::numeric_limits<double>::infinity();
        }
        double operator()(const ErlangClaims& e) const { return e.rate; }
        double operator()(const MomentsOnly&) const {
            throw TransformUnavailable("MomentsOnly has no transform");
        }
    };
    return std::visit(Boundary{}, v_);
}

int ClaimDistribution::max_moment_order() const {
    if (const auto* mo = std::get_if<MomentsOnly>(&v_))
        return static_cast<int>(mo->m.size());
    return INT_MAX;
}

std::string ClaimDistribution::label() const {
    struct Label {
        std::string operator()(const Exponential&) const { return "exponential"; }
        std::string operator()(const HyperExponential&) const { return "hyperexponential"; }
        std::string operator()(const GammaClaims&) const { return "gamma"; }
        std::string operator()(const UniformInterval&) const { return "uniform"; }
        std::string operator()(const ErlangClaims&) const { return "erlang"; }
        std::string operator()(const MomentsOnly&) const { return "moments"; }
    };
    return std::visit(Label{}, v_);
}

} // namespace ruinkit
