#include "jtrace/eisenstein.hpp"

#include <cmath>

namespace jtrace {

Rational eisenstein_const(std::int64_t k) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("eisenstein_const: k must be even and >= 2");
    return -bernoulli(k) / Rational(factorial(k));
}

MultiSeries classical_E(std::int64_t k, std::int64_t N) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("classical_E: k must be even and >= 2");
    if (N < 1) throw std::invalid_argument("classical_E: N must be >= 1");
    MultiSeries s(0, 0, N);
    s.add_term(0, {}, eisenstein_const(k));
    Rational pref = Rational(2) / Rational(factorial(k - 1));
    for (std::int64_t n = 1; n < N; ++n)
        s.add_term(n, {}, pref * Rational(divisor_sigma(k - 1, n)));
    return s;
}

Complex twist_argument(const SamplePoint& p, const TwistSpec& twist) {
    if (p.zs.size() != twist.mu.size())
        throw std::invalid_argument("twist_argument: z and mu length mismatch");
    Complex acc = 0.0;
    for (std::size_t j = 0; j < twist.mu.size(); ++j)
        acc += p.zs[j] * static_cast<double>(twist.mu[j]);
    return acc;
}

double dist_to_integers(Complex x) {
    double fr = x.real() - std::round(x.real());
    return std::hypot(fr, x.imag());
}

namespace {

constexpr double kDegenerateTol = 1e-12;

// sum_{l>=1} l^{m-1} [ q^l/zeta / (1 - q^l/zeta) + sign * q^l zeta / (1 - q^l zeta) ]
// with adaptive cutoff: stops once the geometric majorant of the tail is
// below tail_tol. The paper gives no effective bounds, so the cutoff L is
// chosen so that L^{m-1} |q|^L max(|zeta|^{+-1}) / (1-|q|)^{m+1} < tail_tol.
Complex twisted_sum(std::int64_t m, Complex q, Complex zeta, double sign,
                    const TruncationPolicy& policy) {
    const double aq = std::abs(q);
    if (!(aq < 1.0)) throw std::domain_error("twisted_E_eval: |q| must be < 1");
    const double M = std::max({std::abs(zeta), 1.0 / std::abs(zeta), 1.0});
    const double inflate = std::pow(1.0 - aq, -static_cast<double>(m) - 1.0);
    Complex acc = 0.0;
    Complex qpow = 1.0;
    const std::int64_t cap = 400000;
    for (std::int64_t l = 1; l <= cap; ++l) {
        qpow *= q;
        Complex a = qpow / zeta;
        Complex b = qpow * zeta;
        Complex da = 1.0 - a;
        Complex db = 1.0 - b;
        if (std::abs(da) < 1e-13 || std::abs(db) < 1e-13)
            throw std::domain_error("twisted_E_eval: sample point hits a pole q^l zeta^{+-1} = 1");
        double lp = std::pow(static_cast<double>(l), static_cast<double>(m - 1));
        acc += lp * (a / da + sign * b / db);
        double tail = std::pow(static_cast<double>(l + 1), static_cast<double>(m - 1)) *
                      std::pow(aq, static_cast<double>(l + 1)) * M * inflate;
        if (std::pow(aq, static_cast<double>(l)) * M < 0.5 && tail < policy.tail_tol)
            return acc;
    }
    throw std::domain_error("twisted_E_eval: series did not reach tail tolerance");
}

// untwisted sum_{l>=1} l^{m-1} q^l / (1 - q^l)
Complex sigma_sum(std::int64_t m, Complex q, const TruncationPolicy& policy) {
    const double aq = std::abs(q);
    if (!(aq < 1.0)) throw std::domain_error("twisted_E_eval: |q| must be < 1");
    const double inflate = std::pow(1.0 - aq, -static_cast<double>(m) - 1.0);
    Complex acc = 0.0;
    Complex qpow = 1.0;
    const std::int64_t cap = 400000;
    for (std::int64_t l = 1; l <= cap; ++l) {
        qpow *= q;
        Complex d = 1.0 - qpow;
        acc += std::pow(static_cast<double>(l), static_cast<double>(m - 1)) * qpow / d;
        double tail = std::pow(static_cast<double>(l + 1), static_cast<double>(m - 1)) *
                      std::pow(aq, static_cast<double>(l + 1)) * inflate;
        if (tail < policy.tail_tol) return acc;
    }
    throw std::domain_error("twisted_E_eval: series did not reach tail tolerance");
}

}  // namespace

Complex twisted_E_eval(std::int64_t m, const SamplePoint& p, const TwistSpec& twist,
                       const TruncationPolicy& policy) {
    if (m < 0) throw std::invalid_argument("twisted_E_eval: m must be >= 0");
    if (m == 0) return 1.0;
    Complex q = p.q();
    Complex zmu = twist_argument(p, twist);
    bool degenerate = dist_to_integers(zmu) < kDegenerateTol;
    if (twist.is_untwisted() || degenerate) {
        if (m == 1 && !twist.is_untwisted())
            throw std::domain_error(
                "twisted_E_eval: z.mu in Z with m = 1 hits the pole of 1/(1-zeta^{-1})");
        if (m % 2 == 0)
            return to_double(eisenstein_const(m)) +
                   2.0 / to_double(Rational(factorial(m - 1))) * sigma_sum(m, q, policy);
        if (m == 1) return -0.5;  // l = 0 excluded; the two l-sums cancel at zeta = 1
        return 0.0;
    }
    Complex zeta = std::exp(Complex(0.0, kTwoPi) * zmu);
    double pref = 1.0 / to_double(Rational(factorial(m - 1)));
    if (m % 2 == 0)
        return to_double(eisenstein_const(m)) + pref * twisted_sum(m, q, zeta, +1.0, policy);
    if (m == 1)
        return 1.0 / (1.0 - 1.0 / zeta) - 0.5 + twisted_sum(1, q, zeta, -1.0, policy);
    return pref * twisted_sum(m, q, zeta, -1.0, policy);
}

MultiSeries twisted_E_qexp(std::int64_t m, const TwistSpec& twist, std::int64_t N) {
    if (m < 2)
        throw std::invalid_argument(
            "twisted_E_qexp: m must be >= 2 (E~_1 is exposed numerically only)");
    if (N < 1) throw std::invalid_argument("twisted_E_qexp: N must be >= 1");
    int rank = static_cast<int>(twist.mu.size());
    MultiSeries s(rank, 0, N);
    std::vector<std::int64_t> t(rank);
    if (m % 2 == 0) s.add_term(0, std::vector<std::int64_t>(rank, 0), eisenstein_const(m));
    Rational sign = (m % 2 == 0) ? 1 : -1;
    Rational invfact = Rational(1) / Rational(factorial(m - 1));
    for (std::int64_t l = 1; l < N; ++l) {
        Rational lp = rational_pow(Rational(l), m - 1) * invfact;
        for (std::int64_t j = 1; l * j < N; ++j) {
            for (int i = 0; i < rank; ++i) t[i] = -j * twist.mu[i];
            s.add_term(l * j, t, lp);
            for (int i = 0; i < rank; ++i) t[i] = j * twist.mu[i];
            s.add_term(l * j, t, sign * lp);
        }
    }
    s.normalize();
    return s;
}

}  // namespace jtrace
