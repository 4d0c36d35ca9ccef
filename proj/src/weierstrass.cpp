#include "jtrace/weierstrass.hpp"

#include <cmath>

namespace jtrace {

namespace {
constexpr double kDegenerateTol = 1e-12;
}

Complex twisted_P_direct(std::int64_t k, const SamplePoint& p, const TwistSpec& twist,
                         const TruncationPolicy& policy) {
    if (k < 1) throw std::invalid_argument("twisted_P_direct: k must be >= 1");
    if (!p.w) throw std::invalid_argument("twisted_P_direct: sample point must carry w");
    const Complex q = p.q();
    const Complex qw = std::exp(*p.w);
    const double aq = std::abs(q);
    const double aqw = std::abs(qw);
    if (!(aq < aqw && aqw < 1.0))
        throw std::domain_error("twisted_P_direct: need |q| < |e^w| < 1");

    const Complex zmu = twist_argument(p, twist);
    const bool untwisted = twist.is_untwisted() || dist_to_integers(zmu) < kDegenerateTol;
    if (untwisted && k == 1 && !twist.is_untwisted())
        throw std::domain_error("twisted_P_direct: zeta-product 1 with k = 1 hits the l = 0 pole");
    const Complex zeta = untwisted ? Complex(1.0) : std::exp(Complex(0.0, kTwoPi) * zmu);

    Complex acc = 0.0;
    if (!untwisted && k == 1) acc = 1.0 / (1.0 - 1.0 / zeta);  // the l = 0 term

    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    const double ratio = std::max(aqw, aq / aqw);
    const double zscale = std::max({std::abs(zeta), 1.0 / std::abs(zeta), 1.0});
    const double inflate = std::pow(1.0 - ratio, -static_cast<double>(k) - 1.0);
    Complex qwp = 1.0;   // qw^l
    Complex qqwp = 1.0;  // (q/qw)^l
    Complex qp = 1.0;    // q^l
    const Complex qqw = q / qw;
    const std::int64_t cap = 400000;
    for (std::int64_t l = 1; l <= cap; ++l) {
        qwp *= qw;
        qqwp *= qqw;
        qp *= q;
        Complex da = 1.0 - qp / zeta;
        Complex db = 1.0 - qp * zeta;
        if (std::abs(da) < 1e-13 || std::abs(db) < 1e-13)
            throw std::domain_error("twisted_P_direct: sample point hits a pole q^l zeta^{+-1} = 1");
        double lp = std::pow(static_cast<double>(l), static_cast<double>(k - 1));
        acc += lp * (qwp / da + sgn * qqwp * zeta / db);
        double tail = std::pow(static_cast<double>(l + 1), static_cast<double>(k - 1)) *
                      std::pow(ratio, static_cast<double>(l + 1)) * zscale * inflate * 4.0;
        if (std::pow(aq, static_cast<double>(l)) * zscale < 0.5 && tail < policy.tail_tol)
            return acc / to_double(Rational(factorial(k - 1)));
    }
    throw std::domain_error("twisted_P_direct: series did not converge");
}

Complex twisted_P_series(std::int64_t k, const SamplePoint& p, const TwistSpec& twist,
                         std::int64_t J) {
    if (k < 1) throw std::invalid_argument("twisted_P_series: k must be >= 1");
    if (J < k) throw std::invalid_argument("twisted_P_series: J must be >= k (empty sum)");
    if (!p.w) throw std::invalid_argument("twisted_P_series: sample point must carry w");
    const Complex w = *p.w;
    if (std::abs(w) >= kTwoPi * 0.5)
        throw std::domain_error("twisted_P_series: |w| outside the expansion radius guard");
    TruncationPolicy policy(20, 1e-15);
    Complex acc = std::pow(-1.0, static_cast<double>(k)) / std::pow(w, static_cast<double>(k));
    Complex wp = 1.0;
    Complex last = 0.0;
    for (std::int64_t j = k; j <= J; ++j) {
        last = to_double(binomial(j - 1, k - 1)) * twisted_E_eval(j, p, twist, policy) * wp;
        acc += last;
        wp *= w;
    }
    if (std::abs(last) > 1e-8)
        throw std::domain_error("twisted_P_series: last retained term not below tolerance");
    return acc;
}

}  // namespace jtrace
