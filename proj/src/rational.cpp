#include "jtrace/rational.hpp"

namespace jtrace {

Rational rational_from_string(const std::string& s) {
    try {
        Rational r(s);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Integer factorial(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Integer f = 1;
    for (std::int64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational binomial(std::int64_t x, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("binomial: negative k");
    Rational r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r *= Rational(Integer(x - i), Integer(i + 1));
    }
    return r;
}

Rational rational_pow(const Rational& base, std::int64_t exp) {
    if (exp < 0) {
        if (base == 0) throw std::invalid_argument("rational_pow: 0^negative");
        return 1 / rational_pow(base, -exp);
    }
    Rational acc = 1;
    Rational b = base;
    std::int64_t e = exp;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Rational bernoulli(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    // sum_{j=0}^{m-1} binom(m+1, j) B_j = 0 for m >= 1
    std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
    b[0] = 1;
    for (std::int64_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::int64_t j = 0; j < m; ++j) {
            acc += binomial(m + 1, j) * b[static_cast<std::size_t>(j)];
        }
        b[static_cast<std::size_t>(m)] = -acc / Rational(m + 1);
    }
    return b[static_cast<std::size_t>(n)];
}

Integer divisor_sigma(std::int64_t k, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("divisor_sigma: n must be positive");
    Integer acc = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        Integer dp = 1;
        for (std::int64_t i = 0; i < k; ++i) dp *= d;
        acc += dp;
        std::int64_t e = n / d;
        if (e != d) {
            Integer ep = 1;
            for (std::int64_t i = 0; i < k; ++i) ep *= e;
            acc += ep;
        }
    }
    return acc;
}

RationalPoly RationalPoly::one(std::size_t len) {
    RationalPoly p(len);
    if (len > 0) p[0] = 1;
    return p;
}

RationalPoly RationalPoly::mul(const RationalPoly& other) const {
    RationalPoly out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; i + j < size() && j < other.size(); ++j) {
            if (other[j] == 0) continue;
            out[i + j] += c_[i] * other[j];
        }
    }
    return out;
}

RationalPoly RationalPoly::pow(std::int64_t e) const {
    if (e < 0) throw std::invalid_argument("RationalPoly::pow: negative exponent");
    RationalPoly acc = one(size());
    RationalPoly b = *this;
    while (e > 0) {
        if (e & 1) acc = acc.mul(b);
        b = b.mul(b);
        e >>= 1;
    }
    return acc;
}

RationalPoly RationalPoly::inverse() const {
    if (size() == 0 || c_[0] == 0)
        throw std::invalid_argument("RationalPoly::inverse: zero constant term");
    RationalPoly out(size());
    out[0] = 1 / c_[0];
    for (std::size_t n = 1; n < size(); ++n) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += c_[j] * out[n - j];
        out[n] = -acc / c_[0];
    }
    return out;
}

}  // namespace jtrace
