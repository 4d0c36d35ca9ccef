#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jtrace {

// Exact coefficient arithmetic. Every expansion handled by the library has
// rational coefficients once the (2*pi*i)-normalizations are applied, so no
// floating point ever enters a stored series.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(Integer(num), Integer(den));
}

inline std::string rational_str(const Rational& r) { return r.str(); }

Rational rational_from_string(const std::string& s);

double to_double(const Rational& r);

Integer factorial(std::int64_t n);

// binom(x, k) for integer x (possibly negative), k >= 0.
Rational binomial(std::int64_t x, std::int64_t k);

Rational rational_pow(const Rational& base, std::int64_t exp);

// Bernoulli number B_n (B_1 = -1/2 convention).
Rational bernoulli(std::int64_t n);

// sigma_k(n) = sum of k-th powers of divisors of n.
Integer divisor_sigma(std::int64_t k, std::int64_t n);

// Dense power series over Q truncated at fixed length, used for residue
// computations and series inversion helpers.
class RationalPoly {
public:
    explicit RationalPoly(std::size_t len) : c_(len) {}
    static RationalPoly one(std::size_t len);

    std::size_t size() const { return c_.size(); }
    Rational& operator[](std::size_t i) { return c_[i]; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    RationalPoly mul(const RationalPoly& other) const;
    RationalPoly pow(std::int64_t e) const;
    // multiplicative inverse; requires nonzero constant term
    RationalPoly inverse() const;

private:
    std::vector<Rational> c_;
};

}  // namespace jtrace
