#pragma once

#include "jtrace/qseries.hpp"

namespace jtrace {

/// Integer eigenvalue vector mu; the elliptic argument of every twisted
/// special function is z.mu = z_1 mu_1 + ... + z_m mu_m.
struct TwistSpec {
    std::vector<std::int64_t> mu;

    bool is_untwisted() const {
        for (auto v : mu)
            if (v != 0) return false;
        return true;
    }
};

/// Constant term of E_k: 2 xi(k)/(2 pi i)^k = -B_k/k! for even k >= 2.
Rational eisenstein_const(std::int64_t k);

/// Classical Eisenstein series E_k = -B_k/k! + (2/(k-1)!) sum sigma_{k-1}(n) q^n,
/// zeta_rank 0, truncated at N. Only even k >= 2; E_k vanishes for odd k and
/// is never stored.
MultiSeries classical_E(std::int64_t k, std::int64_t N);

/// z.mu for a sample point.
Complex twist_argument(const SamplePoint& p, const TwistSpec& twist);

/// Distance of a complex number to the nearest integer.
double dist_to_integers(Complex x);

/// Numerical value of the twisted Eisenstein series E~_m(tau, z.mu).
/// E~_0 = 1. Untwisted branch (mu = 0, or z.mu within 1e-12 of an integer):
/// classical E_m for m >= 2, -1/2 for m = 1 (the l = 0 term is excluded).
/// Twisted m = 1 at z.mu in Z is a pole and throws.
Complex twisted_E_eval(std::int64_t m, const SamplePoint& p, const TwistSpec& twist,
                       const TruncationPolicy& policy);

/// Formal q-expansion of E~_m for m >= 2 as a MultiSeries in (q, zeta_1..zeta_m).
/// m = 1 has a q^0 term that is a rational function of zeta and is exposed
/// numerically only.
MultiSeries twisted_E_qexp(std::int64_t m, const TwistSpec& twist, std::int64_t N);

}  // namespace jtrace
