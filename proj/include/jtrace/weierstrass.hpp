#pragma once

#include "jtrace/eisenstein.hpp"

namespace jtrace {

/// Twisted Weierstrass function P~_k(w, z.mu, tau) summed in the regrouped,
/// absolutely convergent form (two geometric-corrected terms per l >= 1, plus
/// the delta_{k,1} term 1/(1-zeta^{-1}) on the twisted branch). Requires the
/// sample point to carry w with |q| < |e^w| < 1. The untwisted branch
/// (zeta-product 1) excludes the l = 0 term.
Complex twisted_P_direct(std::int64_t k, const SamplePoint& p, const TwistSpec& twist,
                         const TruncationPolicy& policy);

/// P~_k via the expansion (-1)^k/w^k + sum_{j=k}^{J} binom(j-1, k-1) E~_j(tau, z.mu) w^{j-k}.
Complex twisted_P_series(std::int64_t k, const SamplePoint& p, const TwistSpec& twist,
                         std::int64_t J);

}  // namespace jtrace
