#pragma once

#include "jtrace/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace jtrace {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A point (tau, z_1..z_m[, w]) at which series and special functions are
/// evaluated. Requires Im(tau) > 0.
struct SamplePoint {
    Complex tau;
    std::vector<Complex> zs;
    std::optional<Complex> w;

    SamplePoint(Complex tau_, std::vector<Complex> zs_ = {},
                std::optional<Complex> w_ = std::nullopt);

    Complex q() const;  // e^{2 pi i tau}
};

struct TruncationPolicy {
    std::int64_t n_q = 20;
    double tail_tol = 1e-14;

    TruncationPolicy() = default;
    TruncationPolicy(std::int64_t n, double tol);
};

struct SeriesKey {
    std::int64_t ell;               // ladder index; q-exponent = offset + ell/den
    std::vector<std::int64_t> zs;   // zeta exponents t_1..t_m

    friend bool operator<(const SeriesKey& a, const SeriesKey& b) {
        if (a.ell != b.ell) return a.ell < b.ell;
        return a.zs < b.zs;
    }
    friend bool operator==(const SeriesKey& a, const SeriesKey& b) {
        return a.ell == b.ell && a.zs == b.zs;
    }
};

/// Exact truncated expansion sum c(l,t) q^{offset + l/den} zeta_1^{t_1}...zeta_m^{t_m}.
/// Terms with l >= trunc (ladder units) are unknown. Stored coefficients are
/// nonzero; keys satisfy 0 <= l < trunc. den is 1 except when a sum mixes
/// q-ladders whose offsets differ by a non-integral rational.
/// Values are immutable in practice: every operation returns a fresh series.
class MultiSeries {
public:
    MultiSeries(int zeta_rank, Rational q_offset, std::int64_t trunc,
                std::int64_t ladder_den = 1);

    static MultiSeries zero(int zeta_rank, std::int64_t trunc);
    static MultiSeries constant(const Rational& c, int zeta_rank, std::int64_t trunc);
    /// Builds a series from (rational q-exponent, t, coeff) triples; exponents
    /// below `known_below` are exactly represented, trunc derived from it.
    static MultiSeries from_rational_terms(
        int zeta_rank,
        const std::vector<std::tuple<Rational, std::vector<std::int64_t>, Rational>>& terms,
        const Rational& known_below);

    int zeta_rank() const { return zeta_rank_; }
    const Rational& q_offset() const { return q_offset_; }
    std::int64_t trunc() const { return trunc_; }
    std::int64_t ladder_den() const { return den_; }
    const std::map<SeriesKey, Rational>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Exponent of the first unknown term, offset + trunc/den.
    Rational known_below() const;

    void add_term(std::int64_t ell, std::vector<std::int64_t> t, const Rational& c);
    Rational coeff(std::int64_t ell, const std::vector<std::int64_t>& t) const;
    /// Coefficient at exact rational q-exponent e (must satisfy e < known_below).
    Rational coeff_at(const Rational& exponent, const std::vector<std::int64_t>& t) const;

    /// Drops zeros and reduces the ladder denominator where possible.
    void normalize();

private:
    int zeta_rank_;
    Rational q_offset_;
    std::int64_t trunc_;
    std::int64_t den_;
    std::map<SeriesKey, Rational> coeffs_;

    friend MultiSeries series_add(const MultiSeries&, const MultiSeries&);
    friend MultiSeries series_mul(const MultiSeries&, const MultiSeries&);
};

MultiSeries series_add(const MultiSeries& a, const MultiSeries& b);
MultiSeries series_sub(const MultiSeries& a, const MultiSeries& b);
MultiSeries series_neg(const MultiSeries& a);
MultiSeries series_scale(const MultiSeries& a, const Rational& c);
MultiSeries series_mul(const MultiSeries& a, const MultiSeries& b);
/// Multiplicative inverse; requires a nonzero leading term that is the unique
/// minimal exponent (a unit in the truncated ring).
MultiSeries series_inverse(const MultiSeries& a);
/// Multiplies every term by its zeta-exponent t_j (the operator (2 pi i)^{-1} d/dz_j).
MultiSeries series_dz(const MultiSeries& a, int j);
/// Multiplies every term by its q-exponent (the operator (2 pi i)^{-1} d/dtau).
MultiSeries series_dtau(const MultiSeries& a);
/// Shifts by q^e * prod zeta_j^{t_j}.
MultiSeries series_monomial_shift(const MultiSeries& a, const Rational& e,
                                  const std::vector<std::int64_t>& t);
/// Re-interprets a rank-0 series as rank-m (all zeta exponents zero).
MultiSeries series_promote_rank(const MultiSeries& a, int zeta_rank);

/// True when a and b agree exactly on the overlap of their known regions.
bool series_agree_on_overlap(const MultiSeries& a, const MultiSeries& b);
/// True when a and b agree exactly on exponents < bound (bound must be inside
/// both known regions).
bool series_agree_below(const MultiSeries& a, const MultiSeries& b, const Rational& bound);

Complex eval(const MultiSeries& s, const SamplePoint& p);

/// eta(tau)^{-d} as a q-expansion: offset -d/24, coefficients d-colored
/// partition counts. d = 0 gives the constant 1.
MultiSeries eta_inverse_pow(std::int64_t d, std::int64_t N);
/// eta(tau)^{+d} via the pentagonal number expansion of prod (1-q^n).
MultiSeries eta_pow(std::int64_t d, std::int64_t N);

nlohmann::json series_to_json(const MultiSeries& s);
MultiSeries series_from_json(const nlohmann::json& j);

}  // namespace jtrace
