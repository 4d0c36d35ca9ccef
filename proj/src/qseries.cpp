#include "jtrace/qseries.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <tuple>

namespace jtrace {

namespace {

Integer lcm_int(const Integer& a, const Integer& b) {
    return a / boost::multiprecision::gcd(a, b) * b;
}

std::int64_t to_i64(const Integer& v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("series: ladder index out of range");
    return v.convert_to<std::int64_t>();
}

}  // namespace

SamplePoint::SamplePoint(Complex tau_, std::vector<Complex> zs_,
                         std::optional<Complex> w_)
    : tau(tau_), zs(std::move(zs_)), w(w_) {
    if (!(tau.imag() > 0.0))
        throw std::invalid_argument("SamplePoint: Im(tau) must be positive");
    if (w) {
        double qw = std::abs(std::exp(*w));
        if (!(std::abs(q()) < qw && qw < 1.0))
            throw std::invalid_argument("SamplePoint: need |q| < |e^w| < 1");
    }
}

Complex SamplePoint::q() const {
    return std::exp(Complex(0.0, kTwoPi) * tau);
}

TruncationPolicy::TruncationPolicy(std::int64_t n, double tol) : n_q(n), tail_tol(tol) {
    if (n_q < 1) throw std::invalid_argument("TruncationPolicy: n_q must be >= 1");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("TruncationPolicy: tail_tol must be positive");
}

MultiSeries::MultiSeries(int zeta_rank, Rational q_offset, std::int64_t trunc,
                         std::int64_t ladder_den)
    : zeta_rank_(zeta_rank), q_offset_(std::move(q_offset)), trunc_(trunc), den_(ladder_den) {
    if (zeta_rank_ < 0) throw std::invalid_argument("MultiSeries: negative zeta_rank");
    if (trunc_ < 0) throw std::invalid_argument("MultiSeries: negative trunc");
    if (den_ < 1) throw std::invalid_argument("MultiSeries: ladder_den must be >= 1");
}

MultiSeries MultiSeries::zero(int zeta_rank, std::int64_t trunc) {
    return MultiSeries(zeta_rank, 0, trunc);
}

MultiSeries MultiSeries::constant(const Rational& c, int zeta_rank, std::int64_t trunc) {
    MultiSeries s(zeta_rank, 0, trunc);
    if (c != 0 && trunc > 0)
        s.coeffs_[{0, std::vector<std::int64_t>(zeta_rank, 0)}] = c;
    return s;
}

MultiSeries MultiSeries::from_rational_terms(
    int zeta_rank,
    const std::vector<std::tuple<Rational, std::vector<std::int64_t>, Rational>>& terms,
    const Rational& known_below) {
    if (terms.empty()) {
        MultiSeries s(zeta_rank, known_below, 0);
        return s;
    }
    Rational off = std::get<0>(terms[0]);
    for (const auto& t : terms) off = std::min(off, std::get<0>(t));
    Integer den = denominator(known_below - off);
    for (const auto& t : terms)
        den = lcm_int(den, denominator(std::get<0>(t) - off));
    MultiSeries s(zeta_rank, off, to_i64(numerator((known_below - off) * den)), to_i64(den));
    for (const auto& [e, t, c] : terms) {
        if (e >= known_below)
            throw std::invalid_argument("from_rational_terms: exponent beyond known region");
        if (static_cast<int>(t.size()) != zeta_rank)
            throw std::invalid_argument("from_rational_terms: zeta exponent rank mismatch");
        s.add_term(to_i64(numerator((e - off) * den)), t, c);
    }
    s.normalize();
    return s;
}

Rational MultiSeries::known_below() const {
    return q_offset_ + Rational(Integer(trunc_), Integer(den_));
}

void MultiSeries::add_term(std::int64_t ell, std::vector<std::int64_t> t, const Rational& c) {
    if (ell < 0 || ell >= trunc_)
        throw std::out_of_range("MultiSeries::add_term: ladder index outside [0, trunc)");
    if (static_cast<int>(t.size()) != zeta_rank_)
        throw std::invalid_argument("MultiSeries::add_term: zeta exponent rank mismatch");
    if (c == 0) return;
    SeriesKey key{ell, std::move(t)};
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        coeffs_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

Rational MultiSeries::coeff(std::int64_t ell, const std::vector<std::int64_t>& t) const {
    auto it = coeffs_.find({ell, t});
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational MultiSeries::coeff_at(const Rational& exponent, const std::vector<std::int64_t>& t) const {
    if (exponent >= known_below())
        throw std::out_of_range("MultiSeries::coeff_at: exponent beyond known region");
    Rational rel = (exponent - q_offset_) * den_;
    if (rel < 0 || denominator(rel) != 1) return 0;
    return coeff(to_i64(numerator(rel)), t);
}

void MultiSeries::normalize() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
    if (den_ == 1) return;
    std::int64_t g = std::gcd(den_, trunc_);
    for (const auto& [k, c] : coeffs_) {
        g = std::gcd(g, k.ell);
        if (g == 1) break;
    }
    if (g <= 1) return;
    std::map<SeriesKey, Rational> reduced;
    for (auto& [k, c] : coeffs_) reduced.emplace(SeriesKey{k.ell / g, k.zs}, c);
    coeffs_ = std::move(reduced);
    den_ /= g;
    trunc_ /= g;
}

namespace {

struct Aligned {
    std::int64_t scale;
    std::int64_t shift;  // ladder offset of the series base above the common base
};

// Common base offset, denominator, and per-operand alignment for addition.
std::tuple<Rational, std::int64_t, Aligned, Aligned> align_for_add(const MultiSeries& a,
                                                                   const MultiSeries& b) {
    Rational off = std::min(a.q_offset(), b.q_offset());
    Integer den = lcm_int(Integer(a.ladder_den()), Integer(b.ladder_den()));
    den = lcm_int(den, denominator(a.q_offset() - b.q_offset()));
    std::int64_t d = to_i64(den);
    Aligned aa{d / a.ladder_den(), to_i64(numerator((a.q_offset() - off) * den))};
    Aligned ab{d / b.ladder_den(), to_i64(numerator((b.q_offset() - off) * den))};
    return {off, d, aa, ab};
}

}  // namespace

MultiSeries series_add(const MultiSeries& a, const MultiSeries& b) {
    if (a.zeta_rank() != b.zeta_rank())
        throw std::invalid_argument("series_add: zeta_rank mismatch");
    auto [off, den, aa, ab] = align_for_add(a, b);
    std::int64_t trunc = std::min(aa.shift + a.trunc() * aa.scale,
                                  ab.shift + b.trunc() * ab.scale);
    MultiSeries out(a.zeta_rank(), off, trunc, den);
    for (const auto& [k, c] : a.terms()) {
        std::int64_t ell = k.ell * aa.scale + aa.shift;
        if (ell < trunc) out.add_term(ell, k.zs, c);
    }
    for (const auto& [k, c] : b.terms()) {
        std::int64_t ell = k.ell * ab.scale + ab.shift;
        if (ell < trunc) out.add_term(ell, k.zs, c);
    }
    out.normalize();
    return out;
}

MultiSeries series_neg(const MultiSeries& a) { return series_scale(a, -1); }

MultiSeries series_sub(const MultiSeries& a, const MultiSeries& b) {
    return series_add(a, series_neg(b));
}

MultiSeries series_scale(const MultiSeries& a, const Rational& c) {
    MultiSeries out(a.zeta_rank(), a.q_offset(), a.trunc(), a.ladder_den());
    if (c != 0)
        for (const auto& [k, v] : a.terms()) out.add_term(k.ell, k.zs, v * c);
    return out;
}

MultiSeries series_mul(const MultiSeries& a, const MultiSeries& b) {
    if (a.zeta_rank() != b.zeta_rank())
        throw std::invalid_argument("series_mul: zeta_rank mismatch");
    Integer den = lcm_int(Integer(a.ladder_den()), Integer(b.ladder_den()));
    std::int64_t d = to_i64(den);
    std::int64_t sa = d / a.ladder_den();
    std::int64_t sb = d / b.ladder_den();
    std::int64_t trunc = std::min(a.trunc() * sa, b.trunc() * sb);
    MultiSeries out(a.zeta_rank(), a.q_offset() + b.q_offset(), trunc, d);
    std::vector<std::int64_t> t(a.zeta_rank());
    for (const auto& [ka, ca] : a.terms()) {
        std::int64_t la = ka.ell * sa;
        if (la >= trunc) continue;
        for (const auto& [kb, cb] : b.terms()) {
            std::int64_t ell = la + kb.ell * sb;
            if (ell >= trunc) continue;
            for (int j = 0; j < a.zeta_rank(); ++j) t[j] = ka.zs[j] + kb.zs[j];
            out.add_term(ell, t, ca * cb);
        }
    }
    out.normalize();
    return out;
}

MultiSeries series_inverse(const MultiSeries& a) {
    if (a.is_zero()) throw std::invalid_argument("series_inverse: zero series");
    auto first = a.terms().begin();
    std::int64_t lead = first->first.ell;
    auto second = std::next(first);
    if (second != a.terms().end() && second->first.ell == lead)
        throw std::invalid_argument("series_inverse: leading term is not a monomial");
    // a = c0 q^{e0} zeta^{t0} (1 + r); invert levels recursively.
    const Rational c0 = first->second;
    const std::vector<std::int64_t> t0 = first->first.zs;
    std::int64_t levels = a.trunc() - lead;
    // b level n (relative): sum_{i+j=n} a_{lead+i} b_j = [n==0] / (c0 zeta^{t0})
    std::vector<std::map<std::vector<std::int64_t>, Rational>> b(levels);
    std::vector<std::int64_t> mt0(t0.size());
    for (std::size_t j = 0; j < t0.size(); ++j) mt0[j] = -t0[j];
    b[0][mt0] = 1 / c0;
    for (std::int64_t n = 1; n < levels; ++n) {
        std::map<std::vector<std::int64_t>, Rational> acc;
        for (const auto& [k, c] : a.terms()) {
            std::int64_t i = k.ell - lead;
            if (i < 1 || i > n) continue;
            for (const auto& [tb, cb] : b[n - i]) {
                std::vector<std::int64_t> t(tb.size());
                for (std::size_t j = 0; j < tb.size(); ++j) t[j] = tb[j] + k.zs[j];
                acc[t] += c * cb;
            }
        }
        for (const auto& [t, c] : acc) {
            if (c == 0) continue;
            std::vector<std::int64_t> tt(t.size());
            for (std::size_t j = 0; j < t.size(); ++j) tt[j] = t[j] - t0[j];
            b[n][tt] -= c / c0;
        }
    }
    Rational e0 = a.q_offset() + Rational(Integer(lead), Integer(a.ladder_den()));
    MultiSeries out(a.zeta_rank(), -e0, levels, a.ladder_den());
    for (std::int64_t n = 0; n < levels; ++n)
        for (const auto& [t, c] : b[n]) out.add_term(n, t, c);
    out.normalize();
    return out;
}

MultiSeries series_dz(const MultiSeries& a, int j) {
    if (j < 0 || j >= a.zeta_rank()) throw std::invalid_argument("series_dz: bad index");
    MultiSeries out(a.zeta_rank(), a.q_offset(), a.trunc(), a.ladder_den());
    for (const auto& [k, c] : a.terms()) out.add_term(k.ell, k.zs, c * Rational(k.zs[j]));
    out.normalize();
    return out;
}

MultiSeries series_dtau(const MultiSeries& a) {
    MultiSeries out(a.zeta_rank(), a.q_offset(), a.trunc(), a.ladder_den());
    for (const auto& [k, c] : a.terms()) {
        Rational e = a.q_offset() + Rational(Integer(k.ell), Integer(a.ladder_den()));
        out.add_term(k.ell, k.zs, c * e);
    }
    out.normalize();
    return out;
}

MultiSeries series_monomial_shift(const MultiSeries& a, const Rational& e,
                                  const std::vector<std::int64_t>& t) {
    if (static_cast<int>(t.size()) != a.zeta_rank())
        throw std::invalid_argument("series_monomial_shift: rank mismatch");
    MultiSeries out(a.zeta_rank(), a.q_offset() + e, a.trunc(), a.ladder_den());
    std::vector<std::int64_t> tt(t.size());
    for (const auto& [k, c] : a.terms()) {
        for (std::size_t j = 0; j < t.size(); ++j) tt[j] = k.zs[j] + t[j];
        out.add_term(k.ell, tt, c);
    }
    return out;
}

MultiSeries series_promote_rank(const MultiSeries& a, int zeta_rank) {
    if (a.zeta_rank() == zeta_rank) return a;
    if (a.zeta_rank() != 0)
        throw std::invalid_argument("series_promote_rank: source must have zeta_rank 0");
    MultiSeries out(zeta_rank, a.q_offset(), a.trunc(), a.ladder_den());
    std::vector<std::int64_t> t(zeta_rank, 0);
    for (const auto& [k, c] : a.terms()) out.add_term(k.ell, t, c);
    return out;
}

bool series_agree_below(const MultiSeries& a, const MultiSeries& b, const Rational& bound) {
    if (a.zeta_rank() != b.zeta_rank()) return false;
    if (bound > a.known_below() || bound > b.known_below())
        throw std::invalid_argument("series_agree_below: bound beyond known region");
    for (const auto& [k, c] : a.terms()) {
        Rational e = a.q_offset() + Rational(Integer(k.ell), Integer(a.ladder_den()));
        if (e >= bound) continue;
        if (b.coeff_at(e, k.zs) != c) return false;
    }
    for (const auto& [k, c] : b.terms()) {
        Rational e = b.q_offset() + Rational(Integer(k.ell), Integer(b.ladder_den()));
        if (e >= bound) continue;
        if (a.coeff_at(e, k.zs) != c) return false;
    }
    return true;
}

bool series_agree_on_overlap(const MultiSeries& a, const MultiSeries& b) {
    return series_agree_below(a, b, std::min(a.known_below(), b.known_below()));
}

Complex eval(const MultiSeries& s, const SamplePoint& p) {
    if (static_cast<int>(p.zs.size()) != s.zeta_rank())
        throw std::invalid_argument("eval: sample point rank mismatch");
    const Complex two_pi_i(0.0, kTwoPi);
    Complex acc = 0.0;
    for (const auto& [k, c] : s.terms()) {
        Rational e = s.q_offset() + Rational(Integer(k.ell), Integer(s.ladder_den()));
        Complex arg = p.tau * to_double(e);
        for (std::size_t j = 0; j < k.zs.size(); ++j)
            arg += p.zs[j] * static_cast<double>(k.zs[j]);
        acc += to_double(c) * std::exp(two_pi_i * arg);
    }
    return acc;
}

namespace {

// p_1(0..N-1) by the pentagonal number recurrence.
std::vector<Integer> partition_counts(std::int64_t N) {
    std::vector<Integer> p(static_cast<std::size_t>(N));
    if (N > 0) p[0] = 1;
    for (std::int64_t n = 1; n < N; ++n) {
        Integer acc = 0;
        for (std::int64_t k = 1;; ++k) {
            std::int64_t g1 = k * (3 * k - 1) / 2;
            std::int64_t g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            Integer sgn = (k % 2 == 1) ? 1 : -1;
            if (g1 <= n) acc += sgn * p[static_cast<std::size_t>(n - g1)];
            if (g2 <= n) acc += sgn * p[static_cast<std::size_t>(n - g2)];
        }
        p[static_cast<std::size_t>(n)] = acc;
    }
    return p;
}

}  // namespace

MultiSeries eta_inverse_pow(std::int64_t d, std::int64_t N) {
    if (d < 0) throw std::invalid_argument("eta_inverse_pow: d must be nonnegative");
    if (N < 1) throw std::invalid_argument("eta_inverse_pow: N must be >= 1");
    if (d == 0) return MultiSeries::constant(1, 0, N);
    auto p1 = partition_counts(N);
    RationalPoly base(static_cast<std::size_t>(N));
    for (std::int64_t n = 0; n < N; ++n) base[static_cast<std::size_t>(n)] = Rational(p1[static_cast<std::size_t>(n)]);
    RationalPoly powd = base.pow(d);
    MultiSeries out(0, Rational(-d, 24), N);
    for (std::int64_t n = 0; n < N; ++n) out.add_term(n, {}, powd[static_cast<std::size_t>(n)]);
    return out;
}

MultiSeries eta_pow(std::int64_t d, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("eta_pow: N must be >= 1");
    if (d < 0) return eta_inverse_pow(-d, N);
    if (d == 0) return MultiSeries::constant(1, 0, N);
    RationalPoly euler(static_cast<std::size_t>(N));
    for (std::int64_t k = 0;; ++k) {
        std::int64_t g1 = k * (3 * k - 1) / 2;
        std::int64_t g2 = k * (3 * k + 1) / 2;
        if (g1 >= N && g2 >= N) break;
        Rational sgn = (k % 2 == 0) ? 1 : -1;
        if (g1 < N) euler[static_cast<std::size_t>(g1)] += (k == 0 ? Rational(1) : sgn);
        if (k > 0 && g2 < N) euler[static_cast<std::size_t>(g2)] += sgn;
    }
    RationalPoly powd = euler.pow(d);
    MultiSeries out(0, Rational(d, 24), N);
    for (std::int64_t n = 0; n < N; ++n) out.add_term(n, {}, powd[static_cast<std::size_t>(n)]);
    return out;
}

nlohmann::json series_to_json(const MultiSeries& s) {
    nlohmann::json j;
    j["offset"] = rational_str(s.q_offset());
    j["rank"] = s.zeta_rank();
    j["trunc"] = s.trunc();
    if (s.ladder_den() != 1) j["den"] = s.ladder_den();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : s.terms())
        terms.push_back({k.ell, k.zs, rational_str(c)});
    j["terms"] = std::move(terms);
    return j;
}

MultiSeries series_from_json(const nlohmann::json& j) {
    Rational off = rational_from_string(j.at("offset").get<std::string>());
    int rank = j.at("rank").get<int>();
    std::int64_t trunc = j.at("trunc").get<std::int64_t>();
    std::int64_t den = j.contains("den") ? j.at("den").get<std::int64_t>() : 1;
    MultiSeries s(rank, off, trunc, den);
    for (const auto& term : j.at("terms")) {
        if (!term.is_array() || term.size() != 3)
            throw std::invalid_argument("series_from_json: malformed term");
        std::int64_t ell = term[0].get<std::int64_t>();
        std::vector<std::int64_t> t = term[1].get<std::vector<std::int64_t>>();
        s.add_term(ell, std::move(t), rational_from_string(term[2].get<std::string>()));
    }
    return s;
}

}  // namespace jtrace
