#include "jtrace/qseries.hpp"

#include <nlohmann/json.hpp>

#include "doctest.h"

#include <random>

using namespace jtrace;

namespace {

// Independent oracle: d-colored partition count by direct recursive
// enumeration (largest allowed part per color bounded).
std::int64_t colored_partitions(int colors, int n, int max_part) {
    if (n == 0) return 1;
    if (max_part == 0) return 0;
    std::int64_t acc = 0;
    // peel off the k parts equal to max_part; their color multiset is counted
    // by stars and bars, binom(k + colors - 1, colors - 1)
    for (int k = 0; k * max_part <= n; ++k) {
        std::int64_t ways = 1;
        for (int i = 1; i <= colors - 1; ++i) ways = ways * (k + i) / i;
        acc += ways * colored_partitions(colors, n - k * max_part, max_part - 1);
    }
    return acc;
}

MultiSeries random_sparse(std::mt19937_64& rng, int rank, std::int64_t trunc) {
    std::uniform_int_distribution<std::int64_t> ell_d(0, trunc - 1);
    std::uniform_int_distribution<std::int64_t> t_d(-3, 3);
    std::uniform_int_distribution<std::int64_t> num_d(-9, 9);
    std::uniform_int_distribution<std::int64_t> den_d(1, 7);
    std::uniform_int_distribution<int> count_d(1, 6);
    std::uniform_int_distribution<int> off_d(-2, 2);
    MultiSeries s(rank, Rational(off_d(rng), 3), trunc);
    int n = count_d(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> t(rank);
        for (auto& v : t) v = t_d(rng);
        s.add_term(ell_d(rng), t, make_rational(num_d(rng), den_d(rng)));
    }
    s.normalize();
    return s;
}

}  // namespace

TEST_CASE("series_add basics") {
    // (1 + q) + (-1 + q) = 2q
    MultiSeries a(0, 0, 10), b(0, 0, 10);
    a.add_term(0, {}, 1);
    a.add_term(1, {}, 1);
    b.add_term(0, {}, -1);
    b.add_term(1, {}, 1);
    auto s = series_add(a, b);
    CHECK(s.terms().size() == 1);
    CHECK(s.coeff(1, {}) == 2);

    // identity
    auto z = MultiSeries::zero(0, 10);
    CHECK(series_agree_on_overlap(series_add(a, z), a));

    // eta + (-eta) = 0 with preserved trunc
    auto eta = eta_pow(1, 20);
    auto sum = series_add(eta, series_neg(eta));
    CHECK(sum.is_zero());
    CHECK(sum.known_below() == eta.known_below());
}

TEST_CASE("series_add rank mismatch rejected") {
    MultiSeries a(0, 0, 5), b(1, 0, 5);
    CHECK_THROWS_AS(series_add(a, b), std::invalid_argument);
}

TEST_CASE("series_mul basics") {
    // (1-q) * (1+q+q^2+...) = 1 up to trunc
    std::int64_t N = 15;
    MultiSeries a(0, 0, N), geom(0, 0, N);
    a.add_term(0, {}, 1);
    a.add_term(1, {}, -1);
    for (std::int64_t i = 0; i < N; ++i) geom.add_term(i, {}, 1);
    auto prod = series_mul(a, geom);
    CHECK(series_agree_on_overlap(prod, MultiSeries::constant(1, 0, N)));

    // zeta q^{1/2} * zeta^{-1} q^{1/2} = q
    MultiSeries u(1, Rational(1, 2), 5), v(1, Rational(1, 2), 5);
    u.add_term(0, {1}, 1);
    v.add_term(0, {-1}, 1);
    auto w = series_mul(u, v);
    CHECK(w.q_offset() == 1);
    CHECK(w.coeff(0, {0}) == 1);
    CHECK(w.terms().size() == 1);

    // eta * eta^{-1} = 1 at N = 20
    auto eta = eta_pow(1, 20);
    auto etainv = eta_inverse_pow(1, 20);
    CHECK(series_agree_on_overlap(series_mul(eta, etainv), MultiSeries::constant(1, 0, 20)));
}

TEST_CASE("mixed-ladder addition refines the ladder") {
    // offsets differing by 1/4 force a refined ladder but keep exponents exact
    MultiSeries a(0, 0, 3), b(0, Rational(1, 4), 3);
    a.add_term(0, {}, 1);
    b.add_term(0, {}, 5);
    auto s = series_add(a, b);
    CHECK(s.coeff_at(0, {}) == 1);
    CHECK(s.coeff_at(Rational(1, 4), {}) == 5);
    CHECK(s.known_below() == Rational(11, 4));  // min(0+3, 1/4+3)
}

TEST_CASE("eval basics") {
    auto one = MultiSeries::constant(1, 0, 5);
    SamplePoint p(Complex(0.3, 1.1));
    CHECK(std::abs(eval(one, p) - Complex(1.0, 0.0)) < 1e-15);

    MultiSeries q(0, 1, 5);
    q.add_term(0, {}, 1);
    SamplePoint pi(Complex(0.0, 1.0));
    CHECK(std::abs(eval(q, pi) - std::exp(-kTwoPi)) < 1e-15);
}

TEST_CASE("eta eval matches direct truncated product") {
    std::int64_t N = 30;
    auto eta = eta_pow(1, N);
    SamplePoint p(Complex(0.0, 1.0));
    Complex q = p.q();
    Complex prod = std::pow(q, 1.0 / 24.0);
    for (std::int64_t n = 1; n < N; ++n) prod *= (1.0 - std::pow(q, static_cast<double>(n)));
    CHECK(std::abs(eval(eta, p) - prod) < 1e-12);
}

TEST_CASE("eta_inverse_pow coefficients are colored partition counts") {
    auto e1 = eta_inverse_pow(1, 6);
    CHECK(e1.q_offset() == Rational(-1, 24));
    std::int64_t expect1[6] = {1, 1, 2, 3, 5, 7};
    for (std::int64_t l = 0; l < 6; ++l) CHECK(e1.coeff(l, {}) == expect1[l]);

    CHECK(series_agree_on_overlap(eta_inverse_pow(0, 4), MultiSeries::constant(1, 0, 4)));
    CHECK_THROWS_AS(eta_inverse_pow(-1, 4), std::invalid_argument);

    auto e2 = eta_inverse_pow(2, 8);
    CHECK(e2.coeff(2, {}) == 5);  // 2-colored partitions of 2
    for (std::int64_t l = 0; l < 8; ++l)
        CHECK(e2.coeff(l, {}) == colored_partitions(2, static_cast<int>(l), static_cast<int>(l)));
    auto e3 = eta_inverse_pow(3, 8);
    for (std::int64_t l = 0; l < 8; ++l)
        CHECK(e3.coeff(l, {}) == colored_partitions(3, static_cast<int>(l), static_cast<int>(l)));
}

TEST_CASE("eta inverse times inverted eta-inverse is 1") {
    for (int d = 1; d <= 3; ++d) {
        auto inv = eta_inverse_pow(d, 16);
        auto etad = series_inverse(eta_inverse_pow(1, 16));
        MultiSeries acc = inv;
        for (int i = 0; i < d; ++i) acc = series_mul(acc, etad);
        CHECK(series_agree_on_overlap(acc, MultiSeries::constant(1, 0, 16)));
    }
}

TEST_CASE("ring axioms on random sparse series") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 40; ++iter) {
        int rank = iter % 3;
        auto a = random_sparse(rng, rank, 12);
        auto b = random_sparse(rng, rank, 12);
        auto c = random_sparse(rng, rank, 12);
        CHECK(series_agree_on_overlap(series_mul(series_mul(a, b), c),
                                      series_mul(a, series_mul(b, c))));
        CHECK(series_agree_on_overlap(series_mul(a, series_add(b, c)),
                                      series_add(series_mul(a, b), series_mul(a, c))));
        CHECK(series_agree_on_overlap(series_add(a, b), series_add(b, a)));
    }
}

TEST_CASE("eval is a ring homomorphism at small |q|") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-0.4, 0.4);
    std::uniform_real_distribution<double> im(1.0, 1.5);
    std::uniform_real_distribution<double> zre(-0.3, 0.3);
    std::uniform_real_distribution<double> zim(-0.05, 0.05);
    for (int iter = 0; iter < 20; ++iter) {
        int rank = iter % 2;
        auto a = random_sparse(rng, rank, 25);
        auto b = random_sparse(rng, rank, 25);
        std::vector<Complex> zs;
        for (int j = 0; j < rank; ++j) zs.emplace_back(zre(rng), zim(rng));
        SamplePoint p(Complex(re(rng), im(rng)), zs);
        Complex lhs = eval(series_mul(a, b), p);
        Complex rhs = eval(a, p) * eval(b, p);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("json round trip is bit exact") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 10; ++iter) {
        auto s = random_sparse(rng, iter % 3, 9);
        auto j = series_to_json(s);
        auto s2 = series_from_json(j);
        auto j2 = series_to_json(s2);
        CHECK(j.dump() == j2.dump());
        CHECK(series_agree_on_overlap(s, s2));
        CHECK(s.q_offset() == s2.q_offset());
        CHECK(s.trunc() == s2.trunc());
    }
}

TEST_CASE("sample point invariants") {
    CHECK_THROWS_AS(SamplePoint(Complex(0.0, -1.0)), std::invalid_argument);
    CHECK_THROWS_AS(SamplePoint(Complex(0.0, 1.0), {}, Complex(0.5, 0.1)),
                    std::invalid_argument);  // |e^w| > 1
    CHECK_NOTHROW(SamplePoint(Complex(0.0, 1.0), {}, Complex(-0.5, 0.1)));
    CHECK_THROWS_AS(TruncationPolicy(0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(TruncationPolicy(5, 0.0), std::invalid_argument);
}
