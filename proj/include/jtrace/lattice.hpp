#pragma once

#include "jtrace/qseries.hpp"

namespace jtrace {

using RationalVec = std::vector<Rational>;
using RationalMat = std::vector<std::vector<Rational>>;

/// Positive-definite even lattice given by an integer Gram matrix in a fixed
/// basis. Vectors are rational coordinate vectors in that basis.
struct EvenLattice {
    int rank = 0;
    std::vector<std::vector<std::int64_t>> gram;

    EvenLattice() = default;
    EvenLattice(int rank_, std::vector<std::vector<std::int64_t>> gram_);
};

Rational pairing(const EvenLattice& L, const RationalVec& x, const RationalVec& y);
Rational half_norm(const EvenLattice& L, const RationalVec& x);

/// Coset representatives gamma_t of a finite family of Lambda-cosets.
/// The zero coset, when present, sits first.
struct CosetSystem {
    EvenLattice lattice;
    std::vector<RationalVec> reps;

    CosetSystem() = default;
    CosetSystem(EvenLattice lattice_, std::vector<RationalVec> reps_);
};

/// Condition H data: the vectors h_1..h_m and their Gram matrix G.
struct HSpec {
    std::vector<RationalVec> vectors;
    RationalMat gram_G;

    int count() const { return static_cast<int>(vectors.size()); }
};

/// Builds an HSpec over a lattice, computing G = (<h_i, h_j>) and checking
/// linear independence.
HSpec make_hspec(const EvenLattice& L, std::vector<RationalVec> vectors);

/// All alpha in Lambda + gamma_t with <alpha,alpha>/2 <= max_half_norm, each
/// exactly once, ordered by half-norm then lexicographically.
std::vector<RationalVec> short_vectors(const CosetSystem& cs, std::size_t t,
                                       const Rational& max_half_norm);

Rational coset_min_half_norm(const CosetSystem& cs, std::size_t t);

/// Theta function of Eq-(1.8) shape: sum over alpha in Lambda + gamma_t of
/// <a,alpha>^k q^{<alpha,alpha>/2} zeta_1^{<alpha,h_1>} ... zeta_m^{<alpha,h_m>},
/// through q-exponents < min-half-norm + N. The q-offset is the coset minimum
/// half-norm. Non-integral zeta exponents are a Condition H violation.
MultiSeries theta_series(const CosetSystem& cs, std::size_t t, const RationalVec& a,
                         std::int64_t k, const HSpec& h, std::int64_t N);

/// Generalization with a product of pairing powers prod_x <a_x, alpha>^{k_x};
/// the Theorem such sums assemble into is a linear combination of single-power
/// thetas, so this is the working form used by the trace assembler.
MultiSeries theta_series_multi(const CosetSystem& cs, std::size_t t,
                               const std::vector<std::pair<RationalVec, std::int64_t>>& powers,
                               const HSpec& h, std::int64_t N);

/// Coset system of the discriminant group Lambda*/Lambda, canonically ordered
/// (min half-norm, then lexicographic minimal representative); |reps| = det(gram).
CosetSystem discriminant_cosets(const EvenLattice& L);

/// Exact determinant of the Gram matrix.
Integer gram_determinant(const EvenLattice& L);

/// Reduces a vector mod Z^d into [0,1)^d.
RationalVec reduce_mod_lattice(const RationalVec& v);

}  // namespace jtrace
