#pragma once

// Right ideal classes of a maximal order in a totally definite quaternion
// algebra with no finite ramification, their unit groups, p-neighbours and
// the tables Theta(p, a, b) that drive the Hecke action.
//
// Orientation: a neighbour c of b at p satisfies b < c and nr(b) = nr(c) p.
// Theta(p, a, b) stores u with c = u^{-1} a, i.e. a = u c, so u lies in
// a b^{-1} and (nr u) = nr(a) nr(b)^{-1} p.

#include "hmf/latenum.hpp"
#include "hmf/splitting.hpp"

#include <memory>

namespace hmf {

/// Units of an order modulo O_F^x, one element per class, sign-normalised.
struct UnitGroup {
  std::vector<QuatElem> elements;
  std::size_t order() const { return elements.size(); }
};

UnitGroup unit_group(const QuatAlgebra& B, const Lattice& O);

/// The Np + 1 right ideals c > b with nr(b) = nr(c) p.
std::vector<Lattice> neighbors(const QuatAlgebra& B, const Lattice& b, const PrimeIdeal& P, std::uint64_t seed = 1);

/// u with a = u c when the right ideals a and c are isomorphic.
std::optional<QuatElem> is_isomorphic(const QuatAlgebra& B, const Lattice& a, const Lattice& c);

/// 2^{1-n} |zeta_F(-1)| h_F.
BigRat eichler_mass(const FieldCtx& F);

/// Smallest primes (in canonical order) generating Cl_F^+, avoiding the
/// primes dividing `avoid`.
std::vector<PrimeIdeal> choose_S(const FieldCtx& F, const FieldIdeal& avoid);
bool generates_narrow_class_group(const FieldCtx& F, const std::vector<PrimeIdeal>& S);

struct ClassSet {
  std::shared_ptr<const QuatAlgebra> algebra;
  Lattice order;
  std::vector<PrimeIdeal> S;
  std::vector<Lattice> reps;
  std::vector<Lattice> left_orders;
  std::vector<UnitGroup> units;
  std::vector<FieldIdeal> norms;
  BigRat mass;

  std::size_t size() const { return reps.size(); }
  /// Class index a and u with reps[a] = u c.
  std::pair<std::size_t, QuatElem> identify(const Lattice& c) const;
  /// Sum of 1/|Gamma_a|.
  BigRat unit_mass() const;
};

/// Breadth-first closure from R under neighbours at the primes of S, stopped
/// by the mass formula. Throws if S does not generate Cl_F^+ or the mass is
/// not reached within `max_classes`.
ClassSet compute_class_set(std::shared_ptr<const QuatAlgebra> B, const Lattice& R, std::vector<PrimeIdeal> S,
                           std::size_t max_classes = 2000);

struct ThetaTable {
  unsigned long bound = 0;
  std::vector<PrimeIdeal> primes;
  // entries[k][a][b] for primes[k]
  std::vector<std::vector<std::vector<std::vector<QuatElem>>>> entries;

  std::optional<std::size_t> prime_index(const FieldIdeal& p) const;
};

/// Theta for all primes of norm <= bound; an existing table is extended
/// without touching its entries.
ThetaTable compute_theta(const ClassSet& cs, unsigned long bound, unsigned threads = 1);
void extend_theta(const ClassSet& cs, ThetaTable& th, unsigned long bound, unsigned threads = 1);

}  // namespace hmf
