#pragma once

// Quaternion algebras (a, b)_F over a totally real field, orders and ideals as
// full-rank Z-lattices. Coordinates of x = x0 + x1 i + x2 j + x3 k are the
// integral-basis coordinates of x0, x1, x2, x3 concatenated (length 4n).

#include "hmf/realfield.hpp"

#include <array>

namespace hmf {

using QuatElem = RatRow;

class QuatAlgebra {
 public:
  QuatAlgebra(FieldPtr F, FieldElem a, FieldElem b);

  /// First (a, b) in the search order whose maximal order certifies no finite
  /// ramification; throws when the budget is exhausted.
  static QuatAlgebra ramification_free(FieldPtr F, unsigned budget = 64);

  const FieldCtx& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  const FieldElem& a() const { return a_; }
  const FieldElem& b() const { return b_; }
  unsigned dim() const { return 4 * n_; }

  QuatElem zero() const { return QuatElem(dim(), 0); }
  QuatElem one() const;
  QuatElem basis(unsigned p) const;
  QuatElem from_parts(const std::array<FieldElem, 4>& parts) const;
  QuatElem from_field(const FieldElem& x) const;
  FieldElem part(const QuatElem& x, unsigned t) const;

  QuatElem add(const QuatElem& x, const QuatElem& y) const;
  QuatElem sub(const QuatElem& x, const QuatElem& y) const;
  QuatElem neg(const QuatElem& x) const;
  QuatElem mul(const QuatElem& x, const QuatElem& y) const;
  QuatElem conj(const QuatElem& x) const;
  QuatElem scale(const QuatElem& x, const FieldElem& s) const;
  QuatElem scale(const QuatElem& x, const BigRat& s) const;
  QuatElem inv(const QuatElem& x) const;
  FieldElem nr(const QuatElem& x) const;
  FieldElem trd(const QuatElem& x) const;
  bool is_zero(const QuatElem& x) const;
  bool is_scalar(const QuatElem& x) const;
  std::string to_string(const QuatElem& x) const;

  // lattices
  Lattice lattice(const std::vector<QuatElem>& gens) const { return Lattice::from_rows(gens, dim()); }
  Lattice product(const Lattice& L, const Lattice& M) const;
  Lattice left_mul(const QuatElem& x, const Lattice& L) const;
  Lattice right_mul(const Lattice& L, const QuatElem& x) const;
  Lattice conj(const Lattice& L) const;
  /// L * I for a fractional ideal I of F (scalars commute).
  Lattice scale(const Lattice& L, const FieldIdeal& I) const;
  /// {x : x L subset L} and {x : L x subset L}.
  Lattice left_order(const Lattice& L) const;
  Lattice right_order(const Lattice& L) const;
  /// Ideal of F generated by the reduced norms of L.
  FieldIdeal reduced_norm(const Lattice& L) const;
  /// Inverse of an invertible lattice: conj(L) nr(L)^{-1}.
  Lattice inverse(const Lattice& L) const;
  /// Gram matrix of Tr_{F/Q} trd(x conj(y)) on the basis of L.
  QMatrix trace_gram(const Lattice& L) const;
  /// As above with the form Tr(c^2 trd(x conj y)).
  QMatrix trace_gram(const Lattice& L, const FieldElem& c) const;
  bool is_order(const Lattice& L) const;
  /// |det| of the trace Gram matrix; equals d_F^4 N(rd)^2 for an order of reduced discriminant rd.
  BigRat discriminant_det(const Lattice& O) const;
  /// d_F^4: the value of discriminant_det for a maximal order with no finite ramification.
  BigRat unramified_det() const;

  Lattice lipschitz_order() const;
  /// Enlarges an order until no p-overorder exists for the primes p where
  /// discriminant_det exceeds d_F^4.
  Lattice maximalize(const Lattice& O) const;

 private:
  FieldPtr F_;
  FieldElem a_, b_;
  unsigned n_;
  // sparse structure constants: basis_p * basis_q = sum val * basis_k
  std::vector<std::vector<std::vector<std::pair<unsigned, BigRat>>>> tensor_;
};

}  // namespace hmf
