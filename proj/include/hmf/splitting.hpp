#pragma once

// Local structure of an order O at a prime P where O/PO is a full matrix
// algebra M_2(k). The projective line over k is realised as the set of
// minimal right ideals of O/PO (each has k-dimension 2), on which O acts by
// left multiplication. This avoids explicit arithmetic in k.

#include "hmf/quatalg.hpp"

#include <map>

namespace hmf {

class ResidueAlgebra {
 public:
  /// Throws if no zero divisor is found within the budget (O ramified at P).
  ResidueAlgebra(const QuatAlgebra& B, const Lattice& O, const PrimeIdeal& P, std::uint64_t seed = 1,
                 unsigned budget = 400);

  const PrimeIdeal& prime() const { return P_; }
  std::size_t size() const { return points_.size(); }
  /// F_p-dimension of O/PO (4f).
  std::size_t dim() const { return q_.dim(); }

  /// Left multiplication by x on O/PO (rows: images of the quotient basis).
  /// x only needs to be integral at P: denominators at other primes above p
  /// are cleared by a scalar that is a unit at P.
  std::vector<modp::Row> left_matrix(const QuatElem& x) const;
  /// Index of the point x * J_i.
  std::size_t act(const std::vector<modp::Row>& M, std::size_t i) const;
  std::size_t act(const QuatElem& x, std::size_t i) const { return act(left_matrix(x), i); }
  /// Preimage of the i-th minimal right ideal in O.
  Lattice lift(std::size_t i) const;
  /// Residue representatives of O_F / P.
  const std::vector<FieldElem>& residues() const { return residues_; }
  /// True when x acts invertibly on O/PO.
  bool is_unit_mod(const QuatElem& x) const;

 private:
  const QuatAlgebra* B_;
  Lattice O_;
  PrimeIdeal P_;
  modp::u64 p_;
  std::vector<RatRow> obasis_;
  modp::Quotient q_;
  FieldElem clear_;  // unit at P, in every other prime above p
  std::vector<FieldElem> residues_;
  std::vector<std::vector<modp::Row>> points_;
  std::map<std::vector<modp::Row>, std::size_t> index_;

  std::vector<modp::Row> span_key(const std::vector<modp::Row>& rows) const;
  std::vector<modp::Row> right_ideal(const QuatElem& z) const;
};

/// Residue representatives of O_F / P (the HNF box of P).
std::vector<FieldElem> residue_reps(const FieldCtx& F, const FieldIdeal& P);

}  // namespace hmf
