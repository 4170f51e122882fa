#pragma once

// Norm equations nr(x) = alpha on lattices in a totally definite quaternion
// algebra, via the positive definite form Tr_{F/Q}(nr(x)) and a rescaling
// element c that makes the ellipsoid Tr(c^2 nr(x)) <= Tr(c^2 alpha) tight.

#include "hmf/gram.hpp"
#include "hmf/quatalg.hpp"

namespace hmf {

struct TraceFormLattice {
  const QuatAlgebra* algebra = nullptr;
  std::vector<QuatElem> basis;
  QMatrix gram;  // Tr trd(x conj y), so gram(x, x) = 2 Tr nr(x)

  static TraceFormLattice from_lattice(const QuatAlgebra& B, const Lattice& L);
  QuatElem combine(const IntRow& coords) const;
};

/// Same lattice, LLL-reduced basis (delta = 99/100).
TraceFormLattice lll_reduce(const TraceFormLattice& L);

/// {x in L : Tr nr(x) = t}, one element of each {x, -x} pair.
std::vector<QuatElem> enumerate_norm(const TraceFormLattice& L, const BigRat& t);

struct RescaleResult {
  FieldElem c;
  Interval ratio;  // encloses Tr(c^2 alpha) / N(c^2 alpha)^{1/n}
  BigRat C;        // the constant that produced c
  unsigned attempts = 0;
};

/// c rounded from (C / sqrt(sigma_i(alpha)))_i in the integral basis; C
/// doubles until the ratio drops below n + eps. C = 0 selects the default
/// 2^16 * max_i sigma_i(alpha)^{1/2}.
RescaleResult rescale_multiplier(const FieldCtx& F, const FieldElem& alpha, const BigRat& C = 0,
                                 const BigRat& eps = BigRat(1, 20), unsigned budget = 40);

/// Exact enclosure of Tr(beta) / N(beta)^{1/n} for totally positive beta.
Interval balance_ratio(const FieldCtx& F, const FieldElem& beta);

/// All x in L with nr(x) = alpha (alpha totally positive), one per sign pair,
/// in a canonical order.
std::vector<QuatElem> solve_norm_equation(const QuatAlgebra& B, const Lattice& L, const FieldElem& alpha);

/// Same without rescaling (direct enumeration of Tr nr(x) = Tr alpha); used as an oracle.
std::vector<QuatElem> solve_norm_equation_plain(const QuatAlgebra& B, const Lattice& L, const FieldElem& alpha);

}  // namespace hmf
