#pragma once

// Exact reduction and short-vector enumeration for positive definite
// rational Gram matrices. Coordinates are integer row vectors.

#include "hmf/lattice.hpp"

#include <functional>

namespace hmf {

struct LLLResult {
  // rows of `transform` express the reduced basis in the input basis
  std::vector<IntRow> transform;
  QMatrix gram;
};

/// LLL reduction of the basis whose Gram matrix is `gram` (positive definite).
LLLResult lll_gram(const QMatrix& gram, const BigRat& delta = BigRat(99, 100));

/// Calls `visit` for every nonzero integer x with x G x^T <= bound, one
/// vector per {x, -x} pair (the last nonzero coordinate is positive).
/// Enumeration stops early if `visit` returns false.
void short_vectors(const QMatrix& gram, const BigRat& bound,
                   const std::function<bool(const IntRow&, const BigRat&)>& visit);

/// All nonzero x (one per sign pair) with x G x^T == value.
std::vector<IntRow> vectors_of_value(const QMatrix& gram, const BigRat& value);

/// x G y^T for integer rows.
BigRat gram_eval(const QMatrix& gram, const IntRow& x, const IntRow& y);

}  // namespace hmf
