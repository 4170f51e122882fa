#pragma once

// Rational lattices in Q^m stored as (1/denominator) * (integer HNF basis).

#include "hmf/exact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hmf {

using IntRow = std::vector<BigInt>;
using RatRow = std::vector<BigRat>;

/// Row Hermite normal form of the Z-span of `rows` (zero rows dropped).
/// Pivots are positive; entries above a pivot lie in [0, pivot).
std::vector<IntRow> hnf_rows(const std::vector<IntRow>& rows, std::size_t ncols);

class Lattice {
 public:
  Lattice() = default;
  /// Z-span of the given rational vectors, all of length `dim`.
  static Lattice from_rows(const std::vector<RatRow>& rows, std::size_t dim);
  static Lattice standard(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  bool full_rank() const { return rank() == dim_; }
  const std::vector<IntRow>& int_basis() const { return basis_; }
  const BigInt& denominator() const { return denom_; }
  RatRow row(std::size_t i) const;
  std::vector<RatRow> rows() const;
  /// Basis as a rank x dim rational matrix.
  QMatrix matrix() const;

  Lattice operator+(const Lattice& o) const;
  /// Requires both full rank.
  Lattice intersect(const Lattice& o) const;
  /// Dual w.r.t. the standard dot product; requires full rank.
  Lattice dual() const;
  Lattice scaled(const BigRat& s) const;

  bool contains(const RatRow& v) const;
  bool contains(const Lattice& o) const;
  /// Coordinates of v in the stored basis (v must lie in the Q-span).
  std::optional<RatRow> coordinates(const RatRow& v) const;
  /// |det| of the basis matrix (full rank only).
  BigRat volume() const;

  bool operator==(const Lattice& o) const = default;
  bool operator<(const Lattice& o) const;
  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntRow> basis_;
  BigInt denom_ = 1;
  std::vector<std::size_t> pivots_;
  void canonicalize();
};

// ---------------------------------------------------------------------------
// Dense linear algebra over a prime field F_p, p < 2^31.
namespace modp {

using u64 = std::uint64_t;
using Row = std::vector<u64>;

u64 inv(u64 a, u64 p);
u64 reduce(const BigInt& x, u64 p);
u64 reduce(const BigRat& x, u64 p);  // denominator must be a unit mod p

/// Row echelon form in place (reduced); returns pivot columns.
std::vector<std::size_t> rref(std::vector<Row>& m, u64 p);
std::size_t rank(std::vector<Row> m, u64 p);
/// Basis of the row space (reduced echelon rows).
std::vector<Row> row_basis(std::vector<Row> m, u64 p);

/// Projection onto F_p^m / span(sub): a matrix whose rows are coordinates of
/// the quotient map applied to the unit vectors.
class Quotient {
 public:
  Quotient() = default;
  Quotient(const std::vector<Row>& sub, std::size_t dim, u64 p);
  std::size_t dim() const { return complement_.size(); }
  Row project(const Row& v) const;
  u64 prime() const { return p_; }
  /// Ambient columns whose unit vectors form the quotient basis.
  const std::vector<std::size_t>& complement() const { return complement_; }

 private:
  u64 p_ = 2;
  std::size_t ambient_ = 0;
  std::vector<Row> sub_;                 // reduced echelon
  std::vector<std::size_t> sub_pivots_;
  std::vector<std::size_t> complement_;  // non-pivot columns
};

}  // namespace modp
}  // namespace hmf
