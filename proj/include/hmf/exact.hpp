#pragma once

// Exact rational arithmetic: univariate polynomials, factorization over Q,
// and dense matrices over Q.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hmf {

using BigInt = mpz_class;
using BigRat = mpq_class;

class QPoly;
class QMatrix;

/// Raised when a precondition of an exact operation does not hold.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

BigRat make_rat(const BigInt& num, const BigInt& den = 1);
BigInt floor_rat(const BigRat& r);
BigInt round_rat(const BigRat& r);  // nearest, ties toward +inf
BigInt ceil_rat(const BigRat& r);
std::string to_string(const BigRat& r);
BigRat parse_rat(const std::string& s);

// ---------------------------------------------------------------------------
// QPoly: coefficients indexed by degree, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<BigRat> coeffs);
  static QPoly constant(const BigRat& c);
  static QPoly x();
  static QPoly monomial(const BigRat& c, std::size_t deg);
  static QPoly from_ints(const std::vector<long>& coeffs);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const BigRat& operator[](std::size_t i) const { return c_[i]; }
  BigRat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRat(0); }
  const std::vector<BigRat>& coeffs() const { return c_; }
  BigRat leading() const { return c_.empty() ? BigRat(0) : c_.back(); }

  QPoly monic() const;
  QPoly derivative() const;
  BigRat eval(const BigRat& x) const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator-() const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const BigRat& s) const;
  QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return !(*this == o); }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
  QPoly operator/(const QPoly& d) const { return divmod(d).first; }
  QPoly operator%(const QPoly& d) const { return divmod(d).second; }
  QPoly pow(unsigned e) const;

  /// Integer polynomial proportional to this one with content 1 and
  /// positive leading coefficient.
  std::vector<BigInt> primitive_part() const;
  /// Lexicographic order on (degree, coefficients from low to high).
  bool canonical_less(const QPoly& o) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigRat> c_;
};

QPoly poly_gcd(const QPoly& a, const QPoly& b);  // monic, or zero

struct FactorEntry {
  QPoly factor;  // monic irreducible over Q
  unsigned multiplicity;
  bool operator==(const FactorEntry&) const = default;
};

struct Factorization {
  BigRat unit;  // leading coefficient of the input
  std::vector<FactorEntry> factors;

  QPoly expand() const;
  std::string to_string(const std::string& var = "x") const;
};

/// Monic irreducible factors over Q with multiplicities, sorted by
/// (degree, coefficients). Squarefree decomposition, Berlekamp modulo a
/// well-chosen prime, multifactor Hensel lifting and exhaustive recombination.
Factorization poly_factor_q(const QPoly& p);

/// Squarefree decomposition: pairs (g_i, i) with p = lc * prod g_i^i.
std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& p);

namespace detail {
// Exposed for tests.
std::vector<std::vector<std::uint64_t>> factor_mod_p(const std::vector<std::uint64_t>& monic_f,
                                                     std::uint64_t p);
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& monic_f, std::uint64_t p);
}  // namespace detail

// ---------------------------------------------------------------------------
// QMatrix: dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<BigRat> entries);
  static QMatrix identity(std::size_t n);
  static QMatrix from_ints(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  BigRat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const BigRat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  const std::vector<BigRat>& entries() const { return a_; }

  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator*(const BigRat& s) const;
  bool operator==(const QMatrix& o) const = default;

  QMatrix transpose() const;
  QMatrix column(std::size_t c) const;
  QMatrix hconcat(const QMatrix& o) const;
  QMatrix columns(std::size_t start, std::size_t count) const;

  std::size_t rank() const;
  /// Reduced row echelon form, returns pivot columns.
  std::vector<std::size_t> rref_in_place();
  BigRat determinant() const;
  QMatrix inverse() const;
  bool is_integral() const;
  /// Least common multiple of all denominators.
  BigInt denominator_lcm() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigRat> a_;
};

/// Columns form a basis of {v : m v = 0}; canonically the RREF null basis.
QMatrix kernel_basis(const QMatrix& m);
/// Solution X of a X = b when consistent (a has full column rank on the
/// relevant subspace); throws otherwise.
QMatrix solve_left_exact(const QMatrix& a, const QMatrix& b);
/// Monic characteristic polynomial det(xI - m).
QPoly poly_charpoly(const QMatrix& m);
/// Characteristic polynomial of an integer matrix via multimodular
/// Hessenberg reduction and CRT with a certified coefficient bound.
std::vector<BigInt> charpoly_integer(const std::vector<std::vector<BigInt>>& m);
/// p(M) by Horner's rule.
QMatrix poly_eval_matrix(const QPoly& p, const QMatrix& m);

}  // namespace hmf
