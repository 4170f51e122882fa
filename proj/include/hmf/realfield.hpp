#pragma once

// Totally real number fields given by an integral basis e_0 = 1, ..., e_{n-1}
// with an integer multiplication table. Quadratic fields are constructed
// directly; other even-degree fields come from a descriptor document.

#include "hmf/lattice.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hmf {

struct FieldElem {
  std::vector<BigRat> c;  // coordinates in the integral basis
  bool operator==(const FieldElem&) const = default;
  bool operator<(const FieldElem& o) const { return c < o.c; }
};

struct Interval {
  BigRat lo, hi;
  BigRat width() const { return hi - lo; }
  double mid() const { return BigRat((lo + hi) / 2).get_d(); }
};

/// Fractional ideal: an O_F-stable full-rank lattice in coordinates.
struct FieldIdeal {
  Lattice lat;
  bool operator==(const FieldIdeal&) const = default;
  bool operator<(const FieldIdeal& o) const { return lat < o.lat; }
};

struct PrimeIdeal {
  FieldIdeal ideal;
  BigInt p;          // rational prime below
  unsigned f = 1;    // residue degree
  unsigned e = 1;    // ramification index
  BigInt norm;       // p^f
  std::string label;
};

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Root of a squarefree rational polynomial isolated in an interval.
struct IsolatedRoot {
  QPoly poly;
  BigRat lo, hi;
};

class FieldCtx {
 public:
  /// Q(sqrt d), d > 1 squarefree.
  static FieldPtr quadratic(long d);

  struct Descriptor {
    unsigned degree = 0;
    std::vector<std::vector<IntRow>> table;  // table[i][j] = coords of e_i e_j
    BigInt discriminant;
    // embeddings[j][i]: interval for sigma_j(e_i)
    std::vector<std::vector<std::pair<BigRat, BigRat>>> embeddings;
    std::vector<FieldElem> units;
    unsigned class_number = 1;
    unsigned narrow_class_number = 1;
    BigRat zeta_minus_one;
    std::string name;
  };
  /// Validates the table (associativity, commutativity, identity), the degree
  /// parity and the supplied units; throws std::invalid_argument on failure.
  static FieldPtr from_descriptor(const Descriptor& d);

  unsigned degree() const { return n_; }
  const BigInt& discriminant() const { return disc_; }
  /// The d of Q(sqrt d) for quadratic fields, 0 otherwise.
  long quadratic_d() const { return d_; }
  const std::string& name() const { return name_; }
  bool descriptor_trusted() const { return trusted_; }
  const std::vector<std::vector<IntRow>>& table() const { return table_; }

  // element arithmetic
  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_rat(const BigRat& r) const;
  FieldElem basis(unsigned i) const;
  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem scale(const FieldElem& a, const BigRat& s) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem pow(const FieldElem& a, unsigned e) const;
  /// Matrix of y -> a*y (rows: images of basis elements).
  QMatrix mult_matrix(const FieldElem& a) const;
  BigRat norm(const FieldElem& a) const;
  BigRat trace(const FieldElem& a) const;
  bool is_zero(const FieldElem& a) const;
  bool is_integral(const FieldElem& a) const;
  bool is_rational(const FieldElem& a) const;
  /// Integer matrix Tr(e_i e_j).
  const QMatrix& trace_form() const { return trace_form_; }

  // real embeddings (sigma_0 > sigma_1 > ... on the first non-rational basis element)
  Interval embed(const FieldElem& a, unsigned j, unsigned bits = 64) const;
  double embed_approx(const FieldElem& a, unsigned j) const;
  /// Exact sign via refinement; 0 only for a = 0.
  int sign(const FieldElem& a, unsigned j) const;
  bool is_totally_positive(const FieldElem& a) const;

  // units
  const std::vector<FieldElem>& fundamental_units() const { return units_; }
  /// Totally positive units modulo squares of units (always contains 1).
  const std::vector<FieldElem>& totally_positive_units() const { return tp_units_; }
  bool is_unit(const FieldElem& a) const;

  // class groups
  unsigned class_number() const { return static_cast<unsigned>(class_reps_.size()); }
  unsigned narrow_class_number() const { return static_cast<unsigned>(narrow_reps_.size()); }
  const std::vector<FieldIdeal>& class_reps() const { return class_reps_; }
  const std::vector<FieldIdeal>& narrow_class_reps() const { return narrow_reps_; }
  std::size_t class_index(const FieldIdeal& a) const;
  std::size_t narrow_class_index(const FieldIdeal& a) const;
  /// Index of the class of a*b in the narrow class group.
  std::size_t narrow_class_product(std::size_t i, std::size_t j) const;
  /// Characters of Cl_F^+ with values +-1, as value vectors over narrow_class_reps().
  std::vector<std::vector<int>> quadratic_narrow_characters() const;
  const BigRat& zeta_minus_one() const { return zeta_; }

  // ideals
  FieldIdeal unit_ideal() const;
  FieldIdeal principal(const FieldElem& a) const;
  FieldIdeal ideal_from_gens(const std::vector<FieldElem>& gens) const;
  FieldIdeal ideal_mul(const FieldIdeal& a, const FieldIdeal& b) const;
  FieldIdeal ideal_pow(const FieldIdeal& a, unsigned e) const;
  FieldIdeal ideal_add(const FieldIdeal& a, const FieldIdeal& b) const;
  FieldIdeal ideal_intersect(const FieldIdeal& a, const FieldIdeal& b) const;
  FieldIdeal ideal_inverse(const FieldIdeal& a) const;
  BigRat ideal_norm(const FieldIdeal& a) const;
  bool ideal_is_integral(const FieldIdeal& a) const;
  bool ideal_contains(const FieldIdeal& a, const FieldElem& x) const;
  bool ideal_divides(const FieldIdeal& a, const FieldIdeal& b) const;  // b subset of a
  FieldElem ideal_basis_elem(const FieldIdeal& a, std::size_t i) const;
  /// Generator with |N(g)| = N(a), if a is principal.
  std::optional<FieldElem> principal_generator(const FieldIdeal& a) const;
  /// Totally positive generator, if a is narrowly principal.
  std::optional<FieldElem> narrow_generator(const FieldIdeal& a) const;

  // primes
  std::vector<PrimeIdeal> primes_above(const BigInt& p) const;
  /// All primes of norm <= bound, ordered by (norm, canonical ideal order).
  std::vector<PrimeIdeal> primes_up_to(const BigInt& bound) const;
  /// Factorization of an integral ideal into primes.
  std::vector<std::pair<PrimeIdeal, unsigned>> factor(const FieldIdeal& a) const;
  /// Integral ideal in class `narrow_class` coprime to `avoid`, of small norm.
  FieldIdeal narrow_class_rep_coprime(std::size_t narrow_class, const FieldIdeal& avoid) const;

  // text
  std::string elem_to_string(const FieldElem& a) const;
  FieldElem parse_elem(const std::string& s) const;
  std::string ideal_to_string(const FieldIdeal& a) const;
  FieldIdeal parse_ideal(const std::string& s) const;
  std::string generator_symbol() const { return n_ == 2 ? "w" : "e"; }

 private:
  FieldCtx() = default;
  void finish_common();
  void compute_units_quadratic();
  void compute_tp_units();
  void compute_class_groups_quadratic();
  void compute_zeta_quadratic();
  std::optional<FieldElem> search_generator(const FieldIdeal& a, bool narrow) const;
  std::vector<PrimeIdeal> primes_above_general(const BigInt& p) const;
  Interval basis_interval(unsigned j, unsigned i, unsigned bits) const;

  unsigned n_ = 0;
  long d_ = 0;
  BigInt disc_;
  std::string name_;
  bool trusted_ = false;
  std::vector<std::vector<IntRow>> table_;
  QMatrix trace_form_;
  std::vector<FieldElem> units_;
  std::vector<FieldElem> tp_units_;
  std::vector<FieldIdeal> class_reps_, narrow_reps_;
  std::vector<std::vector<std::size_t>> narrow_mult_;
  BigRat zeta_;
  // per embedding j, per basis element i
  mutable std::vector<std::vector<IsolatedRoot>> roots_;
  mutable std::mutex roots_mutex_;
  mutable std::map<Lattice, std::size_t> narrow_cache_;
  mutable std::mutex cache_mutex_;
  // unit-box multipliers for generator searches (upper bounds of eps + 1/eps)
  BigInt box_wide_ = 0, box_narrow_ = 0;
};

bool is_squarefree(long d);
/// sigma_1 of a positive integer.
BigInt sigma1(const BigInt& n);
/// Siegel's formula for zeta_F(-1) of the real quadratic field of discriminant D.
BigRat siegel_zeta_minus_one(long D);

}  // namespace hmf
