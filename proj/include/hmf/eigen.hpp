#pragma once

// Simultaneous decomposition of a space under commuting Hecke operators into
// pieces on which every operator has a power of one irreducible polynomial as
// characteristic polynomial, with eigenvalues presented as polynomials in a
// generating operator.

#include "hmf/heckespace.hpp"

namespace hmf {

struct Constituent {
  QMatrix basis;                  // columns span the subspace
  std::vector<QPoly> factor;      // per block: the irreducible g_p
  std::vector<unsigned> multiplicity;
  std::optional<std::size_t> generator;  // block whose restriction has irreducible char poly of full degree
  QPoly generator_minpoly;
  // per block: c_0, ..., c_{d-1} with T(p) = sum c_i T(q0)^i on the subspace
  std::vector<std::vector<BigRat>> presentation;
  bool eisenstein = false;
  std::optional<std::size_t> character;  // index into quadratic_narrow_characters()

  std::size_t dim() const { return basis.cols(); }
  /// Each operator acts irreducibly (some generator exists).
  bool irreducible() const { return generator.has_value(); }
};

struct Decomposition {
  std::vector<Constituent> parts;
  bool complete = false;  // every part is irreducible
};

/// Restriction of T to the invariant subspace spanned by the columns of W.
QMatrix restrict_operator(const QMatrix& T, const QMatrix& W);

Decomposition decompose(const std::vector<HeckeBlock>& blocks);

/// Chooses the generator (the preferred block when it qualifies, else the
/// first qualifying block) and fills in the presentations.
void present_eigenvalues(Constituent& c, const std::vector<HeckeBlock>& blocks,
                         std::optional<std::size_t> preferred = std::nullopt);

/// True iff c is one-dimensional with a_p = chi(p)(Np + 1) for some quadratic
/// character chi of Cl_F^+ at every block prime coprime to the level.
bool flag_eisenstein(Constituent& c, const FieldCtx& F, const FieldIdeal& level,
                     const std::vector<HeckeBlock>& blocks);

struct EigenReport {
  std::string field;
  FieldIdeal level;
  std::vector<PrimeIdeal> primes;
  std::vector<Constituent> constituents;  // Eisenstein first, then by (dim, factors)
  std::size_t eisenstein_count = 0;
  bool complete = false;
};

EigenReport eigen_report(const FieldCtx& F, const FieldIdeal& level, const std::vector<HeckeBlock>& blocks,
                         std::optional<std::size_t> preferred_generator = std::nullopt);

/// The eigenvalue of a one-dimensional constituent, or the presentation
/// polynomial in the generator otherwise.
QPoly presentation_poly(const Constituent& c, std::size_t block);

}  // namespace hmf
