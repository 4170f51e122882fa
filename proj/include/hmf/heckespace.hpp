#pragma once

// Parallel weight 2 automorphic forms of squarefree level N on the definite
// algebra: the direct sum over classes a of functions on Gamma_a-orbits of
// P^1(O_F/N), and the Hecke operators assembled from Theta.

#include "hmf/classset.hpp"

namespace hmf {

struct WeightSpec {
  std::vector<int> k;
  static WeightSpec parallel(unsigned degree, int weight);
  /// Throws std::invalid_argument for anything but parallel weight 2.
  void require_supported() const;
};

/// |P^1(O_F/N)| = N(N) prod_{p | N} (1 + 1/Np).
BigInt p1_count(const FieldCtx& F, const FieldIdeal& N);

/// P^1(O_F/N) for squarefree N as the product of the local projective lines
/// of R at the primes dividing N, with the action of R localised at N.
class LevelStructure {
 public:
  LevelStructure(const ClassSet& cs, const FieldIdeal& N, std::uint64_t seed = 1);

  const FieldIdeal& level() const { return N_; }
  const std::vector<PrimeIdeal>& primes() const { return primes_; }
  std::size_t size() const { return size_; }

  /// Per-prime left multiplication matrices of u, for repeated use with act().
  using Action = std::vector<std::vector<modp::Row>>;
  Action action(const QuatElem& u) const;
  std::size_t act(const Action& A, std::size_t point) const;

 private:
  FieldIdeal N_;
  std::vector<PrimeIdeal> primes_;
  std::vector<ResidueAlgebra> local_;
  std::size_t size_ = 1;
};

struct CoinvariantSpace {
  WeightSpec weight;
  std::size_t p1_size = 0;
  // per class: orbit index of each point, one representative point per
  // orbit, and orbit sizes
  std::vector<std::vector<std::size_t>> orbit_of;
  std::vector<std::vector<std::size_t>> orbit_rep;
  std::vector<std::vector<std::size_t>> orbit_size;
  std::vector<std::size_t> offset;  // start of each class block
  std::size_t dim = 0;
};

CoinvariantSpace build_space(const ClassSet& cs, const LevelStructure& lv, const WeightSpec& w);

struct HeckeBlock {
  PrimeIdeal prime;
  QMatrix matrix;  // columns: source basis, rows: target basis
};

/// T(p) on the coinvariant basis. Requires p not dividing the level and
/// p present in the Theta table.
HeckeBlock hecke_operator(const ClassSet& cs, const ThetaTable& th, const LevelStructure& lv,
                          const CoinvariantSpace& sp, const PrimeIdeal& p);

struct DimensionReport {
  FieldIdeal level;
  std::size_t dim_M = 0;
  std::size_t dim_S = 0;
  long new_A = 0;  // S(N) minus old forms counted with their multiplicity sigma_0(N/M)
  long new_B = 0;  // S(N) - S(1), or S(1) at level 1
};

/// Dimensions for squarefree N; the Eisenstein part is the space of
/// functions factoring through the reduced norm (one per narrow class).
DimensionReport dimension_report(const ClassSet& cs, const FieldIdeal& N);

}  // namespace hmf
