#include "hmf/heckespace.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace hmf {

WeightSpec WeightSpec::parallel(unsigned degree, int weight) { return WeightSpec{std::vector<int>(degree, weight)}; }

void WeightSpec::require_supported() const {
  for (int k0 : k)
    if (k0 != 2) throw std::invalid_argument("unsupported weight: only parallel weight 2 is implemented");
  if (k.empty()) throw std::invalid_argument("empty weight vector");
}

BigInt p1_count(const FieldCtx& F, const FieldIdeal& N) {
  BigRat c = F.ideal_norm(N);
  if (F.ideal_norm(N) == 1) return 1;
  for (const auto& [P, e] : F.factor(N)) c *= BigRat(P.norm + 1, P.norm);
  c.canonicalize();
  return c.get_num();
}

LevelStructure::LevelStructure(const ClassSet& cs, const FieldIdeal& N, std::uint64_t seed) : N_(N) {
  const QuatAlgebra& B = *cs.algebra;
  const FieldCtx& F = B.field();
  if (!F.ideal_is_integral(N)) throw std::invalid_argument("level must be an integral ideal");
  if (F.ideal_norm(N) == 1) return;
  for (const auto& [P, e] : F.factor(N)) {
    if (e != 1) throw std::invalid_argument("only squarefree levels are supported");
    for (const auto& Q : cs.S)
      if (Q.ideal == P.ideal) throw std::invalid_argument("level shares the prime " + P.label + " with S");
    primes_.push_back(P);
  }
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    local_.emplace_back(B, cs.order, primes_[i], seed + 7919 * i);
    size_ *= local_.back().size();
  }
}

LevelStructure::Action LevelStructure::action(const QuatElem& u) const {
  Action A;
  for (const auto& L : local_) A.push_back(L.left_matrix(u));
  return A;
}

std::size_t LevelStructure::act(const Action& A, std::size_t point) const {
  std::size_t out = 0, stride = 1;
  for (std::size_t j = 0; j < local_.size(); ++j) {
    std::size_t q = local_[j].size();
    out += local_[j].act(A[j], point % q) * stride;
    point /= q;
    stride *= q;
  }
  return out;
}

CoinvariantSpace build_space(const ClassSet& cs, const LevelStructure& lv, const WeightSpec& w) {
  w.require_supported();
  CoinvariantSpace sp;
  sp.weight = w;
  sp.p1_size = lv.size();
  const std::size_t n = lv.size();
  for (std::size_t a = 0; a < cs.size(); ++a) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : cs.units[a].elements) {
      if (g == cs.algebra->one()) continue;
      auto A = lv.action(g);
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t r1 = find(x), r2 = find(lv.act(A, x));
        if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
      }
    }
    std::vector<std::size_t> orbit(n), reps, sizes;
    std::vector<std::size_t> label(n, SIZE_MAX);
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t r = find(x);
      if (label[r] == SIZE_MAX) {
        label[r] = reps.size();
        reps.push_back(x);
        sizes.push_back(0);
      }
      orbit[x] = label[r];
      ++sizes[orbit[x]];
    }
    sp.offset.push_back(sp.dim);
    sp.dim += reps.size();
    sp.orbit_of.push_back(std::move(orbit));
    sp.orbit_rep.push_back(std::move(reps));
    sp.orbit_size.push_back(std::move(sizes));
  }
  return sp;
}

HeckeBlock hecke_operator(const ClassSet& cs, const ThetaTable& th, const LevelStructure& lv,
                          const CoinvariantSpace& sp, const PrimeIdeal& p) {
  const FieldCtx& F = cs.algebra->field();
  if (F.ideal_divides(p.ideal, lv.level())) throw std::invalid_argument("Hecke prime divides the level");
  auto k = th.prime_index(p.ideal);
  if (!k) throw ArithmeticError("Theta table does not cover " + p.label + "; extend the precomputation");
  HeckeBlock hb{p, QMatrix(sp.dim, sp.dim)};
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = 0; b < cs.size(); ++b)
      for (const auto& u : th.entries[*k][a][b]) {
        auto A = lv.action(u);
        for (std::size_t ob = 0; ob < sp.orbit_rep[b].size(); ++ob) {
          std::size_t oa = sp.orbit_of[a][lv.act(A, sp.orbit_rep[b][ob])];
          hb.matrix(sp.offset[a] + oa, sp.offset[b] + ob) += 1;
        }
      }
  return hb;
}

DimensionReport dimension_report(const ClassSet& cs, const FieldIdeal& N) {
  const FieldCtx& F = cs.algebra->field();
  std::set<std::size_t> classes;
  for (const auto& I : cs.norms) classes.insert(F.narrow_class_index(I));
  const long eis = static_cast<long>(classes.size());
  const WeightSpec w = WeightSpec::parallel(F.degree(), 2);

  std::vector<PrimeIdeal> primes;
  if (F.ideal_norm(N) != 1)
    for (const auto& [P, e] : F.factor(N)) primes.push_back(P);
  const std::size_t r = primes.size();
  // cusp dimensions and new parts for every divisor, indexed by subsets
  std::vector<long> S(1u << r), newA(1u << r);
  std::size_t dimM = 0;
  for (std::size_t mask = 0; mask < (1u << r); ++mask) {
    FieldIdeal M = F.unit_ideal();
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) M = F.ideal_mul(M, primes[i].ideal);
    LevelStructure lv(cs, M);
    auto sp = build_space(cs, lv, w);
    S[mask] = static_cast<long>(sp.dim) - eis;
    if (mask == (1u << r) - 1) dimM = sp.dim;
    long old = 0;
    for (std::size_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
      if (sub != mask) old += (1l << __builtin_popcountl(mask ^ sub)) * newA[sub];
      if (sub == 0) break;
    }
    newA[mask] = S[mask] - (mask == 0 ? 0 : old);
  }
  DimensionReport rep;
  rep.level = N;
  rep.dim_M = dimM;
  rep.dim_S = static_cast<std::size_t>(S.back());
  rep.new_A = newA.back();
  rep.new_B = r == 0 ? S[0] : S.back() - S[0];
  return rep;
}

}  // namespace hmf
