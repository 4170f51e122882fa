#include "doctest.h"
#include "hmf/latenum.hpp"

#include <random>

using namespace hmf;

TEST_CASE("rescaling multiplier balances alpha") {
  auto F = FieldCtx::quadratic(10);
  FieldElem u = F->parse_elem("19+6*w");
  auto r = rescale_multiplier(*F, u, BigRat(10000));
  CHECK(r.ratio.hi < BigRat(201, 100));
  CHECK(r.ratio.hi >= 2);  // AM-GM floor
  auto r1 = rescale_multiplier(*F, F->one());
  CHECK(r1.ratio.hi < BigRat(41, 20));

  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-40, 40);
  for (long D : {10L, 85L}) {
    auto K = FieldCtx::quadratic(D);
    int count = 0;
    while (count < 20) {
      FieldElem a{{BigRat(d(rng)), BigRat(d(rng))}};
      if (!K->is_totally_positive(a)) continue;
      ++count;
      auto res = rescale_multiplier(*K, a);
      CHECK(res.ratio.hi >= 2);
      CHECK(res.ratio.lo < BigRat(41, 20));
      CHECK(K->is_totally_positive(K->mul(K->mul(res.c, res.c), a)));
    }
  }
}

TEST_CASE("rescaled norm equation agrees with direct enumeration") {
  for (long D : {10L, 85L}) {
    auto F = FieldCtx::quadratic(D);
    QuatAlgebra B(F, F->from_rat(-1), F->from_rat(-1));
    Lattice R = B.maximalize(B.lipschitz_order());
    std::vector<FieldElem> alphas{F->one(), F->from_rat(2), F->from_rat(3)};
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> d(-2, 2);
    // norms of small elements of R, kept small enough for the direct oracle
    while (alphas.size() < 7) {
      QuatElem x = B.zero();
      for (const auto& row : R.rows()) x = B.add(x, B.scale(row, BigRat(d(rng))));
      if (B.is_zero(x)) continue;
      FieldElem a = B.nr(x);
      if (F->trace(a) <= 40) alphas.push_back(a);
    }
    for (const auto& a : alphas) {
      auto s1 = solve_norm_equation(B, R, a);
      auto s2 = solve_norm_equation_plain(B, R, a);
      CHECK(s1 == s2);
      for (const auto& x : s1) CHECK(B.nr(x) == a);
    }
  }
}

TEST_CASE("LLL on a rank-8 ideal lattice keeps the determinant") {
  auto F = FieldCtx::quadratic(85);
  QuatAlgebra B(F, F->from_rat(-1), F->from_rat(-1));
  Lattice R = B.maximalize(B.lipschitz_order());
  QuatElem u = B.add(B.basis(2), B.scale(B.basis(5), BigRat(3)));
  auto T = TraceFormLattice::from_lattice(B, B.left_mul(u, R));
  auto Tr = lll_reduce(T);
  CHECK(Tr.gram.determinant() == T.gram.determinant());
  CHECK(B.lattice(Tr.basis) == B.left_mul(u, R));
  // t = Tr(1) = 2 on R over Q(sqrt 10) contains 1
  auto F10 = FieldCtx::quadratic(10);
  QuatAlgebra B10(F10, F10->from_rat(-1), F10->from_rat(-1));
  Lattice R10 = B10.maximalize(B10.lipschitz_order());
  auto units = enumerate_norm(lll_reduce(TraceFormLattice::from_lattice(B10, R10)), 2);
  bool has_one = false;
  for (auto& x : units) has_one = has_one || x == B10.one() || x == B10.neg(B10.one());
  CHECK(has_one);
}
