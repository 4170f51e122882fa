#include "doctest.h"
#include "hmf/heckespace.hpp"

using namespace hmf;

namespace {

struct Space85 {
  FieldPtr F = FieldCtx::quadratic(85);
  std::shared_ptr<QuatAlgebra> B = std::make_shared<QuatAlgebra>(QuatAlgebra::ramification_free(F));
  ClassSet cs;
  ThetaTable th;
  Space85() {
    cs = compute_class_set(B, B->maximalize(B->lipschitz_order()), {prime("(3, 2+w)")});
    th = compute_theta(cs, 5, 2);
  }
  PrimeIdeal prime(const std::string& s) const { return F->factor(F->parse_ideal(s))[0].first; }
};

Space85& space85() {
  static Space85 s;
  return s;
}

}  // namespace

TEST_CASE("P1 sizes") {
  auto& s = space85();
  const auto& F = *s.F;
  CHECK(p1_count(F, F.unit_ideal()) == 1);
  CHECK(LevelStructure(s.cs, F.unit_ideal()).size() == 1);
  for (const char* N : {"(3, w)", "(2)", "(5, 2+w)", "(6, 2*w)"}) {
    FieldIdeal I = F.parse_ideal(N);
    LevelStructure lv(s.cs, I);
    CHECK(BigInt(lv.size()) == p1_count(F, I));
  }
  CHECK(LevelStructure(s.cs, F.parse_ideal("(2)")).size() == 5);
  CHECK_THROWS_AS(LevelStructure(s.cs, F.parse_ideal("(3, 2+w)")), std::invalid_argument);
  CHECK_THROWS_AS(LevelStructure(s.cs, F.parse_ideal("(4)")), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::parallel(2, 4).require_supported(), std::invalid_argument);
}

TEST_CASE("coinvariant dimensions and orbit bookkeeping") {
  auto& s = space85();
  const auto& F = *s.F;
  auto w = WeightSpec::parallel(2, 2);
  struct Row {
    const char* level;
    std::size_t dim;
  };
  for (auto [N, d] : {Row{"1", 8}, Row{"(3, w)", 16}, Row{"(2)", 24}, Row{"(5, 2+w)", 20}}) {
    LevelStructure lv(s.cs, F.parse_ideal(N));
    auto sp = build_space(s.cs, lv, w);
    CHECK(sp.dim == d);
    for (const auto& sizes : sp.orbit_size) {
      std::size_t total = 0;
      for (auto z : sizes) total += z;
      CHECK(total == lv.size());
    }
  }
  auto r1 = dimension_report(s.cs, F.unit_ideal());
  CHECK(r1.dim_M == 8);
  CHECK(r1.dim_S == 6);
  CHECK(r1.new_A == 6);
  CHECK(r1.new_B == 6);
  auto r3 = dimension_report(s.cs, F.parse_ideal("(3, w)"));
  CHECK(r3.dim_S == 14);
  CHECK(r3.new_A == 2);
  CHECK(r3.new_B == 8);
}

TEST_CASE("Hecke operators: column sums, commutativity, seed invariance") {
  auto& s = space85();
  const auto& F = *s.F;
  auto w = WeightSpec::parallel(2, 2);
  LevelStructure l1(s.cs, F.unit_ideal());
  auto sp1 = build_space(s.cs, l1, w);
  std::vector<QMatrix> Ts;
  for (const auto& P : s.th.primes) {
    auto T = hecke_operator(s.cs, s.th, l1, sp1, P).matrix;
    for (std::size_t c = 0; c < T.cols(); ++c) {
      BigRat sum = 0;
      for (std::size_t r = 0; r < T.rows(); ++r) sum += T(r, c);
      CHECK(sum == BigRat(P.norm + 1));
    }
    Ts.push_back(T);
  }
  for (std::size_t i = 0; i < Ts.size(); ++i)
    for (std::size_t j = i + 1; j < Ts.size(); ++j) CHECK(Ts[i] * Ts[j] == Ts[j] * Ts[i]);
  auto k3 = s.th.prime_index(F.parse_ideal("(3, w)"));
  REQUIRE(k3);
  CHECK(poly_charpoly(Ts[*k3]) == QPoly::from_ints({-4, 1}) * QPoly::from_ints({4, 1}) * QPoly::from_ints({4, 0, 1}) *
                                       QPoly::from_ints({2, 0, -6, 0, 1}));

  FieldIdeal N = F.parse_ideal("(3, w)");
  LevelStructure la(s.cs, N, 1), lb(s.cs, N, 12345);
  auto spa = build_space(s.cs, la, w), spb = build_space(s.cs, lb, w);
  std::vector<QMatrix> Tn;
  for (const auto& P : s.th.primes) {
    if (F.ideal_divides(P.ideal, N)) {
      CHECK_THROWS(hecke_operator(s.cs, s.th, la, spa, P));
      continue;
    }
    auto A = hecke_operator(s.cs, s.th, la, spa, P).matrix;
    auto Bm = hecke_operator(s.cs, s.th, lb, spb, P).matrix;
    CHECK(poly_charpoly(A) == poly_charpoly(Bm));
    Tn.push_back(A);
  }
  for (std::size_t i = 0; i < Tn.size(); ++i)
    for (std::size_t j = i + 1; j < Tn.size(); ++j) CHECK(Tn[i] * Tn[j] == Tn[j] * Tn[i]);
  CHECK_THROWS_AS(hecke_operator(s.cs, s.th, la, spa, s.prime("(7, w)")), ArithmeticError);
}
