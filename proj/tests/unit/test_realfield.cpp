#include "doctest.h"
#include "hmf/realfield.hpp"

#include <cmath>

using namespace hmf;

namespace {

// Smallest unit > 1 found by scanning a + b*w with small coordinates.
FieldElem brute_fundamental_unit(const FieldCtx& F) {
  std::optional<FieldElem> best;
  double best_val = 0;
  for (long b = 1; b <= 30; ++b)
    for (long a = -200; a <= 200; ++a) {
      FieldElem u{{BigRat(a), BigRat(b)}};
      BigRat n = F.norm(u);
      if (n != 1 && n != -1) continue;
      for (auto v : {u, F.neg(u)}) {
        double x = F.embed_approx(v, 0);
        if (x > 1.0000001 && (!best || x < best_val)) {
          best = v;
          best_val = x;
        }
      }
    }
  REQUIRE(best.has_value());
  return *best;
}

}  // namespace

TEST_CASE("Siegel sums") {
  CHECK(siegel_zeta_minus_one(85) == 3);
  CHECK(siegel_zeta_minus_one(40) == BigRat(7, 6));
  CHECK(siegel_zeta_minus_one(5) == BigRat(1, 30));
  // hand oracle for D=85: b in {+-1,+-3,+-5,+-7,+-9}
  BigInt s = 2 * (sigma1(21) + sigma1(19) + sigma1(15) + sigma1(9) + sigma1(1));
  CHECK(s == 2 * (32 + 20 + 24 + 13 + 1));
  CHECK(make_rat(s, 60) == 3);
}

TEST_CASE("fundamental units agree with a brute-force scan") {
  for (long d : {2L, 3L, 5L, 6L, 10L, 13L, 21L, 85L}) {
    auto F = FieldCtx::quadratic(d);
    REQUIRE(F->fundamental_units().size() == 1);
    CHECK(F->fundamental_units()[0] == brute_fundamental_unit(*F));
  }
}

TEST_CASE("Q(sqrt 85) invariants") {
  auto F = FieldCtx::quadratic(85);
  CHECK(F->discriminant() == 85);
  CHECK(F->class_number() == 2);
  CHECK(F->narrow_class_number() == 2);
  CHECK(F->zeta_minus_one() == 3);
  auto p3 = F->primes_above(3);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0].norm == 3);
  CHECK(p3[1].norm == 3);
  auto a = F->parse_ideal("(3, 2*w)");
  auto b = F->parse_ideal("(3, 4+2*w)");
  CHECK(a != b);
  CHECK(F->ideal_mul(a, b) == F->parse_ideal("(3)"));
  CHECK(F->ideal_norm(a) == 3);
  auto p2 = F->primes_above(2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].norm == 4);
  CHECK(p2[0].f == 2);
  // the norm-3 primes are not principal: x^2 + xy - 21y^2 = +-3 has no solution
  CHECK_FALSE(F->principal_generator(a).has_value());
  CHECK(F->narrow_generator(F->unit_ideal()) == F->one());
  CHECK(F->totally_positive_units().size() == 1);
  CHECK(F->narrow_class_index(F->ideal_mul(a, a)) == 0);
  CHECK(F->narrow_class_index(a) != 0);
  auto chars = F->quadratic_narrow_characters();
  CHECK(chars.size() == 2);
}

TEST_CASE("Q(sqrt 10) invariants") {
  auto F = FieldCtx::quadratic(10);
  CHECK(F->discriminant() == 40);
  CHECK(F->zeta_minus_one() == BigRat(7, 6));
  CHECK(F->class_number() == 2);
  CHECK(F->narrow_class_number() == 2);
  auto p2 = F->primes_above(2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].e == 2);
  CHECK(p2[0].ideal == F->parse_ideal("(2, w)"));
  CHECK(F->ideal_mul(p2[0].ideal, p2[0].ideal) == F->parse_ideal("(2)"));
  CHECK_FALSE(F->narrow_generator(p2[0].ideal).has_value());
  // brute force: no x^2 - 10y^2 = +-2 in a box
  for (long x = -200; x <= 200; ++x)
    for (long y = -70; y <= 70; ++y) CHECK((x * x - 10 * y * y != 2 && x * x - 10 * y * y != -2));
  // fundamental unit 3 + sqrt10 has norm -1, so totally positive units are squares
  CHECK(F->fundamental_units()[0] == F->parse_elem("3+w"));
  CHECK(F->totally_positive_units() == std::vector<FieldElem>{F->one()});
  FieldElem u2 = F->parse_elem("19+6*w");
  CHECK(u2 == F->mul(F->parse_elem("3+w"), F->parse_elem("3+w")));
}

TEST_CASE("Q(sqrt 5)") {
  auto F = FieldCtx::quadratic(5);
  CHECK(F->zeta_minus_one() == BigRat(1, 30));
  CHECK(F->class_number() == 1);
  CHECK(F->totally_positive_units().size() == 1);
  // (3+sqrt5)/2 = w^2 is a square
  CHECK(F->mul(F->basis(1), F->basis(1)) == F->parse_elem("1+w"));
  CHECK_THROWS(FieldCtx::quadratic(8));
  CHECK_THROWS(FieldCtx::quadratic(1));
}

TEST_CASE("ideal arithmetic laws") {
  auto F = FieldCtx::quadratic(85);
  auto primes = F->primes_up_to(30);
  for (const auto& P : primes) {
    CHECK(F->ideal_norm(P.ideal) == BigRat(P.norm));
    auto Pi = F->ideal_inverse(P.ideal);
    CHECK(F->ideal_mul(P.ideal, Pi) == F->unit_ideal());
    CHECK(F->parse_ideal(F->ideal_to_string(P.ideal)) == P.ideal);
    for (const auto& Q : primes) {
      auto PQ = F->ideal_mul(P.ideal, Q.ideal);
      CHECK(F->ideal_norm(PQ) == BigRat(P.norm * Q.norm));
    }
  }
  for (long p : {2L, 3L, 5L, 7L, 11L, 17L, 19L, 23L}) {
    FieldIdeal prod = F->unit_ideal();
    unsigned sum = 0;
    for (auto& P : F->primes_above(p)) {
      prod = F->ideal_mul(prod, F->ideal_pow(P.ideal, P.e));
      sum += P.e * P.f;
    }
    CHECK(sum == 2);
    CHECK(prod == F->principal(F->from_rat(p)));
  }
  auto N = F->parse_ideal("(5, -1+2*w)");
  CHECK(F->ideal_norm(N) == 5);
  auto fac = F->factor(F->ideal_mul(N, F->parse_ideal("(3)")));
  CHECK(fac.size() == 3);
}

TEST_CASE("element parsing and printing") {
  auto F = FieldCtx::quadratic(85);
  for (std::string s : {"0", "1", "w", "-w", "2*w", "4+2*w", "-1+2*w", "1/2-3/4*w"})
    CHECK(F->elem_to_string(F->parse_elem(s)) == s);
  CHECK(F->parse_elem("w+4") == F->parse_elem("4+w"));
  CHECK_THROWS(F->parse_elem("3x"));
  CHECK_THROWS(F->parse_ideal("3, w"));
  CHECK(F->parse_ideal("(2, 0)") == F->parse_ideal("(2)"));
}
