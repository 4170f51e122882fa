#include "doctest.h"
#include "hmf/classset.hpp"

#include <random>
#include <set>

using namespace hmf;

namespace {

struct Setup {
  FieldPtr F;
  std::shared_ptr<QuatAlgebra> B;
  Lattice R;
  explicit Setup(long d) : F(FieldCtx::quadratic(d)) {
    B = std::make_shared<QuatAlgebra>(QuatAlgebra::ramification_free(F));
    R = B->maximalize(B->lipschitz_order());
  }
  PrimeIdeal prime(const std::string& s) const { return F->factor(F->parse_ideal(s))[0].first; }
};

}  // namespace

TEST_CASE("neighbours: count, norm, containment, symmetry") {
  Setup s(85);
  const auto& B = *s.B;
  for (const auto& P : s.F->primes_up_to(7)) {
    auto nb = neighbors(B, s.R, P);
    CHECK(nb.size() == P.norm.get_ui() + 1);
    std::set<Lattice> distinct(nb.begin(), nb.end());
    CHECK(distinct.size() == nb.size());
    FieldIdeal expect = s.F->ideal_inverse(P.ideal);
    for (const auto& c : nb) {
      CHECK(c.contains(s.R));
      CHECK(B.reduced_norm(c) == expect);
      CHECK(B.right_order(c) == s.R);
      CHECK(c.volume() * BigRat(P.norm * P.norm) == s.R.volume());
      // R P^{-1} is a neighbour of c
      auto back = neighbors(B, c, P);
      CHECK(std::count(back.begin(), back.end(), B.scale(s.R, expect)) == 1);
    }
  }
  Setup t(10);
  CHECK(neighbors(*t.B, t.R, t.prime("(2, w)")).size() == 3);
}

TEST_CASE("isomorphism witnesses for constructed pairs") {
  Setup s(85);
  const auto& B = *s.B;
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-2, 2);
  auto a = neighbors(B, s.R, s.prime("(3, 2+w)"))[1];
  int done = 0;
  while (done < 10) {
    QuatElem u = B.zero();
    for (auto& v : u) v = d(rng);
    if (B.is_zero(u)) continue;
    Lattice c = B.left_mul(u, a);
    auto w = is_isomorphic(B, c, a);
    REQUIRE(w);
    CHECK(B.left_mul(*w, a) == c);
    CHECK(s.F->principal(B.nr(*w)) == s.F->principal(B.nr(u)));
    ++done;
  }
  CHECK(is_isomorphic(B, a, a));
}

TEST_CASE("class set and Theta over Q(sqrt 85)") {
  Setup s(85);
  auto cs = compute_class_set(s.B, s.R, {s.prime("(3, 2+w)")});
  const auto& B = *s.B;
  const auto& F = *s.F;
  CHECK(cs.size() == 8);
  CHECK(cs.mass == 3);
  CHECK(cs.unit_mass() == eichler_mass(F));
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = a + 1; b < cs.size(); ++b) CHECK(!is_isomorphic(B, cs.reps[a], cs.reps[b]));
  for (const auto& G : cs.units) CHECK(G.elements.front() == B.one());

  auto th = compute_theta(cs, 5, 2);
  for (std::size_t k = 0; k < th.primes.size(); ++k) {
    const auto& P = th.primes[k];
    for (std::size_t b = 0; b < cs.size(); ++b) {
      std::size_t total = 0;
      for (std::size_t a = 0; a < cs.size(); ++a) {
        total += th.entries[k][a][b].size();
        FieldIdeal expect = F.ideal_mul(F.ideal_mul(cs.norms[a], F.ideal_inverse(cs.norms[b])), P.ideal);
        for (const auto& u : th.entries[k][a][b]) CHECK(F.principal(B.nr(u)) == expect);
      }
      CHECK(total == P.norm.get_ui() + 1);
    }
  }
  // Brandt weight at the narrowly principal prime (2): Gamma_R-orbits of
  // elements of R of reduced norm generating (2)
  auto k2 = th.prime_index(F.principal(F.from_rat(2)));
  REQUIRE(k2);
  std::size_t count = 0;
  for (const auto& eta : F.totally_positive_units())
    count += solve_norm_equation(B, s.R, F.mul(F.from_rat(2), eta)).size();
  CHECK(count == th.entries[*k2][0][0].size() * cs.units[0].order());

  // Brandt matrix at (2) by direct enumeration in a b^{-1}
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = 0; b < cs.size(); ++b) {
      FieldIdeal I = F.ideal_mul(F.ideal_mul(cs.norms[a], F.ideal_inverse(cs.norms[b])), F.principal(F.from_rat(2)));
      std::size_t direct = 0;
      if (auto alpha = F.narrow_generator(I)) {
        Lattice L = B.product(cs.reps[a], B.inverse(cs.reps[b]));
        for (const auto& eta : F.totally_positive_units())
          direct += solve_norm_equation(B, L, F.mul(*alpha, eta)).size();
      }
      CHECK(direct == th.entries[*k2][a][b].size() * cs.units[a].order());
    }

  // extension keeps old entries
  auto before = th.entries;
  extend_theta(cs, th, 7, 2);
  CHECK(th.primes.size() == 6);
  for (std::size_t k = 0; k < before.size(); ++k) CHECK(th.entries[k] == before[k]);
}

TEST_CASE("class set over Q(sqrt 10) and Q(sqrt 5)") {
  Setup s(10);
  auto cs = compute_class_set(s.B, s.R, choose_S(*s.F, s.F->unit_ideal()));
  CHECK(cs.S.size() == 1);
  CHECK(cs.size() == 4);
  CHECK(cs.mass == BigRat(7, 6));
  CHECK(cs.unit_mass() == BigRat(7, 6));
  Setup t(5);
  auto c5 = compute_class_set(t.B, t.R, choose_S(*t.F, t.F->unit_ideal()));
  CHECK(c5.size() == 1);
  CHECK(c5.units[0].order() == 60);
  CHECK_THROWS(compute_class_set(s.B, s.R, {}));
}
