#include "doctest.h"
#include "hmf/store.hpp"

using namespace hmf;

namespace {

FieldPtr biquadratic() {
  static FieldPtr F = FieldCtx::from_descriptor(read_descriptor(std::string(HMF_TEST_DATA) + "/q_sqrt2_sqrt5.json"));
  return F;
}

int legendre(long a, long p) {
  long r = 1, x = ((a % p) + p) % p;
  for (long e = (p - 1) / 2; e; e >>= 1) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("prime decomposition in Q(sqrt 2, sqrt 5) follows the subfield splitting") {
  auto F = biquadratic();
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 29L, 31L, 41L, 43L}) {
    auto primes = F->primes_above(BigInt(p));
    unsigned efg = 0;
    FieldIdeal prod = F->unit_ideal();
    for (const auto& P : primes) {
      efg += P.e * P.f;
      CHECK(F->ideal_norm(P.ideal) == BigRat(P.norm));
      for (unsigned k = 0; k < P.e; ++k) prod = F->ideal_mul(prod, P.ideal);
      CHECK(F->parse_ideal(P.label) == P.ideal);
    }
    CHECK(efg == 4);
    CHECK(prod == F->principal(F->from_rat(p)));
    // every residue field has order Np
    for (const auto& P : primes) CHECK(P.norm == BigInt(p) * (P.f == 2 ? p : 1));
    if (p == 2) {
      CHECK(primes.size() == 1);  // ramified in Q(sqrt 2), inert in Q(sqrt 5)
      CHECK(primes[0].e == 2);
      CHECK(primes[0].f == 2);
    } else if (p == 5) {
      CHECK(primes.size() == 1);  // ramified in Q(sqrt 5), inert in Q(sqrt 2)
      CHECK(primes[0].e == 2);
    } else {
      int split = (legendre(2, p) == 1) + (legendre(5, p) == 1) + (legendre(10, p) == 1);
      CHECK(primes.size() == (split == 3 ? 4u : 2u));
      for (const auto& P : primes) CHECK(P.e == 1);
    }
  }
}

TEST_CASE("factorization and narrow data over Q(sqrt 2, sqrt 5)") {
  auto F = biquadratic();
  auto f = F->factor(F->principal(F->from_rat(60)));
  BigRat norm = 1;
  for (const auto& [P, e] : f)
    for (unsigned k = 0; k < e; ++k) norm *= BigRat(P.norm);
  CHECK(norm == BigRat(60 * 60 * 60 * 60));
  // the descriptor units generate a group whose totally positive part mod
  // squares is trivial: eta^2 = (1+sqrt2) phi (3+sqrt10) is the only square
  CHECK(F->totally_positive_units().size() == 1);
  CHECK(eichler_mass(*F) == BigRat(7, 120));
}
