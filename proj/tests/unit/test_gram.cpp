#include "doctest.h"
#include "hmf/gram.hpp"

#include <random>
#include <set>

using namespace hmf;

namespace {

QMatrix random_gram(std::mt19937& rng, std::size_t n) {
  // B B^T for a random nonsingular integer B
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    QMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = d(rng);
    if (b.determinant() != 0) return b * b.transpose();
  }
}

}  // namespace

TEST_CASE("short vectors match a brute-force box search") {
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 1 + t % 4;
    QMatrix g = random_gram(rng, n);
    BigRat bound = 6 + t % 7;
    std::set<IntRow> found;
    short_vectors(g, bound, [&](const IntRow& x, const BigRat& v) {
      CHECK(v == gram_eval(g, x, x));
      found.insert(x);
      return true;
    });
    // Box: |x_i| <= sqrt(bound * (G^-1)_ii)
    QMatrix gi = g.inverse();
    std::vector<long> box(n);
    for (std::size_t i = 0; i < n; ++i) {
      BigRat r = bound * gi(i, i);
      box[i] = floor_rat(r).get_si();
      long s = 0;
      while ((s + 1) * (s + 1) <= box[i]) ++s;
      box[i] = s + 1;
    }
    std::set<IntRow> brute;
    IntRow x(n);
    std::vector<long> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = -box[i];
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) x[i] = c[i];
      BigRat v = gram_eval(g, x, x);
      if (v != 0 && v <= bound) {
        std::size_t last = n;
        while (last-- > 0 && x[last] == 0) {}
        if (x[last] > 0) brute.insert(x);
      }
      std::size_t k = 0;
      while (k < n && c[k] == box[k]) {
        c[k] = -box[k];
        ++k;
      }
      if (k == n) break;
      ++c[k];
    }
    CHECK(found == brute);
  }
}

TEST_CASE("LLL preserves the lattice and the determinant") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + t % 6;
    QMatrix g = random_gram(rng, n);
    auto r = lll_gram(g);
    QMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) = r.transform[i][j];
    CHECK(abs(u.determinant()) == 1);
    CHECK(u * g * u.transpose() == r.gram);
    CHECK(r.gram.determinant() == g.determinant());
  }
  // already reduced orthogonal basis is unchanged
  auto r = lll_gram(QMatrix::from_ints({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
  CHECK(r.gram == QMatrix::from_ints({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
}

TEST_CASE("vectors of a given value on Z^3") {
  auto v = vectors_of_value(QMatrix::identity(3), 1);
  CHECK(v.size() == 3);
  CHECK(vectors_of_value(QMatrix::identity(3) * BigRat(5), 1).empty());
}
