#include "hmf/gram.hpp"

namespace hmf {

namespace {

BigInt isqrt_floor(const BigRat& r) {
  BigInt f = floor_rat(r);
  if (f < 0) return -1;
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), f.get_mpz_t());
  return s;
}

// Largest integer x with (x - c)^2 <= r and x >= c - sqrt(r); returns false when
// the interval [c - sqrt r, c + sqrt r] holds no integer.
bool integer_range(const BigRat& c, const BigRat& r, BigInt& lo, BigInt& hi) {
  if (r < 0) return false;
  BigInt s = isqrt_floor(r);
  auto fits = [&](const BigInt& x) {
    BigRat t = BigRat(x) - c;
    return t * t <= r;
  };
  hi = floor_rat(c) + s + 2;
  while (BigRat(hi) > c && !fits(hi)) --hi;
  if (!fits(hi)) return false;
  lo = ceil_rat(c) - s - 2;
  while (BigRat(lo) < c && !fits(lo)) ++lo;
  return lo <= hi;
}

}  // namespace

BigRat gram_eval(const QMatrix& g, const IntRow& x, const IntRow& y) {
  BigRat acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    BigRat row = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) row += g(i, j) * y[j];
    acc += row * x[i];
  }
  return acc;
}

LLLResult lll_gram(const QMatrix& gram, const BigRat& delta) {
  const std::size_t n = gram.rows();
  LLLResult res;
  res.gram = gram;
  res.transform.assign(n, IntRow(n, 0));
  for (std::size_t i = 0; i < n; ++i) res.transform[i][i] = 1;
  if (n <= 1) return res;
  QMatrix& G = res.gram;
  auto& U = res.transform;
  std::vector<std::vector<BigRat>> mu(n, std::vector<BigRat>(n));
  std::vector<BigRat> B(n);

  auto red = [&](std::size_t k, std::size_t l) {
    if (abs(mu[k][l]) * 2 <= 1) return;
    BigInt q = round_rat(mu[k][l]);
    for (std::size_t j = 0; j < n; ++j) U[k][j] -= q * U[l][j];
    BigRat gkl = G(k, l), gll = G(l, l);
    BigRat gkk = G(k, k) - 2 * q * gkl + q * q * gll;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      G(k, j) -= q * G(l, j);
      G(j, k) = G(k, j);
    }
    G(k, k) = gkk;
    mu[k][l] -= q;
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
  };

  auto gso_row = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      BigRat t = G(k, j);
      for (std::size_t i = 0; i < j; ++i) t -= mu[j][i] * mu[k][i] * B[i];
      mu[k][j] = t / B[j];
    }
    BigRat t = G(k, k);
    for (std::size_t j = 0; j < k; ++j) t -= mu[k][j] * mu[k][j] * B[j];
    B[k] = t;
    if (B[k] <= 0) throw ArithmeticError("LLL: Gram matrix is not positive definite");
  };

  B[0] = G(0, 0);
  if (B[0] <= 0) throw ArithmeticError("LLL: Gram matrix is not positive definite");
  std::size_t k = 1, kmax = 0;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      gso_row(k);
    }
    red(k, k - 1);
    if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      BigRat m = mu[k][k - 1];
      BigRat nb = B[k] + m * m * B[k - 1];
      mu[k][k - 1] = m * B[k - 1] / nb;
      B[k] = B[k - 1] * B[k] / nb;
      B[k - 1] = nb;
      std::swap(U[k], U[k - 1]);
      for (std::size_t j = 0; j < n; ++j) std::swap(G(k, j), G(k - 1, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(G(j, k), G(j, k - 1));
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        BigRat t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  return res;
}

void short_vectors(const QMatrix& gram, const BigRat& bound,
                   const std::function<bool(const IntRow&, const BigRat&)>& visit) {
  const std::size_t n = gram.rows();
  if (n == 0) return;
  // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
  std::vector<std::vector<BigRat>> q(n, std::vector<BigRat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) q[i][j] = gram(i, j);
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i] <= 0) throw ArithmeticError("enumeration: form is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }

  IntRow x(n, 0);
  std::vector<BigInt> hi(n);
  std::vector<BigRat> rem(n + 1), center(n);
  rem[n] = bound;
  // zero_above[i]: all coordinates above i are zero (sign normalization)
  std::vector<bool> zero_above(n + 1, true);

  auto setup = [&](std::size_t i) -> bool {
    BigRat c = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) c -= q[i][j] * x[j];
    center[i] = c;
    BigInt lo, h;
    if (!integer_range(c, rem[i + 1] / q[i][i], lo, h)) return false;
    if (zero_above[i + 1] && lo < 0) lo = 0;
    if (lo > h) return false;
    x[i] = lo;
    hi[i] = h;
    return true;
  };

  std::size_t i = n - 1;
  if (!setup(i)) return;
  for (;;) {
    BigRat t = BigRat(x[i]) - center[i];
    rem[i] = rem[i + 1] - q[i][i] * t * t;
    zero_above[i] = zero_above[i + 1] && x[i] == 0;
    bool descended = false;
    if (i > 0) {
      if (setup(i - 1)) {
        --i;
        descended = true;
      }
    } else if (!zero_above[0]) {
      if (!visit(x, bound - rem[0])) return;
    }
    if (descended) continue;
    // advance at level i, climbing when exhausted
    for (;;) {
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = 0;
      if (++i == n) return;
    }
  }
}

std::vector<IntRow> vectors_of_value(const QMatrix& gram, const BigRat& value) {
  std::vector<IntRow> out;
  short_vectors(gram, value, [&](const IntRow& x, const BigRat& v) {
    if (v == value) out.push_back(x);
    return true;
  });
  return out;
}

}  // namespace hmf
