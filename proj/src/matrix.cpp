#include "hmf/exact.hpp"

#include <algorithm>
#include <sstream>

namespace hmf {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<BigRat> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw ArithmeticError("matrix entry count mismatch");
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_ints(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ArithmeticError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ArithmeticError("shape mismatch in +");
  QMatrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ArithmeticError("shape mismatch in -");
  QMatrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw ArithmeticError("shape mismatch in *");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigRat& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

QMatrix QMatrix::operator*(const BigRat& s) const {
  QMatrix r(*this);
  for (auto& x : r.a_) x *= s;
  return r;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

QMatrix QMatrix::column(std::size_t c) const { return columns(c, 1); }

QMatrix QMatrix::columns(std::size_t start, std::size_t count) const {
  QMatrix r(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) r(i, j) = (*this)(i, start + j);
  return r;
}

QMatrix QMatrix::hconcat(const QMatrix& o) const {
  if (rows_ != o.rows_) throw ArithmeticError("row mismatch in hconcat");
  QMatrix r(rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
  }
  return r;
}

std::vector<std::size_t> QMatrix::rref_in_place() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t piv = row;
    while (piv < rows_ && (*this)(piv, col) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(row, j));
    BigRat inv = 1 / (*this)(row, col);
    for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      BigRat t = (*this)(r, col);
      if (t == 0) continue;
      for (std::size_t j = col; j < cols_; ++j) (*this)(r, j) -= t * (*this)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t QMatrix::rank() const {
  QMatrix t(*this);
  return t.rref_in_place().size();
}

BigRat QMatrix::determinant() const {
  if (!square()) throw ArithmeticError("determinant of non-square matrix");
  QMatrix t(*this);
  BigRat det = 1;
  const std::size_t n = rows_;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && t(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(t(piv, j), t(col, j));
      det = -det;
    }
    det *= t(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (t(r, col) == 0) continue;
      BigRat f = t(r, col) / t(col, col);
      for (std::size_t j = col; j < n; ++j) t(r, j) -= f * t(col, j);
    }
  }
  return det;
}

QMatrix QMatrix::inverse() const {
  if (!square()) throw ArithmeticError("inverse of non-square matrix");
  QMatrix aug = hconcat(identity(rows_));
  auto piv = aug.rref_in_place();
  if (piv.size() < rows_ || piv[rows_ - 1] >= rows_) throw ArithmeticError("singular matrix");
  return aug.columns(rows_, rows_);
}

bool QMatrix::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigRat& x) { return x.get_den() == 1; });
}

BigInt QMatrix::denominator_lcm() const {
  BigInt l = 1;
  for (const auto& x : a_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

std::string QMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

QMatrix kernel_basis(const QMatrix& m) {
  QMatrix t(m);
  auto piv = t.rref_in_place();
  const std::size_t n = m.cols();
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(c);
  QMatrix k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = -t(r, free[f]);
  }
  return k;
}

QMatrix solve_left_exact(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw ArithmeticError("shape mismatch in solve");
  QMatrix aug = a.hconcat(b);
  auto piv = aug.rref_in_place();
  const std::size_t n = a.cols();
  for (std::size_t r = 0; r < piv.size(); ++r)
    if (piv[r] >= n) throw ArithmeticError("inconsistent linear system");
  QMatrix x(n, b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, n + j);
  return x;
}

QMatrix poly_eval_matrix(const QPoly& p, const QMatrix& m) {
  if (!m.square()) throw ArithmeticError("matrix polynomial of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix acc(n, n);
  for (long k = p.degree(); k >= 0; --k) {
    acc = acc * m;
    const BigRat& c = p[static_cast<std::size_t>(k)];
    if (c != 0)
      for (std::size_t i = 0; i < n; ++i) acc(i, i) += c;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Multimodular characteristic polynomial.
namespace {

using u64 = std::uint64_t;

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 inv_mod(u64 a, u64 p) {
  u64 r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

std::vector<u64> charpoly_mod(std::vector<std::vector<u64>> h, u64 p) {
  const std::size_t n = h.size();
  // Reduce to upper Hessenberg form by similarity.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    u64 inv = inv_mod(h[m][m - 1], p);
    for (std::size_t r = m + 1; r < n; ++r) {
      u64 u = h[r][m - 1] * inv % p;
      if (!u) continue;
      for (std::size_t c = 0; c < n; ++c) h[r][c] = (h[r][c] + p - u * h[m][c] % p) % p;
      for (std::size_t c = 0; c < n; ++c) h[c][m] = (h[c][m] + u * h[c][r]) % p;
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_i h_{k-i,k} prod_{j} h_{j,j-1} p_{k-i-1}
  std::vector<std::vector<u64>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<u64> cur(k + 1, 0);
    const auto& prev = polys[k - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      cur[d + 1] = (cur[d + 1] + prev[d]) % p;
      cur[d] = (cur[d] + p - h[k - 1][k - 1] * prev[d] % p) % p;
    }
    u64 prod = 1;
    for (std::size_t i = 1; i < k; ++i) {
      prod = prod * h[k - i][k - i - 1] % p;
      if (!prod) break;
      u64 coef = h[k - i - 1][k - 1] * prod % p;
      if (!coef) continue;
      const auto& q = polys[k - i - 1];
      for (std::size_t d = 0; d < q.size(); ++d) cur[d] = (cur[d] + p - coef * q[d] % p) % p;
    }
    polys[k] = std::move(cur);
  }
  return polys[n];
}

}  // namespace

std::vector<BigInt> charpoly_integer(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw ArithmeticError("characteristic polynomial of non-square matrix");
  if (n == 0) return {BigInt(1)};
  // Every eigenvalue is bounded by the maximal absolute row sum rho, so each
  // coefficient is bounded by (1 + rho)^n.
  BigInt rho = 0;
  for (const auto& row : m) {
    BigInt s = 0;
    for (const auto& x : row) s += abs(x);
    if (s > rho) rho = s;
  }
  BigInt bound;
  mpz_pow_ui(bound.get_mpz_t(), BigInt(rho + 1).get_mpz_t(), n);
  bound *= 2;

  std::vector<BigInt> result(n + 1, 0);
  BigInt modulus = 1;
  u64 p = (1ull << 31);
  while (modulus <= bound) {
    do --p;
    while (!is_prime_u64(p));
    std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
    const BigInt bp(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        BigInt t = m[i][j] % bp;
        if (t < 0) t += bp;
        h[i][j] = t.get_ui();
      }
    std::vector<u64> cp = charpoly_mod(std::move(h), p);
    // CRT: result = result + modulus * ((cp - result) * modulus^{-1} mod p)
    u64 minv = inv_mod(BigInt(modulus % bp).get_ui(), p);
    for (std::size_t k = 0; k <= n; ++k) {
      BigInt r = result[k] % bp;
      if (r < 0) r += bp;
      u64 diff = (cp[k] + p - r.get_ui()) % p;
      u64 t = diff * minv % p;
      result[k] += modulus * BigInt(static_cast<unsigned long>(t));
    }
    modulus *= bp;
  }
  for (auto& c : result) {
    c %= modulus;
    if (c < 0) c += modulus;
    if (2 * c > modulus) c -= modulus;
  }
  return result;
}

QPoly poly_charpoly(const QMatrix& m) {
  if (!m.square()) throw ArithmeticError("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  BigInt d = m.denominator_lcm();
  std::vector<std::vector<BigInt>> z(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z[i][j] = BigRat(m(i, j) * d).get_num();
  std::vector<BigInt> c = charpoly_integer(z);
  // charpoly(M)(x) = d^{-n} charpoly(dM)(d x)
  std::vector<BigRat> out(n + 1);
  BigInt dpow = 1;
  for (std::size_t k = n + 1; k-- > 0;) {
    out[k] = make_rat(c[k], dpow);
    dpow *= d;
  }
  return QPoly(std::move(out));
}

}  // namespace hmf
