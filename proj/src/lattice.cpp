#include "hmf/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace hmf {

namespace {

void reduce_above(std::vector<IntRow>& b, const std::vector<std::size_t>& piv) {
  // row i only touches columns >= piv[i], so sweep pivots left to right
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = j + 1; i < b.size(); ++i) {
      const std::size_t c = piv[i];
      if (b[j][c] >= 0 && b[j][c] < b[i][c]) continue;
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), b[j][c].get_mpz_t(), b[i][c].get_mpz_t());
      for (std::size_t k = c; k < b[j].size(); ++k) b[j][k] -= q * b[i][k];
    }
}

}  // namespace

std::vector<IntRow> hnf_rows(const std::vector<IntRow>& rows, std::size_t ncols) {
  // pivot_row[c] holds the basis row whose leading entry sits in column c.
  std::vector<std::optional<IntRow>> pivot_row(ncols);
  BigInt g, s, t;
  for (const IntRow& r0 : rows) {
    IntRow v = r0;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (v[c] == 0) continue;
      if (!pivot_row[c]) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        pivot_row[c] = std::move(v);
        break;
      }
      IntRow& p = *pivot_row[c];
      if (v[c] % p[c] == 0) {
        BigInt q = v[c] / p[c];
        for (std::size_t k = c; k < ncols; ++k) v[k] -= q * p[k];
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p[c].get_mpz_t(), v[c].get_mpz_t());
      BigInt a = p[c] / g, b = v[c] / g;
      IntRow np(ncols), nv(ncols);
      for (std::size_t k = c; k < ncols; ++k) {
        np[k] = s * p[k] + t * v[k];
        nv[k] = b * p[k] - a * v[k];
      }
      if (np[c] < 0)
        for (auto& x : np) x = -x;
      p = std::move(np);
      v = std::move(nv);
      // keep entries small by reducing the new pivot row against later pivots
      for (std::size_t k = c + 1; k < ncols; ++k) {
        if (!pivot_row[k] || p[k] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), p[k].get_mpz_t(), (*pivot_row[k])[k].get_mpz_t());
        if (q != 0)
          for (std::size_t j = k; j < ncols; ++j) p[j] -= q * (*pivot_row[k])[j];
      }
    }
  }
  std::vector<IntRow> out;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < ncols; ++c)
    if (pivot_row[c]) {
      out.push_back(std::move(*pivot_row[c]));
      piv.push_back(c);
    }
  reduce_above(out, piv);
  return out;
}

Lattice Lattice::from_rows(const std::vector<RatRow>& rows, std::size_t dim) {
  BigInt d = 1;
  for (const auto& r : rows) {
    if (r.size() != dim) throw ArithmeticError("lattice generator has wrong length");
    for (const auto& x : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<IntRow> ints;
  ints.reserve(rows.size());
  for (const auto& r : rows) {
    IntRow v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = BigRat(r[i] * d).get_num();
    ints.push_back(std::move(v));
  }
  Lattice L;
  L.dim_ = dim;
  L.basis_ = hnf_rows(ints, dim);
  L.denom_ = d;
  L.canonicalize();
  return L;
}

Lattice Lattice::standard(std::size_t dim) {
  std::vector<RatRow> rows(dim, RatRow(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1;
  return from_rows(rows, dim);
}

void Lattice::canonicalize() {
  BigInt g = denom_;
  for (const auto& r : basis_)
    for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g != 1 && g != 0) {
    for (auto& r : basis_)
      for (auto& x : r) x /= g;
    denom_ /= g;
  }
  pivots_.clear();
  for (const auto& r : basis_) {
    std::size_t c = 0;
    while (r[c] == 0) ++c;
    pivots_.push_back(c);
  }
}

RatRow Lattice::row(std::size_t i) const {
  RatRow r(dim_);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = make_rat(basis_[i][k], denom_);
  return r;
}

std::vector<RatRow> Lattice::rows() const {
  std::vector<RatRow> out;
  for (std::size_t i = 0; i < rank(); ++i) out.push_back(row(i));
  return out;
}

QMatrix Lattice::matrix() const {
  QMatrix m(rank(), dim_);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t k = 0; k < dim_; ++k) m(i, k) = make_rat(basis_[i][k], denom_);
  return m;
}

Lattice Lattice::operator+(const Lattice& o) const {
  if (dim_ != o.dim_) throw ArithmeticError("lattice dimension mismatch");
  std::vector<RatRow> all = rows();
  auto other = o.rows();
  all.insert(all.end(), other.begin(), other.end());
  return from_rows(all, dim_);
}

Lattice Lattice::dual() const {
  if (!full_rank()) throw ArithmeticError("dual of a lattice that is not full rank");
  QMatrix inv = matrix().inverse().transpose();
  std::vector<RatRow> rs(dim_, RatRow(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) rs[i][k] = inv(i, k);
  return from_rows(rs, dim_);
}

Lattice Lattice::intersect(const Lattice& o) const { return (dual() + o.dual()).dual(); }

Lattice Lattice::scaled(const BigRat& s) const {
  auto rs = rows();
  for (auto& r : rs)
    for (auto& x : r) x *= s;
  return from_rows(rs, dim_);
}

std::optional<RatRow> Lattice::coordinates(const RatRow& v) const {
  RatRow x(rank());
  RatRow rem = v;
  for (std::size_t i = 0; i < rank(); ++i) {
    const std::size_t c = pivots_[i];
    BigRat bi = make_rat(basis_[i][c], denom_);
    x[i] = rem[c] / bi;
    if (x[i] == 0) continue;
    for (std::size_t k = c; k < dim_; ++k) rem[k] -= x[i] * make_rat(basis_[i][k], denom_);
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return x;
}

bool Lattice::contains(const RatRow& v) const {
  auto x = coordinates(v);
  if (!x) return false;
  return std::all_of(x->begin(), x->end(), [](const BigRat& c) { return c.get_den() == 1; });
}

bool Lattice::contains(const Lattice& o) const {
  for (std::size_t i = 0; i < o.rank(); ++i)
    if (!contains(o.row(i))) return false;
  return true;
}

BigRat Lattice::volume() const {
  if (!full_rank()) throw ArithmeticError("volume of a lattice that is not full rank");
  BigInt prod = 1;
  for (std::size_t i = 0; i < rank(); ++i) prod *= basis_[i][pivots_[i]];
  BigInt dn;
  mpz_pow_ui(dn.get_mpz_t(), denom_.get_mpz_t(), dim_);
  return make_rat(abs(prod), dn);
}

bool Lattice::operator<(const Lattice& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  if (denom_ != o.denom_) return denom_ < o.denom_;
  return basis_ < o.basis_;
}

std::string Lattice::to_string() const {
  std::ostringstream os;
  os << "1/" << denom_.get_str() << " * [";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t k = 0; k < dim_; ++k) os << (k ? ", " : "") << basis_[i][k].get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
namespace modp {

u64 inv(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw ArithmeticError("inverse of zero mod p");
  u64 r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

u64 reduce(const BigInt& x, u64 p) {
  BigInt t = x % BigInt(static_cast<unsigned long>(p));
  if (t < 0) t += static_cast<unsigned long>(p);
  return t.get_ui();
}

u64 reduce(const BigRat& x, u64 p) {
  u64 n = reduce(x.get_num(), p), d = reduce(x.get_den(), p);
  return n * inv(d, p) % p;
}

std::vector<std::size_t> rref(std::vector<Row>& m, u64 p) {
  std::vector<std::size_t> piv;
  if (m.empty()) return piv;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[row]);
    u64 iv = inv(m[row][c], p);
    for (auto& x : m[row]) x = x * iv % p;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == row || m[k][c] == 0) continue;
      u64 t = m[k][c];
      for (std::size_t j = 0; j < cols; ++j) m[k][j] = (m[k][j] + p - t * m[row][j] % p) % p;
    }
    piv.push_back(c);
    ++row;
  }
  m.resize(row);
  return piv;
}

std::size_t rank(std::vector<Row> m, u64 p) { return rref(m, p).size(); }

std::vector<Row> row_basis(std::vector<Row> m, u64 p) {
  rref(m, p);
  return m;
}

Quotient::Quotient(const std::vector<Row>& sub, std::size_t dim, u64 p) : p_(p), ambient_(dim), sub_(sub) {
  for (auto& r : sub_)
    if (r.size() != dim) throw ArithmeticError("quotient: row length mismatch");
  sub_pivots_ = rref(sub_, p);
  std::vector<bool> isp(dim, false);
  for (auto c : sub_pivots_) isp[c] = true;
  for (std::size_t c = 0; c < dim; ++c)
    if (!isp[c]) complement_.push_back(c);
}

Row Quotient::project(const Row& v0) const {
  Row v = v0;
  for (std::size_t i = 0; i < sub_.size(); ++i) {
    u64 t = v[sub_pivots_[i]];
    if (!t) continue;
    for (std::size_t j = 0; j < ambient_; ++j) v[j] = (v[j] + p_ - t * sub_[i][j] % p_) % p_;
  }
  Row out(complement_.size());
  for (std::size_t i = 0; i < complement_.size(); ++i) out[i] = v[complement_[i]];
  return out;
}

}  // namespace modp
}  // namespace hmf
