#include "hmf/exact.hpp"

#include <algorithm>
#include <sstream>

namespace hmf {

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

BigInt floor_rat(const BigRat& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil_rat(const BigRat& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt round_rat(const BigRat& r) { return floor_rat(r + BigRat(1, 2)); }

std::string to_string(const BigRat& r) { return r.get_str(); }

BigRat parse_rat(const std::string& s) {
  BigRat r;
  if (r.set_str(s, 10) != 0) throw ArithmeticError("bad rational: " + s);
  if (r.get_den() == 0) throw ArithmeticError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------

QPoly::QPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const BigRat& c) { return QPoly(std::vector<BigRat>{c}); }

QPoly QPoly::x() { return QPoly(std::vector<BigRat>{0, 1}); }

QPoly QPoly::monomial(const BigRat& c, std::size_t deg) {
  std::vector<BigRat> v(deg + 1);
  v[deg] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::from_ints(const std::vector<long>& coeffs) {
  std::vector<BigRat> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  BigRat lc = leading();
  std::vector<BigRat> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] / lc;
  return QPoly(std::move(v));
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigRat> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * BigRat(static_cast<long>(i));
  return QPoly(std::move(v));
}

BigRat QPoly::eval(const BigRat& x) const {
  BigRat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<BigRat> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<BigRat> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
  return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
  std::vector<BigRat> v(c_);
  for (auto& x : v) x = -x;
  return QPoly(std::move(v));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigRat> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly QPoly::operator*(const BigRat& s) const {
  std::vector<BigRat> v(c_);
  for (auto& x : v) x *= s;
  return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (degree() < d.degree()) return {QPoly{}, *this};
  std::vector<BigRat> r(c_);
  std::vector<BigRat> q(c_.size() - d.c_.size() + 1);
  const BigRat& lc = d.c_.back();
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    BigRat t = r[k + dd] / lc;
    q[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= t * d.c_[j];
  }
  r.resize(dd);
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly QPoly::pow(unsigned e) const {
  QPoly result = constant(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

std::vector<BigInt> QPoly::primitive_part() const {
  if (is_zero()) return {};
  BigInt l = 1;
  for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> v(c_.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    BigRat t = c_[i] * l;
    v[i] = t.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
  }
  if (v.back() < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

bool QPoly::canonical_less(const QPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const BigRat& c = c_[k];
    if (c == 0) continue;
    BigRat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& p) {
  if (p.is_zero()) throw ArithmeticError("squarefree decomposition of zero");
  // Yun's algorithm over a field of characteristic zero.
  std::vector<std::pair<QPoly, unsigned>> out;
  QPoly f = p.monic();
  if (f.degree() == 0) return out;
  QPoly df = f.derivative();
  QPoly a = poly_gcd(f, df);
  QPoly b = f / a;
  QPoly c = df / a;
  QPoly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    QPoly g = poly_gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

QPoly Factorization::expand() const {
  QPoly r = QPoly::constant(unit);
  for (const auto& e : factors) r = r * e.factor.pow(e.multiplicity);
  return r;
}

std::string Factorization::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  if (unit != 1) {
    os << unit.get_str();
    first = false;
  }
  for (const auto& e : factors) {
    if (!first) os << " ";
    first = false;
    os << "(" << e.factor.to_string(var) << ")";
    if (e.multiplicity > 1) os << "^" << e.multiplicity;
  }
  if (first) os << "1";
  return os.str();
}

}  // namespace hmf
