#include "hmf/realfield.hpp"

#include "hmf/gram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hmf {

namespace {

BigInt isqrt(const BigInt& n) {
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

bool is_prime(const BigInt& p) { return mpz_probab_prime_p(p.get_mpz_t(), 30) != 0; }

int sign_of(const BigRat& x) { return mpq_sgn(x.get_mpq_t()); }

}  // namespace

bool is_squarefree(long d) {
  if (d == 0) return false;
  long a = d < 0 ? -d : d;
  for (long p = 2; p * p <= a; ++p)
    if (a % (p * p) == 0) return false;
  return true;
}

BigInt sigma1(const BigInt& n) {
  BigInt s = 0;
  for (BigInt k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    BigInt q = n / k;
    s += k;
    if (q != k) s += q;
  }
  return s;
}

BigRat siegel_zeta_minus_one(long D) {
  // (1/60) * sum of sigma_1((D - b^2)/4) over b^2 < D, b = D mod 2
  BigRat acc = 0;
  for (long b = -D; b <= D; ++b) {
    if (b * b >= D) continue;
    if ((D - b) % 2 != 0) continue;
    acc += BigRat(sigma1(BigInt((D - b * b) / 4)));
  }
  return acc / 60;
}

// ---------------------------------------------------------------------------
// construction

FieldPtr FieldCtx::quadratic(long d) {
  if (d <= 1) throw std::invalid_argument("quadratic field needs d > 1");
  if (!is_squarefree(d)) throw std::invalid_argument("d is not squarefree: " + std::to_string(d));
  std::shared_ptr<FieldCtx> F(new FieldCtx());
  F->n_ = 2;
  F->d_ = d;
  F->name_ = "quad:" + std::to_string(d);
  F->table_.assign(2, std::vector<IntRow>(2));
  F->table_[0][0] = {1, 0};
  F->table_[0][1] = F->table_[1][0] = {0, 1};
  BigInt s = isqrt(BigInt(d));
  QPoly omega_poly;
  F->roots_.assign(2, std::vector<IsolatedRoot>(2));
  for (unsigned j = 0; j < 2; ++j) F->roots_[j][0] = {QPoly::from_ints({-1, 1}), 1, 1};
  if (d % 4 == 1) {
    BigInt m = (d - 1) / 4;
    F->table_[1][1] = {m, 1};
    F->disc_ = d;
    omega_poly = QPoly(std::vector<BigRat>{BigRat(-m), -1, 1});
    F->roots_[0][1] = {omega_poly, BigRat(1 + s, 2), BigRat(2 + s, 2)};
    F->roots_[1][1] = {omega_poly, BigRat(-s, 2), BigRat(1 - s, 2)};
  } else {
    F->table_[1][1] = {BigInt(d), 0};
    F->disc_ = 4 * BigInt(d);
    omega_poly = QPoly(std::vector<BigRat>{BigRat(-d), 0, 1});
    F->roots_[0][1] = {omega_poly, BigRat(s), BigRat(s + 1)};
    F->roots_[1][1] = {omega_poly, BigRat(-s - 1), BigRat(-s)};
  }
  F->finish_common();
  F->compute_units_quadratic();
  F->compute_tp_units();
  F->compute_zeta_quadratic();
  F->compute_class_groups_quadratic();
  return F;
}

FieldPtr FieldCtx::from_descriptor(const Descriptor& D) {
  const unsigned n = D.degree;
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("field degree must be even and positive");
  if (D.table.size() != n) throw std::invalid_argument("multiplication table has wrong size");
  for (const auto& r : D.table) {
    if (r.size() != n) throw std::invalid_argument("multiplication table has wrong size");
    for (const auto& v : r)
      if (v.size() != n) throw std::invalid_argument("multiplication table has wrong size");
  }
  std::shared_ptr<FieldCtx> F(new FieldCtx());
  F->n_ = n;
  F->d_ = 0;
  F->trusted_ = true;
  F->name_ = D.name.empty() ? "descriptor" : D.name;
  F->table_ = D.table;
  F->disc_ = D.discriminant;
  // e_0 must be the identity
  for (unsigned i = 0; i < n; ++i) {
    IntRow ei(n, 0);
    ei[i] = 1;
    if (F->table_[0][i] != ei) throw std::invalid_argument("basis element 0 is not the identity");
  }
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (F->table_[i][j] != F->table_[j][i])
        throw std::invalid_argument("multiplication table is not commutative");
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k) {
        FieldElem a = F->basis(i), b = F->basis(j), c = F->basis(k);
        if (F->mul(F->mul(a, b), c) != F->mul(a, F->mul(b, c)))
          throw std::invalid_argument("multiplication table is not associative");
      }
  F->finish_common();
  if (F->trace_form_.determinant() != BigRat(D.discriminant))
    throw std::invalid_argument("discriminant does not match the trace form");
  if (D.embeddings.size() != n) throw std::invalid_argument("need one interval map per real embedding");
  F->roots_.assign(n, std::vector<IsolatedRoot>(n));
  for (unsigned i = 0; i < n; ++i) {
    // minimal polynomial of e_i: squarefree part of its characteristic polynomial
    QPoly cp = poly_charpoly(F->mult_matrix(F->basis(i)));
    QPoly mp = cp / poly_gcd(cp, cp.derivative());
    for (unsigned j = 0; j < n; ++j) {
      if (D.embeddings[j].size() != n) throw std::invalid_argument("embedding interval map has wrong size");
      auto [lo, hi] = D.embeddings[j][i];
      if (lo > hi) throw std::invalid_argument("empty embedding interval");
      BigRat vlo = mp.eval(lo), vhi = mp.eval(hi);
      if (lo != hi && sign_of(vlo) * sign_of(vhi) > 0)
        throw std::invalid_argument("embedding interval does not bracket a root");
      if (lo == hi && vlo != 0) throw std::invalid_argument("embedding value is not a root");
      F->roots_[j][i] = {mp, lo, hi};
    }
  }
  for (const auto& u : D.units) {
    if (u.c.size() != n) throw std::invalid_argument("unit has wrong length");
    if (!F->is_unit(u)) throw std::invalid_argument("supplied unit is not a unit: " + F->elem_to_string(u));
  }
  F->units_ = D.units;
  F->compute_tp_units();
  F->zeta_ = D.zeta_minus_one;
  if (D.class_number != 1 || D.narrow_class_number != 1)
    throw std::invalid_argument("descriptor fields with nontrivial narrow class group are not supported");
  F->class_reps_ = {F->unit_ideal()};
  F->narrow_reps_ = {F->unit_ideal()};
  F->narrow_mult_ = {{0}};
  return F;
}

void FieldCtx::finish_common() {
  trace_form_ = QMatrix(n_, n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) trace_form_(i, j) = trace(mul(basis(i), basis(j)));
}

void FieldCtx::compute_units_quadratic() {
  // continued fraction of omega = (P + sqrt d)/Q; the first convergent p/q
  // with N(p - q*omega) = +-1 gives the fundamental unit.
  const BigInt d = d_;
  const BigInt s = isqrt(d);
  BigInt P = (d_ % 4 == 1) ? 1 : 0, Q = (d_ % 4 == 1) ? 2 : 1;
  BigInt p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  for (int guard = 0; guard < 100000; ++guard) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), BigInt(P + s).get_mpz_t(), Q.get_mpz_t());
    BigInt p = a * p1 + p2, q = a * q1 + q2;
    FieldElem u{{BigRat(p), BigRat(-q)}};
    BigRat nu = norm(u);
    if (nu == 1 || nu == -1) {
      FieldElem eps = inv(u);
      if (sign(eps, 0) < 0) eps = neg(eps);
      units_ = {eps};
      Interval iv = embed(eps, 0, 64);
      box_wide_ = ceil_rat(iv.hi + 1 / iv.lo);
      FieldElem epsp = norm(eps) == 1 ? eps : mul(eps, eps);
      Interval ip = embed(epsp, 0, 64);
      box_narrow_ = ceil_rat(ip.hi + 1 / ip.lo);
      return;
    }
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  throw ArithmeticError("fundamental unit search did not terminate");
}

void FieldCtx::compute_tp_units() {
  // U/U^2 has F_2-basis {-1, units}; keep the combinations with no negative embedding.
  std::vector<FieldElem> gens{neg(one())};
  gens.insert(gens.end(), units_.begin(), units_.end());
  std::vector<std::vector<int>> signs;
  for (const auto& g : gens) {
    std::vector<int> s;
    for (unsigned j = 0; j < n_; ++j) s.push_back(sign(g, j) < 0 ? 1 : 0);
    signs.push_back(s);
  }
  tp_units_.clear();
  const std::size_t r = gens.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
    std::vector<int> s(n_, 0);
    FieldElem u = one();
    for (std::size_t k = 0; k < r; ++k)
      if (mask >> k & 1) {
        for (unsigned j = 0; j < n_; ++j) s[j] ^= signs[k][j];
        u = mul(u, gens[k]);
      }
    if (std::all_of(s.begin(), s.end(), [](int v) { return v == 0; })) tp_units_.push_back(u);
  }
}

void FieldCtx::compute_zeta_quadratic() { zeta_ = siegel_zeta_minus_one(disc_.get_si()); }

void FieldCtx::compute_class_groups_quadratic() {
  // generators: primes of norm up to the Minkowski bound sqrt(D)/2
  BigInt mink = isqrt(disc_) / 2 + 1;
  std::vector<PrimeIdeal> gens = primes_up_to(mink);

  auto closure = [&](bool narrow) {
    std::vector<FieldIdeal> reps{unit_ideal()};
    auto same = [&](const FieldIdeal& a, const FieldIdeal& b) {
      FieldIdeal q = ideal_mul(a, ideal_inverse(b));
      return narrow ? narrow_generator(q).has_value() : principal_generator(q).has_value();
    };
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (const auto& P : gens) {
        FieldIdeal I = ideal_mul(reps[k], P.ideal);
        bool found = false;
        for (const auto& r : reps)
          if (same(I, r)) {
            found = true;
            break;
          }
        if (!found) reps.push_back(I);
      }
    // prefer prime representatives of small norm
    auto small = primes_up_to(std::max<BigInt>(mink, 60));
    for (std::size_t k = 1; k < reps.size(); ++k)
      for (const auto& P : small)
        if (same(P.ideal, reps[k])) {
          reps[k] = P.ideal;
          break;
        }
    return reps;
  };
  class_reps_ = closure(false);
  narrow_reps_ = closure(true);
  const std::size_t h = narrow_reps_.size();
  narrow_mult_.assign(h, std::vector<std::size_t>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) narrow_mult_[i][j] = narrow_class_index(ideal_mul(narrow_reps_[i], narrow_reps_[j]));
}

// ---------------------------------------------------------------------------
// elements

FieldElem FieldCtx::zero() const { return FieldElem{std::vector<BigRat>(n_, 0)}; }
FieldElem FieldCtx::one() const { return basis(0); }
FieldElem FieldCtx::from_rat(const BigRat& r) const {
  FieldElem x = zero();
  x.c[0] = r;
  return x;
}
FieldElem FieldCtx::basis(unsigned i) const {
  FieldElem x = zero();
  x.c[i] = 1;
  return x;
}
FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (unsigned i = 0; i < n_; ++i) r.c[i] += b.c[i];
  return r;
}
FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (unsigned i = 0; i < n_; ++i) r.c[i] -= b.c[i];
  return r;
}
FieldElem FieldCtx::neg(const FieldElem& a) const {
  FieldElem r = a;
  for (auto& x : r.c) x = -x;
  return r;
}
FieldElem FieldCtx::scale(const FieldElem& a, const BigRat& s) const {
  FieldElem r = a;
  for (auto& x : r.c) x *= s;
  return r;
}
FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = zero();
  for (unsigned i = 0; i < n_; ++i) {
    if (a.c[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (b.c[j] == 0) continue;
      BigRat t = a.c[i] * b.c[j];
      const IntRow& e = table_[i][j];
      for (unsigned k = 0; k < n_; ++k)
        if (e[k] != 0) r.c[k] += t * e[k];
    }
  }
  return r;
}
QMatrix FieldCtx::mult_matrix(const FieldElem& a) const {
  QMatrix m(n_, n_);
  for (unsigned i = 0; i < n_; ++i) {
    FieldElem r = mul(basis(i), a);
    for (unsigned k = 0; k < n_; ++k) m(i, k) = r.c[k];
  }
  return m;
}
FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (is_zero(a)) throw ArithmeticError("inverse of zero field element");
  // solve x * M(a) = e_0
  QMatrix m = mult_matrix(a);
  QMatrix mi = m.inverse();
  FieldElem r = zero();
  for (unsigned k = 0; k < n_; ++k) r.c[k] = mi(0, k);
  return r;
}
FieldElem FieldCtx::pow(const FieldElem& a, unsigned e) const {
  FieldElem r = one(), b = a;
  while (e) {
    if (e & 1u) r = mul(r, b);
    e >>= 1u;
    if (e) b = mul(b, b);
  }
  return r;
}
BigRat FieldCtx::norm(const FieldElem& a) const {
  if (n_ == 2) {
    // det of the 2x2 multiplication matrix
    QMatrix m = mult_matrix(a);
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  }
  return mult_matrix(a).determinant();
}
BigRat FieldCtx::trace(const FieldElem& a) const {
  BigRat t = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (a.c[i] == 0) continue;
    // trace of multiplication by e_i
    BigRat ti = 0;
    for (unsigned k = 0; k < n_; ++k) ti += table_[i][k][k];
    t += a.c[i] * ti;
  }
  return t;
}
bool FieldCtx::is_zero(const FieldElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](const BigRat& x) { return x == 0; });
}
bool FieldCtx::is_integral(const FieldElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](const BigRat& x) { return x.get_den() == 1; });
}
bool FieldCtx::is_rational(const FieldElem& a) const {
  for (unsigned i = 1; i < n_; ++i)
    if (a.c[i] != 0) return false;
  return true;
}
bool FieldCtx::is_unit(const FieldElem& a) const {
  if (!is_integral(a)) return false;
  BigRat nm = norm(a);
  return nm == 1 || nm == -1;
}

// ---------------------------------------------------------------------------
// embeddings

Interval FieldCtx::basis_interval(unsigned j, unsigned i, unsigned bits) const {
  std::lock_guard<std::mutex> lock(roots_mutex_);
  IsolatedRoot& r = roots_[j][i];
  BigRat target(BigInt(1), BigInt(1) << bits);
  while (r.hi - r.lo > target) {
    BigRat mid = (r.lo + r.hi) / 2;
    int sm = sign_of(r.poly.eval(mid));
    if (sm == 0) {
      r.lo = r.hi = mid;
      break;
    }
    int sl = sign_of(r.poly.eval(r.lo));
    if (sl == sm)
      r.lo = mid;
    else
      r.hi = mid;
  }
  return {r.lo, r.hi};
}

Interval FieldCtx::embed(const FieldElem& a, unsigned j, unsigned bits) const {
  BigRat mag = 1;
  for (const auto& c : a.c) mag += abs(c);
  unsigned extra = static_cast<unsigned>(mpz_sizeinbase(ceil_rat(mag).get_mpz_t(), 2)) + 1;
  Interval out{0, 0};
  for (unsigned i = 0; i < n_; ++i) {
    if (a.c[i] == 0) continue;
    Interval b = basis_interval(j, i, bits + extra);
    if (a.c[i] > 0) {
      out.lo += a.c[i] * b.lo;
      out.hi += a.c[i] * b.hi;
    } else {
      out.lo += a.c[i] * b.hi;
      out.hi += a.c[i] * b.lo;
    }
  }
  return out;
}

double FieldCtx::embed_approx(const FieldElem& a, unsigned j) const { return embed(a, j, 64).mid(); }

int FieldCtx::sign(const FieldElem& a, unsigned j) const {
  if (is_zero(a)) return 0;
  if (is_rational(a)) return a.c[0] > 0 ? 1 : -1;
  for (unsigned bits = 32;; bits *= 2) {
    Interval iv = embed(a, j, bits);
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
    if (bits > (1u << 20)) throw ArithmeticError("sign refinement did not terminate");
  }
}

bool FieldCtx::is_totally_positive(const FieldElem& a) const {
  for (unsigned j = 0; j < n_; ++j)
    if (sign(a, j) <= 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// ideals

FieldIdeal FieldCtx::unit_ideal() const { return FieldIdeal{Lattice::standard(n_)}; }

FieldIdeal FieldCtx::ideal_from_gens(const std::vector<FieldElem>& gens) const {
  std::vector<RatRow> rows;
  for (const auto& g : gens)
    for (unsigned i = 0; i < n_; ++i) rows.push_back(mul(g, basis(i)).c);
  FieldIdeal I{Lattice::from_rows(rows, n_)};
  if (!I.lat.full_rank()) throw ArithmeticError("ideal generators span a degenerate lattice");
  return I;
}

FieldIdeal FieldCtx::principal(const FieldElem& a) const { return ideal_from_gens({a}); }

FieldElem FieldCtx::ideal_basis_elem(const FieldIdeal& a, std::size_t i) const { return FieldElem{a.lat.row(i)}; }

FieldIdeal FieldCtx::ideal_mul(const FieldIdeal& a, const FieldIdeal& b) const {
  std::vector<RatRow> rows;
  for (std::size_t i = 0; i < a.lat.rank(); ++i)
    for (std::size_t j = 0; j < b.lat.rank(); ++j)
      rows.push_back(mul(ideal_basis_elem(a, i), ideal_basis_elem(b, j)).c);
  return FieldIdeal{Lattice::from_rows(rows, n_)};
}

FieldIdeal FieldCtx::ideal_pow(const FieldIdeal& a, unsigned e) const {
  FieldIdeal r = unit_ideal();
  for (unsigned k = 0; k < e; ++k) r = ideal_mul(r, a);
  return r;
}

FieldIdeal FieldCtx::ideal_add(const FieldIdeal& a, const FieldIdeal& b) const { return FieldIdeal{a.lat + b.lat}; }

FieldIdeal FieldCtx::ideal_intersect(const FieldIdeal& a, const FieldIdeal& b) const {
  return FieldIdeal{a.lat.intersect(b.lat)};
}

FieldIdeal FieldCtx::ideal_inverse(const FieldIdeal& a) const {
  std::optional<Lattice> acc;
  for (std::size_t i = 0; i < a.lat.rank(); ++i) {
    FieldElem bi = inv(ideal_basis_elem(a, i));
    std::vector<RatRow> rows;
    for (unsigned k = 0; k < n_; ++k) rows.push_back(mul(bi, basis(k)).c);
    Lattice L = Lattice::from_rows(rows, n_);
    acc = acc ? acc->intersect(L) : L;
  }
  return FieldIdeal{*acc};
}

BigRat FieldCtx::ideal_norm(const FieldIdeal& a) const { return a.lat.volume(); }

bool FieldCtx::ideal_is_integral(const FieldIdeal& a) const { return a.lat.denominator() == 1; }

bool FieldCtx::ideal_contains(const FieldIdeal& a, const FieldElem& x) const { return a.lat.contains(x.c); }

bool FieldCtx::ideal_divides(const FieldIdeal& a, const FieldIdeal& b) const { return a.lat.contains(b.lat); }

std::optional<FieldElem> FieldCtx::search_generator(const FieldIdeal& a0, bool narrow) const {
  // scale to an integral ideal
  const BigInt den = a0.lat.denominator();
  FieldIdeal a{a0.lat.scaled(BigRat(den))};
  const BigRat N = ideal_norm(a);
  const std::size_t n = n_;
  QMatrix B = a.lat.matrix();
  QMatrix G = B * trace_form_ * B.transpose();
  auto red = lll_gram(G);
  auto to_elem = [&](const IntRow& x) {
    FieldElem e = zero();
    for (std::size_t i = 0; i < n; ++i) {
      BigInt coef = 0;
      for (std::size_t k = 0; k < n; ++k) coef += x[k] * red.transform[k][i];
      if (coef == 0) continue;
      for (std::size_t m = 0; m < n; ++m) e.c[m] += coef * B(i, m);
    }
    return e;
  };
  std::optional<FieldElem> found;
  auto try_bound = [&](const BigRat& bound) {
    short_vectors(red.gram, bound, [&](const IntRow& x, const BigRat&) {
      FieldElem e = to_elem(x);
      BigRat ne = norm(e);
      if (!narrow) {
        if (ne == N || ne == -N) {
          found = e;
          return false;
        }
        return true;
      }
      if (ne != N) return true;
      if (is_totally_positive(e)) {
        found = e;
        return false;
      }
      FieldElem m = neg(e);
      if (is_totally_positive(m)) {
        found = m;
        return false;
      }
      return true;
    });
  };
  if (d_ != 0) {
    // a generator scaled by a unit power has sigma_0/sigma_1 in [1/eps, eps],
    // so Tr(x^2) <= N(a) (eps + 1/eps)
    try_bound(N * BigRat(narrow ? box_narrow_ : box_wide_));
  } else {
    // descriptor fields: class data is trusted, search with growing bounds
    BigRat bound = N * n;
    for (int k = 0; k < 40 && !found; ++k, bound *= 4) try_bound(bound);
    if (!found) throw ArithmeticError("generator search budget exhausted");
  }
  if (!found) return std::nullopt;
  return scale(*found, BigRat(1, 1) / BigRat(den));
}

std::optional<FieldElem> FieldCtx::principal_generator(const FieldIdeal& a) const { return search_generator(a, false); }

std::optional<FieldElem> FieldCtx::narrow_generator(const FieldIdeal& a) const { return search_generator(a, true); }

std::size_t FieldCtx::narrow_class_index(const FieldIdeal& a) const {
  if (narrow_reps_.size() == 1) return 0;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = narrow_cache_.find(a.lat);
    if (it != narrow_cache_.end()) return it->second;
  }
  for (std::size_t k = 0; k < narrow_reps_.size(); ++k) {
    if (narrow_generator(ideal_mul(a, ideal_inverse(narrow_reps_[k]))).has_value()) {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      narrow_cache_[a.lat] = k;
      return k;
    }
  }
  throw ArithmeticError("ideal is in no known narrow class");
}

std::size_t FieldCtx::class_index(const FieldIdeal& a) const {
  if (class_reps_.size() == 1) return 0;
  for (std::size_t k = 0; k < class_reps_.size(); ++k)
    if (principal_generator(ideal_mul(a, ideal_inverse(class_reps_[k]))).has_value()) return k;
  throw ArithmeticError("ideal is in no known class");
}

std::size_t FieldCtx::narrow_class_product(std::size_t i, std::size_t j) const { return narrow_mult_.at(i).at(j); }

std::vector<std::vector<int>> FieldCtx::quadratic_narrow_characters() const {
  const std::size_t h = narrow_reps_.size();
  std::vector<std::vector<int>> out;
  if (h > 20) throw ArithmeticError("narrow class group too large for character enumeration");
  for (std::size_t mask = 0; mask < (std::size_t(1) << h); ++mask) {
    std::vector<int> chi(h);
    for (std::size_t i = 0; i < h; ++i) chi[i] = (mask >> i & 1) ? -1 : 1;
    bool ok = chi[0] == 1;
    for (std::size_t i = 0; ok && i < h; ++i)
      for (std::size_t j = 0; ok && j < h; ++j)
        if (chi[i] * chi[j] != chi[narrow_mult_[i][j]]) ok = false;
    if (ok) out.push_back(chi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// primes

std::vector<PrimeIdeal> FieldCtx::primes_above(const BigInt& p) const {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
  std::vector<PrimeIdeal> out;
  if (n_ != 2) return primes_above_general(p);
  // omega is a root of x^2 - t x - c
  BigInt c = table_[1][1][0], t = table_[1][1][1];
  std::vector<BigInt> roots;
  for (BigInt r = 0; r < p; ++r) {
    BigInt v = r * r - t * r - c;
    if (v % p == 0) roots.push_back(r);
  }
  FieldElem w = basis(1);
  auto make = [&](const BigInt& r, unsigned e) {
    PrimeIdeal P;
    P.ideal = ideal_from_gens({from_rat(BigRat(p)), sub(w, from_rat(BigRat(r)))});
    P.p = p;
    P.f = 1;
    P.e = e;
    P.norm = p;
    P.label = ideal_to_string(P.ideal);
    return P;
  };
  if (roots.empty()) {
    PrimeIdeal P;
    P.ideal = ideal_from_gens({from_rat(BigRat(p))});
    P.p = p;
    P.f = 2;
    P.e = 1;
    P.norm = p * p;
    P.label = ideal_to_string(P.ideal);
    out.push_back(P);
  } else if (roots.size() == 1 || disc_ % p == 0) {
    out.push_back(make(roots[0], 2));
  } else {
    for (const auto& r : roots) out.push_back(make(r, 1));
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  return out;
}

namespace {

using modp::Row;
using modp::u64;

// Left kernel {v : v M = 0} of a square matrix over F_p.
std::vector<Row> left_kernel(const std::vector<Row>& M, u64 p) {
  const std::size_t n = M.size();
  std::vector<Row> aug(n, Row(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = M[i][j];
    aug[i][n + i] = 1;
  }
  modp::rref(aug, p);
  std::vector<Row> out;
  for (const auto& r : aug)
    if (std::all_of(r.begin(), r.begin() + n, [](u64 x) { return x == 0; }) &&
        std::any_of(r.begin() + n, r.end(), [](u64 x) { return x != 0; }))
      out.emplace_back(r.begin() + n, r.end());
  return out;
}

}  // namespace

// O_F/pO is a product of local rings O/P^e. Its radical is the kernel of a
// high enough Frobenius power, and the solutions of x^p = x form F_p^g, whose
// primitive idempotents cut out the g primes.
std::vector<PrimeIdeal> FieldCtx::primes_above_general(const BigInt& p) const {
  if (!p.fits_ulong_p() || p.get_ui() >= (1ul << 31)) throw ArithmeticError("prime too large for decomposition");
  const u64 q = p.get_ui();
  const std::size_t n = n_;
  auto mulp = [&](const Row& x, const Row& y) {
    Row z(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!y[j]) continue;
        u64 c = x[i] * y[j] % q;
        for (std::size_t k = 0; k < n; ++k)
          if (table_[i][j][k] != 0) z[k] = (z[k] + c * modp::reduce(table_[i][j][k], q)) % q;
      }
    }
    return z;
  };
  auto unit = [&](std::size_t i) {
    Row e(n, 0);
    e[i] = 1;
    return e;
  };
  auto is_zero_row = [](const Row& r) { return std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; }); };
  auto apply = [&](const std::vector<Row>& M, const Row& v) {
    Row out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (v[i])
        for (std::size_t k = 0; k < n; ++k) out[k] = (out[k] + v[i] * M[i][k]) % q;
    return out;
  };
  auto power = [&](Row x, u64 e) {
    Row r = unit(0);
    while (e) {
      if (e & 1) r = mulp(r, x);
      x = mulp(x, x);
      e >>= 1;
    }
    return r;
  };
  // Frobenius, and its power with p^j >= n
  std::vector<Row> frob(n);
  for (std::size_t i = 0; i < n; ++i) frob[i] = power(unit(i), q);
  std::vector<Row> fj = frob;
  for (u64 pj = q; pj < n; pj *= q) {
    std::vector<Row> nx(n);
    for (std::size_t i = 0; i < n; ++i) nx[i] = apply(frob, fj[i]);
    fj = nx;
  }
  const std::vector<Row> rad = left_kernel(fj, q);
  std::vector<Row> fm = frob;
  for (std::size_t i = 0; i < n; ++i) fm[i][i] = (fm[i][i] + q - 1) % q;
  const std::vector<Row> berl = left_kernel(fm, q);

  std::vector<Row> idem{unit(0)};
  for (const auto& b : berl) {
    auto mult_rows = [&](const Row& x) {
      std::vector<Row> m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = mulp(unit(i), x);
      return m;
    };
    std::vector<u64> vals;
    for (u64 c = 0; c < q; ++c) {
      Row bc = b;
      bc[0] = (bc[0] + q - c) % q;
      if (modp::rank(mult_rows(bc), q) < n) vals.push_back(c);
    }
    if (vals.size() < 2) continue;
    std::vector<Row> next;
    for (u64 c : vals) {
      Row L = unit(0);
      for (u64 c2 : vals) {
        if (c2 == c) continue;
        Row f = b;
        f[0] = (f[0] + q - c2) % q;
        u64 s = modp::inv((c + q - c2) % q, q);
        for (auto& x : f) x = x * s % q;
        L = mulp(L, f);
      }
      for (const auto& e : idem) {
        Row ef = mulp(e, L);
        if (!is_zero_row(ef)) next.push_back(ef);
      }
    }
    idem = std::move(next);
  }
  if (idem.size() != berl.size()) throw ArithmeticError("prime decomposition: idempotent splitting incomplete");

  std::vector<PrimeIdeal> out;
  for (const auto& e : idem) {
    std::vector<Row> Ae, rade;
    for (std::size_t i = 0; i < n; ++i) Ae.push_back(mulp(unit(i), e));
    for (const auto& r : rad) rade.push_back(mulp(r, e));
    const std::size_t d = modp::rank(Ae, q), dr = modp::rank(rade, q);
    const unsigned f = static_cast<unsigned>(d - dr);
    Row one_minus_e = e;
    for (auto& x : one_minus_e) x = (q - x) % q;
    one_minus_e[0] = (one_minus_e[0] + 1) % q;
    std::vector<RatRow> gens;
    for (std::size_t i = 0; i < n; ++i) {
      RatRow r(n, 0);
      r[i] = BigRat(p);
      gens.push_back(r);
    }
    auto lift = [&](const Row& v) {
      RatRow r(n);
      for (std::size_t k = 0; k < n; ++k) r[k] = BigRat(static_cast<unsigned long>(v[k]));
      return r;
    };
    for (const auto& r : rad) gens.push_back(lift(r));
    for (std::size_t i = 0; i < n; ++i) gens.push_back(lift(mulp(unit(i), one_minus_e)));
    PrimeIdeal P;
    P.ideal = FieldIdeal{Lattice::from_rows(gens, n)};
    P.p = p;
    P.f = f;
    P.e = static_cast<unsigned>(d / f);
    mpz_pow_ui(P.norm.get_mpz_t(), p.get_mpz_t(), f);
    if (ideal_norm(P.ideal) != BigRat(P.norm)) throw ArithmeticError("prime decomposition: norm mismatch");
    P.label = ideal_to_string(P.ideal);
    out.push_back(P);
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  return out;
}

std::vector<PrimeIdeal> FieldCtx::primes_up_to(const BigInt& bound) const {
  std::vector<PrimeIdeal> out;
  for (BigInt p = 2; p <= bound; ++p) {
    if (!is_prime(p)) continue;
    for (auto& P : primes_above(p))
      if (P.norm <= bound) out.push_back(P);
  }
  std::stable_sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.ideal < b.ideal;
  });
  return out;
}

std::vector<std::pair<PrimeIdeal, unsigned>> FieldCtx::factor(const FieldIdeal& a) const {
  if (!ideal_is_integral(a)) throw ArithmeticError("factor: ideal is not integral");
  BigRat nr = ideal_norm(a);
  BigInt N = nr.get_num();
  std::vector<std::pair<PrimeIdeal, unsigned>> out;
  for (BigInt p = 2; p * p <= N || (N > 1 && p <= N); ++p) {
    if (N % p != 0) continue;
    while (N % p == 0) N /= p;
    for (auto& P : primes_above(p)) {
      unsigned v = 0;
      FieldIdeal cur = a;
      FieldIdeal Pinv = ideal_inverse(P.ideal);
      for (;;) {
        FieldIdeal nx = ideal_mul(cur, Pinv);
        if (!ideal_is_integral(nx)) break;
        cur = nx;
        ++v;
      }
      if (v) out.emplace_back(P, v);
    }
  }
  return out;
}

FieldIdeal FieldCtx::narrow_class_rep_coprime(std::size_t k, const FieldIdeal& avoid) const {
  if (k == 0) return unit_ideal();
  for (BigInt bound = 50;; bound *= 2) {
    for (auto& P : primes_up_to(bound)) {
      if (ideal_divides(P.ideal, avoid)) continue;
      if (narrow_class_index(P.ideal) == k) return P.ideal;
    }
    if (bound > 100000) throw ArithmeticError("no prime representative found for narrow class");
  }
}

// ---------------------------------------------------------------------------
// text

std::string FieldCtx::elem_to_string(const FieldElem& a) const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < n_; ++i) {
    const BigRat& c = a.c[i];
    if (c == 0) continue;
    std::string sym = i == 0 ? "" : (n_ == 2 ? "w" : "e" + std::to_string(i));
    BigRat m = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? "-" : "+");
    first = false;
    if (i == 0)
      os << m.get_str();
    else if (m == 1)
      os << sym;
    else
      os << m.get_str() << "*" << sym;
  }
  if (first) return "0";
  return os.str();
}

FieldElem FieldCtx::parse_elem(const std::string& s0) const {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty field element");
  FieldElem out = zero();
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sg = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sg = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    BigRat coef = 1;
    bool has_num = pos > start;
    if (has_num) coef = parse_rat(s.substr(start, pos - start));
    if (pos < s.size() && s[pos] == '*') {
      if (!has_num) throw std::invalid_argument("bad field element: " + s0);
      ++pos;
    }
    unsigned idx = 0;
    if (pos < s.size() && (s[pos] == 'w' || s[pos] == 'e')) {
      if (s[pos] == 'w') {
        if (n_ != 2) throw std::invalid_argument("'w' is only defined for quadratic fields");
        idx = 1;
        ++pos;
      } else {
        ++pos;
        std::size_t st = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (st == pos) throw std::invalid_argument("bad basis symbol in: " + s0);
        idx = static_cast<unsigned>(std::stoul(s.substr(st, pos - st)));
        if (idx >= n_) throw std::invalid_argument("basis index out of range in: " + s0);
      }
    } else if (!has_num) {
      throw std::invalid_argument("bad field element: " + s0);
    }
    out.c[idx] += coef * sg;
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-') throw std::invalid_argument("bad field element: " + s0);
  }
  return out;
}

std::string FieldCtx::ideal_to_string(const FieldIdeal& a) const {
  std::ostringstream os;
  const BigInt& den = a.lat.denominator();
  if (den != 1) os << "1/" << den.get_str() << "*";
  FieldIdeal ai{a.lat.scaled(BigRat(den))};
  if (n_ == 2) {
    // Z-basis {m, b + c*w}: HNF with the w-column first
    std::vector<IntRow> swapped;
    for (const auto& r : ai.lat.int_basis()) swapped.push_back({r[1], r[0]});
    auto h = hnf_rows(swapped, 2);
    BigInt c = h[0][0], b = h[0][1], m = h[1][1];
    if (c == m && b == 0) {
      os << "(" << m.get_str() << ")";
    } else {
      FieldElem g{{BigRat(b), BigRat(c)}};
      os << "(" << m.get_str() << ", " << elem_to_string(g) << ")";
    }
    return os.str();
  }
  // (m) or (m, alpha) with m the least positive integer in the ideal and
  // alpha a basis element, when such a pair generates it
  BigInt m = 0;
  const BigInt Na = ideal_norm(ai).get_num();
  for (BigInt k = 1; k <= Na && Na < 1000000; ++k)
    if (Na % k == 0 && ideal_contains(ai, from_rat(BigRat(k)))) {
      m = k;
      break;
    }
  if (m != 0) {
    FieldIdeal mo = principal(from_rat(BigRat(m)));
    if (mo == ai) {
      os << "(" << m.get_str() << ")";
      return os.str();
    }
    for (std::size_t i = 0; i < ai.lat.rank(); ++i) {
      FieldElem g = ideal_basis_elem(ai, i);
      if (ideal_from_gens({from_rat(BigRat(m)), g}) == ai) {
        os << "(" << m.get_str() << ", " << elem_to_string(g) << ")";
        return os.str();
      }
    }
  }
  os << "(";
  for (std::size_t i = 0; i < ai.lat.rank(); ++i) os << (i ? ", " : "") << elem_to_string(ideal_basis_elem(ai, i));
  os << ")";
  return os.str();
}

FieldIdeal FieldCtx::parse_ideal(const std::string& s0) const {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "1") return unit_ideal();
  if (s.size() < 3 || s.front() != '(' || s.back() != ')') throw std::invalid_argument("bad ideal: " + s0);
  s = s.substr(1, s.size() - 2);
  std::vector<FieldElem> gens;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k)
    if (k == s.size() || s[k] == ',') {
      gens.push_back(parse_elem(s.substr(start, k - start)));
      start = k + 1;
    }
  std::vector<FieldElem> nz;
  for (auto& g : gens)
    if (!is_zero(g)) nz.push_back(g);
  if (nz.empty()) throw std::invalid_argument("zero ideal: " + s0);
  return ideal_from_gens(nz);
}

}  // namespace hmf
