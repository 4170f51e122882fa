#include "hmf/quatalg.hpp"

#include <sstream>
#include <stdexcept>

namespace hmf {

QuatAlgebra::QuatAlgebra(FieldPtr F, FieldElem a, FieldElem b)
    : F_(std::move(F)), a_(std::move(a)), b_(std::move(b)), n_(F_->degree()) {
  if (F_->is_zero(a_) || F_->is_zero(b_)) throw std::invalid_argument("structure constants must be nonzero");
  const FieldCtx& F0 = *F_;
  const unsigned N = dim();
  // basis element (t, s) = e_s * q_t with q = 1, i, j, k
  tensor_.assign(N, std::vector<std::vector<std::pair<unsigned, BigRat>>>(N));
  FieldElem ab = F0.mul(a_, b_);
  for (unsigned p = 0; p < N; ++p)
    for (unsigned q = 0; q < N; ++q) {
      unsigned tp = p / n_, sp = p % n_, tq = q / n_, sq = q % n_;
      FieldElem e = F0.mul(F0.basis(sp), F0.basis(sq));
      // q_tp * q_tq = coef * q_t
      FieldElem coef = F0.one();
      unsigned t = 0;
      static const int kind[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
      t = kind[tp][tq];
      if (tp == 0 || tq == 0) {
        coef = F0.one();
      } else if (tp == tq) {
        coef = tp == 1 ? a_ : (tp == 2 ? b_ : F0.neg(ab));
      } else if (tp == 1 && tq == 2) {
        coef = F0.one();  // ij = k
      } else if (tp == 2 && tq == 1) {
        coef = F0.neg(F0.one());  // ji = -k
      } else if (tp == 1 && tq == 3) {
        coef = a_;  // ik = a j
      } else if (tp == 3 && tq == 1) {
        coef = F0.neg(a_);  // ki = -a j
      } else if (tp == 2 && tq == 3) {
        coef = F0.neg(b_);  // jk = -b i
      } else {
        coef = b_;  // kj = b i
      }
      FieldElem v = F0.mul(e, coef);
      for (unsigned s = 0; s < n_; ++s)
        if (v.c[s] != 0) tensor_[p][q].emplace_back(t * n_ + s, v.c[s]);
    }
}

QuatElem QuatAlgebra::one() const { return basis(0); }

QuatElem QuatAlgebra::basis(unsigned p) const {
  QuatElem x = zero();
  x[p] = 1;
  return x;
}

QuatElem QuatAlgebra::from_parts(const std::array<FieldElem, 4>& parts) const {
  QuatElem x = zero();
  for (unsigned t = 0; t < 4; ++t)
    for (unsigned s = 0; s < n_; ++s) x[t * n_ + s] = parts[t].c[s];
  return x;
}

QuatElem QuatAlgebra::from_field(const FieldElem& f) const {
  QuatElem x = zero();
  for (unsigned s = 0; s < n_; ++s) x[s] = f.c[s];
  return x;
}

FieldElem QuatAlgebra::part(const QuatElem& x, unsigned t) const {
  FieldElem f{std::vector<BigRat>(x.begin() + t * n_, x.begin() + (t + 1) * n_)};
  return f;
}

QuatElem QuatAlgebra::add(const QuatElem& x, const QuatElem& y) const {
  QuatElem r = x;
  for (unsigned p = 0; p < dim(); ++p) r[p] += y[p];
  return r;
}
QuatElem QuatAlgebra::sub(const QuatElem& x, const QuatElem& y) const {
  QuatElem r = x;
  for (unsigned p = 0; p < dim(); ++p) r[p] -= y[p];
  return r;
}
QuatElem QuatAlgebra::neg(const QuatElem& x) const {
  QuatElem r = x;
  for (auto& v : r) v = -v;
  return r;
}

QuatElem QuatAlgebra::mul(const QuatElem& x, const QuatElem& y) const {
  QuatElem r = zero();
  const unsigned N = dim();
  BigRat t;
  for (unsigned p = 0; p < N; ++p) {
    if (x[p] == 0) continue;
    for (unsigned q = 0; q < N; ++q) {
      if (y[q] == 0) continue;
      t = x[p] * y[q];
      for (const auto& [k, v] : tensor_[p][q]) r[k] += t * v;
    }
  }
  return r;
}

QuatElem QuatAlgebra::conj(const QuatElem& x) const {
  QuatElem r = x;
  for (unsigned p = n_; p < dim(); ++p) r[p] = -r[p];
  return r;
}

QuatElem QuatAlgebra::scale(const QuatElem& x, const FieldElem& s) const {
  return from_parts({F_->mul(part(x, 0), s), F_->mul(part(x, 1), s), F_->mul(part(x, 2), s), F_->mul(part(x, 3), s)});
}

QuatElem QuatAlgebra::scale(const QuatElem& x, const BigRat& s) const {
  QuatElem r = x;
  for (auto& v : r) v *= s;
  return r;
}

FieldElem QuatAlgebra::nr(const QuatElem& x) const {
  const FieldCtx& F = *F_;
  FieldElem x0 = part(x, 0), x1 = part(x, 1), x2 = part(x, 2), x3 = part(x, 3);
  FieldElem r = F.mul(x0, x0);
  r = F.sub(r, F.mul(a_, F.mul(x1, x1)));
  r = F.sub(r, F.mul(b_, F.mul(x2, x2)));
  r = F.add(r, F.mul(F.mul(a_, b_), F.mul(x3, x3)));
  return r;
}

FieldElem QuatAlgebra::trd(const QuatElem& x) const { return F_->scale(part(x, 0), 2); }

QuatElem QuatAlgebra::inv(const QuatElem& x) const {
  FieldElem n = nr(x);
  if (F_->is_zero(n)) throw ArithmeticError("inverse of a zero divisor");
  return scale(conj(x), F_->inv(n));
}

bool QuatAlgebra::is_zero(const QuatElem& x) const {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

bool QuatAlgebra::is_scalar(const QuatElem& x) const {
  for (unsigned p = n_; p < dim(); ++p)
    if (x[p] != 0) return false;
  return true;
}

std::string QuatAlgebra::to_string(const QuatElem& x) const {
  static const char* sym[4] = {"", "i", "j", "k"};
  std::ostringstream os;
  bool first = true;
  for (unsigned t = 0; t < 4; ++t) {
    FieldElem f = part(x, t);
    if (F_->is_zero(f)) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << F_->elem_to_string(f) << ")" << sym[t];
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------
// lattices

Lattice QuatAlgebra::product(const Lattice& L, const Lattice& M) const {
  std::vector<QuatElem> gens;
  auto lr = L.rows(), mr = M.rows();
  gens.reserve(lr.size() * mr.size());
  for (const auto& x : lr)
    for (const auto& y : mr) gens.push_back(mul(x, y));
  return lattice(gens);
}

Lattice QuatAlgebra::left_mul(const QuatElem& x, const Lattice& L) const {
  std::vector<QuatElem> gens;
  for (const auto& y : L.rows()) gens.push_back(mul(x, y));
  return lattice(gens);
}

Lattice QuatAlgebra::right_mul(const Lattice& L, const QuatElem& x) const {
  std::vector<QuatElem> gens;
  for (const auto& y : L.rows()) gens.push_back(mul(y, x));
  return lattice(gens);
}

Lattice QuatAlgebra::conj(const Lattice& L) const {
  std::vector<QuatElem> gens;
  for (const auto& y : L.rows()) gens.push_back(conj(y));
  return lattice(gens);
}

Lattice QuatAlgebra::scale(const Lattice& L, const FieldIdeal& I) const {
  std::vector<QuatElem> gens;
  auto lr = L.rows();
  for (std::size_t k = 0; k < I.lat.rank(); ++k) {
    FieldElem f = F_->ideal_basis_elem(I, k);
    for (const auto& y : lr) gens.push_back(scale(y, f));
  }
  return lattice(gens);
}

Lattice QuatAlgebra::left_order(const Lattice& L) const {
  // x L subset L  <=>  x in L l^{-1} for every basis element l
  std::optional<Lattice> acc;
  for (const auto& l : L.rows()) {
    Lattice M = right_mul(L, inv(l));
    acc = acc ? acc->intersect(M) : M;
  }
  return *acc;
}

Lattice QuatAlgebra::right_order(const Lattice& L) const {
  std::optional<Lattice> acc;
  for (const auto& l : L.rows()) {
    Lattice M = left_mul(inv(l), L);
    acc = acc ? acc->intersect(M) : M;
  }
  return *acc;
}

FieldIdeal QuatAlgebra::reduced_norm(const Lattice& L) const {
  auto rows = L.rows();
  std::vector<FieldElem> gens;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    gens.push_back(nr(rows[i]));
    for (std::size_t j = i + 1; j < rows.size(); ++j) gens.push_back(trd(mul(rows[i], conj(rows[j]))));
  }
  std::vector<FieldElem> nz;
  for (auto& g : gens)
    if (!F_->is_zero(g)) nz.push_back(g);
  return F_->ideal_from_gens(nz);
}

Lattice QuatAlgebra::inverse(const Lattice& L) const { return scale(conj(L), F_->ideal_inverse(reduced_norm(L))); }

QMatrix QuatAlgebra::trace_gram(const Lattice& L) const { return trace_gram(L, F_->one()); }

QMatrix QuatAlgebra::trace_gram(const Lattice& L, const FieldElem& c) const {
  auto rows = L.rows();
  const std::size_t r = rows.size();
  FieldElem c2 = F_->mul(c, c);
  QMatrix G(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      G(i, j) = F_->trace(F_->mul(c2, trd(mul(rows[i], conj(rows[j])))));
      G(j, i) = G(i, j);
    }
  return G;
}

bool QuatAlgebra::is_order(const Lattice& L) const {
  if (!L.full_rank() || !L.contains(one())) return false;
  if (!L.contains(product(L, L))) return false;
  for (const auto& x : L.rows())
    if (!F_->is_integral(nr(x)) || !F_->is_integral(trd(x))) return false;
  return true;
}

BigRat QuatAlgebra::discriminant_det(const Lattice& O) const { return abs(trace_gram(O).determinant()); }

BigRat QuatAlgebra::unramified_det() const {
  BigRat d(F_->discriminant());
  return d * d * d * d;
}

Lattice QuatAlgebra::lipschitz_order() const {
  std::vector<QuatElem> gens;
  for (unsigned p = 0; p < dim(); ++p) gens.push_back(basis(p));
  return lattice(gens);
}

namespace {

// Ring generated by O and y, or nullopt if it is not an order.
std::optional<Lattice> adjoin(const QuatAlgebra& B, const Lattice& O, const QuatElem& y) {
  const FieldCtx& F = B.field();
  auto rows = O.rows();
  rows.push_back(y);
  Lattice L = B.lattice(rows);
  for (int round = 0; round < 32; ++round) {
    for (const auto& x : L.rows())
      if (!F.is_integral(B.nr(x)) || !F.is_integral(B.trd(x))) return std::nullopt;
    QMatrix g = B.trace_gram(L);
    if (!g.is_integral()) return std::nullopt;
    Lattice M = L + B.product(L, L);
    if (M == L) return L;
    L = M;
  }
  return std::nullopt;
}

}  // namespace

Lattice QuatAlgebra::maximalize(const Lattice& O0) const {
  if (!is_order(O0)) throw std::invalid_argument("maximalize: input is not an order");
  Lattice O = O0;
  const BigRat target = unramified_det();
  for (;;) {
    BigRat ratio = discriminant_det(O) / target;
    BigInt num = ratio.get_num();
    if (num == 1 && ratio.get_den() == 1) return O;
    std::vector<BigInt> primes;
    BigInt m = num * ratio.get_den();
    for (BigInt p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        primes.push_back(p);
        while (m % p == 0) m /= p;
      }
    if (m > 1) primes.push_back(m);
    bool grew = false;
    for (const BigInt& p : primes) {
      // exhaustive search over O/pO; only feasible for tiny p
      if (p > 7) throw ArithmeticError("maximalize: overorder search at p = " + p.get_str() + " is not supported");
      const unsigned N = dim();
      auto basis_rows = O.rows();
      unsigned long pl = p.get_ui();
      std::vector<unsigned long> digits(N, 0);
      for (;;) {
        // next nonzero vector in (Z/p)^N
        std::size_t k = 0;
        while (k < N && digits[k] == pl - 1) digits[k++] = 0;
        if (k == N) break;
        ++digits[k];
        QuatElem y = zero();
        for (unsigned i = 0; i < N; ++i)
          if (digits[i])
            for (unsigned c = 0; c < N; ++c) y[c] += basis_rows[i][c] * BigRat(digits[i], 1);
        y = scale(y, BigRat(1, pl));
        if (!F_->is_integral(trd(y)) || !F_->is_integral(nr(y))) continue;
        auto bigger = adjoin(*this, O, y);
        if (bigger && *bigger != O) {
          O = *bigger;
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
    if (!grew) return O;
  }
}

QuatAlgebra QuatAlgebra::ramification_free(FieldPtr F, unsigned budget) {
  if (F->degree() % 2 != 0) throw std::invalid_argument("base field must have even degree");
  std::vector<std::pair<FieldElem, FieldElem>> cands;
  FieldElem m1 = F->neg(F->one());
  cands.emplace_back(m1, m1);
  // (-1, -u) for small totally positive integral u
  for (long t = 2; cands.size() < budget && t < 200; ++t)
    for (long c = -t; c <= t && cands.size() < budget; ++c) {
      FieldElem u = F->from_rat(BigRat(t));
      if (F->degree() >= 2) u.c[1] = c;
      if (!F->is_totally_positive(u)) continue;
      cands.emplace_back(m1, F->neg(u));
    }
  for (const auto& [a, b] : cands) {
    QuatAlgebra B(F, a, b);
    Lattice O = B.maximalize(B.lipschitz_order());
    if (B.discriminant_det(O) == B.unramified_det()) return B;
  }
  throw ArithmeticError("no ramification-free quaternion algebra found within the search budget");
}

}  // namespace hmf
