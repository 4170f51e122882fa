#include "hmf/splitting.hpp"

#include <random>

namespace hmf {

std::vector<FieldElem> residue_reps(const FieldCtx& F, const FieldIdeal& P) {
  const auto& H = P.lat.int_basis();
  const unsigned n = F.degree();
  if (P.lat.denominator() != 1 || H.size() != n) throw ArithmeticError("residue_reps: ideal must be integral");
  std::vector<unsigned long> d(n);
  for (unsigned i = 0; i < n; ++i) d[i] = H[i][i].get_ui();
  std::vector<FieldElem> out;
  std::vector<unsigned long> c(n, 0);
  while (true) {
    FieldElem x = F.zero();
    for (unsigned i = 0; i < n; ++i) x.c[i] = c[i];
    out.push_back(std::move(x));
    unsigned i = 0;
    while (i < n && ++c[i] == d[i]) c[i++] = 0;
    if (i == n) break;
  }
  return out;
}

ResidueAlgebra::ResidueAlgebra(const QuatAlgebra& B, const Lattice& O, const PrimeIdeal& P, std::uint64_t seed,
                               unsigned budget)
    : B_(&B), O_(O), P_(P), p_(P.p.get_ui()), obasis_(O.rows()) {
  const FieldCtx& F = B.field();
  const std::size_t m = B.dim();

  std::vector<modp::Row> sub;
  for (const auto& r : B.scale(O, P.ideal).rows()) {
    auto c = O.coordinates(r);
    modp::Row row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = modp::reduce((*c)[i], p_);
    sub.push_back(std::move(row));
  }
  q_ = modp::Quotient(sub, m, p_);

  // (p) P^{-e} is the product of the other primes above p
  FieldIdeal other = F.ideal_mul(F.principal(F.from_rat(BigRat(P.p))), F.ideal_pow(F.ideal_inverse(P.ideal), P.e));
  clear_ = F.one();
  if (!(other == F.unit_ideal())) {
    for (std::size_t i = 0; i < F.degree(); ++i) {
      FieldElem s = F.ideal_basis_elem(other, i);
      if (!F.ideal_contains(P.ideal, s)) {
        clear_ = s;
        break;
      }
    }
  }
  residues_ = residue_reps(F, P.ideal);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto random_elem = [&] {
    QuatElem x = B.zero();
    for (const auto& o : obasis_) {
      int c = coef(rng);
      if (c != 0) x = B.add(x, B.scale(o, BigRat(c)));
    }
    return x;
  };
  const std::size_t half = dim() / 2;
  for (unsigned attempt = 0; attempt < budget; ++attempt) {
    QuatElem x = random_elem();
    FieldElem t = B.trd(x), nm = B.nr(x);
    std::optional<QuatElem> z;
    for (const auto& lam : residues_) {
      FieldElem v = F.add(F.sub(F.mul(lam, lam), F.mul(t, lam)), nm);
      if (!F.ideal_contains(P.ideal, v)) continue;
      QuatElem cand = B.sub(x, B.from_field(lam));
      if (right_ideal(cand).size() == half) {
        z = cand;
        break;
      }
    }
    if (!z) continue;
    auto J0 = right_ideal(*z);
    QuatElem y = random_elem();
    QuatElem yz = B.mul(y, *z);
    auto Jinf = right_ideal(yz);
    if (Jinf.size() != half || Jinf == J0) continue;
    std::vector<std::vector<modp::Row>> pts;
    std::map<std::vector<modp::Row>, std::size_t> idx;
    auto add = [&](std::vector<modp::Row> J) {
      if (idx.count(J)) return;
      idx.emplace(J, pts.size());
      pts.push_back(std::move(J));
    };
    for (const auto& lam : residues_) add(right_ideal(B.add(*z, B.scale(yz, lam))));
    add(Jinf);
    if (pts.size() != residues_.size() + 1) continue;
    points_ = std::move(pts);
    index_ = std::move(idx);
    return;
  }
  throw ArithmeticError("residue algebra: no splitting found at " + P.label);
}

std::vector<modp::Row> ResidueAlgebra::span_key(const std::vector<modp::Row>& rows) const {
  return modp::row_basis(rows, p_);
}

std::vector<modp::Row> ResidueAlgebra::left_matrix(const QuatElem& x0) const {
  const std::size_t m = B_->dim();
  QuatElem x = x0;
  for (unsigned k = 0;; ++k) {
    auto c = O_.coordinates(x);
    if (!c) throw ArithmeticError("residue algebra: element outside the algebra span");
    bool ok = true;
    for (const auto& v : *c)
      if (mpz_divisible_ui_p(v.get_den_mpz_t(), p_)) ok = false;
    if (ok) break;
    if (k == 64 || clear_ == B_->field().one())
      throw ArithmeticError("residue algebra: element not integral at " + P_.label);
    x = B_->scale(x, clear_);
  }
  const auto& comp = q_.complement();
  std::vector<modp::Row> M;
  M.reserve(comp.size());
  for (auto j : comp) {
    auto c = O_.coordinates(B_->mul(x, obasis_[j]));
    modp::Row row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = modp::reduce((*c)[i], p_);
    M.push_back(q_.project(row));
  }
  return M;
}

std::vector<modp::Row> ResidueAlgebra::right_ideal(const QuatElem& z) const { return span_key(left_matrix(z)); }

std::size_t ResidueAlgebra::act(const std::vector<modp::Row>& M, std::size_t i) const {
  const std::size_t d = dim();
  std::vector<modp::Row> img;
  for (const auto& v : points_[i]) {
    modp::Row w(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      if (v[j] == 0) continue;
      for (std::size_t k = 0; k < d; ++k) w[k] = (w[k] + v[j] * M[j][k]) % p_;
    }
    img.push_back(std::move(w));
  }
  auto it = index_.find(span_key(img));
  if (it == index_.end()) throw ArithmeticError("residue algebra: image is not a point (element not a unit at P)");
  return it->second;
}

Lattice ResidueAlgebra::lift(std::size_t i) const {
  const auto& comp = q_.complement();
  std::vector<RatRow> gens = B_->scale(O_, P_.ideal).rows();
  for (const auto& v : points_[i]) {
    QuatElem x = B_->zero();
    for (std::size_t t = 0; t < comp.size(); ++t)
      if (v[t] != 0) x = B_->add(x, B_->scale(obasis_[comp[t]], BigRat(static_cast<unsigned long>(v[t]))));
    gens.push_back(std::move(x));
  }
  return B_->lattice(gens);
}

bool ResidueAlgebra::is_unit_mod(const QuatElem& x) const { return modp::rank(left_matrix(x), p_) == dim(); }

}  // namespace hmf
