#include "hmf/eigen.hpp"

#include <algorithm>

namespace hmf {

QMatrix restrict_operator(const QMatrix& T, const QMatrix& W) { return solve_left_exact(W, T * W); }

namespace {

// Splits W along the primary decomposition of T|W; returns {W} if T|W is primary.
std::vector<QMatrix> split(const QMatrix& T, const QMatrix& W) {
  QMatrix A = restrict_operator(T, W);
  auto f = poly_factor_q(poly_charpoly(A));
  if (f.factors.size() <= 1) return {W};
  std::vector<QMatrix> out;
  for (const auto& fe : f.factors) {
    QPoly g = QPoly::constant(1);
    for (unsigned i = 0; i < fe.multiplicity; ++i) g *= fe.factor;
    QMatrix K = kernel_basis(poly_eval_matrix(g, A));
    out.push_back(W * K);
  }
  return out;
}

}  // namespace

Decomposition decompose(const std::vector<HeckeBlock>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("decompose: no Hecke operators");
  const std::size_t n = blocks.front().matrix.rows();
  std::vector<QMatrix> work{QMatrix::identity(n)};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& hb : blocks) {
      std::vector<QMatrix> next;
      for (const auto& W : work) {
        auto parts = split(hb.matrix, W);
        if (parts.size() > 1) changed = true;
        next.insert(next.end(), parts.begin(), parts.end());
      }
      work = std::move(next);
    }
  }
  Decomposition dec;
  dec.complete = true;
  for (auto& W : work) {
    Constituent c;
    c.basis = std::move(W);
    for (const auto& hb : blocks) {
      auto f = poly_factor_q(poly_charpoly(restrict_operator(hb.matrix, c.basis)));
      c.factor.push_back(f.factors.front().factor);
      c.multiplicity.push_back(f.factors.front().multiplicity);
    }
    present_eigenvalues(c, blocks);
    dec.complete = dec.complete && c.irreducible();
    dec.parts.push_back(std::move(c));
  }
  return dec;
}

void present_eigenvalues(Constituent& c, const std::vector<HeckeBlock>& blocks, std::optional<std::size_t> preferred) {
  const std::size_t d = c.dim();
  auto qualifies = [&](std::size_t k) { return c.multiplicity[k] == 1 && c.factor[k].degree() == static_cast<long>(d); };
  c.generator.reset();
  c.presentation.clear();
  if (preferred && *preferred < blocks.size() && qualifies(*preferred)) {
    c.generator = preferred;
  } else {
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (qualifies(k)) {
        c.generator = k;
        break;
      }
  }
  if (!c.generator) return;
  c.generator_minpoly = c.factor[*c.generator];
  QMatrix G = restrict_operator(blocks[*c.generator].matrix, c.basis);
  // columns: vec(G^i)
  QMatrix P(d * d, d);
  QMatrix pw = QMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s) P(r * d + s, i) = pw(r, s);
    pw = pw * G;
  }
  for (const auto& hb : blocks) {
    QMatrix A = restrict_operator(hb.matrix, c.basis);
    QMatrix v(d * d, 1);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s) v(r * d + s, 0) = A(r, s);
    QMatrix x = solve_left_exact(P, v);
    std::vector<BigRat> coeffs(d);
    for (std::size_t i = 0; i < d; ++i) coeffs[i] = x(i, 0);
    c.presentation.push_back(std::move(coeffs));
  }
}

QPoly presentation_poly(const Constituent& c, std::size_t block) {
  if (block >= c.presentation.size()) throw std::out_of_range("presentation_poly: no presentation for block");
  return QPoly(c.presentation[block]);
}

bool flag_eisenstein(Constituent& c, const FieldCtx& F, const FieldIdeal& level, const std::vector<HeckeBlock>& blocks) {
  c.eisenstein = false;
  c.character.reset();
  if (c.dim() != 1) return false;
  const auto chars = F.quadratic_narrow_characters();
  for (std::size_t x = 0; x < chars.size(); ++x) {
    bool ok = true;
    for (std::size_t k = 0; k < blocks.size() && ok; ++k) {
      const auto& P = blocks[k].prime;
      if (F.ideal_divides(P.ideal, level)) continue;
      BigRat a = -c.factor[k].coeff(0);
      BigRat expect = BigRat(P.norm + 1) * chars[x][F.narrow_class_index(P.ideal)];
      ok = a == expect;
    }
    if (ok) {
      c.eisenstein = true;
      c.character = x;
      return true;
    }
  }
  return false;
}

EigenReport eigen_report(const FieldCtx& F, const FieldIdeal& level, const std::vector<HeckeBlock>& blocks,
                         std::optional<std::size_t> preferred_generator) {
  EigenReport rep;
  rep.field = F.name();
  rep.level = level;
  for (const auto& hb : blocks) rep.primes.push_back(hb.prime);
  auto dec = decompose(blocks);
  rep.complete = dec.complete;
  for (auto& c : dec.parts) {
    if (preferred_generator) present_eigenvalues(c, blocks, preferred_generator);
    if (flag_eisenstein(c, F, level, blocks)) ++rep.eisenstein_count;
  }
  auto key = [](const Constituent& c) {
    std::vector<std::vector<BigRat>> fs;
    for (const auto& f : c.factor) fs.push_back(f.coeffs());
    return std::make_tuple(!c.eisenstein, c.character.value_or(0), c.dim(), fs);
  };
  std::sort(dec.parts.begin(), dec.parts.end(), [&](const Constituent& a, const Constituent& b) { return key(a) < key(b); });
  rep.constituents = std::move(dec.parts);
  return rep;
}

}  // namespace hmf
