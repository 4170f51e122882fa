#include "hmf/latenum.hpp"

#include <algorithm>
#include <cmath>

namespace hmf {

TraceFormLattice TraceFormLattice::from_lattice(const QuatAlgebra& B, const Lattice& L) {
  TraceFormLattice T;
  T.algebra = &B;
  T.basis = L.rows();
  T.gram = B.trace_gram(L);
  return T;
}

QuatElem TraceFormLattice::combine(const IntRow& coords) const {
  QuatElem x = algebra->zero();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += basis[i][k] * coords[i];
  }
  return x;
}

TraceFormLattice lll_reduce(const TraceFormLattice& L) {
  auto r = lll_gram(L.gram);
  TraceFormLattice out;
  out.algebra = L.algebra;
  out.gram = r.gram;
  for (const auto& row : r.transform) out.basis.push_back(L.combine(row));
  return out;
}

std::vector<QuatElem> enumerate_norm(const TraceFormLattice& L, const BigRat& t) {
  std::vector<QuatElem> out;
  for (const auto& x : vectors_of_value(L.gram, 2 * t)) out.push_back(L.combine(x));
  return out;
}

namespace {

// floor(x^{1/n} * 2^bits) for rational x >= 0
BigInt root_scaled(const BigRat& x, unsigned n, unsigned bits) {
  BigInt num = x.get_num() << (bits * n);
  BigInt q = num / x.get_den();
  BigInt r;
  mpz_root(r.get_mpz_t(), q.get_mpz_t(), n);
  return r;
}

}  // namespace

Interval balance_ratio(const FieldCtx& F, const FieldElem& beta) {
  const unsigned n = F.degree();
  const unsigned bits = 64;
  BigRat T = F.trace(beta), N = F.norm(beta);
  BigInt r = root_scaled(N, n, bits);
  BigRat scale(BigInt(1) << bits);
  BigRat lo_root = BigRat(r) / scale, hi_root = BigRat(r + 1) / scale;
  Interval out;
  out.lo = T / hi_root;
  out.hi = lo_root > 0 ? BigRat(T / lo_root) : BigRat(T * scale);
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

RescaleResult rescale_multiplier(const FieldCtx& F, const FieldElem& alpha, const BigRat& C0, const BigRat& eps,
                                 unsigned budget) {
  if (!F.is_totally_positive(alpha)) throw ArithmeticError("rescale: alpha is not totally positive");
  const unsigned n = F.degree();
  std::vector<double> sig(n);
  double smax = 0;
  for (unsigned i = 0; i < n; ++i) {
    sig[i] = F.embed_approx(alpha, i);
    smax = std::max(smax, sig[i]);
  }
  // embeddings of the integral basis, for solving sigma_i(c) = r_i
  std::vector<std::vector<double>> Ed(n, std::vector<double>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) Ed[i][k] = F.embed_approx(F.basis(k), i);
  BigRat C = C0;
  if (C == 0) C = BigRat(65536.0 * std::sqrt(smax));
  const BigRat target = BigRat(n) + eps;
  // exact test: Tr^n < target^n * N
  auto good = [&](const FieldElem& beta) {
    BigRat T = F.trace(beta), N = F.norm(beta);
    BigRat lhs = 1, rhs = N;
    for (unsigned k = 0; k < n; ++k) {
      lhs *= T;
      rhs *= target;
    }
    return lhs < rhs;
  };
  std::optional<RescaleResult> best;
  BigRat best_ratio;
  for (unsigned attempt = 1; attempt <= budget; ++attempt, C *= 2) {
    const double Cd = C.get_d();
    std::vector<double> r(n);
    for (unsigned i = 0; i < n; ++i) r[i] = Cd / std::sqrt(sig[i]);
    // Gaussian elimination on Ed c = r in long double
    std::vector<std::vector<long double>> A(n, std::vector<long double>(n + 1));
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned k = 0; k < n; ++k) A[i][k] = Ed[i][k];
      A[i][n] = r[i];
    }
    for (unsigned col = 0; col < n; ++col) {
      unsigned piv = col;
      for (unsigned i = col + 1; i < n; ++i)
        if (std::fabs(A[i][col]) > std::fabs(A[piv][col])) piv = i;
      std::swap(A[col], A[piv]);
      for (unsigned i = 0; i < n; ++i) {
        if (i == col) continue;
        long double f = A[i][col] / A[col][col];
        for (unsigned k = col; k <= n; ++k) A[i][k] -= f * A[col][k];
      }
    }
    FieldElem c = F.zero();
    for (unsigned k = 0; k < n; ++k) {
      BigInt v;
      mpz_set_d(v.get_mpz_t(), std::floor(static_cast<double>(A[k][n] / A[k][k]) + 0.5));
      c.c[k] = BigRat(v);
    }
    if (F.is_zero(c)) continue;
    FieldElem beta = F.mul(F.mul(c, c), alpha);
    Interval ratio = balance_ratio(F, beta);
    if (!best || ratio.lo < best_ratio) {
      best = RescaleResult{c, ratio, C, attempt};
      best_ratio = ratio.lo;
    }
    if (good(beta)) return *best;
  }
  if (!best) throw ArithmeticError("rescale: no nonzero multiplier found");
  return *best;
}

namespace {

std::vector<QuatElem> filter_sorted(const QuatAlgebra& B, std::vector<QuatElem> cands, const FieldElem& alpha) {
  std::vector<QuatElem> out;
  for (auto& x : cands) {
    if (B.nr(x) != alpha) continue;
    // canonical sign: first nonzero coordinate positive
    for (const auto& v : x)
      if (v != 0) {
        if (v < 0) x = B.neg(x);
        break;
      }
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<QuatElem> solve_norm_equation(const QuatAlgebra& B, const Lattice& L, const FieldElem& alpha) {
  const FieldCtx& F = B.field();
  RescaleResult rr = rescale_multiplier(F, alpha);
  TraceFormLattice T;
  T.algebra = &B;
  T.basis = L.rows();
  T.gram = B.trace_gram(L, rr.c);
  T = lll_reduce(T);
  BigRat target = 2 * F.trace(F.mul(F.mul(rr.c, rr.c), alpha));
  std::vector<QuatElem> cands;
  for (const auto& x : vectors_of_value(T.gram, target)) cands.push_back(T.combine(x));
  return filter_sorted(B, std::move(cands), alpha);
}

std::vector<QuatElem> solve_norm_equation_plain(const QuatAlgebra& B, const Lattice& L, const FieldElem& alpha) {
  TraceFormLattice T = lll_reduce(TraceFormLattice::from_lattice(B, L));
  return filter_sorted(B, enumerate_norm(T, B.field().trace(alpha)), alpha);
}

}  // namespace hmf
