#include "hmf/exact.hpp"

#include <algorithm>
#include <limits>

namespace hmf {
namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // coefficients mod p, low degree first

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) {
  if (a % p == 0) throw ArithmeticError("inverse of zero mod p");
  return powmod(a, p - 2, p);
}

void mp_trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  mp_trim(r);
  return r;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  mp_trim(r);
  return r;
}

// Division by a nonzero polynomial.
std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& d, u64 p) {
  if (d.empty()) throw ArithmeticError("mod-p division by zero");
  ModPoly r = a;
  mp_trim(r);
  if (r.size() < d.size()) return {{}, r};
  ModPoly q(r.size() - d.size() + 1, 0);
  u64 inv = invmod(d.back(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    u64 t = mulmod(r[k + d.size() - 1], inv, p);
    q[k] = t;
    if (!t) continue;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] = (r[k + j] + p - mulmod(t, d[j], p)) % p;
  }
  r.resize(d.size() - 1);
  mp_trim(r);
  mp_trim(q);
  return {q, r};
}

ModPoly mp_monic(ModPoly f, u64 p) {
  mp_trim(f);
  if (f.empty()) return f;
  u64 inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
  return f;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, u64 p) {
  mp_trim(a);
  mp_trim(b);
  while (!b.empty()) {
    ModPoly r = mp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a, p);
}

ModPoly mp_derivative(const ModPoly& f, u64 p) {
  if (f.size() <= 1) return {};
  ModPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod(f[i], i % p, p);
  mp_trim(r);
  return r;
}

ModPoly mp_powmod(ModPoly base, u64 e, const ModPoly& m, u64 p) {
  ModPoly r{1};
  base = mp_divmod(base, m, p).second;
  while (e) {
    if (e & 1) r = mp_divmod(mp_mul(r, base, p), m, p).second;
    base = mp_divmod(mp_mul(base, base, p), m, p).second;
    e >>= 1;
  }
  return r;
}

// Left null space basis of (Q - I) for the Berlekamp matrix of monic squarefree f.
std::vector<ModPoly> berlekamp_basis(const ModPoly& f, u64 p) {
  const std::size_t n = f.size() - 1;
  std::vector<std::vector<u64>> q(n, std::vector<u64>(n, 0));
  ModPoly xp = mp_powmod(ModPoly{0, 1}, p, f, p);
  ModPoly cur{1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) q[i][j] = cur[j];
    cur = mp_divmod(mp_mul(cur, xp, p), f, p).second;
  }
  // Solve v (Q - I) = 0, i.e. (Q - I)^T v^T = 0.
  std::vector<std::vector<u64>> a(n, std::vector<u64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[j][i] = (q[i][j] + (i == j ? p - 1 : 0)) % p;
  std::vector<long> pivot_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    u64 inv = invmod(a[row][col], p);
    for (auto& x : a[row]) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      u64 t = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] = (a[r][c] + p - mulmod(t, a[row][c], p)) % p;
    }
    pivot_of_col[col] = static_cast<long>(row);
    ++row;
  }
  std::vector<ModPoly> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    ModPoly v(n, 0);
    v[free] = 1;
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_of_col[c] >= 0) v[c] = (p - a[pivot_of_col[c]][free]) % p;
    mp_trim(v);
    basis.push_back(v);
  }
  return basis;
}

bool squarefree_mod_p(const ModPoly& f, u64 p) {
  ModPoly g = mp_gcd(f, mp_derivative(f, p), p);
  return g.size() == 1;
}

ModPoly reduce_mod(const std::vector<BigInt>& f, u64 p) {
  ModPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    BigInt t = f[i] % BigInt(static_cast<unsigned long>(p));
    if (t < 0) t += static_cast<unsigned long>(p);
    r[i] = t.get_ui();
  }
  mp_trim(r);
  return r;
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo a prime power.
using ZPoly = std::vector<BigInt>;

void zp_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zp_mod(ZPoly f, const BigInt& m) {
  for (auto& c : f) {
    c %= m;
    if (c < 0) c += m;
  }
  zp_trim(f);
  return f;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return zp_mod(r, m);
}

ZPoly from_mod(const ModPoly& f) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = static_cast<unsigned long>(f[i]);
  return r;
}

// Lift monic g, h with F = g h mod p to monic factors mod p^k.
std::pair<ZPoly, ZPoly> hensel_two(const ZPoly& F, const ModPoly& g0, const ModPoly& h0, u64 p,
                                   unsigned k) {
  // Bezout s g + t h = 1 mod p.
  ModPoly r0 = g0, r1 = h0, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = mp_divmod(r0, r1, p);
    ModPoly s2 = mp_sub(s0, mp_mul(q, s1, p), p);
    ModPoly t2 = mp_sub(t0, mp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw ArithmeticError("Hensel: factors not coprime mod p");
  u64 inv = invmod(r0[0], p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);

  ZPoly g = from_mod(g0), h = from_mod(h0);
  BigInt pj = static_cast<unsigned long>(p);
  const BigInt bp = pj;
  for (unsigned j = 1; j < k; ++j) {
    BigInt pj1 = pj * bp;
    ZPoly gh = zp_mul(g, h, pj1);
    ZPoly e = zp_mod(F, pj1);
    e.resize(std::max(e.size(), gh.size()), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    ModPoly em(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      BigInt q = e[i] / pj;  // exact
      q %= bp;
      if (q < 0) q += bp;
      em[i] = q.get_ui();
    }
    mp_trim(em);
    // g, h agree with g0, h0 modulo p.
    ModPoly dg = mp_divmod(mp_mul(t0, em, p), g0, p).second;
    ModPoly dh = mp_divmod(mp_sub(em, mp_mul(dg, h0, p), p), g0, p).first;
    for (std::size_t i = 0; i < dg.size(); ++i) g[i] += pj * BigInt(static_cast<unsigned long>(dg[i]));
    for (std::size_t i = 0; i < dh.size(); ++i) h[i] += pj * BigInt(static_cast<unsigned long>(dh[i]));
    pj = pj1;
  }
  return {g, h};
}

// Lift all monic modular factors of F (monic mod p^k) to p^k.
std::vector<ZPoly> hensel_multi(const ZPoly& F, const std::vector<ModPoly>& facs, u64 p, unsigned k,
                                const BigInt& mod) {
  std::vector<ZPoly> out;
  ZPoly cur = F;
  for (std::size_t i = 0; i + 1 < facs.size(); ++i) {
    ModPoly rest{1};
    for (std::size_t j = i + 1; j < facs.size(); ++j) rest = mp_mul(rest, facs[j], p);
    auto [g, h] = hensel_two(cur, facs[i], rest, p, k);
    out.push_back(zp_mod(g, mod));
    cur = zp_mod(h, mod);
  }
  out.push_back(cur);
  return out;
}

bool is_prime_small(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Symmetric residue in (-m/2, m/2].
BigInt symmetric(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

QPoly to_qpoly(const ZPoly& f) {
  std::vector<BigRat> v(f.begin(), f.end());
  return QPoly(std::move(v));
}

ZPoly primitive(ZPoly f) {
  zp_trim(f);
  BigInt g = 0;
  for (auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return f;
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

// Exact division test in Z[x]; on success returns the quotient.
bool z_divides(const ZPoly& d, const ZPoly& f, ZPoly& quotient) {
  ZPoly r = f;
  if (r.size() < d.size()) return false;
  ZPoly q(r.size() - d.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& top = r[k + d.size() - 1];
    if (top % d.back() != 0) return false;
    BigInt t = top / d.back();
    q[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= t * d[j];
  }
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (r[i] != 0) return false;
  quotient = q;
  return true;
}

// Factor a squarefree primitive integer polynomial of positive degree.
std::vector<ZPoly> factor_squarefree_z(ZPoly f) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return {f};
  const BigInt lc = f.back();

  // Pick the admissible prime with the fewest modular factors among a few tries.
  u64 best_p = 0;
  std::size_t best_r = std::numeric_limits<std::size_t>::max();
  int tried = 0;
  for (u64 p = 3; tried < 12 && p < 50000; p += 2) {
    if (!is_prime_small(p)) continue;
    if (lc % BigInt(static_cast<unsigned long>(p)) == 0) continue;
    ModPoly fm = reduce_mod(f, p);
    if (fm.size() != f.size()) continue;
    fm = mp_monic(fm, p);
    if (!squarefree_mod_p(fm, p)) continue;
    ++tried;
    std::size_t r = berlekamp_basis(fm, p).size();
    if (r < best_r) {
      best_r = r;
      best_p = p;
    }
    if (r == 1) return {f};
  }
  if (best_p == 0) throw ArithmeticError("no admissible prime for factorization");
  const u64 p = best_p;
  std::vector<ModPoly> modfac = detail::factor_mod_p(mp_monic(reduce_mod(f, p), p), p);

  // Landau-Mignotte style bound on coefficients of lc * (monic factor).
  BigInt norm2sq = 0;
  for (auto& c : f) norm2sq += c * c;
  BigInt norm2;
  mpz_sqrt(norm2.get_mpz_t(), norm2sq.get_mpz_t());
  norm2 += 1;
  BigInt bound = abs(lc) * norm2;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n + 1));
  BigInt mod = 1;
  unsigned k = 0;
  while (mod <= bound) {
    mod *= static_cast<unsigned long>(p);
    ++k;
  }

  ZPoly F(f.size());
  BigInt lcinv;
  {
    BigInt l = lc % mod;
    if (l < 0) l += mod;
    if (mpz_invert(lcinv.get_mpz_t(), l.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw ArithmeticError("leading coefficient not invertible");
  }
  for (std::size_t i = 0; i < f.size(); ++i) F[i] = f[i] * lcinv;
  F = zp_mod(F, mod);
  std::vector<ZPoly> lifted = hensel_multi(F, modfac, p, k, mod);

  // Exhaustive subset recombination.
  std::vector<ZPoly> result;
  std::vector<ZPoly> pool = lifted;
  ZPoly cur = f;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      BigInt l = cur.back();
      ZPoly cand{symmetric(l, mod)};
      for (std::size_t i : idx) cand = zp_mul(cand, pool[i], mod);
      for (auto& c : cand) c = symmetric(c, mod);
      cand = primitive(cand);
      ZPoly quo;
      if (cand.size() > 1 && z_divides(cand, cur, quo)) {
        result.push_back(cand);
        cur = primitive(quo);
        std::vector<ZPoly> rest;
        for (std::size_t i = 0, t = 0; i < pool.size(); ++i) {
          if (t < s && idx[t] == i) {
            ++t;
            continue;
          }
          rest.push_back(pool[i]);
        }
        pool = std::move(rest);
        found = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (cur.size() > 1) result.push_back(cur);
  return result;
}

}  // namespace

namespace detail {

std::vector<std::vector<u64>> factor_mod_p(const std::vector<u64>& monic_f, u64 p) {
  ModPoly f = monic_f;
  mp_trim(f);
  if (f.size() <= 2) return {f};
  std::vector<ModPoly> basis = berlekamp_basis(f, p);
  const std::size_t r = basis.size();
  std::vector<ModPoly> facs{f};
  for (const auto& v : basis) {
    if (facs.size() == r) break;
    if (v.size() <= 1) continue;
    std::vector<ModPoly> next;
    for (const auto& g : facs) {
      if (g.size() <= 2) {
        next.push_back(g);
        continue;
      }
      ModPoly rem = g;
      for (u64 s = 0; s < p && rem.size() > 1; ++s) {
        ModPoly vs = v;
        vs[0] = (vs[0] + p - s) % p;
        mp_trim(vs);
        ModPoly h = mp_gcd(rem, vs, p);
        if (h.size() > 1 && h.size() < rem.size()) {
          next.push_back(h);
          rem = mp_divmod(rem, h, p).first;
        } else if (h.size() == rem.size()) {
          break;
        }
      }
      if (rem.size() > 1) next.push_back(mp_monic(rem, p));
    }
    facs = std::move(next);
  }
  std::sort(facs.begin(), facs.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return facs;
}

bool is_irreducible_mod_p(const std::vector<u64>& monic_f, u64 p) {
  ModPoly f = monic_f;
  mp_trim(f);
  if (!squarefree_mod_p(f, p)) return false;
  return berlekamp_basis(f, p).size() == 1;
}

}  // namespace detail

Factorization poly_factor_q(const QPoly& p) {
  if (p.is_zero()) throw ArithmeticError("factorization of the zero polynomial");
  Factorization out;
  out.unit = p.leading();
  for (const auto& [g, mult] : squarefree_decomposition(p)) {
    for (const ZPoly& h : factor_squarefree_z(g.primitive_part()))
      out.factors.push_back({to_qpoly(h).monic(), mult});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return a.factor.canonical_less(b.factor); });
  return out;
}

}  // namespace hmf
