// End-to-end checks against published tables and independent oracles. Each
// named check prints one PASS/FAIL line; run with no argument for all of them.

#include "hmf/store.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace hmf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << s << " s";
  return os.str();
}

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

QPoly product(const std::vector<std::vector<long>>& factors) {
  QPoly p = QPoly::constant(1);
  for (const auto& f : factors) p *= QPoly::from_ints(f);
  return p;
}

// Level-1 data over one field: precomputation, space and Hecke operators.
struct Level1 {
  FieldPtr F;
  Precomputation pc;
  std::optional<LevelStructure> lv;
  CoinvariantSpace sp;
  std::vector<HeckeBlock> blocks;
  double seconds = 0;

  std::optional<std::size_t> block(const std::string& label) const {
    FieldIdeal P = F->parse_ideal(label);
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (blocks[k].prime.ideal == P) return k;
    return std::nullopt;
  }
};

Level1 make_level1(long d, unsigned long bound) {
  auto t0 = Clock::now();
  Level1 L;
  L.F = FieldCtx::quadratic(d);
  L.pc = load_or_compute(L.F, choose_S(*L.F, L.F->unit_ideal()), bound, "", threads());
  L.lv.emplace(L.pc.classes, L.F->unit_ideal());
  L.sp = build_space(L.pc.classes, *L.lv, WeightSpec::parallel(2, 2));
  for (const auto& P : L.F->primes_up_to(bound))
    L.blocks.push_back(hecke_operator(L.pc.classes, L.pc.theta, *L.lv, L.sp, P));
  L.seconds = seconds_since(t0);
  return L;
}

Level1& q85() {
  static Level1 L = make_level1(85, 19);
  return L;
}

Level1& q10() {
  static Level1 L = make_level1(10, 37);
  return L;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

// Published level-1 row: prime, the two Eisenstein eigenvalues and the
// cuspidal eigenvalues as polynomials in the generator's eigenvalue.
struct Row {
  std::string prime;
  long e1, e2;
  std::vector<std::vector<long>> cusp;
};

const Constituent* find_eisenstein(const EigenReport& rep, const Level1& L, const std::vector<Row>& rows, bool first,
                                   Outcome& out) {
  for (const auto& c : rep.constituents) {
    if (c.dim() != 1) continue;
    bool ok = true;
    for (const auto& r : rows) {
      auto k = L.block(r.prime);
      ok = ok && k && presentation_poly(c, *k) == QPoly::constant(first ? r.e1 : r.e2);
    }
    if (ok) return &c;
  }
  out.fail(std::string("no one-dimensional constituent matches the ") + (first ? "first" : "second") +
           " Eisenstein column");
  return nullptr;
}

// Compares cuspidal constituents with published presentations in the
// eigenvalue at `gen`; `minpolys[i]` is the generator's minimal polynomial.
void compare_cusp(const EigenReport& rep, const Level1& L, const std::vector<Row>& rows,
                  const std::vector<std::vector<long>>& minpolys, Outcome& out) {
  for (std::size_t i = 0; i < minpolys.size(); ++i) {
    QPoly m = QPoly::from_ints(minpolys[i]);
    const Constituent* hit = nullptr;
    for (const auto& c : rep.constituents)
      if (!c.eisenstein && c.generator && c.generator_minpoly == m) hit = &c;
    if (!hit) {
      out.fail("no cuspidal constituent with generator minimal polynomial " + m.to_string("x"));
      continue;
    }
    for (const auto& r : rows) {
      auto k = L.block(r.prime);
      if (!k) {
        out.fail("prime " + r.prime + " not computed");
        continue;
      }
      QPoly expect = QPoly::from_ints(r.cusp[i]);
      QPoly got = presentation_poly(*hit, *k);
      if (got != expect)
        out.fail("form with minpoly " + m.to_string("x") + " at " + r.prime + ": published " + expect.to_string("b") +
                 ", computed " + got.to_string("b"));
    }
  }
}

// ---------------------------------------------------------------------------

Outcome check_classset_q85() {
  Outcome out;
  auto t0 = Clock::now();
  std::string cmd = std::string(HMF_CLI_PATH) + " classset --field quad:85";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    out.fail("cannot run " + cmd);
    return out;
  }
  std::string text;
  char buf[512];
  while (fgets(buf, sizeof buf, pipe)) text += buf;
  int rc = pclose(pipe);
  double s = seconds_since(t0);
  out.expect(rc == 0, "command exited with status " + std::to_string(rc));
  out.expect(text.find("class number: 8\n") != std::string::npos, "class number line missing or not 8");
  out.expect(text.find("mass: 3\n") != std::string::npos, "mass line missing or not 3");
  out.expect(s < 600, "took " + fmt_seconds(s));
  out.notes.push_back("8 classes, mass 3, " + fmt_seconds(s));
  return out;
}

Outcome check_level1_q85() {
  Outcome out;
  Level1& L = q85();
  auto gen = L.block("(3, w)");
  if (!gen) {
    out.fail("prime (3, w) not computed");
    return out;
  }
  out.expect(poly_charpoly(L.blocks[*gen].matrix) == product({{-4, 1}, {4, 1}, {4, 0, 1}, {2, 0, -6, 0, 1}}),
             "characteristic polynomial of T(3, w) differs");
  auto rep = eigen_report(*L.F, L.F->unit_ideal(), L.blocks, gen);
  std::multiset<std::size_t> dims;
  for (const auto& c : rep.constituents) dims.insert(c.dim());
  out.expect(dims == std::multiset<std::size_t>{1, 1, 2, 4}, "constituent dimensions differ from {1, 1, 2, 4}");
  // cuspidal columns: a = 2 sqrt(-1) = b (b^2 + 4 = 0), and beta (beta^4 - 6 beta^2 + 2 = 0)
  const std::vector<Row> rows{
      {"(3, w)", 4, -4, {{0, 1}, {0, 1}}},
      {"(3, 2+w)", 4, -4, {{0, -1}, {0, 1}}},
      {"(2)", 5, 5, {{1}, {3, 0, 0, -1}}},
      {"(5, 2+w)", 6, -6, {{0}, {0, 4, 0, -1}}},
      {"(7, w)", 8, -8, {{0, -1}, {0, -5, 0, 1}}},
      {"(7, 6+w)", 8, -8, {{0, 1}, {0, -5, 0, 1}}},
      {"(17, 8+w)", 18, -18, {{0}, {0, -14, 0, 2}}},
      {"(19, 1+w)", 20, 20, {{-4}, {2}}},
      {"(19, 17+w)", 20, 20, {{-4}, {2}}},
  };
  find_eisenstein(rep, L, rows, true, out);
  find_eisenstein(rep, L, rows, false, out);
  compare_cusp(rep, L, rows, {{4, 0, 1}, {2, 0, -6, 0, 1}}, out);

  // Independent evidence for any presentation mismatch: the published value
  // must be an eigenvalue of T(p) on the constituent, so its minimal
  // polynomial must divide the restricted characteristic polynomial.
  for (const auto& c : rep.constituents) {
    if (c.eisenstein || !c.generator || c.dim() != 4) continue;
    QMatrix G = restrict_operator(L.blocks[*gen].matrix, c.basis);
    for (const auto& r : rows) {
      auto k = L.block(r.prime);
      QPoly pub = QPoly::from_ints(r.cusp[1]);
      if (!k || presentation_poly(c, *k) == pub) continue;
      QPoly pub_char = poly_charpoly(poly_eval_matrix(pub, G));
      QPoly actual = poly_charpoly(restrict_operator(L.blocks[*k].matrix, c.basis));
      out.notes.push_back("at " + r.prime + " the published value has characteristic polynomial " +
                          poly_factor_q(pub_char).to_string("x") + ", but T" + r.prime +
                          " on this constituent has " + poly_factor_q(actual).to_string("x"));
    }
  }
  out.notes.push_back("precomputation and operators " + fmt_seconds(L.seconds));
  return out;
}

Outcome check_level1_q10() {
  Outcome out;
  Level1& L = q10();
  auto gen = L.block("(2, w)");
  if (!gen) {
    out.fail("prime (2, w) not computed");
    return out;
  }
  out.expect(poly_charpoly(L.blocks[*gen].matrix) == product({{3, 1}, {-3, 1}, {-2, 0, 1}}),
             "characteristic polynomial of T(2, w) differs");
  auto rep = eigen_report(*L.F, L.F->unit_ideal(), L.blocks, gen);
  // cuspidal column in b = -sqrt 2 (the eigenvalue at (2, w))
  const std::vector<Row> rows{
      {"(2, w)", -3, 3, {{0, 1}}},         {"(3, 1+w)", -4, 4, {{0, -1}}},   {"(3, 2+w)", -4, 4, {{0, -1}}},
      {"(5, w)", -6, 6, {{0, 2}}},         {"(13, 6+w)", -14, 14, {{0}}},    {"(13, 7+w)", -14, 14, {{0}}},
      {"(31, 14+w)", 32, 32, {{4}}},       {"(31, 17+w)", 32, 32, {{4}}},    {"(37, 11+w)", -38, 38, {{0, -6}}},
      {"(37, 26+w)", -38, 38, {{0, -6}}},
  };
  out.expect(rep.constituents.size() == 3, "expected 3 constituents, got " + std::to_string(rep.constituents.size()));
  find_eisenstein(rep, L, rows, true, out);
  find_eisenstein(rep, L, rows, false, out);
  compare_cusp(rep, L, rows, {{-2, 0, 1}}, out);
  out.notes.push_back(std::to_string(L.pc.classes.size()) + " classes; precomputation and operators " +
                      fmt_seconds(L.seconds));
  return out;
}

Outcome check_level_5_q85() {
  Outcome out;
  Level1& L = q85();
  const FieldCtx& F = *L.F;
  FieldIdeal N = F.parse_ideal("(5, 2+w)");
  auto S = choose_S(F, N);
  out.expect(S.size() == 1 && S[0].label == L.pc.classes.S[0].label, "unexpected S for level (5, 2+w)");
  LevelStructure lv(L.pc.classes, N);
  auto sp = build_space(L.pc.classes, lv, WeightSpec::parallel(2, 2));
  out.expect(sp.dim == 20, "dim M = " + std::to_string(sp.dim));
  auto q = *L.block("(7, w)");
  auto hb = hecke_operator(L.pc.classes, L.pc.theta, lv, sp, L.blocks[q].prime);
  QPoly level_n = poly_charpoly(hb.matrix);
  QPoly expect = product({{-8, 1}, {8, 1}, {4, 0, 1}, {4, 0, 1}, {18, 0, -10, 0, 1}, {18, 0, -10, 0, 1},
                          {100, 0, 104, 0, 28, 0, 1}});
  out.expect(level_n == expect, "T(7, w) at level (5, 2+w): " + poly_factor_q(level_n).to_string("x"));
  QPoly level_1 = poly_charpoly(L.blocks[q].matrix);
  out.expect(level_1 == product({{-8, 1}, {8, 1}, {4, 0, 1}, {18, 0, -10, 0, 1}}),
             "T(7, w) at level 1: " + poly_factor_q(level_1).to_string("x"));
  auto fn = poly_factor_q(level_n);
  for (const auto& fe : poly_factor_q(level_1).factors) {
    if (fe.factor.degree() == 1) continue;  // the two Eisenstein eigenvalues +-8
    unsigned mult = 0;
    for (const auto& g : fn.factors)
      if (g.factor == fe.factor) mult = g.multiplicity;
    out.expect(mult == 2, "old factor " + fe.factor.to_string("x") + " has multiplicity " + std::to_string(mult));
  }
  return out;
}

Outcome check_dimensions_q85() {
  Outcome out;
  auto t0 = Clock::now();
  auto F = FieldCtx::quadratic(85);
  struct Expect {
    long norm;
    std::size_t M, S;
    long newB;
  };
  const std::vector<Expect> table{{3, 16, 14, 8},   {4, 24, 22, 16},  {5, 20, 18, 12}, {7, 32, 30, 24},
                                  {17, 56, 54, 48}, {19, 68, 66, 60}, {23, 72, 70, 64}};
  std::map<std::string, Precomputation> by_S;
  auto primes = F->primes_up_to(23);
  std::string a_values;
  for (const auto& e : table) {
    const PrimeIdeal* P = nullptr;
    for (const auto& Q : primes)
      if (Q.norm == e.norm) {
        P = &Q;
        break;
      }
    if (!P) {
      out.fail("no prime of norm " + std::to_string(e.norm));
      continue;
    }
    auto S = choose_S(*F, P->ideal);
    if (!by_S.count(S[0].label)) by_S.emplace(S[0].label, load_or_compute(F, S, 0, "", threads()));
    auto r = dimension_report(by_S.at(S[0].label).classes, P->ideal);
    std::string tag = "norm " + std::to_string(e.norm) + " " + P->label + ": ";
    out.expect(r.dim_M == e.M, tag + "dim M " + std::to_string(r.dim_M));
    out.expect(r.dim_S == e.S, tag + "dim S " + std::to_string(r.dim_S));
    out.expect(r.new_B == e.newB, tag + "new dim " + std::to_string(r.new_B));
    a_values += (a_values.empty() ? "" : ", ") + std::to_string(r.new_A);
  }
  double s = seconds_since(t0);
  out.expect(s < 1800, "took " + fmt_seconds(s));
  out.notes.push_back("new dimensions with old forms counted by divisor multiplicity: " + a_values);
  out.notes.push_back(fmt_seconds(s));
  return out;
}

Outcome check_eisenstein() {
  Outcome out;
  for (Level1* L : {&q85(), &q10()}) {
    const FieldCtx& F = *L->F;
    auto rep = eigen_report(F, F.unit_ideal(), L->blocks);
    std::size_t flagged = 0, pattern = 0;
    for (const auto& c : rep.constituents) {
      flagged += c.eisenstein;
      // independent test of the pattern a_p = +-(Np + 1) with a consistent sign per narrow class
      if (c.dim() != 1) continue;
      std::map<std::size_t, int> sign;
      bool ok = true;
      for (std::size_t k = 0; k < L->blocks.size() && ok; ++k) {
        BigRat a = presentation_poly(c, k).coeff(0);
        BigRat np1 = BigRat(L->blocks[k].prime.norm + 1);
        int s = a == np1 ? 1 : a == -np1 ? -1 : 0;
        auto cls = F.narrow_class_index(L->blocks[k].prime.ideal);
        ok = s != 0 && (!sign.count(cls) || sign[cls] == s);
        sign[cls] = s;
      }
      if (ok) {
        ++pattern;
        out.expect(c.eisenstein, F.name() + ": a constituent with the +-(Np+1) pattern is not flagged");
      }
    }
    out.expect(flagged == 2, F.name() + ": " + std::to_string(flagged) + " constituents flagged");
    out.expect(pattern == 2, F.name() + ": " + std::to_string(pattern) + " constituents with the Eisenstein pattern");
    out.expect(rep.eisenstein_count == 2, F.name() + ": Eisenstein count " + std::to_string(rep.eisenstein_count));
  }
  return out;
}

Outcome check_properties() {
  Outcome out;
  std::vector<std::string> done;
  for (Level1* L : {&q85(), &q10()}) {
    const FieldCtx& F = *L->F;
    const ClassSet& cs = L->pc.classes;
    const QuatAlgebra& B = *cs.algebra;
    const std::string tag = F.name() + ": ";
    // Theta cardinality
    const auto& th = L->pc.theta;
    for (std::size_t k = 0; k < th.primes.size(); ++k)
      for (std::size_t b = 0; b < cs.size(); ++b) {
        std::size_t total = 0;
        for (std::size_t a = 0; a < cs.size(); ++a) total += th.entries[k][a][b].size();
        out.expect(total == th.primes[k].norm.get_ui() + 1, tag + "Theta column sum at " + th.primes[k].label);
      }
    // neighbour counts
    for (const auto& P : F.primes_up_to(7))
      for (const auto& rep : cs.reps) {
        auto nb = neighbors(B, rep, P);
        std::set<Lattice> distinct(nb.begin(), nb.end());
        out.expect(nb.size() == P.norm.get_ui() + 1 && distinct.size() == nb.size(), tag + "neighbours at " + P.label);
      }
    // mass
    out.expect(cs.unit_mass() == eichler_mass(F) && cs.mass == eichler_mass(F), tag + "mass identity");
    // commutativity and level-1 column sums
    for (std::size_t i = 0; i < L->blocks.size(); ++i) {
      const auto& T = L->blocks[i].matrix;
      for (std::size_t j = i + 1; j < L->blocks.size(); ++j) {
        const auto& U = L->blocks[j].matrix;
        out.expect(T * U == U * T, tag + "T" + L->blocks[i].prime.label + " and T" + L->blocks[j].prime.label +
                                       " do not commute");
      }
      for (std::size_t c = 0; c < T.cols(); ++c) {
        BigRat s = 0;
        for (std::size_t r = 0; r < T.rows(); ++r) s += T(r, c);
        out.expect(s == BigRat(L->blocks[i].prime.norm + 1), tag + "column sum of T" + L->blocks[i].prime.label);
      }
    }
  }
  // mass identity for the class set with the other auxiliary prime
  {
    auto F = q85().F;
    auto pc = load_or_compute(F, choose_S(*F, F->parse_ideal("(3, 2+w)")), 0, "", 1);
    out.expect(pc.classes.size() == 8 && pc.classes.unit_mass() == eichler_mass(*F), "mass identity with S = (3, w)");
  }
  // commutativity at level (5, 2+w) and independence of the splitting seed
  {
    Level1& L = q85();
    FieldIdeal N = L.F->parse_ideal("(5, 2+w)");
    std::vector<std::vector<QPoly>> charpolys;
    std::vector<HeckeBlock> first;
    for (std::uint64_t seed : {1, 2, 3}) {
      LevelStructure lv(L.pc.classes, N, seed);
      auto sp = build_space(L.pc.classes, lv, WeightSpec::parallel(2, 2));
      std::vector<QPoly> cp;
      std::vector<HeckeBlock> blocks;
      for (const auto& P : L.F->primes_up_to(19)) {
        if (L.F->ideal_divides(P.ideal, N)) continue;
        blocks.push_back(hecke_operator(L.pc.classes, L.pc.theta, lv, sp, P));
        cp.push_back(poly_charpoly(blocks.back().matrix));
      }
      charpolys.push_back(cp);
      if (first.empty()) first = std::move(blocks);
    }
    out.expect(charpolys[0] == charpolys[1] && charpolys[0] == charpolys[2],
               "characteristic polynomials at level (5, 2+w) depend on the splitting seed");
    for (std::size_t i = 0; i < first.size(); ++i)
      for (std::size_t j = i + 1; j < first.size(); ++j)
        out.expect(first[i].matrix * first[j].matrix == first[j].matrix * first[i].matrix,
                   "level (5, 2+w): T" + first[i].prime.label + " and T" + first[j].prime.label + " do not commute");
  }
  // rescaling ratio
  {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-60, 60);
    BigRat worst = 0;
    for (long D : {10L, 85L}) {
      auto F = FieldCtx::quadratic(D);
      int count = 0;
      while (count < 20) {
        FieldElem a{{BigRat(d(rng)), BigRat(d(rng))}};
        if (!F->is_totally_positive(a)) continue;
        ++count;
        auto r = rescale_multiplier(*F, a);
        worst = std::max(worst, r.ratio.hi);
        out.expect(r.ratio.hi < BigRat(41, 20), F->name() + ": rescaling ratio above 2.05");
      }
    }
    out.notes.push_back("largest rescaling ratio bound " + std::to_string(worst.get_d()));
  }
  return out;
}

Outcome check_oracles() {
  Outcome out;
  auto F = FieldCtx::quadratic(85);
  auto B = QuatAlgebra::ramification_free(F);
  Lattice R = B.maximalize(B.lipschitz_order());
  const auto Rrows = R.rows();
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> small(-1, 1);
  auto canon = [&](QuatElem x) {
    for (const auto& v : x)
      if (v != 0) {
        if (v < 0) x = B.neg(x);
        break;
      }
    return x;
  };
  int lattices = 0;
  std::size_t vectors = 0;
  while (lattices < 50) {
    const std::size_t n = 1 + lattices % 4;
    TraceFormLattice T;
    T.algebra = &B;
    for (std::size_t i = 0; i < n; ++i) {
      QuatElem x = B.zero();
      for (const auto& r : Rrows) x = B.add(x, B.scale(r, BigRat(small(rng))));
      T.basis.push_back(x);
    }
    if (Lattice::from_rows(T.basis, B.dim()).rank() != n) continue;
    T.gram = QMatrix(n, n);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        T.gram(i, j) = F->trace(B.trd(B.mul(T.basis[i], B.conj(T.basis[j]))));
        ok = ok && abs(T.gram(i, j)) <= 60;
      }
    if (!ok) continue;
    ++lattices;
    // a value that occurs: Tr nr of a small combination
    IntRow c(n);
    do {
      for (auto& v : c) v = small(rng);
    } while (std::all_of(c.begin(), c.end(), [](const BigInt& v) { return v == 0; }));
    BigRat t = F->trace(B.nr(T.combine(c)));
    std::set<QuatElem> fast;
    auto found = enumerate_norm(T, t);
    for (const auto& x : found) fast.insert(canon(x));
    out.expect(fast.size() == found.size(), "enumerate_norm returned a vector twice");
    // brute force over the box |c_i| <= sqrt(2t (G^{-1})_ii)
    QMatrix gi = T.gram.inverse();
    std::vector<long> box(n);
    for (std::size_t i = 0; i < n; ++i) {
      BigRat r = 2 * t * gi(i, i);
      long s = 0;
      while (BigRat((s + 1) * (s + 1)) <= r) ++s;
      box[i] = s;
    }
    std::set<QuatElem> brute;
    std::vector<long> cur(n);
    for (std::size_t i = 0; i < n; ++i) cur[i] = -box[i];
    for (;;) {
      IntRow x(cur.begin(), cur.end());
      QuatElem v = T.combine(x);
      if (!B.is_zero(v) && F->trace(B.nr(v)) == t) brute.insert(canon(v));
      std::size_t k = 0;
      while (k < n && cur[k] == box[k]) {
        cur[k] = -box[k];
        ++k;
      }
      if (k == n) break;
      ++cur[k];
    }
    vectors += brute.size();
    out.expect(fast == brute, "lattice " + std::to_string(lattices) + " (rank " + std::to_string(n) +
                                  ", t = " + to_string(t) + "): enumeration differs from the box search");
  }
  out.notes.push_back("50 lattices, " + std::to_string(vectors) + " vectors");

  // isomorphism witnesses for (a, u a)
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<Lattice> ideals;
  for (const auto& P : F->primes_up_to(5))
    for (const auto& c : neighbors(B, R, P)) ideals.push_back(c);
  int pairs = 0;
  while (pairs < 10) {
    const Lattice& a = ideals[rng() % ideals.size()];
    QuatElem u = B.zero();
    for (auto& v : u) v = d(rng);
    if (B.is_zero(u)) continue;
    ++pairs;
    Lattice c = B.left_mul(u, a);
    auto w = is_isomorphic(B, c, a);
    if (!w) {
      out.fail("no witness found for pair " + std::to_string(pairs));
      continue;
    }
    out.expect(B.left_mul(*w, a) == c, "witness does not map a onto u a");
    FieldIdeal want = F->ideal_mul(B.reduced_norm(c), F->ideal_inverse(B.reduced_norm(a)));
    out.expect(F->principal(B.nr(*w)) == want, "witness has the wrong reduced norm");
  }
  return out;
}

Outcome check_quartic_stretch() {
  Outcome out;
  auto t0 = Clock::now();
  auto F = FieldCtx::from_descriptor(read_descriptor(std::string(HMF_TEST_DATA) + "/q_sqrt2_sqrt5.json"));
  auto pc = load_or_compute(F, choose_S(*F, F->unit_ideal()), 31, "", threads());
  out.expect(pc.classes.size() == 2, std::to_string(pc.classes.size()) + " classes");
  LevelStructure lv(pc.classes, F->unit_ideal());
  auto sp = build_space(pc.classes, lv, WeightSpec::parallel(4, 2));
  std::vector<HeckeBlock> blocks;
  for (const auto& P : F->primes_up_to(31)) blocks.push_back(hecke_operator(pc.classes, pc.theta, lv, sp, P));
  // published rows: every prime of a given norm carries the same pair
  const std::map<long, std::pair<long, long>> table{{4, {5, -2}}, {9, {10, -4}}, {25, {26, -2}}, {31, {32, 4}}};
  std::map<long, int> seen;
  for (const auto& hb : blocks) {
    long N = hb.prime.norm.get_si();
    auto it = table.find(N);
    if (it == table.end()) {
      out.fail("unexpected prime norm " + std::to_string(N));
      continue;
    }
    ++seen[N];
    QPoly expect = product({{-it->second.first, 1}, {-it->second.second, 1}});
    QPoly got = poly_charpoly(hb.matrix);
    out.expect(got == expect, hb.prime.label + ": " + poly_factor_q(got).to_string("x"));
  }
  out.expect(seen[4] == 1 && seen[9] == 2 && seen[25] == 1 && seen[31] == 4, "prime counts per norm differ");
  out.notes.push_back(std::to_string(blocks.size()) + " primes up to norm 31, " + fmt_seconds(seconds_since(t0)));
  return out;
}

struct Check {
  std::string name;
  std::string title;
  bool gating;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Check> checks{
      {"classset_q85", "class set over Q(sqrt 85) from the command line", true, check_classset_q85},
      {"level1_q85", "level 1 eigensystems over Q(sqrt 85) against the published table", true, check_level1_q85},
      {"level1_q10", "level 1 eigensystems over Q(sqrt 10) against the published table", true, check_level1_q10},
      {"level_5_q85", "T(7, w) at level (5, 2+w) over Q(sqrt 85)", true, check_level_5_q85},
      {"dimensions_q85", "dimensions for prime levels of norm 3 to 23 over Q(sqrt 85)", true, check_dimensions_q85},
      {"eisenstein", "Eisenstein constituents at level 1", true, check_eisenstein},
      {"properties", "structural property suites", true, check_properties},
      {"oracles", "enumeration and isomorphism oracles", true, check_oracles},
      {"quartic_stretch", "norm-4 Hecke data over Q(sqrt 2, sqrt 5) (not gated)", false, check_quartic_stretch},
  };
  const std::set<std::string> wanted(argv + 1, argv + argc);
  std::set<std::string> unknown = wanted;
  bool all_ok = true;
  std::size_t index = 0;
  for (const auto& c : checks) {
    ++index;
    if (!wanted.empty() && !wanted.count(c.name)) continue;
    unknown.erase(c.name);
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << index << " " << c.name << ": " << c.title << "\n";
    for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    std::cout.flush();
    if (c.gating && !o.pass) all_ok = false;
  }
  for (const auto& w : unknown) {
    std::cerr << "unknown check: " << w << "\n";
    all_ok = false;
  }
  return all_ok ? 0 : 1;
}
