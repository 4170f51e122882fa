#include "hmf/classset.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

namespace hmf {

UnitGroup unit_group(const QuatAlgebra& B, const Lattice& O) {
  UnitGroup G;
  for (const auto& eta : B.field().totally_positive_units()) {
    auto sols = solve_norm_equation(B, O, eta);
    G.elements.insert(G.elements.end(), sols.begin(), sols.end());
  }
  std::sort(G.elements.begin(), G.elements.end());
  auto one = std::find(G.elements.begin(), G.elements.end(), B.one());
  if (one == G.elements.end()) throw ArithmeticError("unit_group: 1 missing from the enumeration");
  std::rotate(G.elements.begin(), one, one + 1);
  if (G.order() <= 240) {
    for (const auto& x : G.elements)
      for (const auto& y : G.elements) {
        QuatElem xy = B.mul(x, y);
        bool found = false;
        for (const auto& z : G.elements)
          if (B.is_scalar(B.mul(xy, B.conj(z)))) {
            found = true;
            break;
          }
        if (!found) throw ArithmeticError("unit_group: not closed under multiplication");
      }
  }
  return G;
}

std::vector<Lattice> neighbors(const QuatAlgebra& B, const Lattice& b, const PrimeIdeal& P, std::uint64_t seed) {
  const FieldCtx& F = B.field();
  ResidueAlgebra A(B, B.left_order(b), P, seed);
  FieldIdeal Pinv = F.ideal_inverse(P.ideal);
  std::vector<Lattice> out;
  out.reserve(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) out.push_back(B.scale(B.product(A.lift(i), b), Pinv));
  return out;
}

std::optional<QuatElem> is_isomorphic(const QuatAlgebra& B, const Lattice& a, const Lattice& c) {
  const FieldCtx& F = B.field();
  FieldIdeal I = F.ideal_mul(B.reduced_norm(a), F.ideal_inverse(B.reduced_norm(c)));
  auto alpha = F.narrow_generator(I);
  if (!alpha) return std::nullopt;
  Lattice L = B.product(a, B.inverse(c));
  for (const auto& eta : F.totally_positive_units()) {
    auto sols = solve_norm_equation(B, L, F.mul(*alpha, eta));
    if (!sols.empty()) return sols.front();
  }
  return std::nullopt;
}

BigRat eichler_mass(const FieldCtx& F) {
  BigRat z = abs(F.zeta_minus_one());
  BigRat m = 2 * z * F.class_number();
  for (unsigned i = 0; i < F.degree(); ++i) m /= 2;
  return m;
}

namespace {

std::set<std::size_t> generated_subgroup(const FieldCtx& F, const std::vector<PrimeIdeal>& S) {
  std::set<std::size_t> H{F.narrow_class_index(F.unit_ideal())};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& P : S) {
      std::size_t g = F.narrow_class_index(P.ideal);
      for (std::size_t h : std::vector<std::size_t>(H.begin(), H.end()))
        if (H.insert(F.narrow_class_product(h, g)).second) grew = true;
    }
  }
  return H;
}

}  // namespace

bool generates_narrow_class_group(const FieldCtx& F, const std::vector<PrimeIdeal>& S) {
  return generated_subgroup(F, S).size() == F.narrow_class_number();
}

std::vector<PrimeIdeal> choose_S(const FieldCtx& F, const FieldIdeal& avoid) {
  std::vector<PrimeIdeal> S;
  for (const auto& P : F.primes_up_to(4096)) {
    if (F.ideal_divides(P.ideal, avoid)) continue;
    // with h^+ = 1 one prime is still needed to move between classes
    if (F.narrow_class_number() > 1 && generated_subgroup(F, S).count(F.narrow_class_index(P.ideal))) continue;
    S.push_back(P);
    if (generates_narrow_class_group(F, S)) return S;
  }
  throw ArithmeticError("choose_S: no generating set among primes of norm <= 4096");
}

namespace {

std::optional<std::pair<std::size_t, QuatElem>> find_class(const ClassSet& cs, const Lattice& c) {
  const QuatAlgebra& B = *cs.algebra;
  const FieldCtx& F = B.field();
  const std::size_t trivial = F.narrow_class_index(F.unit_ideal());
  FieldIdeal nc_inv = F.ideal_inverse(B.reduced_norm(c));
  for (std::size_t a = 0; a < cs.size(); ++a) {
    if (F.narrow_class_index(F.ideal_mul(cs.norms[a], nc_inv)) != trivial) continue;
    if (auto u = is_isomorphic(B, cs.reps[a], c)) return std::make_pair(a, *u);
  }
  return std::nullopt;
}

}  // namespace

std::pair<std::size_t, QuatElem> ClassSet::identify(const Lattice& c) const {
  auto r = find_class(*this, c);
  if (!r) throw ArithmeticError("class set: ideal not isomorphic to any representative");
  return *r;
}

BigRat ClassSet::unit_mass() const {
  BigRat m = 0;
  for (const auto& G : units) m += BigRat(1, G.order());
  m.canonicalize();
  return m;
}

ClassSet compute_class_set(std::shared_ptr<const QuatAlgebra> Bp, const Lattice& R, std::vector<PrimeIdeal> S,
                           std::size_t max_classes) {
  const QuatAlgebra& B = *Bp;
  const FieldCtx& F = B.field();
  if (!generates_narrow_class_group(F, S)) throw std::invalid_argument("S does not generate the narrow class group");
  if (S.empty()) throw std::invalid_argument("S must contain at least one prime");
  ClassSet cs;
  cs.algebra = Bp;
  cs.order = R;
  cs.S = std::move(S);
  const BigRat target = eichler_mass(F);
  BigRat mass = 0;
  auto add = [&](const Lattice& L) {
    cs.reps.push_back(L);
    cs.left_orders.push_back(B.left_order(L));
    cs.units.push_back(unit_group(B, cs.left_orders.back()));
    cs.norms.push_back(B.reduced_norm(L));
    mass += BigRat(1, cs.units.back().order());
    mass.canonicalize();
  };
  add(R);
  std::size_t next = 0;
  while (mass < target) {
    if (next == cs.size()) throw ArithmeticError("class set: neighbour closure ended below the mass");
    Lattice b = cs.reps[next++];
    for (const auto& P : cs.S) {
      for (const auto& c : neighbors(B, b, P)) {
        if (find_class(cs, c)) continue;
        add(c);
        if (mass >= target) break;
        if (cs.size() >= max_classes) throw ArithmeticError("class set: too many classes");
      }
      if (mass >= target) break;
    }
  }
  if (mass != target) throw ArithmeticError("class set: mass overshoot " + mass.get_str() + " > " + target.get_str());
  cs.mass = mass;
  return cs;
}

std::optional<std::size_t> ThetaTable::prime_index(const FieldIdeal& p) const {
  for (std::size_t k = 0; k < primes.size(); ++k)
    if (primes[k].ideal == p) return k;
  return std::nullopt;
}

void extend_theta(const ClassSet& cs, ThetaTable& th, unsigned long bound, unsigned threads) {
  const QuatAlgebra& B = *cs.algebra;
  const FieldCtx& F = B.field();
  const std::size_t h = cs.size();
  const std::size_t first = th.primes.size();
  for (auto& P : F.primes_up_to(bound))
    if (!th.prime_index(P.ideal)) th.primes.push_back(P);
  th.entries.resize(th.primes.size(), std::vector<std::vector<std::vector<QuatElem>>>(
                                          h, std::vector<std::vector<QuatElem>>(h)));
  th.bound = std::max(th.bound, bound);
  const std::size_t tasks = (th.primes.size() - first) * h;
  std::atomic<std::size_t> counter{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t t = counter++;
      if (t >= tasks) return;
      std::size_t k = first + t / h, b = t % h;
      try {
        for (const auto& c : neighbors(B, cs.reps[b], th.primes[k])) {
          auto [a, u] = cs.identify(c);
          th.entries[k][a][b].push_back(std::move(u));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        counter = tasks;
      }
    }
  };
  // entries[k][a][b] for fixed b is only touched by the task (k, b)
  unsigned nt = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ThetaTable compute_theta(const ClassSet& cs, unsigned long bound, unsigned threads) {
  ThetaTable th;
  extend_theta(cs, th, bound, threads);
  return th;
}

}  // namespace hmf
