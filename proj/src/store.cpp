#include "hmf/store.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace hmf {

using nlohmann::json;
namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

json to_json(const BigRat& x) { return to_string(x); }

BigRat rat_from_json(const json& j) { return parse_rat(j.get<std::string>()); }

namespace {

json row_json(const RatRow& r) {
  json a = json::array();
  for (const auto& x : r) a.push_back(to_json(x));
  return a;
}

RatRow row_from(const json& j) {
  RatRow r;
  for (const auto& x : j) r.push_back(rat_from_json(x));
  return r;
}

json elem_json(const FieldElem& x) { return row_json(x.c); }
FieldElem elem_from(const json& j) { return FieldElem{row_from(j)}; }

json prime_json(const PrimeIdeal& P) {
  return json{{"label", P.label},  {"p", P.p.get_str()},       {"f", P.f},
              {"e", P.e},          {"norm", P.norm.get_str()}, {"ideal", to_json(P.ideal.lat)}};
}

PrimeIdeal prime_from(const json& j) {
  PrimeIdeal P;
  P.label = j.at("label").get<std::string>();
  P.p = BigInt(j.at("p").get<std::string>());
  P.f = j.at("f").get<unsigned>();
  P.e = j.at("e").get<unsigned>();
  P.norm = BigInt(j.at("norm").get<std::string>());
  P.ideal = FieldIdeal{lattice_from_json(j.at("ideal"))};
  return P;
}

json poly_json(const QPoly& f, const std::string& var) {
  json c = json::array();
  for (const auto& x : f.coeffs()) c.push_back(to_json(x));
  return json{{"coefficients", c}, {"text", f.to_string(var)}};
}

}  // namespace

json to_json(const Lattice& L) {
  json rows = json::array();
  for (const auto& r : L.int_basis()) {
    json a = json::array();
    for (const auto& x : r) a.push_back(x.get_str());
    rows.push_back(a);
  }
  return json{{"dim", L.dim()}, {"denominator", L.denominator().get_str()}, {"rows", rows}};
}

Lattice lattice_from_json(const json& j) {
  const std::size_t dim = j.at("dim").get<std::size_t>();
  const BigInt den(j.at("denominator").get<std::string>());
  std::vector<RatRow> rows;
  for (const auto& r : j.at("rows")) {
    RatRow v;
    for (const auto& x : r) v.push_back(make_rat(BigInt(x.get<std::string>()), den));
    if (v.size() != dim) throw CacheError("lattice row of wrong length");
    rows.push_back(std::move(v));
  }
  return Lattice::from_rows(rows, dim);
}

std::string field_hash(const FieldCtx& F) {
  json t = json::array();
  for (const auto& row : F.table()) {
    json r = json::array();
    for (const auto& e : row) {
      json c = json::array();
      for (const auto& x : e) c.push_back(x.get_str());
      r.push_back(c);
    }
    t.push_back(r);
  }
  json d{{"name", F.name()}, {"degree", F.degree()}, {"discriminant", F.discriminant().get_str()}, {"table", t}};
  return sha256_hex(d.dump());
}

json serialize(const Precomputation& pc) {
  const ClassSet& cs = pc.classes;
  const QuatAlgebra& B = *cs.algebra;
  json j;
  j["field"] = {{"name", B.field().name()}, {"hash", field_hash(B.field())}};
  j["algebra"] = {{"a", elem_json(B.a())}, {"b", elem_json(B.b())}};
  j["order"] = to_json(cs.order);
  j["S"] = json::array();
  for (const auto& P : cs.S) j["S"].push_back(prime_json(P));
  j["mass"] = to_json(cs.mass);
  j["classes"] = json::array();
  for (std::size_t a = 0; a < cs.size(); ++a) {
    json units = json::array();
    for (const auto& u : cs.units[a].elements) units.push_back(row_json(u));
    j["classes"].push_back({{"rep", to_json(cs.reps[a])},
                            {"left_order", to_json(cs.left_orders[a])},
                            {"norm", to_json(cs.norms[a].lat)},
                            {"units", units}});
  }
  json th;
  th["bound"] = pc.theta.bound;
  th["primes"] = json::array();
  for (std::size_t k = 0; k < pc.theta.primes.size(); ++k) {
    json table = json::array();
    for (const auto& row : pc.theta.entries[k]) {
      json r = json::array();
      for (const auto& cell : row) {
        json c = json::array();
        for (const auto& u : cell) c.push_back(row_json(u));
        r.push_back(c);
      }
      table.push_back(r);
    }
    th["primes"].push_back({{"prime", prime_json(pc.theta.primes[k])}, {"entries", table}});
  }
  j["theta"] = th;
  return j;
}

Precomputation deserialize(const json& j, const FieldPtr& F) {
  try {
    if (j.at("field").at("hash").get<std::string>() != field_hash(*F))
      throw CacheError("cached precomputation belongs to a different field");
    auto B = std::make_shared<const QuatAlgebra>(F, elem_from(j.at("algebra").at("a")),
                                                 elem_from(j.at("algebra").at("b")));
    Precomputation pc;
    ClassSet& cs = pc.classes;
    cs.algebra = B;
    cs.order = lattice_from_json(j.at("order"));
    for (const auto& P : j.at("S")) cs.S.push_back(prime_from(P));
    cs.mass = rat_from_json(j.at("mass"));
    for (const auto& c : j.at("classes")) {
      cs.reps.push_back(lattice_from_json(c.at("rep")));
      cs.left_orders.push_back(lattice_from_json(c.at("left_order")));
      cs.norms.push_back(FieldIdeal{lattice_from_json(c.at("norm"))});
      UnitGroup g;
      for (const auto& u : c.at("units")) g.elements.push_back(row_from(u));
      cs.units.push_back(std::move(g));
    }
    const auto& th = j.at("theta");
    pc.theta.bound = th.at("bound").get<unsigned long>();
    for (const auto& e : th.at("primes")) {
      pc.theta.primes.push_back(prime_from(e.at("prime")));
      std::vector<std::vector<std::vector<QuatElem>>> table;
      for (const auto& row : e.at("entries")) {
        std::vector<std::vector<QuatElem>> r;
        for (const auto& cell : row) {
          std::vector<QuatElem> c;
          for (const auto& u : cell) c.push_back(row_from(u));
          r.push_back(std::move(c));
        }
        table.push_back(std::move(r));
      }
      if (table.size() != cs.size()) throw CacheError("Theta table has the wrong shape");
      pc.theta.entries.push_back(std::move(table));
    }
    if (cs.unit_mass() != cs.mass) throw CacheError("cached class set fails the mass check");
    return pc;
  } catch (const json::exception& e) {
    throw CacheError(std::string("malformed cache entry: ") + e.what());
  }
}

std::string BrandtCache::key(const FieldCtx& F, const std::vector<PrimeIdeal>& S) const {
  std::string s = std::string(kEngineVersion) + "|" + field_hash(F);
  for (const auto& P : S) s += "|" + P.label;
  return sha256_hex(s).substr(0, 24);
}

std::string BrandtCache::path(const std::string& key) const { return (fs::path(dir_) / ("brandt-" + key + ".json")).string(); }

std::optional<Precomputation> BrandtCache::get(const std::string& key, const FieldPtr& F) const {
  std::ifstream in(path(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::exception&) {
    throw CacheError("cache file " + path(key) + " is not valid JSON");
  }
  if (!doc.is_object() || doc.value("format", "") != "brandt/1" || doc.value("version", "") != kEngineVersion)
    return std::nullopt;
  if (!doc.contains("payload") || !doc.contains("checksum"))
    throw CacheError("cache file " + path(key) + " lacks payload or checksum");
  if (sha256_hex(doc["payload"].dump()) != doc["checksum"].get<std::string>())
    throw CacheError("checksum mismatch in cache file " + path(key));
  return deserialize(doc["payload"], F);
}

void BrandtCache::put(const std::string& key, const Precomputation& pc) const {
  fs::create_directories(dir_);
  json payload = serialize(pc);
  json doc{{"format", "brandt/1"}, {"version", kEngineVersion}, {"checksum", sha256_hex(payload.dump())},
           {"payload", std::move(payload)}};
  const std::string target = path(key);
  const std::string tmp = target + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc.dump();
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  fs::rename(tmp, target);
}

Precomputation load_or_compute(const FieldPtr& F, const std::vector<PrimeIdeal>& S, unsigned long bound,
                               const std::string& cache_dir, unsigned threads) {
  std::optional<BrandtCache> cache;
  std::string key;
  if (!cache_dir.empty()) {
    cache.emplace(cache_dir);
    key = cache->key(*F, S);
    if (auto pc = cache->get(key, F)) {
      if (pc->theta.bound >= bound) return std::move(*pc);
      extend_theta(pc->classes, pc->theta, bound, threads);
      cache->put(key, *pc);
      return std::move(*pc);
    }
  }
  auto B = std::make_shared<const QuatAlgebra>(QuatAlgebra::ramification_free(F));
  Lattice R = B->maximalize(B->lipschitz_order());
  Precomputation pc{compute_class_set(B, R, S), {}};
  pc.theta = compute_theta(pc.classes, bound, threads);
  if (cache) cache->put(key, pc);
  return pc;
}

namespace {

BigInt int_from(const json& x) { return x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<long>()); }
BigRat rat_from(const json& x) { return x.is_string() ? parse_rat(x.get<std::string>()) : BigRat(x.get<long>()); }

}  // namespace

FieldCtx::Descriptor descriptor_from_json(const json& j) {
  FieldCtx::Descriptor d;
  d.name = j.value("name", "descriptor");
  d.degree = j.at("degree").get<unsigned>();
  for (const auto& row : j.at("table")) {
    std::vector<IntRow> r;
    for (const auto& e : row) {
      IntRow v;
      for (const auto& x : e) v.push_back(int_from(x));
      r.push_back(std::move(v));
    }
    d.table.push_back(std::move(r));
  }
  d.discriminant = int_from(j.at("discriminant"));
  for (const auto& emb : j.at("embeddings")) {
    std::vector<std::pair<BigRat, BigRat>> m;
    for (const auto& iv : emb) m.emplace_back(rat_from(iv.at(0)), rat_from(iv.at(1)));
    d.embeddings.push_back(std::move(m));
  }
  for (const auto& u : j.value("units", json::array())) {
    FieldElem e;
    for (const auto& x : u) e.c.push_back(rat_from(x));
    d.units.push_back(std::move(e));
  }
  d.class_number = j.value("class_number", 1u);
  d.narrow_class_number = j.value("narrow_class_number", 1u);
  d.zeta_minus_one = rat_from(j.at("zeta_minus_one"));
  return d;
}

FieldCtx::Descriptor read_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open descriptor " + path);
  try {
    return descriptor_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed descriptor " + path + ": " + e.what());
  }
}

json eigenreport_json(const FieldCtx& F, const EigenReport& rep) {
  json j;
  j["format"] = "eigenreport/1";
  j["field"] = rep.field;
  j["level"] = F.ideal_to_string(rep.level);
  j["level_norm"] = to_json(F.ideal_norm(rep.level));
  j["primes"] = json::array();
  for (const auto& P : rep.primes) j["primes"].push_back({{"label", P.label}, {"norm", P.norm.get_str()}});
  j["eisenstein_count"] = rep.eisenstein_count;
  j["complete"] = rep.complete;
  j["constituents"] = json::array();
  for (const auto& c : rep.constituents) {
    json cj;
    cj["dimension"] = c.dim();
    cj["eisenstein"] = c.eisenstein;
    cj["character"] = c.character ? json(*c.character) : json(nullptr);
    if (c.generator) {
      cj["generator"] = rep.primes[*c.generator].label;
      cj["generator_minpoly"] = poly_json(c.generator_minpoly, "x");
    } else {
      cj["generator"] = nullptr;
    }
    cj["eigenvalues"] = json::array();
    for (std::size_t k = 0; k < rep.primes.size(); ++k) {
      json e{{"prime", rep.primes[k].label},
             {"factor", poly_json(c.factor[k], "x")},
             {"multiplicity", c.multiplicity[k]}};
      if (k < c.presentation.size()) e["presentation"] = poly_json(presentation_poly(c, k), "b");
      cj["eigenvalues"].push_back(e);
    }
    j["constituents"].push_back(cj);
  }
  return j;
}

}  // namespace hmf
