#include "hmf/store.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <thread>

using namespace hmf;
using nlohmann::json;

namespace {

// A document with key/value metadata and a table of exact strings.
struct TableDoc {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const TableDoc& doc, const std::string& format, std::ostream& os) {
  if (format == "structured") {
    json j;
    j["format"] = doc.kind;
    j["meta"] = json::object();
    for (const auto& [k, v] : doc.meta) j["meta"][k] = v;
    j["columns"] = doc.columns;
    j["rows"] = doc.rows;
    os << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    for (const auto& [k, v] : doc.meta) os << "# " << k << ": " << v << "\n";
    for (std::size_t c = 0; c < doc.columns.size(); ++c) os << (c ? "," : "") << csv_cell(doc.columns[c]);
    os << "\n";
    for (const auto& r : doc.rows) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_cell(r[c]);
      os << "\n";
    }
    return;
  }
  for (const auto& [k, v] : doc.meta) os << k << ": " << v << "\n";
  if (doc.columns.empty()) return;
  std::vector<std::size_t> w(doc.columns.size());
  for (std::size_t c = 0; c < w.size(); ++c) w[c] = doc.columns[c].size();
  for (const auto& r : doc.rows)
    for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << (c ? "  " : "") << std::left << std::setw(c + 1 < r.size() ? static_cast<int>(w[c]) : 0) << r[c];
    }
    os << "\n";
  };
  os << "\n";
  line(doc.columns);
  std::vector<std::string> rule;
  for (auto x : w) rule.push_back(std::string(x, '-'));
  line(rule);
  for (const auto& r : doc.rows) line(r);
}

struct Options {
  std::string field, descriptor, S = "auto", level = "1", levels, cache_dir, format = "table", weight = "2", generator;
  unsigned long bound = 20;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 1;
};

FieldPtr make_field(const Options& o) {
  if (!o.descriptor.empty()) return FieldCtx::from_descriptor(read_descriptor(o.descriptor));
  if (o.field.rfind("quad:", 0) != 0) throw std::invalid_argument("--field must have the form quad:D");
  std::size_t used = 0;
  long d = 0;
  try {
    d = std::stol(o.field.substr(5), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad field: " + o.field);
  }
  if (used != o.field.size() - 5) throw std::invalid_argument("bad field: " + o.field);
  return FieldCtx::quadratic(d);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

PrimeIdeal parse_prime(const FieldCtx& F, const std::string& s) {
  FieldIdeal I = F.parse_ideal(s);
  if (!F.ideal_is_integral(I)) throw std::invalid_argument("not an integral ideal: " + s);
  auto f = F.factor(I);
  if (f.size() != 1 || f[0].second != 1) throw std::invalid_argument("not a prime ideal: " + s);
  return f[0].first;
}

std::vector<PrimeIdeal> resolve_S(const FieldCtx& F, const Options& o, const FieldIdeal& level) {
  if (o.S == "auto") return choose_S(F, level);
  std::vector<PrimeIdeal> S;
  for (const auto& s : split(o.S, ';')) S.push_back(parse_prime(F, s));
  if (!generates_narrow_class_group(F, S)) throw std::invalid_argument("S does not generate the narrow class group");
  return S;
}

FieldIdeal parse_level(const FieldCtx& F, const std::string& s) {
  FieldIdeal N = F.parse_ideal(s);
  if (!F.ideal_is_integral(N)) throw std::invalid_argument("level must be integral: " + s);
  return N;
}

WeightSpec parse_weight(const FieldCtx& F, const std::string& s) {
  WeightSpec w;
  try {
    for (const auto& t : split(s, ',')) w.k.push_back(std::stoi(t));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad weight: " + s);
  }
  if (w.k.size() == 1) w = WeightSpec::parallel(F.degree(), w.k[0]);
  if (w.k.size() != F.degree()) throw std::invalid_argument("weight vector length must equal the degree");
  w.require_supported();
  return w;
}

std::string s_labels(const std::vector<PrimeIdeal>& S) {
  std::string out;
  for (const auto& P : S) out += (out.empty() ? "" : "; ") + P.label;
  return out;
}

std::string level_label(const FieldCtx& F, const FieldIdeal& N) {
  return F.ideal_norm(N) == 1 ? "1" : F.ideal_to_string(N);
}

int cmd_classset(const Options& o) {
  auto F = make_field(o);
  auto S = resolve_S(*F, o, F->unit_ideal());
  auto pc = load_or_compute(F, S, 0, o.cache_dir, o.threads);
  const auto& cs = pc.classes;
  TableDoc doc{"classset/1", {}, {"class", "norm", "norm of norm", "units mod O_F^x"}, {}};
  doc.meta = {{"field", F->name()},
              {"S", s_labels(cs.S)},
              {"class number", std::to_string(cs.size())},
              {"mass", to_string(cs.mass)}};
  for (std::size_t a = 0; a < cs.size(); ++a)
    doc.rows.push_back({std::to_string(a), F->ideal_to_string(cs.norms[a]), to_string(F->ideal_norm(cs.norms[a])),
                        std::to_string(cs.units[a].order())});
  render(doc, o.format, std::cout);
  return 0;
}

int cmd_mass(const Options& o) {
  auto F = make_field(o);
  TableDoc doc{"mass/1", {}, {}, {}};
  doc.meta = {{"field", F->name()},
              {"degree", std::to_string(F->degree())},
              {"zeta(-1)", to_string(F->zeta_minus_one())},
              {"class number", std::to_string(F->class_number())},
              {"narrow class number", std::to_string(F->narrow_class_number())},
              {"mass", to_string(eichler_mass(*F))}};
  render(doc, o.format, std::cout);
  return 0;
}

struct LevelSetup {
  FieldPtr F;
  FieldIdeal N;
  Precomputation pc;
  std::optional<LevelStructure> lv;
  CoinvariantSpace sp;
  std::vector<HeckeBlock> blocks;
};

LevelSetup hecke_setup(const Options& o) {
  LevelSetup s;
  s.F = make_field(o);
  const WeightSpec w = parse_weight(*s.F, o.weight);
  s.N = parse_level(*s.F, o.level);
  auto S = resolve_S(*s.F, o, s.N);
  s.pc = load_or_compute(s.F, S, o.bound, o.cache_dir, o.threads);
  s.lv.emplace(s.pc.classes, s.N, o.seed);
  s.sp = build_space(s.pc.classes, *s.lv, w);
  for (const auto& P : s.F->primes_up_to(o.bound))
    if (!s.F->ideal_divides(P.ideal, s.N))
      s.blocks.push_back(hecke_operator(s.pc.classes, s.pc.theta, *s.lv, s.sp, P));
  return s;
}

int cmd_hecke(const Options& o) {
  auto s = hecke_setup(o);
  if (o.format == "structured") {
    json j;
    j["format"] = "hecke/1";
    j["field"] = s.F->name();
    j["level"] = level_label(*s.F, s.N);
    j["S"] = s_labels(s.pc.classes.S);
    j["dimension"] = s.sp.dim;
    j["operators"] = json::array();
    for (const auto& hb : s.blocks) {
      json m = json::array();
      for (std::size_t r = 0; r < hb.matrix.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < hb.matrix.cols(); ++c) row.push_back(to_string(hb.matrix(r, c)));
        m.push_back(row);
      }
      j["operators"].push_back({{"prime", hb.prime.label},
                                {"norm", hb.prime.norm.get_str()},
                                {"charpoly", poly_factor_q(poly_charpoly(hb.matrix)).to_string("x")},
                                {"matrix", m}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  TableDoc doc{"hecke/1", {}, {"prime", "norm", "characteristic polynomial"}, {}};
  doc.meta = {{"field", s.F->name()},
              {"level", level_label(*s.F, s.N)},
              {"S", s_labels(s.pc.classes.S)},
              {"dimension", std::to_string(s.sp.dim)}};
  for (const auto& hb : s.blocks)
    doc.rows.push_back({hb.prime.label, hb.prime.norm.get_str(), poly_factor_q(poly_charpoly(hb.matrix)).to_string("x")});
  render(doc, o.format, std::cout);
  return 0;
}

int cmd_eigensystems(const Options& o) {
  auto s = hecke_setup(o);
  if (s.blocks.empty()) throw std::invalid_argument("no Hecke primes coprime to the level below the bound");
  std::optional<std::size_t> pref;
  if (!o.generator.empty()) {
    auto P = parse_prime(*s.F, o.generator);
    for (std::size_t k = 0; k < s.blocks.size(); ++k)
      if (s.blocks[k].prime.ideal == P.ideal) pref = k;
    if (!pref) throw std::invalid_argument("generator prime is not among the Hecke primes: " + o.generator);
  }
  auto rep = eigen_report(*s.F, s.N, s.blocks, pref);
  if (o.format == "structured") {
    std::cout << eigenreport_json(*s.F, rep).dump(2) << "\n";
    return 0;
  }
  TableDoc doc{"eigenreport/1", {}, {"form", "prime", "norm", "charpoly factor", "eigenvalue"}, {}};
  doc.meta = {{"field", s.F->name()},
              {"level", level_label(*s.F, s.N)},
              {"dimension", std::to_string(s.sp.dim)},
              {"constituents", std::to_string(rep.constituents.size())},
              {"eisenstein", std::to_string(rep.eisenstein_count)},
              {"complete", rep.complete ? "yes" : "no"}};
  for (std::size_t i = 0; i < rep.constituents.size(); ++i) {
    const auto& c = rep.constituents[i];
    std::string name = "f" + std::to_string(i + 1);
    std::string info = "dim " + std::to_string(c.dim());
    if (c.eisenstein) info += ", eisenstein (character " + std::to_string(*c.character) + ")";
    if (c.generator)
      info += ", b = a(" + rep.primes[*c.generator].label + "), " + c.generator_minpoly.to_string("x") + " = 0";
    else
      info += ", no single generating operator";
    doc.meta.emplace_back(name, info);
    for (std::size_t k = 0; k < rep.primes.size(); ++k) {
      std::string fac = "(" + c.factor[k].to_string("x") + ")";
      if (c.multiplicity[k] > 1) fac += "^" + std::to_string(c.multiplicity[k]);
      std::string ev = k < c.presentation.size() ? presentation_poly(c, k).to_string("b") : "";
      if (ev.empty() && k < c.presentation.size()) ev = "0";
      doc.rows.push_back({name, rep.primes[k].label, rep.primes[k].norm.get_str(), fac, ev});
    }
  }
  render(doc, o.format, std::cout);
  return 0;
}

std::vector<FieldIdeal> parse_levels(const FieldCtx& F, const std::string& spec) {
  const std::string tag = "prime-norm<=";
  std::vector<FieldIdeal> out;
  if (spec.rfind(tag, 0) == 0) {
    BigInt bound;
    if (bound.set_str(spec.substr(tag.size()), 10) != 0) throw std::invalid_argument("bad level bound: " + spec);
    for (const auto& P : F.primes_up_to(bound)) out.push_back(P.ideal);
    return out;
  }
  for (const auto& s : split(spec, ';')) out.push_back(parse_level(F, s));
  return out;
}

int cmd_dimensions(const Options& o) {
  auto F = make_field(o);
  parse_weight(*F, o.weight);
  auto levels = parse_levels(*F, o.levels.empty() ? o.level : o.levels);
  std::map<std::string, Precomputation> by_S;
  TableDoc doc{"dimensions/1", {}, {"level", "norm", "S", "dim M", "dim S", "new (A)", "new (B)"}, {}};
  doc.meta = {{"field", F->name()}};
  for (const auto& N : levels) {
    auto S = resolve_S(*F, o, N);
    const std::string key = s_labels(S);
    if (!by_S.count(key)) by_S.emplace(key, load_or_compute(F, S, 0, o.cache_dir, o.threads));
    auto r = dimension_report(by_S.at(key).classes, N);
    doc.rows.push_back({level_label(*F, N), to_string(F->ideal_norm(N)), key, std::to_string(r.dim_M),
                        std::to_string(r.dim_S), std::to_string(r.new_A), std::to_string(r.new_B)});
  }
  render(doc, o.format, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert modular forms over totally real fields via definite quaternion algebras"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    auto* f = c->add_option("--field", o.field, "field, quad:D for Q(sqrt D)");
    auto* d = c->add_option("--descriptor", o.descriptor, "JSON field descriptor");
    f->excludes(d);
    c->add_option("--cache-dir", o.cache_dir, "directory for precomputation files (empty disables)");
    c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "csv", "structured"}));
    c->add_option("--S", o.S, "auxiliary primes: auto or ideals separated by ';'");
  };
  auto hecke_opts = [&](CLI::App* c) {
    c->add_option("--level", o.level, "squarefree level ideal, e.g. \"(5, 2+w)\"");
    c->add_option("--primes-up-to", o.bound, "Hecke operators for primes of norm up to this bound");
    c->add_option("--weight", o.weight, "weight: k or k1,...,kn");
    c->add_option("--seed", o.seed, "seed for the local projective lines");
  };
  auto* classset = app.add_subcommand("classset", "right ideal classes, mass and unit groups");
  common(classset);
  auto* mass = app.add_subcommand("mass", "mass formula");
  common(mass);
  auto* hecke = app.add_subcommand("hecke", "characteristic polynomials of Hecke operators");
  common(hecke);
  hecke_opts(hecke);
  auto* eig = app.add_subcommand("eigensystems", "Hecke eigensystems with exact eigenvalue presentations");
  common(eig);
  hecke_opts(eig);
  eig->add_option("--generator", o.generator, "preferred prime whose eigenvalue generates the coefficient field");
  auto* dims = app.add_subcommand("dimensions", "dimensions of spaces of forms by level");
  common(dims);
  dims->add_option("--levels", o.levels, "prime-norm<=N or ideals separated by ';'");
  dims->add_option("--level", o.level, "a single level");
  dims->add_option("--weight", o.weight, "weight: k or k1,...,kn");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    if (o.field.empty() && o.descriptor.empty()) throw std::invalid_argument("one of --field or --descriptor is required");
    if (*classset) return cmd_classset(o);
    if (*mass) return cmd_mass(o);
    if (*hecke) return cmd_hecke(o);
    if (*eig) return cmd_eigensystems(o);
    if (*dims) return cmd_dimensions(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
