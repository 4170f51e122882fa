#pragma once

// Persistence of precomputed class sets and Theta tables ("brandt/1"), and
// the structured eigenvalue report ("eigenreport/1").

#include "hmf/eigen.hpp"

#include <json.hpp>

namespace hmf {

inline constexpr const char* kEngineVersion = "hmf-1";

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data);

/// Hash of the field's defining data (name, degree, multiplication table, discriminant).
std::string field_hash(const FieldCtx& F);

nlohmann::json to_json(const BigRat& x);
BigRat rat_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Lattice& L);
Lattice lattice_from_json(const nlohmann::json& j);

struct Precomputation {
  ClassSet classes;
  ThetaTable theta;
};

nlohmann::json serialize(const Precomputation& pc);
/// Rebuilds the precomputation over F; throws CacheError on mismatched field or format.
Precomputation deserialize(const nlohmann::json& payload, const FieldPtr& F);

/// Cache directory of brandt/1 documents keyed by (field hash, S, engine version).
class BrandtCache {
 public:
  explicit BrandtCache(std::string dir) : dir_(std::move(dir)) {}

  std::string key(const FieldCtx& F, const std::vector<PrimeIdeal>& S) const;
  std::string path(const std::string& key) const;
  /// Verified entry, or nullopt on a miss; CacheError when the checksum fails.
  std::optional<Precomputation> get(const std::string& key, const FieldPtr& F) const;
  /// Atomic write (temporary file then rename).
  void put(const std::string& key, const Precomputation& pc) const;

 private:
  std::string dir_;
};

/// Cached precomputation covering all primes of norm <= bound. Existing
/// entries are extended monotonically. An empty cache directory disables caching.
Precomputation load_or_compute(const FieldPtr& F, const std::vector<PrimeIdeal>& S, unsigned long bound,
                               const std::string& cache_dir, unsigned threads);

/// Field descriptor from JSON: degree, multiplication table, discriminant,
/// embedding intervals, units, class numbers and zeta_F(-1) as exact strings.
FieldCtx::Descriptor descriptor_from_json(const nlohmann::json& j);
/// Throws std::invalid_argument when the file is missing or malformed.
FieldCtx::Descriptor read_descriptor(const std::string& path);

nlohmann::json eigenreport_json(const FieldCtx& F, const EigenReport& rep);

}  // namespace hmf
