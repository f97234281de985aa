#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "clc/cyclotomic.hpp"

namespace clc {

using json = nlohmann::json;

/// Outcome of one verifier: a histogram of observed values against the
/// expected ones, a pass flag, and up to a handful of failure witnesses.
struct CertReport {
  std::string check_name;
  json parameters = json::object();
  json expected = json::object();
  json observed = json::object();
  bool pass = false;
  i64 runtime_ms = 0;
  std::vector<std::string> failures;

  static constexpr size_t kMaxWitnesses = 8;
  void witness(const std::string& msg) {
    if (failures.size() < kMaxWitnesses) failures.push_back(msg);
    pass = false;
  }

  json to_json() const;
  static CertReport from_json(const json& j);
};

json cycint_to_json(const CycInt& z);
json gaussian_to_json(const GaussianRat& z);

/// Versioned field descriptor {p, f, modulus, generator_check}. Log tables
/// are regenerated on load, never serialized.
json field_descriptor_json(const FieldTable& ft);
/// Rebuilds the table from a descriptor and validates the generator hash.
std::shared_ptr<const FieldTable> field_from_descriptor(const json& j,
                                                        i64 cap = 0);

/// Histogram as a JSON object keyed by the value's string form, with
/// multiplicities as values; keys sort canonically under nlohmann's
/// ordered-map serialization.
template <typename Map>
json histogram_json(const Map& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[std::to_string(k)] = v;
  return o;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  i64 ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace clc
