#include "clc/report.hpp"

#include <sstream>

namespace clc {

namespace {

std::string hash_hex(u64 h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

json field_descriptor_json(const FieldTable& ft) {
  json j;
  j["p"] = ft.p();
  j["f"] = ft.f();
  j["modulus"] = ft.modulus();
  j["generator_check"] = hash_hex(ft.generator_check_hash());
  return j;
}

std::shared_ptr<const FieldTable> field_from_descriptor(const json& j, i64 cap) {
  std::shared_ptr<const FieldTable> ft;
  try {
    ft = FieldTable::build(j.at("p").get<i64>(), j.at("f").get<int>(),
                           j.at("modulus").get<std::vector<int>>(), cap);
    require(hash_hex(ft->generator_check_hash()) ==
                j.at("generator_check").get<std::string>(),
            Errc::IoError, "generator check hash mismatch");
  } catch (const json::exception& e) {
    fail(Errc::IoError, std::string("field descriptor: ") + e.what());
  }
  return ft;
}

json CertReport::to_json() const {
  json j;
  j["check_name"] = check_name;
  j["parameters"] = parameters;
  j["expected"] = expected;
  j["observed"] = observed;
  j["pass"] = pass;
  j["runtime_ms"] = runtime_ms;
  j["failures"] = failures;
  return j;
}

CertReport CertReport::from_json(const json& j) {
  CertReport r;
  try {
    r.check_name = j.at("check_name").get<std::string>();
    r.parameters = j.at("parameters");
    r.expected = j.at("expected");
    r.observed = j.at("observed");
    r.pass = j.at("pass").get<bool>();
    r.runtime_ms = j.at("runtime_ms").get<i64>();
    r.failures = j.at("failures").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    fail(Errc::MalformedReport, e.what());
  }
  return r;
}

json cycint_to_json(const CycInt& z) {
  return json(z.normalized().counts());
}

json gaussian_to_json(const GaussianRat& z) {
  json j;
  j["re_num"] = z.re_num();
  j["im_num"] = z.im_num();
  j["den"] = z.den();
  return j;
}

}  // namespace clc
