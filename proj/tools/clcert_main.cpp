// clcert: constructs Cameron-Liebler line classes with parameter (q^2-1)/2
// and affine two-intersection sets in AG(2,3^{2e}), and certifies their
// defining properties by exhaustive exact computation.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "clc/affine.hpp"
#include "clc/charsum.hpp"
#include "clc/clclass.hpp"
#include "clc/verify.hpp"

using namespace clc;
using nlohmann::json;

namespace {

struct QDecomposition {
  i64 p;
  int d;
};

QDecomposition factor_prime_power(i64 q) {
  for (i64 p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    int d = 0;
    i64 t = q;
    while (t % p == 0) {
      t /= p;
      ++d;
    }
    require(t == 1, Errc::ConfigError,
            "q = " + std::to_string(q) + " is not a prime power");
    return {p, d};
  }
  return {q, 1};  // q itself prime
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(bool(out), Errc::IoError, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::IoError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(Errc::IoError, std::string(path) + ": " + e.what());
  }
  return j;
}

json reports_file(const std::vector<CertReport>& reports) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "cert_reports";
  bool all = true;
  json arr = json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    arr.push_back(r.to_json());
  }
  j["reports"] = std::move(arr);
  j["all_pass"] = all;
  return j;
}

int render_reports(const json& file) {
  require(file.contains("reports"), Errc::MalformedReport,
          "missing 'reports' array");
  bool all = true;
  std::printf("%-28s %-6s %9s  %s\n", "check", "pass", "ms", "detail");
  for (const auto& jr : file.at("reports")) {
    CertReport r = CertReport::from_json(jr);
    all = all && r.pass;
    std::string detail;
    if (r.observed.contains("histogram"))
      detail = r.observed.at("histogram").dump();
    else
      detail = r.observed.dump();
    if (detail.size() > 90) detail = detail.substr(0, 87) + "...";
    std::printf("%-28s %-6s %9lld  %s\n", r.check_name.c_str(),
                r.pass ? "PASS" : "FAIL", (long long)r.runtime_ms,
                detail.c_str());
    for (const auto& w : r.failures) std::printf("    witness: %s\n", w.c_str());
  }
  std::printf("overall: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int finish(const std::vector<CertReport>& reports, const std::string& report_path,
           bool render) {
  json file = reports_file(reports);
  if (!report_path.empty()) write_json(report_path, file);
  if (render) return render_reports(file);
  return file.at("all_pass").get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "clcert: Cameron-Liebler line classes with x = (q^2-1)/2 and affine "
      "two-intersection sets, certified by exact computation"};
  app.require_subcommand(1);

  // construct
  auto* c_cmd = app.add_subcommand(
      "construct", "Build the line-class bundle for q = 5 or 9 (mod 12)");
  i64 c_q = 5;
  std::string c_d0 = "auto";
  i64 c_beta = 0;  // sub-log of an F-square; beta = w0^s
  std::string c_out = "bundle.json";
  i64 c_cap = 0;
  bool c_complementary = false;
  c_cmd->add_option("--q", c_q, "field size q, must be 5 or 9 mod 12")->required();
  c_cmd->add_option("--d0", c_d0, "tangent index in I_Q, or 'auto' for min");
  c_cmd->add_option("--beta", c_beta,
                    "sub-log s of beta = w0^s (must be even, default 0)");
  c_cmd->add_option("--out", c_out, "output bundle path");
  c_cmd->add_option("--table-cap", c_cap, "override the p^f table cap");
  c_cmd->add_flag("--complementary", c_complementary,
                  "extend by {(y,0)} to parameter (q^2+1)/2");

  // verify
  auto* v_cmd = app.add_subcommand("verify", "Certify a constructed bundle");
  std::string v_bundle = "bundle.json", v_checks = "all", v_report;
  int v_trials = 10;
  u64 v_seed = 0x5eed;
  i64 v_sample = 0, v_tcap = 0, v_fcap = 0;
  v_cmd->add_option("--bundle", v_bundle, "bundle JSON path")->required();
  v_cmd->add_option("--checks", v_checks,
                    "comma list of spectrum,tight,two-int,tu,spread,auto or 'all'");
  v_cmd->add_option("--report", v_report, "write the report JSON here");
  v_cmd->add_option("--trials", v_trials, "random spread images to test");
  v_cmd->add_option("--seed", v_seed, "seed for sampled checks");
  v_cmd->add_option("--two-int-sample", v_sample,
                    "sample this many hyperplanes instead of all");
  v_cmd->add_option("--transform-cap", v_tcap, "override the transform cap");
  v_cmd->add_option("--table-cap", v_fcap, "override the p^f table cap");

  // affine
  auto* a_cmd = app.add_subcommand(
      "affine", "Build and certify the two-intersection set of AG(2,3^{2e})");
  int a_e = 1;
  std::string a_out, a_report;
  i64 a_sample = 0, a_cap = 0;
  u64 a_seed = 0x5eed;
  bool a_lemmas_on = false, a_lemmas_off = false;
  a_cmd->add_option("--e", a_e, "half exponent, q = 3^{2e}")->required();
  a_cmd->add_option("--out", a_out, "write K as JSON here");
  a_cmd->add_option("--report", a_report, "write the report JSON here");
  a_cmd->add_option("--sample-lines", a_sample,
                    "certify a seeded sample of lines instead of all");
  a_cmd->add_option("--seed", a_seed, "seed for sampled checks");
  a_cmd->add_option("--table-cap", a_cap, "override the p^f table cap");
  a_cmd->add_flag("--lemmas", a_lemmas_on,
                  "force the gamma-exhaustive lemma suite at any e");
  a_cmd->add_flag("--no-lemmas", a_lemmas_off, "skip the lemma suite");

  // gauss-checks
  auto* g_cmd = app.add_subcommand(
      "gauss-checks", "Didactic Gauss-sum identity suite on small fields");
  std::string g_report;
  g_cmd->add_option("--report", g_report, "write the report JSON here");

  // render
  auto* r_cmd = app.add_subcommand("render", "Pretty-print a report file");
  std::string r_report;
  r_cmd->add_option("--report", r_report, "report JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_cmd->parsed()) {
      require(c_q % 12 == 5 || c_q % 12 == 9, Errc::ConfigError,
              "q mod 12 must be 5 or 9");
      auto [p, d] = factor_prime_power(c_q);
      FieldTower tw = FieldTower::make(p, d, c_cap);
      i64 d0 = -1;
      if (c_d0 != "auto") d0 = std::stoll(c_d0);
      i64 beta = c_beta == 0 ? -1 : tw.E().from_sub_log(c_beta, d);
      lineclass::LineClassBundle b = lineclass::build_bundle(std::move(tw), d0, beta);
      if (c_complementary) b = lineclass::extend_to_complementary(b);
      write_json(c_out, lineclass::bundle_to_json(b));
      std::printf("wrote %s: q=%lld x=%lld |D|=%zu |L|=%zu\n", c_out.c_str(),
                  (long long)b.q, (long long)b.x, b.D_keys.size(), b.L.size());
      return 0;
    }

    if (v_cmd->parsed()) {
      auto names = split_csv(v_checks);
      if (names.empty()) {
        std::fprintf(stderr, "warning: no checks selected\n");
        return 0;
      }
      lineclass::LineClassBundle b =
          lineclass::bundle_from_json(load_json(v_bundle), v_fcap);
      auto reports =
          verify::run_checks(b, names, v_trials, v_seed, v_sample, v_tcap);
      return finish(reports, v_report, true);
    }

    if (a_cmd->parsed()) {
      affine::AffineModel am = affine::AffineModel::make(a_e, a_cap);
      affine::TwoIntersectionSet ts = affine::build_K(am);
      if (!a_out.empty()) write_json(a_out, affine::kset_to_json(am, ts));
      std::vector<CertReport> reports;
      reports.push_back(affine::line_profile(am, ts, a_sample, a_seed));
      reports.push_back(affine::hilbert90_square_check(am));
      reports.push_back(affine::association_scheme_check(am, ts));
      bool lemmas = a_lemmas_on || (a_e == 1 && !a_lemmas_off);
      if (lemmas) {
        reports.push_back(affine::reduce_identity_check(am, ts));
        reports.push_back(affine::f_gamma_modulus_check(am));
        reports.push_back(affine::kloosterman_relation_suite(am));
        reports.push_back(charsum::stickelberger_pair_check(a_e, 1));
        reports.push_back(charsum::stickelberger_pair_check(a_e, 3));
      }
      return finish(reports, a_report, true);
    }

    if (g_cmd->parsed()) {
      std::vector<CertReport> reports;
      // modulus and principal-value identities across small fields
      for (auto [p, f] : {std::pair<i64, int>{5, 1}, {3, 2}, {5, 2}, {3, 4},
                          {5, 3}, {3, 6}}) {
        auto F = FieldTable::build(p, f);
        CertReport r;
        Stopwatch sw;
        r.check_name = "gauss_modulus_" + std::to_string(F->card());
        double worst = 0;
        for (i64 k = 2; k <= F->order(); ++k) {
          if (F->order() % k) continue;
          auto G = charsum::gauss_sum_numeric(*F, k, 1);
          worst = std::max(worst, std::abs(std::norm(G) - double(F->card())));
        }
        bool principal_ok =
            charsum::gauss_sum_numeric(*F, 1, 1) == std::complex<double>(-1, 0);
        r.parameters = {{"card", F->card()}};
        r.expected = {{"norm_sq", F->card()}, {"principal", -1}};
        r.observed = {{"worst_abs_error", worst}};
        r.pass = worst < 1e-6 && principal_ok;
        r.runtime_ms = sw.ms();
        reports.push_back(std::move(r));
      }
      auto E125 = FieldTable::build(5, 3);
      auto E729 = FieldTable::build(3, 6);
      auto F9 = FieldTable::build(3, 2);
      reports.push_back(charsum::eisenstein_check(*E125, 1, 31));
      reports.push_back(charsum::eisenstein_check(*E125, 1, 4));
      reports.push_back(charsum::eisenstein_check(*E729, 2, 8));
      reports.push_back(charsum::hasse_davenport_check(*F9, 2, 2));
      reports.push_back(charsum::hasse_davenport_check(*E125, 2, 2));
      reports.push_back(charsum::hasse_davenport_check(*E125, 2, 1));
      reports.push_back(charsum::stickelberger_pair_check(1, 1));
      reports.push_back(charsum::stickelberger_pair_check(1, 3));
      reports.push_back(charsum::stickelberger_pair_check(2, 1));
      reports.push_back(charsum::stickelberger_pair_check(2, 3));
      return finish(reports, g_report, true);
    }

    if (r_cmd->parsed()) return render_reports(load_json(r_report));
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
