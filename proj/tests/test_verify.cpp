#include <doctest.h>

#include "clc/verify.hpp"

using namespace clc;
using namespace clc::lineclass;
using namespace clc::verify;

namespace {

LineClassBundle& q5_bundle() {
  static LineClassBundle b = build_bundle(FieldTower::make(5, 1));
  return b;
}

}  // namespace

TEST_CASE("q=5 spectrum certificate") {
  charsum::CharSpectrum sp;
  CertReport r = certify_spectrum(q5_bundle(), &sp);
  CHECK(r.pass);
  const auto& h = r.observed.at("histogram");
  CHECK(h.at("1488") == 1);
  CHECK(h.at("113") == 1488);
  CHECK(h.at("-12") == 14136);
  CHECK(h.size() == 3);

  SUBCASE("spectrum matches a naive evaluation on random duals") {
    const FieldTower& tw = q5_bundle().tw;
    const FieldTable& E = tw.E();
    const i64 card = E.card();
    u64 state = 17;
    for (int it = 0; it < 100; ++it) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      i64 a = i64(state % u64(card)), bb = i64((state >> 20) % u64(card));
      CycInt naive(E.p());
      for (u64 k : q5_bundle().D_keys) {
        i64 rx = i64(k / u64(card)), ry = i64(k % u64(card));
        naive.add_zeta(E.abs_trace(E.add(E.mul(a, rx), E.mul(bb, ry))));
      }
      // locate the dual index of psi_{a,b} through the report path:
      // psi_{a,b}(D) must equal -x or q^3 - x, and the naive sum is the
      // ground truth.
      bool inD = q5_bundle().contains(bb, a);
      if (a == 0 && bb == 0) {
        CHECK(naive.equals_integer(1488));
      } else {
        CHECK(naive.equals_integer(inD ? 113 : -12));
      }
    }
  }
}

TEST_CASE("q=5 tight set certificate") {
  CertReport r = certify_tight_set(q5_bundle());
  CHECK(r.pass);
  const auto& h = r.observed.at("histogram");
  CHECK(h.at("97") == 372);
  CHECK(h.at("72") == 3534);  // 434 on the quadric + 3100 off
  CHECK(r.observed.at("points_in_M") == 372);
  CHECK(r.observed.at("points_on_quadric_off_M") == 434);
  CHECK(r.observed.at("points_off_quadric") == 3100);
}

TEST_CASE("q=5 two-intersection certificate with spectrum cross-check") {
  charsum::CharSpectrum sp;
  CertReport rs = certify_spectrum(q5_bundle(), &sp);
  REQUIRE(rs.pass);
  CertReport r = certify_two_intersection(q5_bundle(), &sp);
  CHECK(r.pass);
  const auto& h = r.observed.at("histogram");
  CHECK(h.at("97") == 372);
  CHECK(h.at("72") == 3534);
  CHECK(h.size() == 2);
}

TEST_CASE("q=5 T_u certificate") {
  CertReport r = certify_T_u(q5_bundle());
  CHECK(r.pass);
  // 2 is a nonsquare mod 5, so u in Xbar gives (q-1)/2 + q*n with
  // n = zeta^2 + zeta^3
  CHECK(r.expected.at("sgn_2") == -1);
  CHECK(r.expected.at("xbar") == json::array({2, 0, 5, 5, 0}));
  CHECK(r.expected.at("secant") == json::array({2, 0, 0, 0, 0}));
  CHECK(r.expected.at("passant") == json::array({-3, 0, 0, 0, 0}));
}

TEST_CASE("q=5 spreads meet L in x lines") {
  CertReport r = sampled_spread_check(q5_bundle(), 4, 0xfeed);
  CHECK(r.pass);
  CHECK(r.observed.at("regular") == 12);
  for (i64 c : r.observed.at("images").get<std::vector<i64>>()) CHECK(c == 12);
}

TEST_CASE("q=5 automorphism generators fix D") {
  CertReport r = certify_automorphisms(q5_bundle());
  CHECK(r.pass);
}

TEST_CASE("complementary line class certifies with parameter 13") {
  LineClassBundle c = extend_to_complementary(q5_bundle());
  charsum::CharSpectrum sp;
  CertReport rs = certify_spectrum(c, &sp);
  CHECK(rs.pass);
  const auto& h = rs.observed.at("histogram");
  CHECK(h.at("1612") == 1);
  CHECK(h.at("112") == 1612);
  CHECK(h.at("-13") == 14012);
  CertReport rt = certify_tight_set(c);
  CHECK(rt.pass);
  CHECK(rt.observed.at("histogram").at("103") == 403);
  CertReport ra = certify_automorphisms(c);
  CHECK(ra.pass);
}

TEST_CASE("an alternate valid (d0, beta) choice also certifies") {
  FieldTower tw = FieldTower::make(5, 1);
  auto IQ = geometry::conic_index_set(tw);
  i64 beta = tw.E().from_int(4);  // the other square of GF(5)*
  LineClassBundle b = build_bundle(std::move(tw), IQ[2], beta);
  CHECK(certify_spectrum(b).pass);
  CHECK(certify_tight_set(b).pass);
}

TEST_CASE("q=9 sampled two-intersection cross-consistency") {
  FieldTower tw = FieldTower::make(3, 2);
  LineClassBundle b = build_bundle(std::move(tw));
  charsum::CharSpectrum sp;
  CertReport rs = certify_spectrum(b, &sp);
  REQUIRE(rs.pass);
  CertReport r = certify_two_intersection(b, &sp, 10000, 0x5eed);
  CHECK(r.pass);
  const auto& h = r.observed.at("histogram");
  for (auto it = h.begin(); it != h.end(); ++it)
    CHECK((it.key() == "481" || it.key() == "400"));
}

TEST_CASE("run_checks dispatches by name") {
  auto reports = run_checks(q5_bundle(), {"tight", "auto"});
  CHECK(reports.size() == 2);
  CHECK(reports[0].check_name == "tight_set");
  CHECK(reports[1].check_name == "automorphisms");
  for (const auto& r : reports) CHECK(r.pass);
}

TEST_CASE("certificate reports round-trip byte-identically") {
  CertReport r = certify_automorphisms(q5_bundle());
  json j = r.to_json();
  CertReport r2 = CertReport::from_json(j);
  CHECK(r2.to_json().dump() == j.dump());
  CHECK(r2.pass == r.pass);
  CHECK(r2.check_name == r.check_name);

  SUBCASE("malformed reports are rejected") {
    json bad = j;
    bad.erase("expected");
    CHECK_THROWS_AS((void)CertReport::from_json(bad), Error);
  }
}

TEST_CASE("field descriptors rebuild identical tables") {
  const FieldTable& E = q5_bundle().tw.E();
  json d = field_descriptor_json(E);
  auto E2 = field_from_descriptor(d);
  CHECK(E2->generator_check_hash() == E.generator_check_hash());
  CHECK(E2->modulus() == E.modulus());
  json bad = d;
  bad["modulus"] = std::vector<int>{3, 1, 1, 1};  // wrong polynomial
  CHECK_THROWS_AS((void)field_from_descriptor(bad), Error);
}

TEST_CASE("certificates are independent of the primitive element choice") {
  // run the whole pipeline over a non-canonical primitive polynomial
  auto canonical = FieldTable::build(5, 3);
  std::vector<int> other;
  for (i64 m = 0; other.empty(); ++m) {
    std::vector<int> cand(4, 0);
    cand[3] = 1;
    i64 t = m;
    for (int i = 0; i < 3; ++i) {
      cand[i] = int(t % 5);
      t /= 5;
    }
    if (cand == canonical->modulus()) continue;
    try {
      (void)FieldTable::build(5, 3, cand);
      other = cand;
    } catch (const Error&) {
    }
  }
  auto E = FieldTable::build(5, 3, other);
  CHECK(E->modulus() != canonical->modulus());
  LineClassBundle b = build_bundle(FieldTower::over(E, 1));
  CHECK(certify_spectrum(b).pass);
  CHECK(certify_tight_set(b).pass);
  CHECK(certify_T_u(b).pass);
  CHECK(sampled_spread_check(b, 3, 0x5eed).pass);
}
