#include <doctest.h>

#include <complex>
#include <numbers>

#include "clc/affine.hpp"

using namespace clc;
using namespace clc::affine;

namespace {

AffineModel& e1_model() {
  static AffineModel am = AffineModel::make(1);
  return am;
}

}  // namespace

TEST_CASE("AG(2,9) model") {
  AffineModel& am = e1_model();
  CHECK(am.N() == 91);
  CHECK(am.J.size() == 10);
  // each affine line has exactly q points
  for (i64 i = 1; i < am.N(); ++i) {
    i64 cnt = 0;
    for (i64 j = 0; j < am.N(); ++j)
      if (!am.on_infinity(j) && am.on_infinity(i + j)) ++cnt;
    CHECK(cnt == am.q());
  }
}

TEST_CASE("K is a set of type (3,6) in AG(2,9)") {
  AffineModel& am = e1_model();
  TwoIntersectionSet ts = build_K(am);
  CHECK(ts.m == 3);
  CHECK(ts.n == 6);
  for (i64 k : ts.K) CHECK(!am.on_infinity(k));

  CertReport r = line_profile(am, ts);
  CHECK(r.pass);
  const auto& h = r.observed.at("histogram");
  CHECK(h.size() == 2);
  CHECK(h.contains("3"));
  CHECK(h.contains("6"));

  SUBCASE("complement has type (q-n, q-m)") {
    std::vector<char> inK(size_t(am.N()), 0);
    for (i64 k : ts.K) inK[size_t(k)] = 1;
    for (i64 i = 1; i < am.N(); ++i) {
      i64 cnt = 0;
      for (i64 j = 0; j < am.N(); ++j)
        if (!am.on_infinity(j) && !inK[size_t(j)] && am.on_infinity(i + j)) ++cnt;
      CHECK((cnt == am.q() - ts.n || cnt == am.q() - ts.m));
    }
  }
  SUBCASE("sampled profile also passes") {
    CertReport rs = line_profile(am, ts, 30, 0xabcd);
    CHECK(rs.pass);
  }
}

TEST_CASE("H sums") {
  AffineModel& am = e1_model();
  const FieldTable& E = am.tw.E();
  i64 gamma = E.omega();  // omega is not in F
  REQUIRE(!am.tw.in_F(gamma));

  GaussianRat H1 = h_sum(am, gamma, 1);
  GaussianRat H3 = h_sum(am, gamma, 3);
  CHECK(H1.conj() == H3);

  SUBCASE("9-term numeric oracle") {
    std::complex<double> acc = 0.0;
    const std::complex<double> I(0, 1);
    for (i64 x : am.tw.f_elems) {
      i64 v = E.add(E.one(), E.mul(gamma, x));
      acc += std::pow(I, double(3 * E.log(v) % 4)) *
             1.0;  // chi4(v); additive character absent in H sums
    }
    CHECK(std::abs(acc - std::complex<double>(double(H1.re_num()),
                                              double(H1.im_num()))) < 1e-9);
  }
  SUBCASE("gamma inside F is rejected") {
    CHECK_THROWS_AS((void)h_sum(am, am.tw.w0, 1), Error);
    CHECK_THROWS_AS((void)h_sum(am, 0, 1), Error);
  }
}

TEST_CASE("f_gamma equals the norm of gamma^{-1} + x") {
  AffineModel& am = e1_model();
  const FieldTower& tw = am.tw;
  const FieldTable& E = tw.E();
  for (i64 t = 1; t < E.order(); t += 37) {
    i64 gamma = E.from_log(t);
    if (tw.in_F(gamma)) continue;
    i64 gi = E.inv(gamma);
    i64 c2 = tw.trace(gi);
    i64 c1 = tw.trace(E.pow(gamma, -1 - tw.q));
    i64 c0 = E.rel_norm(gi, tw.d);
    for (i64 x : tw.f_elems) {
      i64 lhs = E.add(E.mul(E.add(E.mul(E.add(x, c2), x), c1), x), c0);
      CHECK(lhs == E.rel_norm(E.add(gi, x), tw.d));
      CHECK(lhs != 0);
    }
  }
}

TEST_CASE("reduction-lemma counting identity, exhaustive at e=1") {
  AffineModel& am = e1_model();
  TwoIntersectionSet ts = build_K(am);
  CertReport r = reduce_identity_check(am, ts);
  CHECK(r.pass);
  CHECK(r.observed.at("gammas_checked") == 720);
}

TEST_CASE("f_gamma_sum modulus and Kloosterman relation, exhaustive at e=1") {
  AffineModel& am = e1_model();
  CertReport rm = f_gamma_modulus_check(am);
  CHECK(rm.pass);
  CHECK(rm.observed.at("trace_zero_gammas") == 72);
  CHECK(rm.observed.at("trace_nonzero_gammas") == 648);

  CertReport rk = kloosterman_relation_suite(am);
  CHECK(rk.pass);
  CHECK(rk.observed.at("pairs_checked") == 1296);

  SUBCASE("gamma with Tr(gamma^{-1}) = 0 is routed to the other path") {
    const FieldTable& E = am.tw.E();
    for (i64 t = 0; t < E.order(); ++t) {
      i64 gamma = E.from_log(t);
      if (am.tw.in_F(gamma) || am.tw.trace(E.inv(gamma)) != 0) continue;
      CHECK_THROWS_AS((void)kloosterman_relation_check(am, gamma, 1), Error);
      break;
    }
  }
}

TEST_CASE("Hilbert-90 square lemma") {
  AffineModel& am = e1_model();
  CertReport r = hilbert90_square_check(am);
  CHECK(r.pass);
  CHECK(r.observed.at("trace_zero_gammas") == 72);
}

TEST_CASE("three-class association scheme at e=1") {
  AffineModel& am = e1_model();
  TwoIntersectionSet ts = build_K(am);
  CertReport r = association_scheme_check(am, ts);
  CHECK(r.pass);

  SUBCASE("psi(omega^a D_i) matches brute-force cyclotomic sums") {
    const FieldTower& tw = am.tw;
    const FieldTable& E = tw.E();
    // build D1 and D2 explicitly as element lists
    std::vector<i64> D1, D2;
    for (i64 t = 0; t < tw.N; ++t) {
      bool inJ = tw.trace(E.from_log(t)) == 0;
      bool inX = false;
      for (i64 k : ts.K)
        if ((tw.q - 1) * k % tw.N == t) inX = true;
      for (i64 c = 0; c < tw.q - 1; ++c) {
        if (inJ) D1.push_back(E.from_log(t + tw.N * c));
        if (inX) D2.push_back(E.from_log(t + tw.N * c));
      }
    }
    CHECK(i64(D1.size()) == tw.q * tw.q - 1);
    for (i64 a : {i64(0), i64(1), i64(17)}) {
      CycInt v1 = charsum::char_sum(E, D1, E.from_log(a));
      CycInt v2 = charsum::char_sum(E, D2, E.from_log(a));
      CHECK(v1.is_integer());
      CHECK(v2.is_integer());
      if (a == 0) {
        CHECK(v1.to_integer() == tw.q * tw.q - 1);
        CHECK(v2.to_integer() == -i64(ts.K.size()));
      } else {
        CHECK(v1.to_integer() == -1);
        i64 val = v2.to_integer();
        CHECK((val == -i64(ts.K.size()) + tw.q * ts.m ||
               val == -i64(ts.K.size()) + tw.q * ts.n));
      }
    }
  }
}

TEST_CASE("AG(2,81): type (36, 45)") {
  AffineModel am = AffineModel::make(2);
  TwoIntersectionSet ts = build_K(am);
  CHECK(ts.m == 36);
  CHECK(ts.n == 45);
  CertReport r = line_profile(am, ts);
  CHECK(r.pass);
  const auto& h = r.observed.at("histogram");
  CHECK(h.size() == 2);
  CHECK(h.contains("36"));
  CHECK(h.contains("45"));
}

TEST_CASE("K export") {
  AffineModel& am = e1_model();
  TwoIntersectionSet ts = build_K(am);
  auto j = kset_to_json(am, ts);
  CHECK(j.at("m") == 3);
  CHECK(j.at("n") == 6);
  CHECK(j.at("K").size() == ts.K.size());
}
