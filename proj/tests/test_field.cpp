#include <doctest.h>

#include <random>
#include <set>

#include "clc/field.hpp"

using namespace clc;

namespace {

// Independent polynomial-basis arithmetic over GF(p)[x]/(m), used as an
// oracle against the table path. Ascending coefficient vectors.
struct PolyOracle {
  i64 p;
  int f;
  std::vector<int> m;  // c_0..c_f, monic

  std::vector<int> from_vec(i64 packed) const {
    std::vector<int> v(f);
    for (int i = 0; i < f; ++i) {
      v[i] = int(packed % p);
      packed /= p;
    }
    return v;
  }
  i64 to_vec(const std::vector<int>& v) const {
    i64 packed = 0, pw = 1;
    for (int i = 0; i < f; ++i) {
      packed += v[i] * pw;
      pw *= p;
    }
    return packed;
  }
  std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<i64> t(2 * f, 0);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) t[i + j] += i64(a[i]) * b[j];
    for (int k = 2 * f - 1; k >= f; --k) {
      i64 c = ((t[k] % p) + p) % p;
      for (int i = 0; i <= f; ++i) t[k - f + i] -= c * m[i];
      t[k] = 0;
    }
    std::vector<int> r(f);
    for (int i = 0; i < f; ++i) r[i] = int(((t[i] % p) + p) % p);
    return r;
  }
  std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> r(f);
    for (int i = 0; i < f; ++i) r[i] = int((a[i] + b[i]) % p);
    return r;
  }
  std::vector<int> pow(std::vector<int> base, i64 e) const {
    std::vector<int> acc(f, 0);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }
};

}  // namespace

TEST_CASE("prime field GF(5) basics") {
  auto ft = FieldTable::build(5, 1);
  CHECK(ft->card() == 5);
  // canonical modulus is x+2, so omega = -2 = 3; 3 generates (Z/5)*
  CHECK(ft->modulus() == std::vector<int>{2, 1});
  CHECK(ft->from_int(3) == ft->omega());
  CHECK(ft->add(ft->from_int(2), ft->from_int(3)) == 0);
  CHECK(ft->mul(ft->from_int(2), ft->from_int(3)) == ft->from_int(6));
  CHECK(ft->to_int(ft->from_int(4)) == 4);
  CHECK(ft->inv(ft->from_int(2)) == ft->from_int(3));
}

TEST_CASE("GF(125) enumerates 124 nonzero elements") {
  auto ft = FieldTable::build(5, 3);
  CHECK(ft->order() == 124);
  std::vector<bool> seen(ft->card(), false);
  for (i64 k = 0; k < ft->order(); ++k) {
    i64 v = ft->vec(ft->from_log(k));
    CHECK(!seen[v]);
    seen[v] = true;
  }
  CHECK(ft->pow(ft->omega(), 124) == ft->one());
}

TEST_CASE("GF(81): omega^80 = 1 and omega^40 = -1") {
  auto ft = FieldTable::build(3, 4);
  CHECK(ft->pow(ft->omega(), 80) == ft->one());
  CHECK(ft->pow(ft->omega(), 40) == ft->neg(ft->one()));
}

TEST_CASE("GF(9) canonical modulus is deterministic") {
  auto ft = FieldTable::build(3, 2);
  CHECK(ft->modulus() == std::vector<int>{2, 1, 1});  // x^2 + x + 2
  auto ft2 = FieldTable::build(3, 2);
  CHECK(ft->generator_check_hash() == ft2->generator_check_hash());
}

TEST_CASE("Zech addition agrees with coefficient-vector addition on GF(81)") {
  auto ft = FieldTable::build(3, 4);
  for (i64 a = 0; a < ft->card(); ++a) {
    for (i64 b = 0; b < ft->card(); ++b) {
      i64 va = ft->vec(a), vb = ft->vec(b), vc = 0, pw = 1;
      for (int i = 0; i < 4; ++i) {
        vc += ((va % 3) + (vb % 3)) % 3 * pw;
        va /= 3;
        vb /= 3;
        pw *= 3;
      }
      CHECK(ft->vec(ft->add(a, b)) == vc);
    }
  }
}

TEST_CASE("log is additive on products") {
  auto ft = FieldTable::build(5, 3);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    i64 a = 1 + i64(rng() % ft->order());
    i64 b = 1 + i64(rng() % ft->order());
    CHECK(ft->log(ft->mul(a, b)) == (ft->log(a) + ft->log(b)) % ft->order());
  }
}

TEST_CASE("relative trace cross-checked by polynomial-basis oracle") {
  auto ft = FieldTable::build(5, 3);
  PolyOracle po{5, 3, ft->modulus()};
  std::mt19937_64 rng(11);
  auto check_one = [&](i64 r) {
    auto x = po.from_vec(ft->vec(r));
    auto tr = po.add(po.add(x, po.pow(x, 5)), po.pow(x, 25));
    CHECK(ft->vec(ft->rel_trace(r, 1)) == po.to_vec(tr));
  };
  check_one(ft->omega());
  check_one(0);
  check_one(ft->one());
  for (int i = 0; i < 50; ++i) check_one(i64(rng() % ft->card()));
  // Tr(1) = [E:F] = 3
  CHECK(ft->rel_trace(ft->one(), 1) == ft->from_int(3));
  CHECK(ft->rel_trace(0, 1) == 0);
}

TEST_CASE("trace transitivity through intermediate subfields") {
  auto ft = FieldTable::build(3, 6);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    i64 x = i64(rng() % ft->card());
    for (int d : {1, 2, 3}) {
      i64 t = ft->rel_trace(x, d);
      CHECK(ft->abs_trace(x) == ft->sub_abs_trace(t, d));
    }
  }
}

TEST_CASE("relative norm") {
  auto ft = FieldTable::build(5, 3);
  CHECK(ft->rel_norm(ft->one(), 1) == ft->one());
  CHECK(ft->rel_norm(0, 1) == 0);
  // norm(omega) = omega^{1+5+25}
  CHECK(ft->rel_norm(ft->omega(), 1) == ft->pow(ft->omega(), 31));
  CHECK(ft->in_subfield(ft->rel_norm(ft->omega(), 1), 1));

  SUBCASE("norm surjects onto the subfield's nonzero elements") {
    for (auto [p, f, d] : {std::array<i64, 3>{5, 3, 1}, {3, 6, 2}}) {
      auto E = FieldTable::build(p, int(f));
      std::set<i64> image;
      for (i64 t = 0; t < E->order(); ++t)
        image.insert(E->rel_norm(E->from_log(t), int(d)));
      CHECK(i64(image.size()) == E->sub_order(int(d)));
    }
  }
}

TEST_CASE("sgn") {
  auto f5 = FieldTable::build(5, 1);
  CHECK(f5->sgn(f5->from_int(4)) == 1);
  CHECK(f5->sgn(f5->from_int(2)) == -1);
  CHECK(f5->sgn(0) == 0);

  SUBCASE("multiplicative on GF(81)") {
    auto ft = FieldTable::build(3, 4);
    for (i64 a = 1; a < ft->card(); ++a)
      for (i64 b = 1; b < ft->card(); ++b)
        CHECK(ft->sgn(ft->mul(a, b)) == ft->sgn(a) * ft->sgn(b));
  }
  SUBCASE("characteristic 2 is rejected") {
    auto f8 = FieldTable::build(2, 3);
    CHECK_THROWS_AS((void)f8->sgn(f8->one()), Error);
  }
}

TEST_CASE("cyclotomic classes") {
  auto ft = FieldTable::build(5, 3);
  CHECK(ft->cyc_class(ft->from_log(124 % 124), 124) == 0);  // omega^{4N}, k = 4N
  CHECK(ft->cyc_class(ft->omega(), 1) == 0);
  CHECK_THROWS_AS((void)ft->cyc_class(0, 4), Error);
  CHECK_THROWS_AS((void)ft->cyc_class(ft->one(), 7), Error);  // 7 does not divide 124
}

TEST_CASE("field tower GF(5) in GF(125)") {
  FieldTower tw = FieldTower::make(5, 1);
  CHECK(tw.q == 5);
  CHECK(tw.N == 31);
  const FieldTable& E = tw.E();
  CHECK(E.pow(tw.w1, 31) == E.one());
  CHECK(E.pow(tw.w1, 1) != E.one());
  CHECK(i64(tw.f_elems.size()) == 5);
  for (i64 x : tw.f_elems) CHECK(tw.in_F(x));
  // w0 = omega^N is in F and the quartic class of w0 is 1
  CHECK(tw.in_F(tw.w0));
  CHECK(E.sub_cyc_class(tw.w0, 1, 4) == 1);
  // sgnF agrees with prime-field quadratic residues
  CHECK(tw.sgnF(E.from_int(4)) == 1);
  CHECK(tw.sgnF(E.from_int(2)) == -1);
  CHECK(tw.sgnF(0) == 0);
  // f_index round trip
  for (i64 x : tw.f_elems) CHECK(tw.from_f_index(tw.f_index(x)) == x);
}

TEST_CASE("Elem wrapper flags mixed tables") {
  auto a = FieldTable::build(5, 1);
  auto b = FieldTable::build(3, 2);
  Elem ea{a.get(), a->one()}, eb{b.get(), b->one()};
  CHECK_THROWS_AS((void)(ea + eb), Error);
  Elem s = ea + Elem{a.get(), a->from_int(2)};
  CHECK(s.rep == a->from_int(3));
}

TEST_CASE("build_field validates inputs") {
  CHECK_THROWS_AS((void)FieldTable::build(4, 1), Error);
  CHECK_THROWS_AS((void)FieldTable::build(3, 20), Error);
  // user modulus must be primitive: x^2+1 over GF(3) has a root of order 4
  CHECK_THROWS_AS((void)FieldTable::build(3, 2, std::vector<int>{1, 0, 1}), Error);
  auto ft = FieldTable::build(3, 2, std::vector<int>{2, 2, 1});  // x^2+2x+2
  CHECK(ft->order() == 8);
  CHECK(ft->pow(ft->omega(), 4) == ft->from_int(2));
}

TEST_CASE("subfield views reject non-divisor degrees") {
  auto ft = FieldTable::build(5, 3);
  CHECK_THROWS_AS((void)ft->rel_trace(ft->omega(), 2), Error);
  CHECK_THROWS_AS((void)ft->rel_norm(ft->omega(), 2), Error);
  CHECK_THROWS_AS((void)ft->sub_elements(2), Error);
  CHECK(ft->in_subfield(ft->from_int(3), 1));
  CHECK(!ft->in_subfield(ft->omega(), 1));
}
