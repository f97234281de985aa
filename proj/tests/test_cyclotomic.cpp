#include <doctest.h>

#include <random>

#include "clc/cyclotomic.hpp"

using namespace clc;

TEST_CASE("integer detection uses the zeta relation") {
  // counts (5,2,2,2,2) represents 5 + 2(zeta+...+zeta^4) = 3
  CycInt z(5);
  z.add_zeta(0, 5);
  for (i64 j = 1; j < 5; ++j) z.add_zeta(j, 2);
  CHECK(z.is_integer());
  CHECK(z.to_integer() == 3);
  CHECK(z.equals_integer(3));
  CHECK(z == CycInt::integer(5, 3));
}

TEST_CASE("sum of all p-th roots vanishes") {
  for (i64 p : {3, 5, 13}) {
    CycInt z(p);
    for (i64 j = 0; j < p; ++j) z.add_zeta(j);
    CHECK(z.equals_integer(0));
  }
}

TEST_CASE("product and conjugation") {
  // (1+zeta)(1+zeta^4) = 2 + zeta + zeta^4 over Z[zeta_5]
  CycInt a = CycInt::integer(5, 1) + CycInt::zeta(5, 1);
  CycInt b = CycInt::integer(5, 1) + CycInt::zeta(5, 4);
  CHECK(b == a.conj());
  CycInt prod = a * b;
  CycInt expect = CycInt::integer(5, 2) + CycInt::zeta(5, 1) + CycInt::zeta(5, 4);
  CHECK(prod == expect);
  CHECK((CycInt::zeta(5, 1) * CycInt::zeta(5, 4)).equals_integer(1));
}

TEST_CASE("normalization is a congruence") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    CycInt a(7), b(7);
    for (i64 j = 0; j < 7; ++j) {
      a.add_zeta(j, i64(rng() % 21) - 10);
      b.add_zeta(j, i64(rng() % 21) - 10);
    }
    CHECK((a + b).normalized().counts() ==
          (a.normalized() + b.normalized()).normalized().counts());
  }
}

TEST_CASE("rotation is multiplication by zeta^t") {
  CycInt a = CycInt::integer(5, 2) + CycInt::zeta(5, 3);
  CycInt b = a;
  b.rotate(4);
  CHECK(b == a * CycInt::zeta(5, 4));
}

TEST_CASE("Gaussian rationals") {
  GaussianRat a(1, -1, 4);  // (1-i)/4
  GaussianRat c(1, 1, 4);
  CHECK(a.conj() == c);
  CHECK((a + c) == GaussianRat(1, 0, 2));
  CHECK((a * GaussianRat(1, 1)) == GaussianRat(1, 0, 2));  // (1-i)(1+i)/4 = 1/2
  CHECK(GaussianRat(2, -2, 4) == GaussianRat(1, -1, 2));
  CHECK(GaussianRat(3, 4).norm_sq() == 25);
  CHECK(GaussianRat::i_pow(7) == GaussianRat(0, -1));
  CHECK(GaussianRat::i_pow(-1) == GaussianRat(0, -1));
  CHECK_THROWS_AS((void)GaussianRat(1, 0, 2).norm_sq(), Error);
  SUBCASE("denominators above 4 are rejected") {
    CHECK_THROWS_AS((void)(GaussianRat(1, 1, 4) * GaussianRat(1, 3, 4)), Error);
  }
}
