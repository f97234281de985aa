#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clc/errors.hpp"
#include "clc/field.hpp"

namespace clc {

/// An element of Z[zeta_p] stored as integer multiplicities of the p-th
/// roots of unity: sum_j counts[j] * zeta^j. The representation is unique
/// up to adding multiples of (1,1,...,1); the normal form fixes
/// counts[p-1] = 0.
///
/// Counts are 64-bit. Every quantity in scope is a sum over at most q^6
/// field elements (q <= 81 under the default caps), and products of two
/// such values, so magnitudes stay far below 2^63; the table/transform
/// caps enforce the bound.
class CycInt {
 public:
  explicit CycInt(i64 p) : p_(p), c_(size_t(p), 0) {}
  static CycInt integer(i64 p, i64 m) {
    CycInt z(p);
    z.c_[0] = m;
    return z;
  }
  static CycInt zeta(i64 p, i64 t) {
    CycInt z(p);
    z.add_zeta(t);
    return z;
  }

  i64 p() const { return p_; }
  const std::vector<i64>& counts() const { return c_; }

  void add_zeta(i64 t, i64 mult = 1) {
    t %= p_;
    if (t < 0) t += p_;
    c_[size_t(t)] += mult;
  }

  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  CycInt operator-() const;
  CycInt operator*(const CycInt& o) const;  // cyclic convolution
  CycInt& operator*=(i64 s);
  friend CycInt operator*(CycInt a, i64 s) { return a *= s; }
  friend CycInt operator*(i64 s, CycInt a) { return a *= s; }

  /// Multiplies by zeta^t in place.
  void rotate(i64 t);
  CycInt conj() const;  // zeta -> zeta^{-1}

  /// Normal form: subtract counts[p-1] from every entry.
  CycInt normalized() const;
  bool operator==(const CycInt& o) const;
  bool operator!=(const CycInt& o) const { return !(*this == o); }

  bool is_integer() const;
  i64 to_integer() const;  // Internal error if not an integer
  bool equals_integer(i64 m) const;

  std::string str() const;

 private:
  i64 p_;
  std::vector<i64> c_;
};

/// An element of Q(i) with denominator a power of 2 (at most 4): the only
/// non-integral Gaussian values in scope are (1 +- i)/4 and q/2.
class GaussianRat {
 public:
  GaussianRat() = default;
  GaussianRat(i64 re, i64 im, i64 den = 1) : re_(re), im_(im), den_(den) {
    require(den_ == 1 || den_ == 2 || den_ == 4, Errc::BadModulus,
            "denominator must be 1, 2 or 4");
    reduce();
  }
  static GaussianRat i_pow(i64 t);  // i^t as a Gaussian integer

  i64 re_num() const { return re_; }
  i64 im_num() const { return im_; }
  i64 den() const { return den_; }
  bool is_gaussian_integer() const { return den_ == 1; }
  bool is_rational_integer() const { return den_ == 1 && im_ == 0; }

  GaussianRat operator+(const GaussianRat& o) const;
  GaussianRat operator-(const GaussianRat& o) const;
  GaussianRat operator*(const GaussianRat& o) const;
  GaussianRat operator-() const { return GaussianRat(-re_, -im_, den_); }
  GaussianRat conj() const { return GaussianRat(re_, -im_, den_); }
  bool operator==(const GaussianRat& o) const {
    return re_ == o.re_ && im_ == o.im_ && den_ == o.den_;
  }
  bool operator!=(const GaussianRat& o) const { return !(*this == o); }

  /// Exact |z|^2 for a Gaussian integer; errors if den > 1.
  i64 norm_sq() const;

  std::string str() const;

 private:
  void reduce() {
    while (den_ > 1 && re_ % 2 == 0 && im_ % 2 == 0) {
      re_ /= 2;
      im_ /= 2;
      den_ /= 2;
    }
  }
  i64 re_ = 0, im_ = 0, den_ = 1;
};

}  // namespace clc
