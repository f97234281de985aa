#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "clc/errors.hpp"

namespace clc {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Table-driven arithmetic for GF(p^f).
///
/// Element representation ("rep"): 0 encodes the zero element, 1+k encodes
/// omega^k, where omega is the residue class of the indeterminate modulo the
/// defining polynomial. Unless a modulus is supplied explicitly, the defining
/// polynomial is the lexicographically least monic primitive polynomial of
/// degree f over GF(p), comparing coefficient tuples (c_{f-1},...,c_0) as
/// integers. This makes tables bit-identical across runs and platforms.
///
/// Addition uses a Zech logarithm table, so every field operation is O(1)
/// after construction. Tables are immutable once built and can be shared
/// freely between threads.
class FieldTable {
 public:
  /// Builds GF(p^f) with the canonical modulus. `cap` bounds p^f; 0 means
  /// the default cap (3^12, overridable via the CLC_TABLE_CAP environment
  /// variable).
  static std::shared_ptr<const FieldTable> build(i64 p, int f, i64 cap = 0);

  /// Builds GF(p^f) from a user-supplied monic modulus, given as ascending
  /// coefficients c_0..c_f with c_f = 1. The polynomial is validated
  /// primitive.
  static std::shared_ptr<const FieldTable> build(i64 p, int f,
                                                 const std::vector<int>& modulus,
                                                 i64 cap = 0);

  static i64 default_cap();

  i64 p() const { return p_; }
  int f() const { return f_; }
  i64 card() const { return card_; }    // p^f
  i64 order() const { return order_; }  // p^f - 1

  /// Ascending coefficients c_0..c_f of the defining polynomial (c_f = 1).
  const std::vector<int>& modulus() const { return modulus_; }

  i64 zero() const { return 0; }
  i64 one() const { return 1; }
  i64 omega() const { return 2; }  // rep of omega = omega^1
  bool is_zero(i64 r) const { return r == 0; }

  i64 add(i64 a, i64 b) const;
  i64 neg(i64 a) const;
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 mul(i64 a, i64 b) const;
  i64 inv(i64 a) const;
  i64 div(i64 a, i64 b) const { return mul(a, inv(b)); }
  /// a^e; negative e allowed for nonzero a. pow(0,0) = 1.
  i64 pow(i64 a, i64 e) const;

  /// Discrete log of a nonzero element; errors on zero.
  i64 log(i64 r) const;
  i64 from_log(i64 k) const { return 1 + mod_order(k); }
  /// The prime-field element k mod p.
  i64 from_int(i64 k) const;
  /// Inverse of from_int for prime-field elements; -1 if r is not in GF(p).
  int to_int(i64 r) const;

  /// Absolute trace to GF(p), as an integer in [0,p).
  int abs_trace(i64 r) const { return abs_tr_[vec_of_rep_[r]]; }

  /// Packed coefficient vector of r in the polynomial basis 1,omega,...,
  /// omega^{f-1}: sum of c_i p^i.
  i64 vec(i64 r) const { return vec_of_rep_[r]; }
  i64 rep_of_vec(i64 v) const { return rep_of_vec_[v]; }

  // --- Subfield views (GF(p^d) for d | f), realized inside this table ---

  /// Multiplicative order of the subfield, p^d - 1.
  i64 sub_order(int d) const;
  /// Index step: the subfield's generator is omega^sub_step(d).
  i64 sub_step(int d) const { return order_ / sub_order(d); }
  bool in_subfield(i64 r, int d) const;
  /// All p^d elements of the subfield: [0] = 0, [1+s] = omega^{s*step}.
  std::vector<i64> sub_elements(int d) const;
  /// Discrete log base omega^step of a nonzero subfield element.
  i64 sub_log(i64 r, int d) const;
  i64 from_sub_log(i64 s, int d) const;
  /// Relative trace to GF(p^d): x + x^{p^d} + ... ; result lies in the
  /// subfield. Errors with NotASubfield unless d | f.
  i64 rel_trace(i64 r, int d) const;
  /// Relative norm to GF(p^d): x^{(p^f-1)/(p^d-1)} for nonzero x.
  i64 rel_norm(i64 r, int d) const;
  /// Absolute trace of a subfield element, taken within GF(p^d).
  int sub_abs_trace(i64 r, int d) const;

  /// Quadratic residue sign within this field: +1 for nonzero squares,
  /// -1 for nonsquares, 0 for zero. Errors in characteristic 2.
  int sgn(i64 r) const;

  /// Cyclotomic class index of a nonzero element: log(r) mod k.
  /// Requires k | order. Errors: ZeroElement, BadModulus.
  i64 cyc_class(i64 r, i64 k) const;
  /// Class index within the subfield GF(p^d), base omega^step.
  i64 sub_cyc_class(i64 r, int d, i64 k) const;

  /// Stable hash of (p, f, modulus, generator data) for descriptor checks.
  u64 generator_check_hash() const { return gen_hash_; }

 private:
  FieldTable() = default;
  void construct(i64 p, int f, const std::vector<int>& modulus);
  i64 mod_order(i64 k) const {
    k %= order_;
    return k < 0 ? k + order_ : k;
  }

  i64 p_ = 0;
  int f_ = 0;
  i64 card_ = 0;
  i64 order_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> vec_of_rep_;
  std::vector<std::uint32_t> rep_of_vec_;
  std::vector<std::uint32_t> zech_;  // rep of 1 + omega^k
  std::vector<std::int8_t> abs_tr_;  // indexed by vec
  std::vector<std::uint32_t> from_int_;
  u64 gen_hash_ = 0;
};

/// An element tied to its owning table; convenience wrapper for API-level
/// code and tests. Mixing tables in arithmetic raises MixedFields.
struct Elem {
  const FieldTable* ft = nullptr;
  i64 rep = 0;

  bool is_zero() const { return rep == 0; }
};

inline void check_same_table(const Elem& a, const Elem& b) {
  require(a.ft == b.ft, Errc::MixedFields, "elements from different tables");
}
inline Elem operator+(Elem a, Elem b) {
  check_same_table(a, b);
  return {a.ft, a.ft->add(a.rep, b.rep)};
}
inline Elem operator-(Elem a, Elem b) {
  check_same_table(a, b);
  return {a.ft, a.ft->sub(a.rep, b.rep)};
}
inline Elem operator*(Elem a, Elem b) {
  check_same_table(a, b);
  return {a.ft, a.ft->mul(a.rep, b.rep)};
}
inline Elem operator/(Elem a, Elem b) {
  check_same_table(a, b);
  return {a.ft, a.ft->div(a.rep, b.rep)};
}
inline bool operator==(Elem a, Elem b) { return a.ft == b.ft && a.rep == b.rep; }

/// The field tower GF(p) < F = GF(q) < E = GF(q^3) with the derived data
/// used throughout: N = q^2+q+1, w1 = omega^{q-1} of order N, w0 = omega^N
/// generating F*, the relative trace table of E over F, and the canonical
/// additive character exponent of F.
struct FieldTower {
  std::shared_ptr<const FieldTable> Ef;
  i64 q = 0;  // |F|
  int d = 0;  // F = GF(p^d)
  i64 N = 0;  // q^2 + q + 1
  i64 w1 = 0;
  i64 w0 = 0;
  std::vector<i64> w1pow;             // rep of w1^k for k in [0, N)
  std::vector<std::uint32_t> ftr;     // rep -> rep of Tr_{E/F}
  std::vector<std::int8_t> fpsi;      // rep -> abs trace within F, -1 off F
  std::vector<i64> f_elems;           // [0]=0, [1+s]=w0^s

  static FieldTower make(i64 p, int d, i64 cap = 0);
  /// Builds the tower data over an existing table of degree 3d.
  static FieldTower over(std::shared_ptr<const FieldTable> E, int d);

  const FieldTable& E() const { return *Ef; }
  i64 p() const { return Ef->p(); }
  i64 trace(i64 r) const { return ftr[r]; }
  bool in_F(i64 r) const { return fpsi[r] >= 0; }
  /// Exponent of the canonical additive character of F at an F-element.
  int psi_exp(i64 r) const;
  /// Quadratic residue sign of an F-element, taken within F. For this
  /// tower it coincides with the sign within E since [E:F] is odd.
  int sgnF(i64 r) const;
  i64 w1_pow(i64 k) const {
    k %= N;
    return w1pow[k < 0 ? k + N : k];
  }
  /// Canonical integer form of an F-element: 0 for zero, 1 + log_{w0}(x)
  /// otherwise. Used for JSON export of F-coordinates.
  i64 f_index(i64 r) const;
  i64 from_f_index(i64 idx) const;
};

}  // namespace clc
