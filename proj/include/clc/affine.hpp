#pragma once

#include <json.hpp>

#include "clc/charsum.hpp"
#include "clc/field.hpp"
#include "clc/report.hpp"

namespace clc::affine {

/// AG(2, q) for q = 3^{2e}, modeled on the w1-indexed points of PG(2,q):
/// points are Z_N minus the line at infinity J = { i : Tr(w1^i) = 0 },
/// and the affine lines are l_i = { j not in J : Tr(w1^{i+j}) = 0 } for
/// 1 <= i <= N-1.
struct AffineModel {
  FieldTower tw;
  int e = 0;
  std::vector<i64> J;
  std::vector<char> trace_zero;  // indexed by i mod N

  static AffineModel make(int e, i64 cap = 0);

  i64 q() const { return tw.q; }
  i64 N() const { return tw.N; }
  bool on_infinity(i64 i) const { return trace_zero[size_t(((i % N()) + N()) % N())]; }
};

/// chi4^j(x) for the order-4 character of E* normalized by chi4(omega^N) = i.
GaussianRat chi4_pow(const FieldTower& tw, i64 rep, i64 j);

struct TwoIntersectionSet {
  std::vector<i64> K;  // sorted, subset of Z_N \ J
  i64 m = 0, n = 0;    // (q - 3^e)/2 and (q + 3^e)/2
};

/// K = { k in Z_N : Tr(w1^k) in C_0^{(4,q)} u C_1^{(4,q)} }, quartic
/// classes taken with respect to w0 = omega^N.
TwoIntersectionSet build_K(const AffineModel& am);

/// Counts |K ∩ l_i| for every affine line (or a seeded sample when
/// sample_lines > 0) and asserts the counts are m or n, both occurring.
CertReport line_profile(const AffineModel& am, const TwoIntersectionSet& ts,
                        i64 sample_lines = 0, u64 seed = 0x5eed);

/// H_{gamma,j} = sum_{x in F} chi4^j(1 + gamma x), exact in Z[i].
GaussianRat h_sum(const AffineModel& am, i64 gamma, int j);

/// sum_{x in F} chi4^{-j}(f_gamma(x)) with f_gamma(x) = x^3 +
/// Tr(gamma^{-1}) x^2 + Tr(gamma^{-1-q}) x + Norm(gamma^{-1}).
GaussianRat f_gamma_sum(const AffineModel& am, i64 gamma, int j);

/// Counting identity of the reduction lemma, for every gamma in E \ F:
/// #{ i : Tr(w1^i) in C0 u C1, Tr(gamma w1^i) = 0 } = q/2 + a H_{gamma,1}
/// + c H_{gamma,3} with a = conj(c) = (1-i)/4.
CertReport reduce_identity_check(const AffineModel& am,
                                 const TwoIntersectionSet& ts);

/// |f_gamma_sum|^2 = 3^{2e} for every gamma in E \ F and j in {1,3}.
CertReport f_gamma_modulus_check(const AffineModel& am);

/// For Tr(gamma^{-1}) != 0: |f_gamma_sum(gamma,j)| matches the generalized
/// Kloosterman sum K_{j,z} at z = -y Tr(gamma^{-1})^{-1}, with
/// y = a0 - (a1^2 a2)^{1/3} + a1 a2 built from the quadratic completion.
CertReport kloosterman_relation_check(const AffineModel& am, i64 gamma, int j);
/// The same over all valid gamma and j in {1,3}.
CertReport kloosterman_relation_suite(const AffineModel& am);

/// Every gamma in E \ F with Tr(gamma) = 0 has Tr(gamma^{1+q}) a nonzero
/// square; includes the gamma = y - y^q spot identity.
CertReport hilbert90_square_check(const AffineModel& am, int spot_checks = 100,
                                  u64 seed = 0x5eed);

/// The three-class association scheme behind K: with D1, D2, D3 the coset
/// unions over J, X and the rest (omega-indexed model), each psi(omega^a D_i)
/// is constant on {0}, Y, and the complement, at the stated values.
CertReport association_scheme_check(const AffineModel& am,
                                    const TwoIntersectionSet& ts);

nlohmann::json kset_to_json(const AffineModel& am, const TwoIntersectionSet& ts);

}  // namespace clc::affine
