#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "clc/cyclotomic.hpp"
#include "clc/field.hpp"
#include "clc/report.hpp"

namespace clc::charsum {

/// Exact additive character sum sum_{x in subset} psi(scale * x), psi the
/// canonical additive character of the table's field.
CycInt char_sum(const FieldTable& F, std::span<const i64> subset, i64 scale);
CycInt char_sum(std::span<const Elem> subset, Elem scale);

/// Gauss period psi(C_i^{(k,q)}), exact.
CycInt gauss_period(const FieldTable& F, i64 k, i64 class_index);

/// Numeric Gauss sum for the canonical character of order `chi_order`
/// raised to `exponent`; didactic checks only (field order <= 3^8).
/// Exactly -1 when the character is principal.
std::complex<double> gauss_sum_numeric(const FieldTable& F, i64 chi_order,
                                       i64 exponent = 1);
/// G for chi(omega^t) = e^{2 pi i j t / (q-1)}; same cap.
std::complex<double> gauss_sum_by_exponent(const FieldTable& F, i64 j);

/// Eisenstein sum check over E/GF(p^sub_d): compares sum over the trace-one
/// coset representatives against G(chi)/G(chi') (or -G(chi)/q when the
/// restriction chi' is principal). chi is the canonical character of E of
/// the given order. Tolerance 1e-6.
CertReport eisenstein_check(const FieldTable& E, int sub_d, i64 chi_order);

/// Hasse-Davenport product formula check with theta of order ell and
/// chi(omega^t) = e^{2 pi i chi_exp t / (q-1)}. Tolerance 1e-6.
CertReport hasse_davenport_check(const FieldTable& F, i64 ell, i64 chi_exp);

/// Sum of the p-ary digits of a mod (p^f - 1); errors when p^f - 1 | a.
int digit_sum(i64 a, i64 p, int f);

/// For q = 3^{2e} and j in {1,3}: asserts s(h) + s(h + (q-1)j/4) >= 2e for
/// every h in 1..q-2 (h with the shifted index divisible by q-1 is the
/// boundary case handled in closed form), reconstructs the cyclic
/// add-with-carry sequence and checks the per-block digit inequality.
CertReport stickelberger_pair_check(int e, int j);

/// T_u = sum_{i in xbar} sum_{x in S} psi_F(Tr(omega^{u+i}) x), S the
/// nonzero squares of F. Exact.
CycInt t_sum(const FieldTower& tw, std::span<const i64> xbar, i64 u);

/// Generalized Kloosterman sum K_{j,z} = sum_{a in F*} chi4^j(a)
/// psi(za + a^{-1}) over F = GF(3^{2e}); always a Gaussian integer.
GaussianRat kloosterman_q4(const FieldTower& tw, int j, i64 z);

/// All character values of a subset of GF(p)^m at once, as count vectors:
/// counts[idx*p + j] = #{v in subset : <dual_idx, v> = j}.
struct CharSpectrum {
  i64 p = 0;
  int m = 0;
  i64 size = 0;  // p^m
  std::vector<i64> counts;

  CycInt value(i64 idx) const;
  /// Compressed histogram keyed by CycInt normal form.
  std::map<std::vector<i64>, i64> histogram() const;
};

i64 transform_default_cap();

/// m-stage radix-p butterfly over count vectors; O(m p^{m+2}) word ops.
/// value(w) = sum_{v: indicator[v]} zeta_p^{sum_k w_k v_k} with base-p
/// digit pairing. `cap` bounds p^m (default 3^12 or CLC_TRANSFORM_CAP).
CharSpectrum abelian_char_transform(i64 p, int m,
                                    const std::vector<std::uint8_t>& indicator,
                                    i64 cap = 0);

/// Exact Parseval identity: sum over duals of value * conj(value) equals
/// p^m * |subset| as a rational integer.
bool parseval_holds(const CharSpectrum& sp, i64 subset_size);

}  // namespace clc::charsum
