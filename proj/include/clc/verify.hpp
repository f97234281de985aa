#pragma once

#include "clc/charsum.hpp"
#include "clc/clclass.hpp"
#include "clc/report.hpp"

namespace clc::verify {

using lineclass::LineClassBundle;

/// Transforms the indicator of D over GF(p)^{6d} and asserts: the principal
/// value is |D|, every nonprincipal value is -x or q^3-x, the value is
/// q^3-x exactly when the swapped dual pair (b,a) lies in D, the large
/// value has multiplicity |D|, the orthogonality sum vanishes, and the
/// Parseval identity holds. Optionally hands the spectrum back for reuse.
CertReport certify_spectrum(const LineClassBundle& b,
                            charsum::CharSpectrum* out_spectrum = nullptr,
                            i64 transform_cap = 0);

/// Exhaustive polar counts over all points of PG(5,q): x(q+1)+q^2 on M and
/// x(q+1) elsewhere (on or off the quadric), with the multiplicity split.
CertReport certify_tight_set(const LineClassBundle& b);

/// Recounts |H ∩ M| over hyperplanes directly and asserts the two sizes
/// h1 = x(q+1)+q^2 and h2 = x(q+1), both occurring. With a spectrum, also
/// cross-checks the identity psi(D) = -|M| + q |H ∩ M| per hyperplane.
/// sample > 0 checks a seeded sample of hyperplanes instead of all.
CertReport certify_two_intersection(const LineClassBundle& b,
                                    const charsum::CharSpectrum* sp = nullptr,
                                    i64 sample = 0, u64 seed = 0x5eed);

/// Computes T_u exactly for every u in [0, 2N), classifies u against the
/// trace sets T and T', and asserts the four claimed values.
CertReport certify_T_u(const LineClassBundle& b);

/// The regular spread and `trials` seeded collineation images of it each
/// meet L in exactly x lines.
CertReport sampled_spread_check(const LineClassBundle& b, int trials = 10,
                                u64 seed = 0x5eed);

/// D is fixed setwise by g:(x,y)->(w1 x, w1^{-1} y), by the Frobenius
/// (x,y)->(x^q,y^q), and by F*-scalars.
CertReport certify_automorphisms(const LineClassBundle& b);

/// Runs the checks selected by name ("spectrum", "tight", "two-int", "tu",
/// "spread", "auto", or "all").
std::vector<CertReport> run_checks(const LineClassBundle& b,
                                   const std::vector<std::string>& names,
                                   int spread_trials = 10, u64 seed = 0x5eed,
                                   i64 two_int_sample = 0,
                                   i64 transform_cap = 0);

}  // namespace clc::verify
