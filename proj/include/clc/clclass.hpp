#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "clc/cyclotomic.hpp"
#include "clc/field.hpp"
#include "clc/geometry.hpp"

namespace clc::lineclass {

using geometry::PluckerLine;

/// The constructed line-class data for one (q, d0, beta) choice: the conic
/// indices I_Q, the set X and its log image Xbar in Z_{2N}, the split
/// Xbar = 2A u (2B+N), the index set I_X in Z_{4N}, the vector set D in
/// E x E, the projective point set M on the quadric, and the line set L
/// under the Klein correspondence. All sets are sorted.
struct LineClassBundle {
  FieldTower tw;
  i64 q = 0, N = 0, x = 0;  // x = (q^2-1)/2, or (q^2+1)/2 for the complement
  i64 d0 = 0, beta = 0;     // beta is an F-element rep
  std::vector<i64> IQ;
  std::vector<i64> X_logs;  // log_omega of the elements of X
  std::vector<i64> Xbar;    // residues mod 2N
  std::vector<i64> A, B;    // subsets of Z_N
  std::vector<i64> IX;      // residues mod 4N
  std::vector<u64> D_keys;  // sorted rep_x * card + rep_y
  std::vector<std::pair<i64, i64>> M;  // normalized quadric points
  std::vector<PluckerLine> L;
  bool complementary = false;

  u64 key(i64 rx, i64 ry) const {
    return u64(rx) * u64(tw.E().card()) + u64(ry);
  }
  bool contains(i64 rx, i64 ry) const;
};

/// X = { w1^{d_i} Tr(w1^{d0+d_i}) : d_i != d0 } u { 2 beta w1^{d0} } and
/// Xbar = logs mod 2N. Validates q mod 12, d0 in I_Q, sgn(beta) = 1.
/// Returns (X_logs, Xbar).
std::pair<std::vector<i64>, std::vector<i64>> build_X(const FieldTower& tw,
                                                      const std::vector<i64>& IQ,
                                                      i64 d0, i64 beta);

/// Splits Xbar into A (even residues r = 2t) and B (odd residues
/// r = 2t + N); N odd makes the split exclusive.
std::pair<std::vector<i64>, std::vector<i64>> decompose_AB(
    const FieldTower& tw, const std::vector<i64>& Xbar);

/// I_X = 4A u (4A+N) u (4B+2N) u (4B+3N) in Z_{4N}; size 2(q+1) and
/// Tr(omega^l) = 0 for every member (asserted, not assumed).
std::vector<i64> build_IX(const FieldTower& tw, const std::vector<i64>& Xbar);

/// D = { (x y, x y^{-1} z omega^l) } over x in F*, y in <w1>,
/// z in <omega^{4N}>, l in I_X; deduplicated and size-checked.
std::vector<u64> build_D(const FieldTower& tw, const std::vector<i64>& IX);

/// Fills M (each point covering exactly q-1 vectors of D) and L.
void build_M_L(LineClassBundle& b);

/// Full pipeline. d0 = -1 selects min(I_Q); beta = -1 selects 1.
LineClassBundle build_bundle(FieldTower tw, i64 d0 = -1, i64 beta = -1);

/// D' = D u {(y,0) : y in E*}, a line class with parameter (q^2+1)/2.
LineClassBundle extend_to_complementary(const LineClassBundle& b);

CycInt t_sum(const LineClassBundle& b, i64 u);

nlohmann::json bundle_to_json(const LineClassBundle& b);
LineClassBundle bundle_from_json(const nlohmann::json& j, i64 cap = 0);

}  // namespace clc::lineclass
