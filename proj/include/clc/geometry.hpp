#pragma once

#include <array>
#include <span>
#include <vector>

#include "clc/field.hpp"

namespace clc::geometry {

enum class LineType { tangent, secant, passant };

/// I_Q = { i in [0,N) : Tr(w1^{2i}) = 0 }, ascending. The q+1 points
/// <w1^i>, i in I_Q, form the conic Tr(x^2) = 0 of PG(2,q).
std::vector<i64> conic_index_set(const FieldTower& tw);

/// Classifies the line L_u = { <x> : Tr(omega^u x) = 0 } against the conic:
/// tangent iff Tr(omega^{2u}) = 0, secant iff that trace is a nonzero
/// square, passant otherwise.
LineType classify_line(const FieldTower& tw, i64 u);

/// Indices i in [0,N) of the points <w1^i> lying on L_u.
std::vector<i64> line_points(const FieldTower& tw, i64 u);

/// A line of PG(3,q): normalized Plucker coordinates in the order
/// (p01,p02,p03,p23,p31,p12) plus two normalized spanning points.
/// Coordinates are F-elements (reps in E).
struct PluckerLine {
  std::array<i64, 6> p{};
  std::array<std::array<i64, 4>, 2> span{};
};

/// The Klein correspondence between the E x E quadric model of Q+(5,q) and
/// lines of PG(3,q). Uses the power basis e_i = omega^{i-1} of E over F and
/// its trace-dual basis f_i (Tr(e_i f_j) = delta_ij): writing x = sum x_i e_i
/// and y = sum y_i f_i gives Q((x,y)) = sum x_i y_i, and
/// (p01,p02,p03,p23,p31,p12) := (x1,x2,x3,y1,y2,y3) lands on the Klein
/// quadric p01 p23 + p02 p31 + p03 p12 = 0.
class KleinMap {
 public:
  explicit KleinMap(const FieldTower& tw);

  const FieldTower& tower() const { return *tw_; }
  const std::array<i64, 3>& basis() const { return e_; }
  const std::array<i64, 3>& dual_basis() const { return f_; }

  /// (x1,x2,x3,y1,y2,y3) with x_i = Tr(f_i x), y_i = Tr(e_i y).
  std::array<i64, 6> coords(i64 x, i64 y) const;
  std::pair<i64, i64> point_from_coords(std::span<const i64> c) const;

  /// Scales so that the first nonzero coordinate (scanning x1,x2,x3,
  /// y1,y2,y3) becomes 1; unique representative per projective point.
  std::pair<i64, i64> normalize_point(i64 x, i64 y) const;

  /// Inverse Klein map; requires Tr(xy) = 0 (NotOnQuadric otherwise).
  PluckerLine klein_inverse(i64 x, i64 y) const;

 private:
  const FieldTower* tw_;
  std::array<i64, 3> e_{};
  std::array<i64, 3> f_{};
};

/// Plucker coordinates of the line through two distinct points of PG(3,q),
/// normalized. The spanning points are stored normalized as well.
PluckerLine line_through(const FieldTower& tw, const std::array<i64, 4>& u,
                         const std::array<i64, 4>& v);

/// Canonical packed key of a line (sub-log form of the six coordinates).
u64 line_key(const FieldTower& tw, const PluckerLine& line);

struct Spread {
  std::vector<PluckerLine> lines;  // q^2 + 1 pairwise disjoint lines
};

/// The regular spread induced by a GF(q^2)-structure on F^4: lines
/// L_(a,b) = <(1,0,a,b),(0,1,nu b, a + tau b)> for the first monic
/// irreducible x^2 - tau x - nu over F, together with x_0 = x_1 = 0.
Spread regular_spread(const FieldTower& tw);

/// Checks pairwise disjointness and that the union covers all
/// (q+1)(q^2+1) points.
bool is_spread(const FieldTower& tw, const Spread& s);

/// |{ m in M : Tr(x_P y_m + x_m y_P) = 0 }| for any point P of PG(5,q).
i64 polar_count(const FieldTower& tw, i64 px, i64 py,
                std::span<const std::pair<i64, i64>> M);

/// Rank of a k x 4 matrix over F.
int rank4(const FieldTower& tw, std::vector<std::array<i64, 4>> rows);

/// Seeded uniformly random invertible 4x4 matrix over F.
std::array<std::array<i64, 4>, 4> random_collineation(const FieldTower& tw,
                                                      std::uint64_t& state);

std::array<i64, 4> apply4(const FieldTower& tw,
                          const std::array<std::array<i64, 4>, 4>& mat,
                          const std::array<i64, 4>& v);

}  // namespace clc::geometry
