#include "clc/geometry.hpp"

#include <algorithm>

namespace clc::geometry {

namespace {

// next value of a splitmix64 stream; used for seeded sampling
u64 next_u64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

i64 uniform_below(u64& state, i64 n) {
  const u64 limit = ~u64(0) - (~u64(0) % u64(n));
  u64 v;
  do {
    v = next_u64(state);
  } while (v >= limit);
  return i64(v % u64(n));
}

std::array<i64, 4> normalize4(const FieldTable& E, std::array<i64, 4> v) {
  for (i64 c : v) {
    if (c != 0) {
      i64 s = E.inv(c);
      for (auto& x : v) x = E.mul(s, x);
      return v;
    }
  }
  fail(Errc::Internal, "zero vector has no projective representative");
}

}  // namespace

std::vector<i64> conic_index_set(const FieldTower& tw) {
  std::vector<i64> iq;
  for (i64 i = 0; i < tw.N; ++i) {
    i64 w = tw.w1_pow(i);
    if (tw.trace(tw.E().mul(w, w)) == 0) iq.push_back(i);
  }
  require(i64(iq.size()) == tw.q + 1, Errc::Internal,
          "conic must have q+1 points");
  return iq;
}

LineType classify_line(const FieldTower& tw, i64 u) {
  i64 t = tw.trace(tw.E().from_log(2 * u));
  switch (tw.sgnF(t)) {
    case 0: return LineType::tangent;
    case 1: return LineType::secant;
    default: return LineType::passant;
  }
}

std::vector<i64> line_points(const FieldTower& tw, i64 u) {
  std::vector<i64> pts;
  i64 wu = tw.E().from_log(u);
  for (i64 i = 0; i < tw.N; ++i)
    if (tw.trace(tw.E().mul(wu, tw.w1_pow(i))) == 0) pts.push_back(i);
  return pts;
}

KleinMap::KleinMap(const FieldTower& tw) : tw_(&tw) {
  const FieldTable& E = tw.E();
  for (int i = 0; i < 3; ++i) e_[i] = E.from_log(i);

  // Invert the Gram matrix Tr(e_i e_j) over F by Gauss-Jordan.
  i64 g[3][6];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g[i][j] = tw.trace(E.mul(e_[i], e_[j]));
    for (int j = 3; j < 6; ++j) g[i][j] = (j - 3 == i) ? E.one() : 0;
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    while (piv < 3 && g[piv][col] == 0) ++piv;
    require(piv < 3, Errc::Internal, "trace form is degenerate");
    std::swap_ranges(g[col], g[col] + 6, g[piv]);
    i64 s = E.inv(g[col][col]);
    for (int j = 0; j < 6; ++j) g[col][j] = E.mul(s, g[col][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || g[r][col] == 0) continue;
      i64 c = g[r][col];
      for (int j = 0; j < 6; ++j)
        g[r][j] = E.sub(g[r][j], E.mul(c, g[col][j]));
    }
  }
  for (int j = 0; j < 3; ++j) {
    i64 acc = 0;
    for (int k = 0; k < 3; ++k) acc = E.add(acc, E.mul(g[j][k + 3], e_[k]));
    f_[j] = acc;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      require(tw.trace(E.mul(e_[i], f_[j])) == (i == j ? E.one() : 0),
              Errc::Internal, "basis is not trace-dual");
}

std::array<i64, 6> KleinMap::coords(i64 x, i64 y) const {
  const FieldTable& E = tw_->E();
  std::array<i64, 6> c{};
  for (int i = 0; i < 3; ++i) c[i] = tw_->trace(E.mul(f_[i], x));
  for (int i = 0; i < 3; ++i) c[3 + i] = tw_->trace(E.mul(e_[i], y));
  return c;
}

std::pair<i64, i64> KleinMap::point_from_coords(std::span<const i64> c) const {
  const FieldTable& E = tw_->E();
  i64 x = 0, y = 0;
  for (int i = 0; i < 3; ++i) {
    x = E.add(x, E.mul(c[i], e_[i]));
    y = E.add(y, E.mul(c[3 + i], f_[i]));
  }
  return {x, y};
}

std::pair<i64, i64> KleinMap::normalize_point(i64 x, i64 y) const {
  const FieldTable& E = tw_->E();
  auto c = coords(x, y);
  for (i64 v : c) {
    if (v != 0) {
      i64 s = E.inv(v);
      return {E.mul(s, x), E.mul(s, y)};
    }
  }
  fail(Errc::Internal, "zero vector has no projective representative");
}

PluckerLine line_through(const FieldTower& tw, const std::array<i64, 4>& u,
                         const std::array<i64, 4>& v) {
  const FieldTable& E = tw.E();
  auto minor = [&](int i, int j) {
    return E.sub(E.mul(u[i], v[j]), E.mul(u[j], v[i]));
  };
  PluckerLine line;
  line.p = {minor(0, 1), minor(0, 2), minor(0, 3),
            minor(2, 3), minor(3, 1), minor(1, 2)};
  i64 lead = 0;
  for (i64 c : line.p)
    if (c != 0) {
      lead = E.inv(c);
      break;
    }
  require(lead != 0, Errc::Internal, "points do not span a line");
  for (auto& c : line.p) c = E.mul(lead, c);
  line.span = {normalize4(E, u), normalize4(E, v)};
  return line;
}

PluckerLine KleinMap::klein_inverse(i64 x, i64 y) const {
  const FieldTower& tw = *tw_;
  const FieldTable& E = tw.E();
  require(!(x == 0 && y == 0), Errc::NotOnQuadric, "zero vector");
  require(tw.trace(E.mul(x, y)) == 0, Errc::NotOnQuadric,
          "point is not on the quadric");
  auto c = coords(x, y);
  const i64 p01 = c[0], p02 = c[1], p03 = c[2];
  const i64 p23 = c[3], p31 = c[4], p12 = c[5];

  // Antisymmetric matrix of the Plucker coordinates; its columns span the
  // line (rank 2 exactly when the quadratic relation holds).
  std::array<std::array<i64, 4>, 4> P{};
  auto set = [&](int i, int j, i64 v) {
    P[i][j] = v;
    P[j][i] = E.neg(v);
  };
  set(0, 1, p01);
  set(0, 2, p02);
  set(0, 3, p03);
  set(2, 3, p23);
  set(3, 1, p31);
  set(1, 2, p12);

  std::array<i64, 4> col1{}, col2{};
  int c1 = -1;
  for (int j = 0; j < 4 && c1 < 0; ++j) {
    for (int i = 0; i < 4; ++i)
      if (P[i][j] != 0) {
        c1 = j;
        break;
      }
  }
  require(c1 >= 0, Errc::NotOnQuadric, "zero Plucker vector");
  for (int i = 0; i < 4; ++i) col1[i] = P[i][c1];
  int lead = 0;
  while (col1[lead] == 0) ++lead;
  bool found = false;
  for (int j = c1 + 1; j < 4 && !found; ++j) {
    // subtract the col1 component and test for a nonzero remainder
    i64 s = E.div(P[lead][j], col1[lead]);
    for (int i = 0; i < 4; ++i) {
      i64 r = E.sub(P[i][j], E.mul(s, col1[i]));
      if (r != 0) {
        for (int k = 0; k < 4; ++k) col2[k] = P[k][j];
        found = true;
        break;
      }
    }
  }
  require(found, Errc::Internal, "Plucker matrix has rank < 2");

  PluckerLine line = line_through(tw, col1, col2);
  std::array<i64, 6> in{p01, p02, p03, p23, p31, p12};
  for (i64 v : in) {
    if (v != 0) {
      i64 s = E.inv(v);
      for (auto& w : in) w = E.mul(s, w);
      break;
    }
  }
  require(line.p == in, Errc::Internal,
          "span does not reproduce the Plucker coordinates");
  return line;
}

u64 line_key(const FieldTower& tw, const PluckerLine& line) {
  u64 key = 0;
  for (int i = 5; i >= 0; --i) key = key * u64(tw.q) + u64(tw.f_index(line.p[i]));
  return key;
}

Spread regular_spread(const FieldTower& tw) {
  const FieldTable& E = tw.E();
  // first irreducible x^2 - tau x - nu over F in sub-log enumeration order
  i64 tau = 0, nu = 0;
  bool have = false;
  for (i64 ti = 0; ti < tw.q && !have; ++ti) {
    for (i64 ni = 0; ni < tw.q && !have; ++ni) {
      i64 t = tw.f_elems[ti], n = tw.f_elems[ni];
      bool root = false;
      for (i64 x : tw.f_elems) {
        i64 val = E.sub(E.sub(E.mul(x, x), E.mul(t, x)), n);
        if (val == 0) {
          root = true;
          break;
        }
      }
      if (!root) {
        tau = t;
        nu = n;
        have = true;
      }
    }
  }
  require(have, Errc::Internal, "no irreducible quadratic over F");

  Spread s;
  s.lines.reserve(tw.q * tw.q + 1);
  for (i64 ai = 0; ai < tw.q; ++ai) {
    for (i64 bi = 0; bi < tw.q; ++bi) {
      i64 a = tw.f_elems[ai], b = tw.f_elems[bi];
      std::array<i64, 4> u{E.one(), 0, a, b};
      std::array<i64, 4> v{0, E.one(), E.mul(nu, b), E.add(a, E.mul(tau, b))};
      s.lines.push_back(line_through(tw, u, v));
    }
  }
  s.lines.push_back(line_through(tw, {0, 0, E.one(), 0}, {0, 0, 0, E.one()}));
  return s;
}

bool is_spread(const FieldTower& tw, const Spread& s) {
  const FieldTable& E = tw.E();
  if (i64(s.lines.size()) != tw.q * tw.q + 1) return false;
  std::vector<u64> keys;
  keys.reserve(s.lines.size() * (tw.q + 1));
  for (const auto& line : s.lines) {
    const auto& u = line.span[0];
    const auto& v = line.span[1];
    auto push = [&](const std::array<i64, 4>& pt) {
      auto n = normalize4(E, pt);
      u64 key = 0;
      for (int i = 3; i >= 0; --i) key = key * u64(tw.q) + u64(tw.f_index(n[i]));
      keys.push_back(key);
    };
    push(u);
    for (i64 mu : tw.f_elems) {
      std::array<i64, 4> pt;
      for (int i = 0; i < 4; ++i) pt[i] = E.add(E.mul(mu, u[i]), v[i]);
      push(pt);
    }
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) return false;
  return i64(keys.size()) == (tw.q + 1) * (tw.q * tw.q + 1);
}

i64 polar_count(const FieldTower& tw, i64 px, i64 py,
                std::span<const std::pair<i64, i64>> M) {
  const FieldTable& E = tw.E();
  i64 count = 0;
  for (const auto& [mx, my] : M)
    if (tw.trace(E.add(E.mul(px, my), E.mul(mx, py))) == 0) ++count;
  return count;
}

int rank4(const FieldTower& tw, std::vector<std::array<i64, 4>> rows) {
  const FieldTable& E = tw.E();
  int rank = 0;
  for (int col = 0; col < 4 && rank < int(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    i64 s = E.inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = E.mul(s, v);
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      i64 c = rows[r][col];
      for (int j = 0; j < 4; ++j)
        rows[r][j] = E.sub(rows[r][j], E.mul(c, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

std::array<std::array<i64, 4>, 4> random_collineation(const FieldTower& tw,
                                                      u64& state) {
  std::array<std::array<i64, 4>, 4> m;
  for (;;) {
    for (auto& row : m)
      for (auto& v : row) v = tw.f_elems[size_t(uniform_below(state, tw.q))];
    std::vector<std::array<i64, 4>> rows(m.begin(), m.end());
    if (rank4(tw, rows) == 4) return m;
  }
}

std::array<i64, 4> apply4(const FieldTower& tw,
                          const std::array<std::array<i64, 4>, 4>& mat,
                          const std::array<i64, 4>& v) {
  const FieldTable& E = tw.E();
  std::array<i64, 4> out{};
  for (int i = 0; i < 4; ++i) {
    i64 acc = 0;
    for (int j = 0; j < 4; ++j) acc = E.add(acc, E.mul(mat[i][j], v[j]));
    out[i] = acc;
  }
  return out;
}

}  // namespace clc::geometry
