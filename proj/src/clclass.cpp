#include "clc/clclass.hpp"

#include <algorithm>
#include <map>

#include "clc/charsum.hpp"
#include "clc/report.hpp"

namespace clc::lineclass {

bool LineClassBundle::contains(i64 rx, i64 ry) const {
  return std::binary_search(D_keys.begin(), D_keys.end(), key(rx, ry));
}

std::pair<std::vector<i64>, std::vector<i64>> build_X(const FieldTower& tw,
                                                      const std::vector<i64>& IQ,
                                                      i64 d0, i64 beta) {
  const FieldTable& E = tw.E();
  require(tw.q % 12 == 5 || tw.q % 12 == 9, Errc::BadResidue,
          "q mod 12 must be 5 or 9");
  require((tw.q - 1) % 4 == 0, Errc::BadResidue, "4 must divide q-1");
  require(std::binary_search(IQ.begin(), IQ.end(), d0), Errc::BadTangent,
          "d0 must index a conic point");
  require(tw.in_F(beta) && tw.sgnF(beta) == 1, Errc::BadBeta,
          "beta must be a nonzero square of F");

  std::vector<i64> logs;
  logs.reserve(tw.q + 1);
  i64 wd0 = tw.w1_pow(d0);
  for (i64 di : IQ) {
    if (di == d0) continue;
    i64 t = tw.trace(E.mul(wd0, tw.w1_pow(di)));
    require(t != 0, Errc::Internal, "distinct conic points are not conjugate");
    logs.push_back(E.log(E.mul(tw.w1_pow(di), t)));
  }
  logs.push_back(E.log(E.mul(E.mul(E.from_int(2), beta), wd0)));
  require(i64(logs.size()) == tw.q + 1, Errc::Internal, "|X| != q+1");

  std::vector<i64> xbar;
  xbar.reserve(logs.size());
  for (i64 t : logs) xbar.push_back(t % (2 * tw.N));
  std::sort(xbar.begin(), xbar.end());
  require(std::adjacent_find(xbar.begin(), xbar.end()) == xbar.end(),
          Errc::Internal, "Xbar has fewer than q+1 residues");
  return {std::move(logs), std::move(xbar)};
}

std::pair<std::vector<i64>, std::vector<i64>> decompose_AB(
    const FieldTower& tw, const std::vector<i64>& Xbar) {
  const i64 N = tw.N;
  std::vector<i64> A, B;
  for (i64 r : Xbar) {
    if (r % 2 == 0) {
      A.push_back(r / 2);
    } else {
      i64 t = (r - N) / 2;  // r - N is even since N is odd
      t %= N;
      if (t < 0) t += N;
      require((2 * t + N) % (2 * N) == r, Errc::DecompositionFailure,
              "residue fits neither 2A nor 2B+N");
      B.push_back(t);
    }
  }
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  require(i64(A.size() + B.size()) == tw.q + 1, Errc::DecompositionFailure,
          "|A| + |B| != q+1");
  return {std::move(A), std::move(B)};
}

std::vector<i64> build_IX(const FieldTower& tw, const std::vector<i64>& Xbar) {
  auto [A, B] = decompose_AB(tw, Xbar);
  const i64 N = tw.N, four_n = 4 * tw.N;
  std::vector<i64> ix;
  ix.reserve(2 * (tw.q + 1));
  for (i64 t : A) {
    ix.push_back(4 * t % four_n);
    ix.push_back((4 * t + N) % four_n);
  }
  for (i64 t : B) {
    ix.push_back((4 * t + 2 * N) % four_n);
    ix.push_back((4 * t + 3 * N) % four_n);
  }
  std::sort(ix.begin(), ix.end());
  require(std::adjacent_find(ix.begin(), ix.end()) == ix.end() &&
              i64(ix.size()) == 2 * (tw.q + 1),
          Errc::Internal, "|I_X| != 2(q+1)");
  for (i64 l : ix)
    require(tw.trace(tw.E().from_log(l)) == 0, Errc::Internal,
            "Tr(omega^l) != 0 for l = " + std::to_string(l) +
                "; I_X left the quadric direction set");
  return ix;
}

std::vector<u64> build_D(const FieldTower& tw, const std::vector<i64>& IX) {
  const FieldTable& E = tw.E();
  const i64 card = E.card();
  const i64 zcount = (tw.q - 1) / 4;
  std::vector<u64> keys;
  keys.reserve(size_t((tw.q - 1) * tw.N * zcount) * IX.size());

  std::vector<i64> zpow(zcount);
  for (i64 j = 0; j < zcount; ++j) zpow[j] = E.from_log(4 * tw.N * j);

  for (i64 l : IX) {
    i64 wl = E.from_log(l);
    for (i64 j = 0; j < zcount; ++j) {
      i64 zl = E.mul(zpow[j], wl);
      for (i64 s = 1; s <= tw.q - 1; ++s) {
        i64 xf = tw.f_elems[s];
        i64 a = E.mul(xf, zl);
        for (i64 i = 0; i < tw.N; ++i) {
          i64 y = tw.w1pow[i];
          i64 first = E.mul(xf, y);
          i64 second = E.mul(E.inv(y), a);
          keys.push_back(u64(first) * u64(card) + u64(second));
        }
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  require(std::adjacent_find(keys.begin(), keys.end()) == keys.end(),
          Errc::SizeMismatch, "duplicate vectors in D; parameter bug");
  return keys;
}

void build_M_L(LineClassBundle& b) {
  const FieldTower& tw = b.tw;
  const FieldTable& E = tw.E();
  geometry::KleinMap km(tw);
  const i64 card = E.card();

  std::map<u64, i64> mult;  // normalized point key -> covering vector count
  for (u64 k : b.D_keys) {
    i64 rx = i64(k / u64(card)), ry = i64(k % u64(card));
    auto [nx, ny] = km.normalize_point(rx, ry);
    mult[b.key(nx, ny)] += 1;
  }
  require(i64(mult.size()) == b.x * tw.N, Errc::SizeMismatch,
          "|M| != x(q^2+q+1)");
  b.M.clear();
  b.M.reserve(mult.size());
  for (auto& [k, c] : mult) {
    require(c == tw.q - 1, Errc::Internal,
            "a point of M covers " + std::to_string(c) + " vectors of D");
    b.M.push_back({i64(k / u64(card)), i64(k % u64(card))});
  }

  b.L.clear();
  b.L.reserve(b.M.size());
  std::vector<u64> lkeys;
  lkeys.reserve(b.M.size());
  for (auto [mx, my] : b.M) {
    b.L.push_back(km.klein_inverse(mx, my));
    lkeys.push_back(geometry::line_key(tw, b.L.back()));
  }
  std::sort(lkeys.begin(), lkeys.end());
  require(std::adjacent_find(lkeys.begin(), lkeys.end()) == lkeys.end(),
          Errc::Internal, "Klein images of M are not distinct");
}

namespace {

void assert_bundle_invariants(const LineClassBundle& b) {
  const FieldTower& tw = b.tw;
  const FieldTable& E = tw.E();
  require(i64(b.D_keys.size()) == b.x * (E.card() - 1), Errc::SizeMismatch,
          "|D| != x(q^3-1)");
  const i64 card = E.card();
  for (u64 k : b.D_keys) {
    i64 rx = i64(k / u64(card)), ry = i64(k % u64(card));
    require(tw.trace(E.mul(rx, ry)) == 0, Errc::Internal,
            "D contains a vector off the quadric");
  }
  // lambda D = D for the generator of F* (hence for all of F*)
  for (u64 k : b.D_keys) {
    i64 rx = i64(k / u64(card)), ry = i64(k % u64(card));
    require(b.contains(E.mul(tw.w0, rx), E.mul(tw.w0, ry)), Errc::Internal,
            "D is not F*-invariant");
  }
  // q Xbar = Xbar (mod 2N)
  std::vector<i64> qx;
  for (i64 r : b.Xbar) qx.push_back(tw.q * r % (2 * tw.N));
  std::sort(qx.begin(), qx.end());
  require(qx == b.Xbar, Errc::Internal, "Xbar not invariant under times-q");
}

}  // namespace

LineClassBundle build_bundle(FieldTower tw, i64 d0, i64 beta) {
  LineClassBundle b;
  b.q = tw.q;
  b.N = tw.N;
  b.x = (tw.q * tw.q - 1) / 2;
  b.tw = std::move(tw);
  b.IQ = geometry::conic_index_set(b.tw);
  b.d0 = d0 < 0 ? b.IQ.front() : d0;
  b.beta = beta < 0 ? b.tw.E().one() : beta;
  std::tie(b.X_logs, b.Xbar) = build_X(b.tw, b.IQ, b.d0, b.beta);
  std::tie(b.A, b.B) = decompose_AB(b.tw, b.Xbar);
  b.IX = build_IX(b.tw, b.Xbar);
  b.D_keys = build_D(b.tw, b.IX);
  assert_bundle_invariants(b);
  build_M_L(b);
  return b;
}

LineClassBundle extend_to_complementary(const LineClassBundle& b) {
  require(!b.complementary, Errc::ConfigError, "bundle is already extended");
  LineClassBundle out = b;
  out.complementary = true;
  out.x = b.x + 1;  // (q^2+1)/2
  const FieldTable& E = b.tw.E();
  for (i64 r = 1; r < E.card(); ++r) out.D_keys.push_back(out.key(r, 0));
  std::sort(out.D_keys.begin(), out.D_keys.end());
  require(std::adjacent_find(out.D_keys.begin(), out.D_keys.end()) ==
              out.D_keys.end(),
          Errc::SizeMismatch, "D already met {(y,0)}");
  require(i64(out.D_keys.size()) == out.x * (E.card() - 1), Errc::SizeMismatch,
          "|D'| != x'(q^3-1)");
  build_M_L(out);
  return out;
}

CycInt t_sum(const LineClassBundle& b, i64 u) {
  return charsum::t_sum(b.tw, b.Xbar, u);
}

nlohmann::json bundle_to_json(const LineClassBundle& b) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "line_class_bundle";
  j["field"] = field_descriptor_json(b.tw.E());
  j["q"] = b.q;
  j["d"] = b.tw.d;
  j["N"] = b.N;
  j["x"] = b.x;
  j["d0"] = b.d0;
  j["beta_findex"] = b.tw.f_index(b.beta);
  j["complementary"] = b.complementary;
  j["IQ"] = b.IQ;
  j["X_logs"] = b.X_logs;
  j["Xbar"] = b.Xbar;
  j["A"] = b.A;
  j["B"] = b.B;
  j["IX"] = b.IX;
  j["D_keys"] = b.D_keys;
  nlohmann::json m = nlohmann::json::array();
  for (auto [rx, ry] : b.M) m.push_back({rx, ry});
  j["M"] = std::move(m);
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& line : b.L) {
    nlohmann::json c = nlohmann::json::array();
    for (i64 v : line.p) c.push_back(b.tw.f_index(v));
    lines.push_back(std::move(c));
  }
  j["L"] = std::move(lines);
  return j;
}

LineClassBundle bundle_from_json(const nlohmann::json& j, i64 cap) {
  LineClassBundle b;
  try {
    require(j.at("kind") == "line_class_bundle", Errc::IoError,
            "not a bundle file");
    b.tw = FieldTower::over(field_from_descriptor(j.at("field"), cap),
                            j.at("d").get<int>());
    b.q = j.at("q").get<i64>();
    b.N = j.at("N").get<i64>();
    b.x = j.at("x").get<i64>();
    b.d0 = j.at("d0").get<i64>();
    b.beta = b.tw.from_f_index(j.at("beta_findex").get<i64>());
    b.complementary = j.at("complementary").get<bool>();
    b.IQ = j.at("IQ").get<std::vector<i64>>();
    b.X_logs = j.at("X_logs").get<std::vector<i64>>();
    b.Xbar = j.at("Xbar").get<std::vector<i64>>();
    b.A = j.at("A").get<std::vector<i64>>();
    b.B = j.at("B").get<std::vector<i64>>();
    b.IX = j.at("IX").get<std::vector<i64>>();
    b.D_keys = j.at("D_keys").get<std::vector<u64>>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::IoError, std::string("bundle parse: ") + e.what());
  }
  require(b.q == b.tw.q && b.N == b.tw.N, Errc::IoError,
          "bundle metadata does not match the field");
  require(std::is_sorted(b.D_keys.begin(), b.D_keys.end()), Errc::IoError,
          "D_keys must be sorted");
  assert_bundle_invariants(b);
  build_M_L(b);
  // cross-check the serialized line coordinates when present
  if (j.contains("L")) {
    const auto& lines = j.at("L");
    require(lines.size() == b.L.size(), Errc::IoError, "line count mismatch");
    for (size_t i = 0; i < b.L.size(); ++i)
      for (int c = 0; c < 6; ++c)
        require(lines[i][c].get<i64>() == b.tw.f_index(b.L[i].p[c]),
                Errc::IoError, "line coordinates changed on reload");
  }
  return b;
}

}  // namespace clc::lineclass
