#include "clc/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "clc/geometry.hpp"

namespace clc::verify {

namespace {

u64 splitmix(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// The pairing between dual vectors of the transform and E x E: the dual of
// (a,b) has halves Gamma a and Gamma b in coefficient coordinates, with
// Gamma[i][j] = AbsTr(omega^{i+j}).
struct DualMap {
  const FieldTower* tw;
  int td;    // 3d, digits per half
  i64 card;  // p^{3d}
  i64 p;
  std::vector<int> gram, gram_inv;  // td x td over GF(p)

  explicit DualMap(const FieldTower& tower) : tw(&tower) {
    const FieldTable& E = tw->E();
    td = E.f();
    card = E.card();
    p = E.p();
    gram.resize(size_t(td * td));
    for (int i = 0; i < td; ++i)
      for (int j = 0; j < td; ++j)
        gram[size_t(i * td + j)] = E.abs_trace(E.from_log(i + j));
    gram_inv = invert(gram);
  }

  std::vector<int> invert(const std::vector<int>& m) const {
    int n = td;
    std::vector<i64> a(size_t(n) * size_t(2 * n), 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[size_t(i * 2 * n + j)] = m[size_t(i * n + j)];
      a[size_t(i * 2 * n + n + i)] = 1;
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      while (piv < n && a[size_t(piv * 2 * n + col)] % p == 0) ++piv;
      require(piv < n, Errc::Internal, "trace Gram matrix is singular");
      for (int j = 0; j < 2 * n; ++j)
        std::swap(a[size_t(col * 2 * n + j)], a[size_t(piv * 2 * n + j)]);
      i64 inv = 1, base = ((a[size_t(col * 2 * n + col)] % p) + p) % p;
      for (i64 e = p - 2; e; e >>= 1, base = base * base % p)
        if (e & 1) inv = inv * base % p;
      for (int j = 0; j < 2 * n; ++j)
        a[size_t(col * 2 * n + j)] = ((a[size_t(col * 2 * n + j)] % p) + p) % p * inv % p;
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        i64 c = ((a[size_t(r * 2 * n + col)] % p) + p) % p;
        if (!c) continue;
        for (int j = 0; j < 2 * n; ++j)
          a[size_t(r * 2 * n + j)] =
              ((a[size_t(r * 2 * n + j)] - c * a[size_t(col * 2 * n + j)]) % p + p) % p;
      }
    }
    std::vector<int> out(size_t(n) * size_t(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[size_t(i * n + j)] = int(a[size_t(i * 2 * n + n + j)]);
    return out;
  }

  i64 matvec_pack(const std::vector<int>& m, i64 packed) const {
    std::vector<int> digits(size_t(td), 0);
    for (int k = 0; k < td; ++k) {
      digits[size_t(k)] = int(packed % p);
      packed /= p;
    }
    i64 out = 0, pw = 1;
    for (int i = 0; i < td; ++i) {
      i64 acc = 0;
      for (int j = 0; j < td; ++j) acc += i64(m[size_t(i * td + j)]) * digits[size_t(j)];
      out += acc % p * pw;
      pw *= p;
    }
    return out;
  }

  /// field element rep from one dual half
  i64 elem_from_dual(i64 w_half) const {
    return tw->E().rep_of_vec(matvec_pack(gram_inv, w_half));
  }
  /// dual half from a field element rep
  i64 dual_from_elem(i64 rep) const {
    return matvec_pack(gram, tw->E().vec(rep));
  }
};

// Enumerates the normalized coordinate vectors of the points of PG(5,q):
// leading coordinate 1, earlier coordinates 0, later ones free.
template <typename Fn>
void for_each_projective_point(const FieldTower& tw, const geometry::KleinMap& km,
                               Fn&& fn) {
  std::array<i64, 6> c{};
  for (int lead = 0; lead < 6; ++lead) {
    c.fill(0);
    c[lead] = tw.E().one();
    const int nfree = 5 - lead;
    std::vector<i64> idx(size_t(nfree), 0);
    for (;;) {
      for (int i = 0; i < nfree; ++i) c[size_t(lead + 1 + i)] = tw.f_elems[size_t(idx[size_t(i)])];
      auto [x, y] = km.point_from_coords(c);
      fn(x, y);
      int i = 0;
      while (i < nfree && ++idx[size_t(i)] == tw.q) idx[size_t(i++)] = 0;
      if (i == nfree) break;
    }
  }
}

}  // namespace

CertReport certify_spectrum(const LineClassBundle& b,
                            charsum::CharSpectrum* out_spectrum,
                            i64 transform_cap) {
  Stopwatch sw;
  CertReport r;
  r.check_name = "spectrum";
  const FieldTower& tw = b.tw;
  const FieldTable& E = tw.E();
  const i64 card = E.card();
  const i64 q3 = card;
  const i64 dsize = i64(b.D_keys.size());
  r.parameters = {{"q", b.q}, {"x", b.x}, {"D_size", dsize}};
  r.expected = {{"principal", dsize},
                {"values", {-b.x, q3 - b.x}},
                {"multiplicity_of_large", dsize}};

  std::vector<std::uint8_t> ind(size_t(card) * size_t(card), 0);
  for (u64 k : b.D_keys) {
    i64 rx = i64(k / u64(card)), ry = i64(k % u64(card));
    ind[size_t(E.vec(rx) + card * E.vec(ry))] = 1;
  }
  auto sp = charsum::abelian_char_transform(E.p(), 2 * E.f(), ind, transform_cap);

  DualMap dm(tw);
  std::map<i64, i64> hist;
  i64 big_mult = 0;
  bool principal_ok = sp.value(0).equals_integer(dsize);
  if (!principal_ok) r.witness("principal value != |D|");
  hist[dsize] = 1;  // principal slot, for the report

  for (i64 w = 1; w < sp.size; ++w) {
    CycInt v = sp.value(w);
    if (!v.is_integer()) {
      r.witness("non-integer spectrum value at dual " + std::to_string(w));
      continue;
    }
    i64 val = v.to_integer();
    ++hist[val];
    bool swapped_in_D = false;
    {
      i64 wa = w % card, wb = w / card;
      i64 a = dm.elem_from_dual(wa), bb = dm.elem_from_dual(wb);
      swapped_in_D = b.contains(bb, a);
    }
    if (val == q3 - b.x) {
      ++big_mult;
      if (!swapped_in_D)
        r.witness("value q^3-x at dual " + std::to_string(w) +
                  " but (b,a) not in D");
    } else if (val == -b.x) {
      if (swapped_in_D)
        r.witness("(b,a) in D but value is -x at dual " + std::to_string(w));
    } else {
      r.witness("unexpected spectrum value " + std::to_string(val));
    }
  }
  if (big_mult != dsize)
    r.witness("multiplicity of q^3-x is " + std::to_string(big_mult));

  // orthogonality: sum over all duals = p^m * [0 in D] = 0
  i64 total = 0;
  for (auto& [val, mult] : hist) total += val * mult;
  if (total != 0) r.witness("orthogonality sum is " + std::to_string(total));

  if (!charsum::parseval_holds(sp, dsize)) r.witness("Parseval identity fails");

  r.observed = {{"histogram", histogram_json(hist)}};
  r.pass = r.failures.empty() && principal_ok;
  r.runtime_ms = sw.ms();
  if (out_spectrum) *out_spectrum = std::move(sp);
  return r;
}

CertReport certify_tight_set(const LineClassBundle& b) {
  Stopwatch sw;
  CertReport r;
  r.check_name = "tight_set";
  const FieldTower& tw = b.tw;
  const FieldTable& E = tw.E();
  geometry::KleinMap km(tw);

  const i64 on_m = b.x * (tw.q + 1) + tw.q * tw.q;
  const i64 off_m = b.x * (tw.q + 1);
  r.parameters = {{"q", b.q}, {"x", b.x}};
  r.expected = {{"on_M", on_m}, {"off_M", off_m}};

  std::vector<u64> mkeys;
  mkeys.reserve(b.M.size());
  for (auto [mx, my] : b.M) mkeys.push_back(b.key(mx, my));
  std::sort(mkeys.begin(), mkeys.end());

  i64 n_in_m = 0, n_on_q = 0, n_off_q = 0;
  std::map<i64, i64> hist;
  for_each_projective_point(tw, km, [&](i64 x, i64 y) {
    bool on_quadric = tw.trace(E.mul(x, y)) == 0;
    bool in_m = std::binary_search(mkeys.begin(), mkeys.end(), b.key(x, y));
    i64 cnt = geometry::polar_count(tw, x, y, b.M);
    ++hist[cnt];
    i64 want = in_m ? on_m : off_m;
    if (cnt != want)
      r.witness("polar count " + std::to_string(cnt) + " at a point " +
                (in_m ? "of M" : on_quadric ? "of Q+\\M" : "off the quadric"));
    if (in_m) ++n_in_m;
    else if (on_quadric) ++n_on_q;
    else ++n_off_q;
  });

  if (n_in_m != i64(b.M.size())) r.witness("M membership count mismatch");
  const i64 quadric_points = (tw.q * tw.q + 1) * tw.N;
  if (n_in_m + n_on_q != quadric_points)
    r.witness("quadric point count mismatch");
  r.observed = {{"histogram", histogram_json(hist)},
                {"points_in_M", n_in_m},
                {"points_on_quadric_off_M", n_on_q},
                {"points_off_quadric", n_off_q}};
  r.pass = r.failures.empty();
  r.runtime_ms = sw.ms();
  return r;
}

CertReport certify_two_intersection(const LineClassBundle& b,
                                    const charsum::CharSpectrum* sp,
                                    i64 sample, u64 seed) {
  Stopwatch sw;
  CertReport r;
  r.check_name = "two_intersection";
  const FieldTower& tw = b.tw;
  const FieldTable& E = tw.E();
  const i64 card = E.card();
  if (b.M.empty()) {
    r.witness("M is empty; not a two-intersection set");
    r.runtime_ms = sw.ms();
    return r;
  }
  const i64 h1 = b.x * (tw.q + 1) + tw.q * tw.q;
  const i64 h2 = b.x * (tw.q + 1);
  r.parameters = {{"q", b.q}, {"x", b.x}, {"sample", sample}};
  r.expected = {{"h1", h1}, {"h2", h2}};

  geometry::KleinMap km(tw);
  DualMap dm(tw);
  const i64 msize = i64(b.M.size());

  std::vector<std::pair<i64, i64>> duals;  // hyperplanes as (a,b) pairs
  for_each_projective_point(tw, km,
                            [&](i64 a, i64 bb) { duals.push_back({a, bb}); });
  if (sample > 0 && sample < i64(duals.size())) {
    u64 state = seed;
    std::vector<std::pair<i64, i64>> picked;
    picked.reserve(size_t(sample));
    for (i64 i = 0; i < sample; ++i)
      picked.push_back(duals[size_t(splitmix(state) % duals.size())]);
    duals = std::move(picked);
  }

  std::map<i64, i64> hist;
  for (auto [a, bb] : duals) {
    i64 cnt = 0;
    for (auto [mx, my] : b.M)
      if (tw.trace(E.add(E.mul(a, mx), E.mul(bb, my))) == 0) ++cnt;
    ++hist[cnt];
    if (cnt != h1 && cnt != h2)
      r.witness("hyperplane meets M in " + std::to_string(cnt) + " points");
    if (sp) {
      i64 w = dm.dual_from_elem(a) + card * dm.dual_from_elem(bb);
      if (!sp->value(w).equals_integer(-msize + tw.q * cnt))
        r.witness("psi(D) != -|M| + q|H ∩ M| at a hyperplane");
    }
  }
  if (sample <= 0) {
    if (!hist.count(h1)) r.witness("h1 never occurs");
    if (!hist.count(h2)) r.witness("h2 never occurs");
  }
  r.observed = {{"histogram", histogram_json(hist)},
                {"spectrum_cross_check", sp != nullptr}};
  r.pass = r.failures.empty();
  r.runtime_ms = sw.ms();
  return r;
}

CertReport certify_T_u(const LineClassBundle& b) {
  Stopwatch sw;
  CertReport r;
  r.check_name = "t_u";
  const FieldTower& tw = b.tw;
  const FieldTable& E = tw.E();
  const i64 N = tw.N, twoN = 2 * tw.N;
  r.parameters = {{"q", b.q}};

  // literal trace sets: T mod N from Tr(x) = 0, T' mod 2N from Tr(x) = 1
  std::vector<char> T(size_t(N), 0), Tp(size_t(twoN), 0);
  for (i64 t = 0; t < E.order(); ++t) {
    i64 tr = tw.trace(E.from_log(t));
    if (tr == 0) T[size_t(t % N)] = 1;
    else if (tr == E.one()) Tp[size_t(t % twoN)] = 1;
  }

  // s and n as exact periods of F; the sign of G(eta') is never assumed
  CycInt s_per(E.p()), n_per(E.p());
  for (i64 t = 0; t < tw.q - 1; ++t) {
    i64 x = E.from_sub_log(t, tw.d);
    (t % 2 == 0 ? s_per : n_per).add_zeta(tw.psi_exp(x));
  }
  const int sgn2 = tw.sgnF(E.from_int(2));
  const CycInt half_small = CycInt::integer(E.p(), (tw.q - 1) / 2);
  const CycInt exp_xbar = half_small + tw.q * (sgn2 > 0 ? s_per : n_per);
  const CycInt exp_xbarN = half_small + tw.q * (sgn2 > 0 ? n_per : s_per);
  const CycInt exp_secant = half_small;
  const CycInt exp_passant = CycInt::integer(E.p(), -(tw.q + 1) / 2);

  std::vector<char> in_xbar(size_t(twoN), 0);
  for (i64 t : b.Xbar) in_xbar[size_t(t)] = 1;

  std::map<std::string, i64> hist;
  for (i64 u = 0; u < twoN; ++u) {
    CycInt tu = lineclass::t_sum(b, u);
    ++hist[tu.str()];
    const CycInt* want = nullptr;
    if (T[size_t(2 * u % N)]) {
      if (in_xbar[size_t(u % twoN)]) want = &exp_xbar;
      else if (in_xbar[size_t((u + N) % twoN)]) want = &exp_xbarN;
      else {
        r.witness("tangent u=" + std::to_string(u) +
                  " lies in neither Xbar nor Xbar+N");
        continue;
      }
    } else if (Tp[size_t(2 * u % twoN)]) {
      want = &exp_secant;
    } else {
      want = &exp_passant;
    }
    if (tu != *want)
      r.witness("T_u mismatch at u=" + std::to_string(u) + ": got " + tu.str() +
                ", want " + want->str());
  }
  r.expected = {{"xbar", cycint_to_json(exp_xbar)},
                {"xbar_plus_N", cycint_to_json(exp_xbarN)},
                {"secant", cycint_to_json(exp_secant)},
                {"passant", cycint_to_json(exp_passant)},
                {"sgn_2", sgn2}};
  json h = json::object();
  for (auto& [k, v] : hist) h[k] = v;
  r.observed = {{"histogram", h}};
  r.pass = r.failures.empty();
  r.runtime_ms = sw.ms();
  return r;
}

CertReport sampled_spread_check(const LineClassBundle& b, int trials, u64 seed) {
  Stopwatch sw;
  CertReport r;
  r.check_name = "spread";
  const FieldTower& tw = b.tw;
  r.parameters = {{"q", b.q}, {"x", b.x}, {"trials", trials}, {"seed", seed}};
  r.expected = {{"lines_per_spread", b.x}};

  std::unordered_set<u64> lkeys;
  lkeys.reserve(b.L.size() * 2);
  for (const auto& line : b.L) lkeys.insert(geometry::line_key(tw, line));

  geometry::Spread s = geometry::regular_spread(tw);
  if (!geometry::is_spread(tw, s)) r.witness("regular spread is not a spread");
  auto count_hits = [&](const geometry::Spread& sp) {
    i64 c = 0;
    for (const auto& line : sp.lines) c += lkeys.count(geometry::line_key(tw, line));
    return c;
  };
  i64 reg = count_hits(s);
  if (reg != b.x) r.witness("regular spread meets L in " + std::to_string(reg));

  std::vector<i64> image_counts;
  u64 state = seed;
  for (int t = 0; t < trials; ++t) {
    auto mat = geometry::random_collineation(tw, state);
    geometry::Spread img;
    img.lines.reserve(s.lines.size());
    for (const auto& line : s.lines)
      img.lines.push_back(geometry::line_through(
          tw, geometry::apply4(tw, mat, line.span[0]),
          geometry::apply4(tw, mat, line.span[1])));
    if (!geometry::is_spread(tw, img))
      r.witness("collineation image is not a spread");
    i64 c = count_hits(img);
    image_counts.push_back(c);
    if (c != b.x)
      r.witness("spread image " + std::to_string(t) + " meets L in " +
                std::to_string(c));
  }
  r.observed = {{"regular", reg}, {"images", image_counts}};
  r.pass = r.failures.empty();
  r.runtime_ms = sw.ms();
  return r;
}

CertReport certify_automorphisms(const LineClassBundle& b) {
  Stopwatch sw;
  CertReport r;
  r.check_name = "automorphisms";
  const FieldTower& tw = b.tw;
  const FieldTable& E = tw.E();
  const i64 card = E.card();
  const i64 w1inv = E.inv(tw.w1);
  r.parameters = {{"q", b.q}};
  r.expected = {{"generators", {"g", "frobenius", "scalar"}}};

  i64 bad_g = 0, bad_f = 0, bad_s = 0;
  for (u64 k : b.D_keys) {
    i64 rx = i64(k / u64(card)), ry = i64(k % u64(card));
    if (!b.contains(E.mul(tw.w1, rx), E.mul(w1inv, ry))) ++bad_g;
    if (!b.contains(E.pow(rx, tw.q), E.pow(ry, tw.q))) ++bad_f;
    if (!b.contains(E.mul(tw.w0, rx), E.mul(tw.w0, ry))) ++bad_s;
  }
  if (bad_g) r.witness("g moves " + std::to_string(bad_g) + " vectors off D");
  if (bad_f) r.witness("Frobenius moves " + std::to_string(bad_f) + " vectors off D");
  if (bad_s) r.witness("scalar moves " + std::to_string(bad_s) + " vectors off D");
  r.observed = {{"violations_g", bad_g},
                {"violations_frobenius", bad_f},
                {"violations_scalar", bad_s}};
  r.pass = r.failures.empty();
  r.runtime_ms = sw.ms();
  return r;
}

std::vector<CertReport> run_checks(const LineClassBundle& b,
                                   const std::vector<std::string>& names,
                                   int spread_trials, u64 seed,
                                   i64 two_int_sample, i64 transform_cap) {
  static const std::set<std::string> known{"all",    "spectrum", "tight",
                                           "two-int", "tu",       "spread",
                                           "auto"};
  std::set<std::string> want(names.begin(), names.end());
  for (const auto& n : want)
    require(known.count(n) > 0, Errc::ConfigError, "unknown check '" + n + "'");
  bool all = want.count("all") > 0;
  auto selected = [&](const char* n) { return all || want.count(n) > 0; };

  std::vector<CertReport> out;
  charsum::CharSpectrum sp;
  bool have_sp = false;
  if (selected("spectrum")) {
    out.push_back(certify_spectrum(b, &sp, transform_cap));
    have_sp = true;
  }
  if (selected("tight")) out.push_back(certify_tight_set(b));
  if (selected("two-int"))
    out.push_back(certify_two_intersection(b, have_sp ? &sp : nullptr,
                                           two_int_sample, seed));
  if (selected("tu")) out.push_back(certify_T_u(b));
  if (selected("spread")) out.push_back(sampled_spread_check(b, spread_trials, seed));
  if (selected("auto")) out.push_back(certify_automorphisms(b));
  return out;
}

}  // namespace clc::verify
