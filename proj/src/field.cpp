#include "clc/field.hpp"

#include <algorithm>
#include <cstdlib>

namespace clc {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::BadModulus: return "BadModulus";
    case Errc::MixedFields: return "MixedFields";
    case Errc::DivisibleByGroupOrder: return "DivisibleByGroupOrder";
    case Errc::PrincipalChi: return "PrincipalChi";
    case Errc::BadOrder: return "BadOrder";
    case Errc::BadResidue: return "BadResidue";
    case Errc::BadBeta: return "BadBeta";
    case Errc::BadTangent: return "BadTangent";
    case Errc::DecompositionFailure: return "DecompositionFailure";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NotOnQuadric: return "NotOnQuadric";
    case Errc::GammaInSubfield: return "GammaInSubfield";
    case Errc::TraceZero: return "TraceZero";
    case Errc::ModulusViolation: return "ModulusViolation";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
    case Errc::MalformedReport: return "MalformedReport";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Ascending-coefficient polynomial arithmetic over GF(p), reduced modulo a
// monic degree-f polynomial given by c_0..c_{f-1} (leading 1 implicit).
struct PolyMod {
  i64 p;
  int f;
  std::vector<int> m;  // c_0..c_{f-1}

  std::vector<int> one() const {
    std::vector<int> r(f, 0);
    r[0] = 1 % p;
    return r;
  }

  std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<i64> t(2 * f - 1, 0);
    for (int i = 0; i < f; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < f; ++j) t[i + j] += i64(a[i]) * b[j];
    }
    for (int k = 2 * f - 2; k >= f; --k) {
      i64 c = t[k] % p;
      if (c) {
        for (int i = 0; i < f; ++i) t[k - f + i] -= c * m[i];
      }
      t[k] = 0;
    }
    std::vector<int> r(f);
    for (int i = 0; i < f; ++i) r[i] = int(((t[i] % p) + p) % p);
    return r;
  }

  std::vector<int> pow_x(i64 e) const {
    std::vector<int> base(f, 0);
    if (f == 1) {
      base[0] = int(((-i64(m[0])) % p + p) % p);  // x = -c_0 mod m
    } else {
      base[1] = 1;
    }
    std::vector<int> acc = one();
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }
};

bool is_primitive_poly(i64 p, int f, const std::vector<int>& coeffs,
                       const std::vector<i64>& factors, i64 group_order) {
  if (coeffs[0] == 0) return false;  // x divides the polynomial
  PolyMod pm{p, f, coeffs};
  if (pm.pow_x(group_order) != pm.one()) return false;
  for (i64 r : factors)
    if (pm.pow_x(group_order / r) == pm.one()) return false;
  return true;
}

u64 fnv1a(u64 h, u64 v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

i64 FieldTable::default_cap() {
  if (const char* s = std::getenv("CLC_TABLE_CAP")) {
    i64 v = std::strtoll(s, nullptr, 10);
    if (v > 0) return v;
  }
  return 531441;  // 3^12
}

std::shared_ptr<const FieldTable> FieldTable::build(i64 p, int f, i64 cap) {
  require(is_prime(p), Errc::NonPrime, "p = " + std::to_string(p));
  require(f >= 1, Errc::BadModulus, "degree must be positive");
  if (cap <= 0) cap = default_cap();
  i64 card = 1;
  for (int i = 0; i < f; ++i) {
    card *= p;
    require(card <= cap, Errc::CapExceeded,
            "p^f exceeds table cap " + std::to_string(cap));
  }
  const i64 n = card - 1;
  const auto factors = prime_factors(n);

  // Scan monic polynomials in lexicographic order of (c_{f-1},...,c_0).
  std::vector<int> coeffs(f);
  for (i64 m = 0;; ++m) {
    require(m < card, Errc::Internal, "no primitive polynomial found");
    i64 t = m;
    for (int i = 0; i < f; ++i) {
      coeffs[i] = int(t % p);
      t /= p;
    }
    if (is_primitive_poly(p, f, coeffs, factors, n)) break;
  }
  auto ft = std::shared_ptr<FieldTable>(new FieldTable());
  ft->construct(p, f, coeffs);
  return ft;
}

std::shared_ptr<const FieldTable> FieldTable::build(i64 p, int f,
                                                    const std::vector<int>& modulus,
                                                    i64 cap) {
  require(is_prime(p), Errc::NonPrime, "p = " + std::to_string(p));
  require(int(modulus.size()) == f + 1 && modulus[f] == 1, Errc::BadModulus,
          "expect ascending coefficients c_0..c_f with c_f = 1");
  if (cap <= 0) cap = default_cap();
  i64 card = 1;
  for (int i = 0; i < f; ++i) {
    card *= p;
    require(card <= cap, Errc::CapExceeded, "p^f exceeds table cap");
  }
  std::vector<int> coeffs(modulus.begin(), modulus.end() - 1);
  for (int& c : coeffs) {
    require(0 <= c && c < p, Errc::BadModulus, "coefficient out of range");
  }
  require(is_primitive_poly(p, f, coeffs, prime_factors(card - 1), card - 1),
          Errc::BadModulus, "polynomial is not primitive");
  auto ft = std::shared_ptr<FieldTable>(new FieldTable());
  ft->construct(p, f, coeffs);
  return ft;
}

void FieldTable::construct(i64 p, int f, const std::vector<int>& coeffs) {
  p_ = p;
  f_ = f;
  card_ = 1;
  for (int i = 0; i < f; ++i) card_ *= p;
  order_ = card_ - 1;
  modulus_ = coeffs;
  modulus_.push_back(1);

  // Powers of omega as packed coefficient vectors.
  vec_of_rep_.assign(card_, 0);
  rep_of_vec_.assign(card_, 0);
  std::vector<int> v(f, 0);
  v[0] = 1;
  std::vector<i64> pp(f + 1);
  pp[0] = 1;
  for (int i = 1; i <= f; ++i) pp[i] = pp[i - 1] * p;
  for (i64 k = 0; k < order_; ++k) {
    i64 packed = 0;
    for (int i = 0; i < f; ++i) packed += v[i] * pp[i];
    require(packed != 0 && rep_of_vec_[packed] == 0, Errc::Internal,
            "generator is not primitive");
    vec_of_rep_[1 + k] = std::uint32_t(packed);
    rep_of_vec_[packed] = std::uint32_t(1 + k);
    // multiply by x and reduce
    int carry = v[f - 1];
    for (int i = f - 1; i >= 1; --i) v[i] = v[i - 1];
    v[0] = 0;
    if (carry) {
      for (int i = 0; i < f; ++i)
        v[i] = int((v[i] - i64(carry) * coeffs[i] % p + i64(p) * p) % p);
    }
  }

  // Zech logarithms: rep of 1 + omega^k.
  zech_.assign(order_, 0);
  for (i64 k = 0; k < order_; ++k) {
    i64 vv = vec_of_rep_[1 + k];
    i64 low = vv % p;
    i64 w = vv - low + (low + 1) % p;
    zech_[k] = rep_of_vec_[w];
  }

  // Prime field elements.
  from_int_.assign(p, 0);
  i64 onev = 1;  // packed vector of 1
  i64 acc = 0;
  for (i64 k = 1; k < p; ++k) {
    acc += onev;  // multiples of 1 stay in digit 0
    from_int_[k] = rep_of_vec_[acc];
  }

  // Absolute trace per packed vector, via traces of the basis powers.
  std::vector<int> tau(f);
  for (int j = 0; j < f; ++j) {
    i64 t = 0;  // rep accumulator
    i64 x = from_log(j);
    i64 cur = x;
    for (int i = 0; i < f; ++i) {
      t = add(t, cur);
      cur = pow(cur, p);
    }
    int ti = to_int(t);
    require(ti >= 0, Errc::Internal, "trace not in prime field");
    tau[j] = ti;
  }
  abs_tr_.assign(card_, 0);
  for (i64 vv = 0; vv < card_; ++vv) {
    i64 t = vv, s = 0;
    for (int j = 0; j < f; ++j) {
      s += (t % p) * tau[j];
      t /= p;
    }
    abs_tr_[vv] = std::int8_t(s % p);
  }

  u64 h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, u64(p_));
  h = fnv1a(h, u64(f_));
  for (int c : modulus_) h = fnv1a(h, u64(c));
  for (i64 k = 1; k <= std::min<i64>(card_ - 1, 32); ++k)
    h = fnv1a(h, u64(vec_of_rep_[k]));
  gen_hash_ = h;
}

i64 FieldTable::add(i64 a, i64 b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  i64 i = a - 1, j = b - 1;
  i64 d = j - i;
  if (d < 0) d += order_;
  i64 z = zech_[d];
  if (z == 0) return 0;
  return 1 + (i + (z - 1)) % order_;
}

i64 FieldTable::neg(i64 a) const {
  if (a == 0) return 0;
  if (p_ == 2) return a;
  return 1 + (a - 1 + order_ / 2) % order_;
}

i64 FieldTable::mul(i64 a, i64 b) const {
  if (a == 0 || b == 0) return 0;
  return 1 + (a - 1 + b - 1) % order_;
}

i64 FieldTable::inv(i64 a) const {
  require(a != 0, Errc::ZeroElement, "inverse of zero");
  return 1 + (order_ - (a - 1)) % order_;
}

i64 FieldTable::pow(i64 a, i64 e) const {
  if (a == 0) {
    require(e >= 0, Errc::ZeroElement, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  i64 ee = e % order_;
  if (ee < 0) ee += order_;
  return 1 + (a - 1) * ee % order_;
}

i64 FieldTable::log(i64 r) const {
  require(r != 0, Errc::ZeroElement, "log of zero");
  return r - 1;
}

i64 FieldTable::from_int(i64 k) const {
  k %= p_;
  if (k < 0) k += p_;
  return from_int_[k];
}

int FieldTable::to_int(i64 r) const {
  for (i64 k = 0; k < p_; ++k)
    if (from_int_[k] == std::uint32_t(r)) return int(k);
  return -1;
}

i64 FieldTable::sub_order(int d) const {
  require(d >= 1 && f_ % d == 0, Errc::NotASubfield,
          "GF(p^" + std::to_string(d) + ") is not a subfield");
  i64 so = 1;
  for (int i = 0; i < d; ++i) so *= p_;
  return so - 1;
}

bool FieldTable::in_subfield(i64 r, int d) const {
  if (r == 0) return true;
  return (r - 1) % sub_step(d) == 0;
}

std::vector<i64> FieldTable::sub_elements(int d) const {
  i64 so = sub_order(d), step = sub_step(d);
  std::vector<i64> out;
  out.reserve(so + 1);
  out.push_back(0);
  for (i64 s = 0; s < so; ++s) out.push_back(1 + s * step);
  return out;
}

i64 FieldTable::sub_log(i64 r, int d) const {
  require(r != 0, Errc::ZeroElement, "log of zero");
  i64 step = sub_step(d);
  require((r - 1) % step == 0, Errc::NotASubfield, "element not in subfield");
  return (r - 1) / step;
}

i64 FieldTable::from_sub_log(i64 s, int d) const {
  i64 so = sub_order(d);
  s %= so;
  if (s < 0) s += so;
  return 1 + s * sub_step(d);
}

i64 FieldTable::rel_trace(i64 r, int d) const {
  i64 q = sub_order(d) + 1;
  int m = f_ / d;
  i64 acc = 0, cur = r;
  for (int i = 0; i < m; ++i) {
    acc = add(acc, cur);
    cur = pow(cur, q);
  }
  require(in_subfield(acc, d), Errc::Internal, "trace left the subfield");
  return acc;
}

i64 FieldTable::rel_norm(i64 r, int d) const {
  i64 e = order_ / sub_order(d);  // 1 + q + ... + q^{m-1}
  if (r == 0) return 0;
  return from_log((r - 1) * e % order_);
}

int FieldTable::sub_abs_trace(i64 r, int d) const {
  require(in_subfield(r, d), Errc::NotASubfield, "element not in subfield");
  i64 acc = 0, cur = r;
  for (int i = 0; i < d; ++i) {
    acc = add(acc, cur);
    cur = pow(cur, p_);
  }
  int v = to_int(acc);
  require(v >= 0, Errc::Internal, "subfield trace not in prime field");
  return v;
}

int FieldTable::sgn(i64 r) const {
  require(p_ != 2, Errc::EvenCharacteristic, "sgn undefined in characteristic 2");
  if (r == 0) return 0;
  return (r - 1) % 2 == 0 ? 1 : -1;
}

i64 FieldTable::cyc_class(i64 r, i64 k) const {
  require(r != 0, Errc::ZeroElement, "cyclotomic class of zero");
  require(k >= 1 && order_ % k == 0, Errc::BadModulus,
          "k must divide the group order");
  return (r - 1) % k;
}

i64 FieldTable::sub_cyc_class(i64 r, int d, i64 k) const {
  i64 so = sub_order(d);
  require(r != 0, Errc::ZeroElement, "cyclotomic class of zero");
  require(k >= 1 && so % k == 0, Errc::BadModulus,
          "k must divide the subfield group order");
  return sub_log(r, d) % k;
}

FieldTower FieldTower::make(i64 p, int d, i64 cap) {
  return over(FieldTable::build(p, 3 * d, cap), d);
}

FieldTower FieldTower::over(std::shared_ptr<const FieldTable> E_in, int d) {
  FieldTower tw;
  tw.Ef = std::move(E_in);
  require(tw.Ef->f() == 3 * d, Errc::NotASubfield,
          "tower needs [E:F] = 3, so deg E = 3d");
  tw.d = d;
  tw.q = tw.Ef->sub_order(d) + 1;
  tw.N = tw.q * tw.q + tw.q + 1;
  const FieldTable& E = *tw.Ef;
  tw.w1 = E.from_log(tw.q - 1);
  tw.w0 = E.from_log(tw.N);

  tw.w1pow.resize(tw.N);
  for (i64 k = 0; k < tw.N; ++k) tw.w1pow[k] = E.from_log((tw.q - 1) * k);

  tw.ftr.assign(E.card(), 0);
  for (i64 r = 0; r < E.card(); ++r) tw.ftr[r] = std::uint32_t(E.rel_trace(r, d));

  tw.fpsi.assign(E.card(), -1);
  tw.f_elems = E.sub_elements(d);
  for (i64 r : tw.f_elems) tw.fpsi[r] = std::int8_t(E.sub_abs_trace(r, d));
  return tw;
}

int FieldTower::psi_exp(i64 r) const {
  int v = fpsi[r];
  require(v >= 0, Errc::NotASubfield, "element not in F");
  return v;
}

int FieldTower::sgnF(i64 r) const {
  if (r == 0) return 0;
  require(in_F(r), Errc::NotASubfield, "element not in F");
  // N odd, so F-squares are exactly the elements with even log in E.
  return (r - 1) % 2 == 0 ? 1 : -1;
}

i64 FieldTower::f_index(i64 r) const {
  if (r == 0) return 0;
  return 1 + Ef->sub_log(r, d);
}

i64 FieldTower::from_f_index(i64 idx) const {
  if (idx == 0) return 0;
  require(idx >= 1 && idx < q, Errc::BadModulus, "F-index out of range");
  return Ef->from_sub_log(idx - 1, d);
}

}  // namespace clc
