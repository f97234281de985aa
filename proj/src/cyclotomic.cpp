#include "clc/cyclotomic.hpp"

#include <sstream>

namespace clc {

CycInt& CycInt::operator+=(const CycInt& o) {
  require(p_ == o.p_, Errc::MixedFields, "cyclotomic orders differ");
  for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  require(p_ == o.p_, Errc::MixedFields, "cyclotomic orders differ");
  for (size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt r(p_);
  for (size_t j = 0; j < c_.size(); ++j) r.c_[j] = -c_[j];
  return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
  require(p_ == o.p_, Errc::MixedFields, "cyclotomic orders differ");
  CycInt r(p_);
  for (i64 ja = 0; ja < p_; ++ja) {
    if (!c_[size_t(ja)]) continue;
    for (i64 jb = 0; jb < p_; ++jb) {
      if (!o.c_[size_t(jb)]) continue;
      r.c_[size_t((ja + jb) % p_)] += c_[size_t(ja)] * o.c_[size_t(jb)];
    }
  }
  return r;
}

CycInt& CycInt::operator*=(i64 s) {
  for (auto& v : c_) v *= s;
  return *this;
}

void CycInt::rotate(i64 t) {
  t %= p_;
  if (t < 0) t += p_;
  if (t == 0) return;
  std::vector<i64> rotated(c_.size(), 0);
  for (i64 j = 0; j < p_; ++j) rotated[size_t((j + t) % p_)] = c_[size_t(j)];
  c_ = std::move(rotated);
}

CycInt CycInt::conj() const {
  CycInt r(p_);
  for (i64 j = 0; j < p_; ++j) r.c_[size_t((p_ - j) % p_)] = c_[size_t(j)];
  return r;
}

CycInt CycInt::normalized() const {
  CycInt r(*this);
  i64 last = r.c_.back();
  if (last) {
    for (auto& v : r.c_) v -= last;
  }
  return r;
}

bool CycInt::operator==(const CycInt& o) const {
  if (p_ != o.p_) return false;
  return normalized().c_ == o.normalized().c_;
}

bool CycInt::is_integer() const {
  for (i64 j = 2; j < p_; ++j)
    if (c_[size_t(j)] != c_[1]) return false;
  return true;
}

i64 CycInt::to_integer() const {
  require(is_integer(), Errc::Internal, "cyclotomic value is not an integer: " + str());
  return c_[0] - (p_ > 1 ? c_[1] : 0);
}

bool CycInt::equals_integer(i64 m) const {
  return is_integer() && to_integer() == m;
}

std::string CycInt::str() const {
  std::ostringstream os;
  os << "[";
  auto n = normalized();
  for (i64 j = 0; j < p_; ++j) {
    if (j) os << ",";
    os << n.counts()[size_t(j)];
  }
  os << "]";
  return os.str();
}

GaussianRat GaussianRat::i_pow(i64 t) {
  t %= 4;
  if (t < 0) t += 4;
  switch (t) {
    case 0: return GaussianRat(1, 0);
    case 1: return GaussianRat(0, 1);
    case 2: return GaussianRat(-1, 0);
    default: return GaussianRat(0, -1);
  }
}

GaussianRat GaussianRat::operator+(const GaussianRat& o) const {
  i64 d = std::max(den_, o.den_);
  return GaussianRat(re_ * (d / den_) + o.re_ * (d / o.den_),
                     im_ * (d / den_) + o.im_ * (d / o.den_), d);
}

GaussianRat GaussianRat::operator-(const GaussianRat& o) const {
  return *this + (-o);
}

GaussianRat GaussianRat::operator*(const GaussianRat& o) const {
  i64 d = den_ * o.den_;
  require(d <= 4, Errc::BadModulus, "denominator overflow in Q(i) product");
  return GaussianRat(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_, d);
}

i64 GaussianRat::norm_sq() const {
  require(den_ == 1, Errc::Internal, "norm of a non-integral Gaussian value");
  return re_ * re_ + im_ * im_;
}

std::string GaussianRat::str() const {
  std::ostringstream os;
  os << "(" << re_;
  if (im_ >= 0) os << "+" << im_ << "i";
  else os << im_ << "i";
  if (den_ != 1) os << ")/" << den_;
  else os << ")";
  return os.str();
}

}  // namespace clc
