#include "ergrates/vec.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "ergrates/error.hpp"

namespace ergrates {

namespace {

void require_same_dim(const VecD& x, const VecD& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch(x.dim(), y.dim());
}

}  // namespace

double VecD::norm() const { return std::sqrt(dot(*this, *this)); }

VecD VecD::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  }
  VecD out = *this;
  for (double& v : out.c_) v /= n;
  return out;
}

double VecD::product() const {
  double p = 1.0;
  for (double v : c_) p *= v;
  return p;
}

bool VecD::all_positive() const {
  for (double v : c_) {
    if (!(v > 0.0)) return false;
  }
  return !c_.empty();
}

VecD& VecD::operator+=(const VecD& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += other.c_[k];
  return *this;
}

VecD& VecD::operator-=(const VecD& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= other.c_[k];
  return *this;
}

VecD& VecD::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

double dot(const VecD& x, const VecD& y) {
  require_same_dim(x, y);
  double s = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) s += x[k] * y[k];
  return s;
}

VecD hadamard(const VecD& x, const VecD& t) {
  require_same_dim(x, t);
  VecD out(x.dim());
  for (std::size_t k = 0; k < x.dim(); ++k) out[k] = x[k] * t[k];
  return out;
}

VecD operator+(VecD x, const VecD& y) { return x += y; }
VecD operator-(VecD x, const VecD& y) { return x -= y; }
VecD operator-(VecD x) { return x *= -1.0; }
VecD operator*(double s, VecD x) { return x *= s; }
VecD operator*(VecD x, double s) { return x *= s; }

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_string(const VecD& x) {
  std::string out;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (k) out += ',';
    out += format_double(x[k]);
  }
  return out;
}

}  // namespace ergrates
