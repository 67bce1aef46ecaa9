#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ergrates {

/// Point or direction in R^d. The dimension is fixed at construction and
/// binary operations require equal dimensions.
class VecD {
 public:
  VecD() = default;
  explicit VecD(std::size_t dim, double fill = 0.0) : c_(dim, fill) {}
  VecD(std::initializer_list<double> coords) : c_(coords) {}
  explicit VecD(std::vector<double> coords) : c_(std::move(coords)) {}

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }

  std::span<const double> coords() const { return c_; }

  double norm() const;
  /// Unit vector in the same direction; throws InvalidArgument for zero.
  VecD normalized() const;
  /// Product of the coordinates.
  double product() const;
  bool all_positive() const;

  VecD& operator+=(const VecD& other);
  VecD& operator-=(const VecD& other);
  VecD& operator*=(double s);

  bool operator==(const VecD& other) const = default;

 private:
  std::vector<double> c_;
};

double dot(const VecD& x, const VecD& y);
/// Coordinate-wise product x⊙t (the homothety generated by t).
VecD hadamard(const VecD& x, const VecD& t);

VecD operator+(VecD x, const VecD& y);
VecD operator-(VecD x, const VecD& y);
VecD operator-(VecD x);
VecD operator*(double s, VecD x);
VecD operator*(VecD x, double s);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Comma-separated coordinates with round-trip precision.
std::string to_string(const VecD& x);

}  // namespace ergrates
