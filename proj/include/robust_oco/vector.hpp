#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace robust_oco {

/// Raised whenever a NaN or Inf is produced or received.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense real vector of fixed dimension. Points, gradients and comparators
/// all live in this type; the Euclidean norm is the only norm.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim, 0.0) {}
  Vector(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) {}

  static Vector zeros(std::size_t dim) { return Vector(dim); }
  static Vector basis(std::size_t dim, std::size_t axis) {
    Vector v(dim);
    v.coords_.at(axis) = 1.0;
    return v;
  }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& data() const { return coords_; }

  double squared_norm() const {
    double s = 0.0;
    for (double x : coords_) s += x * x;
    return s;
  }

  // hypot-style accumulation keeps the norm finite for large coordinates
  double norm() const {
    double scale = 0.0;
    for (double x : coords_) scale = std::max(scale, std::abs(x));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (double x : coords_) {
      const double r = x / scale;
      s += r * r;
    }
    return scale * std::sqrt(s);
  }

  bool is_zero() const {
    for (double x : coords_)
      if (x != 0.0) return false;
    return true;
  }

  bool all_finite() const {
    for (double x : coords_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  Vector& operator+=(const Vector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vector& operator*=(double s) {
    for (double& x : coords_) x *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend Vector operator-(Vector a) { return a *= -1.0; }
  friend bool operator==(const Vector&, const Vector&) = default;

  void require_same_dim(const Vector& o) const {
    if (o.dim() != dim())
      throw DimensionError("dimension mismatch: " + std::to_string(dim()) +
                           " vs " + std::to_string(o.dim()));
  }

 private:
  std::vector<double> coords_;
};

inline double dot(const Vector& a, const Vector& b) {
  a.require_same_dim(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double distance(const Vector& a, const Vector& b) { return (a - b).norm(); }

inline void require_finite(const Vector& v, const char* what) {
  if (!v.all_finite()) throw NumericalError(std::string("non-finite ") + what);
}

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NumericalError(std::string("non-finite ") + what);
}

}  // namespace robust_oco
