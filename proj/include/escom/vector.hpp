#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace escom {

/// Dense real coordinate vector. All arithmetic on it goes through the
/// runtime-selected kernels in kernels.hpp.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  Vector(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) {}
  explicit Vector(std::span<const double> coords)
      : coords_(coords.begin(), coords.end()) {}

  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  double& operator[](std::size_t i) noexcept { return coords_[i]; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }

  double* data() noexcept { return coords_.data(); }
  const double* data() const noexcept { return coords_.data(); }

  std::span<double> span() noexcept { return coords_; }
  std::span<const double> span() const noexcept { return coords_; }

  auto begin() noexcept { return coords_.begin(); }
  auto end() noexcept { return coords_.end(); }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  const std::vector<double>& coords() const noexcept { return coords_; }

  // Bitwise-style comparison of coordinates (IEEE ==, so -0 == +0).
  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> coords_;
};

bool all_finite(std::span<const double> x) noexcept;

double dot(const Vector& x, const Vector& y);
double norm_sq(const Vector& x);
double norm(const Vector& x);
double dist_sq(const Vector& x, const Vector& y);
double dist(const Vector& x, const Vector& y);

/// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);

/// x + alpha * y
Vector add_scaled(const Vector& x, double alpha, const Vector& y);

/// x - y
Vector sub(const Vector& x, const Vector& y);

Vector scaled(double alpha, const Vector& x);

/// Throws Errc::dimension_mismatch unless the sizes agree.
void require_same_dim(const Vector& x, const Vector& y, const char* what);

/// Throws Errc::non_finite if any coordinate is NaN or infinite.
void require_finite(const Vector& x, const char* what);

}  // namespace escom
