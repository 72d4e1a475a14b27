// Reference kernels: straight sequential loops, no reassociation.

#include <cmath>

#include "tables.hpp"

namespace escom::kernels::detail {
namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double dot_abs(const double* x, const double* y, std::size_t n,
               double* abs_sum) {
  double s = 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = x[i] * y[i];
    s += p;
    a += std::fabs(p);
  }
  *abs_sum = a;
  return s;
}

double norm_sq(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dist_sq(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add_scaled(const double* x, double alpha, const double* y, double* out,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

double clamp(const double* lo, const double* hi, double* x, std::size_t n) {
  double moved = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double c = x[i] < lo[i] ? lo[i] : x[i];
    c = c > hi[i] ? hi[i] : c;
    const double d = x[i] - c;
    moved += d * d;
    x[i] = c;
  }
  return moved;
}

}  // namespace

const Table kScalarTable{
    Isa::scalar, "scalar", dot, dot_abs, norm_sq, dist_sq, axpy, add_scaled,
    clamp,
};

}  // namespace escom::kernels::detail
