#include "escom/vector.hpp"

#include <cmath>
#include <string>

#include "escom/error.hpp"
#include "escom/kernels.hpp"

namespace escom {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::zero_normal: return "ZeroNormal";
    case Errc::bad_box: return "BadBox";
    case Errc::bad_radius: return "BadRadius";
    case Errc::zero_subgradient: return "ZeroSubgradient";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::non_finite: return "NonFinite";
    case Errc::empty_chain: return "EmptyChain";
    case Errc::bad_step_scale: return "BadStepScale";
    case Errc::bad_moduli: return "BadModuli";
    case Errc::bad_relaxation: return "BadRelaxation";
    case Errc::bad_schedule: return "BadSchedule";
    case Errc::bad_stop_rule: return "BadStopRule";
    case Errc::infeasible_start: return "InfeasibleStart";
    case Errc::bad_shape: return "BadShape";
    case Errc::bad_config: return "BadConfig";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

bool all_finite(std::span<const double> x) noexcept {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_same_dim(const Vector& x, const Vector& y, const char* what) {
  if (x.size() != y.size()) {
    fail(Errc::dimension_mismatch,
         std::string(what) + ": dimensions " + std::to_string(x.size()) +
             " and " + std::to_string(y.size()) + " differ");
  }
}

void require_finite(const Vector& x, const char* what) {
  if (!all_finite(x.span())) {
    fail(Errc::non_finite, std::string(what) + " has a NaN or infinite entry");
  }
}

double dot(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "dot");
  return kernels::active().dot(x.data(), y.data(), x.size());
}

double norm_sq(const Vector& x) {
  return kernels::active().norm_sq(x.data(), x.size());
}

double norm(const Vector& x) { return std::sqrt(norm_sq(x)); }

double dist_sq(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "dist_sq");
  return kernels::active().dist_sq(x.data(), y.data(), x.size());
}

double dist(const Vector& x, const Vector& y) {
  return std::sqrt(dist_sq(x, y));
}

void axpy(double alpha, const Vector& x, Vector& y) {
  require_same_dim(x, y, "axpy");
  kernels::active().axpy(alpha, x.data(), y.data(), x.size());
}

Vector add_scaled(const Vector& x, double alpha, const Vector& y) {
  require_same_dim(x, y, "add_scaled");
  Vector out(x.size());
  kernels::active().add_scaled(x.data(), alpha, y.data(), out.data(),
                               x.size());
  return out;
}

Vector sub(const Vector& x, const Vector& y) { return add_scaled(x, -1.0, y); }

Vector scaled(double alpha, const Vector& x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
  return out;
}

}  // namespace escom
