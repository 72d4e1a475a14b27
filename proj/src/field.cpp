#include "escom/field.hpp"

#include <algorithm>
#include <cmath>

#include "escom/error.hpp"
#include "escom/rng.hpp"

namespace escom {

VIField::VIField(FieldFn eval, double eta, double kappa, std::string name,
                 std::optional<std::size_t> dim)
    : eval_(std::move(eval)),
      eta_(eta),
      kappa_(kappa),
      name_(std::move(name)),
      dim_(dim) {
  if (!eval_) fail(Errc::bad_config, "field has no evaluation function");
  if (!(eta > 0.0) || !(eta <= kappa) || !std::isfinite(kappa)) {
    fail(Errc::bad_moduli, "need 0 < eta <= kappa, got eta=" +
                               std::to_string(eta) +
                               " kappa=" + std::to_string(kappa));
  }
}

void VIField::eval_into(const Vector& x, Vector& out) const {
  if (dim_ && *dim_ != x.size()) {
    fail(Errc::dimension_mismatch, "field '" + name_ + "' has dimension " +
                                       std::to_string(*dim_));
  }
  if (out.size() != x.size()) out = Vector(x.size());
  eval_(x, out);
}

Vector VIField::operator()(const Vector& x) const {
  Vector out(x.size());
  eval_into(x, out);
  return out;
}

double compute_tau(double mu, double eta, double kappa) {
  if (!(eta > 0.0) || !(eta <= kappa)) {
    fail(Errc::bad_moduli, "need 0 < eta <= kappa");
  }
  if (!(mu > 0.0) || !(mu < 2.0 * eta / (kappa * kappa))) {
    fail(Errc::bad_step_scale, "mu=" + std::to_string(mu) +
                                   " outside (0, 2 eta / kappa^2)");
  }
  const double radicand = 1.0 + mu * mu * kappa * kappa - 2.0 * mu * eta;
  // Rounding can push an exact-zero radicand slightly negative.
  return 1.0 - std::sqrt(std::max(radicand, 0.0));
}

StepConstants StepConstants::make(double mu, const VIField& field) {
  return {mu, compute_tau(mu, field.eta(), field.kappa())};
}

VIField make_identity_field(std::size_t dim) {
  if (dim == 0) fail(Errc::bad_shape, "identity field needs dim >= 1");
  return VIField([](const Vector& x, Vector& out) { out = x; }, 1.0, 1.0,
                 "identity", dim);
}

VIField make_affine_field(Vector target) {
  require_finite(target, "affine field target");
  const std::size_t dim = target.size();
  return VIField(
      [target = std::move(target)](const Vector& x, Vector& out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - target[i];
      },
      1.0, 1.0, "affine", dim);
}

VIField make_diagonal_field(Vector diag, Vector shift) {
  require_same_dim(diag, shift, "diagonal field");
  require_finite(diag, "diagonal field scales");
  require_finite(shift, "diagonal field shift");
  if (diag.empty()) fail(Errc::bad_shape, "diagonal field needs dim >= 1");
  const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
  const double eta = *lo;
  const double kappa = *hi;
  const std::size_t dim = diag.size();
  return VIField(
      [diag = std::move(diag), shift = std::move(shift)](const Vector& x,
                                                         Vector& out) {
        for (std::size_t i = 0; i < x.size(); ++i) {
          out[i] = diag[i] * x[i] - shift[i];
        }
      },
      eta, kappa, "diagonal", dim);
}

FieldCheck check_field(const VIField& field, std::size_t dim,
                       std::size_t samples, std::uint64_t seed, double tol) {
  Rng rng(seed, 0xF1E1D);
  FieldCheck out;
  out.samples = samples;
  out.worst_monotonicity_gap = -INFINITY;
  out.worst_lipschitz_gap = -INFINITY;
  for (std::size_t s = 0; s < samples; ++s) {
    const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
    const Vector x = scaled(scale, rng.normal_vector(dim));
    const Vector y = scaled(scale, rng.normal_vector(dim));
    const Vector dx = sub(x, y);
    const Vector df = sub(field(x), field(y));
    const double dsq = norm_sq(dx);

    const double mono_gap = field.eta() * dsq - dot(df, dx);
    const double lip_gap = norm(df) - field.kappa() * std::sqrt(dsq);
    out.worst_monotonicity_gap = std::max(out.worst_monotonicity_gap, mono_gap);
    out.worst_lipschitz_gap = std::max(out.worst_lipschitz_gap, lip_gap);
    if (mono_gap > tol * (1.0 + dsq)) ++out.monotonicity_violations;
    if (lip_gap > tol * (1.0 + std::sqrt(dsq))) ++out.lipschitz_violations;
  }
  return out;
}

}  // namespace escom
