#pragma once

// The operator F of the variational inequality <F(u), z - u> >= 0 together
// with its declared strong-monotonicity modulus eta and Lipschitz constant
// kappa.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "escom/vector.hpp"

namespace escom {

/// Writes F(x) into out (out.size() == x.size() on entry).
using FieldFn = std::function<void(const Vector& x, Vector& out)>;

class VIField {
 public:
  /// Throws Errc::bad_moduli unless 0 < eta <= kappa.
  VIField(FieldFn eval, double eta, double kappa, std::string name = "custom",
          std::optional<std::size_t> dim = std::nullopt);

  Vector operator()(const Vector& x) const;
  void eval_into(const Vector& x, Vector& out) const;

  double eta() const noexcept { return eta_; }
  double kappa() const noexcept { return kappa_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<std::size_t> dimension() const noexcept { return dim_; }

 private:
  FieldFn eval_;
  double eta_;
  double kappa_;
  std::string name_;
  std::optional<std::size_t> dim_;
};

/// tau = 1 - sqrt(1 + mu^2 kappa^2 - 2 mu eta), the contraction margin of
/// x -> x - mu*beta*F(x). Requires 0 < mu < 2 eta / kappa^2.
double compute_tau(double mu, double eta, double kappa);

struct StepConstants {
  double mu;
  double tau;

  static StepConstants make(double mu, const VIField& field);
};

/// F(x) = x; eta = kappa = 1.
VIField make_identity_field(std::size_t dim);

/// F(x) = x - target, the gradient of 0.5 ||x - target||^2; eta = kappa = 1.
VIField make_affine_field(Vector target);

/// F(x) = diag(d) x - shift with eta = min d_i, kappa = max d_i (d_i > 0).
VIField make_diagonal_field(Vector diag, Vector shift);

/// Outcome of sampling the declared moduli on random pairs. Violations are
/// reported, never corrected.
struct FieldCheck {
  std::size_t samples = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t lipschitz_violations = 0;
  double worst_monotonicity_gap = 0.0;  // eta||x-y||^2 - <Fx-Fy, x-y>
  double worst_lipschitz_gap = 0.0;     // ||Fx-Fy|| - kappa||x-y||

  bool ok() const noexcept {
    return monotonicity_violations == 0 && lipschitz_violations == 0;
  }
};

FieldCheck check_field(const VIField& field, std::size_t dim,
                       std::size_t samples, std::uint64_t seed,
                       double tol = 1e-10);

}  // namespace escom
