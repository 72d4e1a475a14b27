#include "escom/operators.hpp"

#include <cfloat>
#include <cmath>
#include <string>

#include "escom/error.hpp"
#include "escom/kernels.hpp"

namespace escom {
namespace {

// A computed inner product cannot resolve a constraint more finely than its
// own rounding error; points within that band count as feasible so that
// projecting a projected point is a no-op.
double halfspace_slack(double scale, std::size_t n) {
  return static_cast<double>(n + 2) * DBL_EPSILON * scale;
}

// Rescaled coordinates c_i + s (x_i - c_i) carry absolute error of order
// eps (|c_i| + r), so the admissible radius widens with the center's size.
bool inside(const Ball& b, double dsq, std::size_t n) {
  const double r = b.radius + 4.0 * DBL_EPSILON * (b.center_norm + b.radius);
  return dsq <= r * r * (1.0 + static_cast<double>(n + 4) * DBL_EPSILON);
}

double halfspace_violation(const HalfSpace& h, const Vector& u) {
  double abs_sum = 0.0;
  const double s =
      kernels::active().dot_abs(h.normal.data(), u.data(), u.size(), &abs_sum) -
      h.level;
  return s <= halfspace_slack(abs_sum + std::fabs(h.level), u.size()) ? 0.0
                                                                      : s;
}

// The rounding error of a step scales with its length, which a later
// inside-test cannot see; re-projecting the leftover violation makes the
// output pass the same test apply() uses, so a second application is a no-op.
constexpr int kRefinePasses = 4;

double step(const HalfSpace& h, Vector& u) {
  double moved = 0.0;
  for (int pass = 0; pass < kRefinePasses; ++pass) {
    const double s = halfspace_violation(h, u);
    if (s == 0.0) break;
    const double t = s / h.normal_sq;
    kernels::active().axpy(-t, h.normal.data(), u.data(), u.size());
    moved += s * t;
  }
  return moved;
}

double step(const Box& b, Vector& u) {
  return kernels::active().clamp(b.lo.data(), b.hi.data(), u.data(),
                                 u.size());
}

double step(const Ball& b, Vector& u) {
  const double dsq =
      kernels::active().dist_sq(u.data(), b.center.data(), u.size());
  if (inside(b, dsq, u.size())) return 0.0;
  const double d = std::sqrt(dsq);
  const double scale = b.radius / d;
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = b.center[i] + scale * (u[i] - b.center[i]);
  }
  return (d - b.radius) * (d - b.radius);
}

double step(const Sublevel& s, Vector& u) {
  const double c = s.value(u);
  if (!std::isfinite(c)) fail(Errc::non_finite, "constraint value is not finite");
  if (c <= 0.0) return 0.0;
  return subgradient_step(c, s.subgradient(u), u);
}

void check_dim(const Cutter& cutter, const Vector& x) {
  if (auto dim = cutter.dimension(); dim && *dim != x.size()) {
    fail(Errc::dimension_mismatch,
         "cutter of dimension " + std::to_string(*dim) +
             " applied to a vector of dimension " + std::to_string(x.size()));
  }
}

}  // namespace

Cutter Cutter::halfspace(Vector normal, double level) {
  require_finite(normal, "half-space normal");
  if (normal.empty()) fail(Errc::dimension_mismatch, "empty half-space normal");
  if (!std::isfinite(level)) fail(Errc::non_finite, "half-space level");
  const double nsq = norm_sq(normal);
  if (nsq == 0.0) fail(Errc::zero_normal, "half-space normal has zero norm");
  return Cutter(HalfSpace{std::move(normal), level, nsq});
}

Cutter Cutter::box(Vector lo, Vector hi) {
  require_same_dim(lo, hi, "box bounds");
  if (lo.empty()) fail(Errc::dimension_mismatch, "empty box");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) {
      fail(Errc::bad_box, "lower bound exceeds upper bound at coordinate " +
                              std::to_string(i));
    }
  }
  return Cutter(Box{std::move(lo), std::move(hi)});
}

Cutter Cutter::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (center.empty()) fail(Errc::dimension_mismatch, "empty ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail(Errc::bad_radius, "ball radius must be positive and finite");
  }
  const double cn = norm(center);
  return Cutter(Ball{std::move(center), radius, cn});
}

Cutter Cutter::subgradient(ConstraintFn value, SubgradientFn subgradient) {
  if (!value || !subgradient) {
    fail(Errc::bad_config, "subgradient cutter needs both c and g");
  }
  return Cutter(Sublevel{std::move(value), std::move(subgradient)});
}

CutterKind Cutter::kind() const noexcept {
  return static_cast<CutterKind>(op_.index());
}

std::optional<std::size_t> Cutter::dimension() const noexcept {
  switch (kind()) {
    case CutterKind::halfspace: return as_halfspace()->normal.size();
    case CutterKind::box: return as_box()->lo.size();
    case CutterKind::ball: return as_ball()->center.size();
    case CutterKind::subgradient: return std::nullopt;
  }
  return std::nullopt;
}

Vector Cutter::apply(const Vector& x) const {
  Vector u = x;
  apply_in_place(u);
  return u;
}

double Cutter::apply_in_place(Vector& u) const {
  check_dim(*this, u);
  return std::visit([&u](const auto& op) { return step(op, u); }, op_);
}

bool Cutter::contains(const Vector& x) const {
  check_dim(*this, x);
  switch (kind()) {
    case CutterKind::halfspace:
      return halfspace_violation(*as_halfspace(), x) == 0.0;
    case CutterKind::box: {
      const Box& b = *as_box();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(b.lo[i] <= x[i] && x[i] <= b.hi[i])) return false;
      }
      return true;
    }
    case CutterKind::ball: {
      const Ball& b = *as_ball();
      return inside(b, dist_sq(x, b.center), x.size());
    }
    case CutterKind::subgradient:
      return as_sublevel()->value(x) <= 0.0;
  }
  return false;
}

double subgradient_step(double c, const Vector& g, Vector& u) {
  if (c <= 0.0) return 0.0;
  require_same_dim(g, u, "subgradient");
  require_finite(g, "subgradient");
  const double gsq = norm_sq(g);
  if (gsq <= kZeroSubgradientSq) {
    fail(Errc::zero_subgradient,
         "zero subgradient at a point with positive constraint value " +
             std::to_string(c));
  }
  const double t = c / gsq;
  axpy(-t, g, u);
  return c * t;
}

Vector project_halfspace(const Vector& a, double b, const Vector& x) {
  require_same_dim(a, x, "project_halfspace");
  require_finite(x, "project_halfspace input");
  return Cutter::halfspace(a, b).apply(x);
}

Vector project_box(const Vector& lo, const Vector& hi, const Vector& x) {
  require_same_dim(lo, x, "project_box");
  require_finite(x, "project_box input");
  return Cutter::box(lo, hi).apply(x);
}

Vector project_ball(const Vector& center, double r, const Vector& x) {
  require_same_dim(center, x, "project_ball");
  require_finite(x, "project_ball input");
  return Cutter::ball(center, r).apply(x);
}

Vector project_subgradient(const ConstraintFn& c, const SubgradientFn& g,
                           const Vector& x) {
  require_finite(x, "project_subgradient input");
  return Cutter::subgradient(c, g).apply(x);
}

CutterChain::CutterChain(std::vector<Cutter> cutters)
    : cutters_(std::move(cutters)) {
  if (cutters_.empty()) fail(Errc::empty_chain, "a chain needs m >= 1 cutters");
  for (const Cutter& c : cutters_) {
    const auto d = c.dimension();
    if (!d) continue;
    if (dim_ && *dim_ != *d) {
      fail(Errc::dimension_mismatch,
           "cutters of dimension " + std::to_string(*dim_) + " and " +
               std::to_string(*d) + " in one chain");
    }
    dim_ = d;
  }
}

SweepTrajectory sweep(const CutterChain& chain, const Vector& x) {
  require_finite(x, "sweep input");
  SweepTrajectory traj;
  traj.points.reserve(chain.size() + 1);
  traj.points.push_back(x);
  for (const Cutter& c : chain) {
    traj.points.push_back(c.apply(traj.points.back()));
  }
  return traj;
}

double sweep_in_place(const CutterChain& chain, Vector& u) {
  require_finite(u, "sweep input");
  double moved = 0.0;
  for (const Cutter& c : chain) moved += c.apply_in_place(u);
  return moved;
}

bool is_fixed(const CutterChain& chain, const Vector& x, double tol) {
  if (!(tol >= 0.0)) fail(Errc::bad_config, "is_fixed tolerance must be >= 0");
  Vector u = x;
  sweep_in_place(chain, u);
  return dist(u, x) <= tol;
}

bool is_fixed(const CutterChain& chain, const Vector& x) {
  return is_fixed(chain, x, kFixedPointRelTol * (1.0 + norm(x)));
}

}  // namespace escom
