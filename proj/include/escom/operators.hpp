#pragma once

// Cutter operators: metric projections onto half-spaces, boxes and balls, and
// subgradient projections onto sublevel sets of convex functions. A cutter T
// satisfies <x - Tx, z - Tx> <= 0 for every x and every z in Fix T.

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "escom/vector.hpp"

namespace escom {

/// Squared-norm floor below which a subgradient at a violated point is
/// treated as a data error.
inline constexpr double kZeroSubgradientSq = 1e-30;

/// Relative tolerance used by is_fixed() when the caller gives none.
inline constexpr double kFixedPointRelTol = 1e-12;

using ConstraintFn = std::function<double(const Vector&)>;
using SubgradientFn = std::function<Vector(const Vector&)>;

struct HalfSpace {
  Vector normal;
  double level = 0.0;
  double normal_sq = 0.0;
};

struct Box {
  Vector lo;
  Vector hi;
};

struct Ball {
  Vector center;
  double radius = 1.0;
  double center_norm = 0.0;
};

/// {x : c(x) <= 0} reached by subgradient steps.
struct Sublevel {
  ConstraintFn value;
  SubgradientFn subgradient;
};

enum class CutterKind { halfspace, box, ball, subgradient };

class Cutter {
 public:
  static Cutter halfspace(Vector normal, double level);
  static Cutter box(Vector lo, Vector hi);
  static Cutter ball(Vector center, double radius);
  static Cutter subgradient(ConstraintFn value, SubgradientFn subgradient);

  CutterKind kind() const noexcept;

  /// Ambient dimension; subgradient cutters adapt to their input.
  std::optional<std::size_t> dimension() const noexcept;

  Vector apply(const Vector& x) const;

  /// Replaces u by T(u) and returns ||T(u) - u||^2.
  double apply_in_place(Vector& u) const;

  /// Membership in Fix T, using the same test apply() uses to decide that a
  /// point does not move.
  bool contains(const Vector& x) const;

  const HalfSpace* as_halfspace() const noexcept {
    return std::get_if<HalfSpace>(&op_);
  }
  const Box* as_box() const noexcept { return std::get_if<Box>(&op_); }
  const Ball* as_ball() const noexcept { return std::get_if<Ball>(&op_); }
  const Sublevel* as_sublevel() const noexcept {
    return std::get_if<Sublevel>(&op_);
  }

 private:
  using Op = std::variant<HalfSpace, Box, Ball, Sublevel>;
  explicit Cutter(Op op) : op_(std::move(op)) {}

  Op op_;
};

/// x if <a,x> <= b, else x - ((<a,x> - b)/||a||^2) a.
Vector project_halfspace(const Vector& a, double b, const Vector& x);

/// Componentwise clamp into [lo, hi].
Vector project_box(const Vector& lo, const Vector& hi, const Vector& x);

/// x if ||x - center|| <= r, else center + r (x - center)/||x - center||.
Vector project_ball(const Vector& center, double r, const Vector& x);

/// x if c(x) <= 0, else x - (c(x)/||g(x)||^2) g(x).
Vector project_subgradient(const ConstraintFn& c, const SubgradientFn& g,
                           const Vector& x);

/// One subgradient step with precomputed data: u -= (c/||g||^2) g when c > 0.
/// Returns the squared displacement. This is the arithmetic every subgradient
/// cutter uses, exposed so callers that record (c, g) reproduce it exactly.
double subgradient_step(double c, const Vector& g, Vector& u);

/// T_m ... T_1 as an ordered list; T_1 is applied first.
class CutterChain {
 public:
  explicit CutterChain(std::vector<Cutter> cutters);

  std::size_t size() const noexcept { return cutters_.size(); }
  const Cutter& operator[](std::size_t i) const { return cutters_[i]; }
  const Cutter& last() const { return cutters_.back(); }
  std::optional<std::size_t> dimension() const noexcept { return dim_; }

  auto begin() const noexcept { return cutters_.begin(); }
  auto end() const noexcept { return cutters_.end(); }

 private:
  std::vector<Cutter> cutters_;
  std::optional<std::size_t> dim_;
};

/// u_0 = x, u_i = T_i u_{i-1}. points.size() == chain length + 1.
struct SweepTrajectory {
  std::vector<Vector> points;

  std::size_t steps() const noexcept {
    return points.empty() ? 0 : points.size() - 1;
  }
  const Vector& input() const { return points.front(); }
  const Vector& output() const { return points.back(); }
};

SweepTrajectory sweep(const CutterChain& chain, const Vector& x);

/// Same arithmetic as sweep() without storing intermediate points: replaces u
/// by T u and returns sum_i ||u_i - u_{i-1}||^2.
double sweep_in_place(const CutterChain& chain, Vector& u);

/// True iff ||T x - x|| <= tol.
bool is_fixed(const CutterChain& chain, const Vector& x, double tol);

/// is_fixed with tol = kFixedPointRelTol * (1 + ||x||).
bool is_fixed(const CutterChain& chain, const Vector& x);

}  // namespace escom
