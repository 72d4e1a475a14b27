#include "escom/bench/instance.hpp"

#include <string>

#include "escom/error.hpp"
#include "escom/rng.hpp"

namespace escom::bench {
namespace {

constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kStartStream = 2;
constexpr double kEntryBound = 5.0;

}  // namespace

Vector MinNormInstance::row(std::size_t i) const {
  return Vector(std::span<const double>(a.data() + i * k, k));
}

MinNormInstance generate_instance(std::size_t m, std::size_t k, double u,
                                  double v, std::uint64_t seed) {
  if (m == 0 || k == 0) {
    fail(Errc::bad_shape, "instance needs m >= 1 and k >= 1, got " +
                              std::to_string(m) + "x" + std::to_string(k));
  }
  if (!(u <= v)) fail(Errc::bad_shape, "box bounds need u <= v");
  MinNormInstance inst;
  inst.m = m;
  inst.k = k;
  inst.box_lo = u;
  inst.box_hi = v;
  inst.seed = seed;
  Rng rng(seed, kMatrixStream);
  inst.a.resize(m * k);
  for (double& e : inst.a) e = rng.uniform(-kEntryBound, kEntryBound);
  return inst;
}

Vector generate_start(std::size_t k, std::uint64_t seed) {
  if (k == 0) fail(Errc::bad_shape, "start vector needs k >= 1");
  Rng rng(seed, kStartStream);
  return rng.uniform_vector(k, 0.0, 1.0);
}

Problem build_problem(const MinNormInstance& inst) {
  std::vector<Cutter> cutters;
  cutters.reserve(inst.m + 1);
  for (std::size_t i = 0; i < inst.m; ++i) {
    cutters.push_back(Cutter::halfspace(inst.row(i), 0.0));
  }
  cutters.push_back(Cutter::box(Vector(inst.k, inst.box_lo),
                                Vector(inst.k, inst.box_hi)));
  return {make_identity_field(inst.k), CutterChain(std::move(cutters))};
}

}  // namespace escom::bench
