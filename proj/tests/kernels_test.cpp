#include <cmath>
#include <cstdlib>
#include <string_view>
#include <vector>

#include "doctest.h"
#include "escom/kernels.hpp"
#include "escom/rng.hpp"

using namespace escom;
using kernels::Isa;

namespace {

std::vector<double> draw(Rng& rng, std::size_t n, double scale = 10.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

double abs_dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i] * y[i]);
  return s;
}

// Reassociated sums of n terms agree to within n * eps * sum |terms|.
double reduction_tol(std::size_t n, double abs_sum) {
  return 2.0 * static_cast<double>(n + 1) * 2.2204460492503131e-16 * abs_sum +
         1e-300;
}

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(kernels::available(Isa::scalar));
  CHECK(kernels::scalar_table().isa == Isa::scalar);
  const auto isas = kernels::available_isas();
  REQUIRE_FALSE(isas.empty());
  CHECK(isas.front() == Isa::scalar);
}

TEST_CASE("isa names round-trip") {
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    CHECK(kernels::parse_isa(kernels::to_string(isa)) == isa);
  }
  CHECK_FALSE(kernels::parse_isa("neon").has_value());
}

TEST_CASE("ESCOM_ISA environment variable picks the startup table") {
  const char* env = std::getenv("ESCOM_ISA");
  if (env && std::string_view(env) == "scalar") {
    CHECK(kernels::active_isa() == Isa::scalar);
  } else if (kernels::available(Isa::avx2)) {
    CHECK(kernels::active_isa() == Isa::avx2);
  }
}

TEST_CASE("scoped selection restores the previous table") {
  const Isa before = kernels::active_isa();
  {
    kernels::ScopedIsa scope(Isa::scalar);
    CHECK(kernels::active_isa() == Isa::scalar);
  }
  CHECK(kernels::active_isa() == before);
}

TEST_CASE("every table matches the scalar reference") {
  const kernels::Table& ref = kernels::scalar_table();
  for (Isa isa : kernels::available_isas()) {
    const kernels::Table& t = kernels::table(isa);
    CAPTURE(t.name);
    Rng rng(42, static_cast<std::uint64_t>(isa));
    for (std::size_t n = 0; n <= 67; ++n) {
      CAPTURE(n);
      const auto x = draw(rng, n);
      const auto y = draw(rng, n);
      const double scale = abs_dot(x, y) + abs_dot(x, x) + abs_dot(y, y);

      CHECK(std::fabs(t.dot(x.data(), y.data(), n) -
                      ref.dot(x.data(), y.data(), n)) <=
            reduction_tol(n, scale));
      CHECK(std::fabs(t.norm_sq(x.data(), n) - ref.norm_sq(x.data(), n)) <=
            reduction_tol(n, scale));

      std::vector<double> diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - y[i];
      CHECK(std::fabs(t.dist_sq(x.data(), y.data(), n) -
                      ref.dist_sq(x.data(), y.data(), n)) <=
            reduction_tol(n, abs_dot(diff, diff)));

      double abs_t = 0.0, abs_r = 0.0;
      const double dt = t.dot_abs(x.data(), y.data(), n, &abs_t);
      const double dr = ref.dot_abs(x.data(), y.data(), n, &abs_r);
      CHECK(std::fabs(dt - dr) <= reduction_tol(n, scale));
      CHECK(std::fabs(abs_t - abs_r) <= reduction_tol(n, abs_r));
      CHECK(std::fabs(dr - ref.dot(x.data(), y.data(), n)) <=
            reduction_tol(n, scale));

      // Elementwise kernels are bit-identical.
      auto yt = y, yr = y;
      t.axpy(-0.37, x.data(), yt.data(), n);
      ref.axpy(-0.37, x.data(), yr.data(), n);
      CHECK(yt == yr);

      std::vector<double> ot(n), orf(n);
      t.add_scaled(x.data(), 1.7, y.data(), ot.data(), n);
      ref.add_scaled(x.data(), 1.7, y.data(), orf.data(), n);
      CHECK(ot == orf);

      auto alias_t = x, alias_r = x;
      t.add_scaled(alias_t.data(), 0.5, y.data(), alias_t.data(), n);
      ref.add_scaled(alias_r.data(), 0.5, y.data(), alias_r.data(), n);
      CHECK(alias_t == alias_r);

      std::vector<double> lo(n, -3.0), hi(n, 4.0);
      auto ct = x, cr = x;
      if (n > 2) {
        ct[0] = cr[0] = -3.0;  // on the boundary
        ct[1] = cr[1] = 4.0;
        lo[2] = hi[2] = 0.25;  // degenerate interval
      }
      const double mt = t.clamp(lo.data(), hi.data(), ct.data(), n);
      const double mr = ref.clamp(lo.data(), hi.data(), cr.data(), n);
      CHECK(ct == cr);
      CHECK(std::fabs(mt - mr) <= reduction_tol(n, mr));
    }
  }
}

TEST_CASE("clamp is exact on its own output") {
  for (Isa isa : kernels::available_isas()) {
    const kernels::Table& t = kernels::table(isa);
    Rng rng(7);
    const auto x0 = draw(rng, 33);
    std::vector<double> lo(33, -1.0), hi(33, 1.0);
    auto x = x0;
    t.clamp(lo.data(), hi.data(), x.data(), x.size());
    const auto once = x;
    CHECK(t.clamp(lo.data(), hi.data(), x.data(), x.size()) == 0.0);
    CHECK(x == once);
  }
}
