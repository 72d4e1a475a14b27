#pragma once

// Inner-loop kernels behind every vector operation in the library.
//
// Each instruction set provides a full table; the active table is picked once
// at first use (best supported ISA, or the ESCOM_ISA environment variable) and
// may be switched explicitly with select(). Elementwise kernels (axpy,
// add_scaled, clamp) produce bit-identical results across tables; reductions
// (dot, norms) differ only in summation order.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace escom::kernels {

enum class Isa { scalar, avx2 };

struct Table {
  Isa isa;
  const char* name;

  double (*dot)(const double* x, const double* y, std::size_t n);
  // Returns <x,y> and stores sum |x_i*y_i| in *abs_sum (rounding-error scale).
  double (*dot_abs)(const double* x, const double* y, std::size_t n,
                    double* abs_sum);
  double (*norm_sq)(const double* x, std::size_t n);
  double (*dist_sq)(const double* x, const double* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = x + alpha * y; out may alias x or y.
  void (*add_scaled)(const double* x, double alpha, const double* y,
                     double* out, std::size_t n);
  // Clamps x into [lo, hi] in place, returns the squared displacement.
  double (*clamp)(const double* lo, const double* hi, double* x,
                  std::size_t n);
};

const Table& scalar_table() noexcept;

/// nullptr when the AVX2 variant was not compiled in.
const Table* avx2_table() noexcept;

bool cpu_supports(Isa isa) noexcept;

/// Compiled in and supported by the running CPU.
bool available(Isa isa) noexcept;

std::vector<Isa> available_isas();

const Table& table(Isa isa);

const Table& active() noexcept;

Isa active_isa() noexcept;

/// Switches the process-wide table. Throws escom::Error if unavailable.
void select(Isa isa);

std::string_view to_string(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

/// Restores the previously active ISA on destruction.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { select(isa); }
  ~ScopedIsa() { select(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

}  // namespace escom::kernels
