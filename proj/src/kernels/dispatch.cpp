#include <atomic>
#include <cstdlib>
#include <string>

#include "escom/error.hpp"
#include "tables.hpp"

namespace escom::kernels {
namespace {

const Table* initial_table() noexcept {
  if (const char* env = std::getenv("ESCOM_ISA")) {
    if (auto isa = parse_isa(env); isa && available(*isa)) {
      return &table(*isa);
    }
  }
  return available(Isa::avx2) ? avx2_table() : &scalar_table();
}

std::atomic<const Table*>& active_slot() noexcept {
  static std::atomic<const Table*> slot{initial_table()};
  return slot;
}

}  // namespace

const Table& scalar_table() noexcept { return detail::kScalarTable; }

const Table* avx2_table() noexcept {
#if defined(ESCOM_WITH_AVX2)
  return &detail::kAvx2Table;
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return avx2_table() != nullptr && cpu_supports(Isa::avx2);
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (available(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

const Table& table(Isa isa) {
  if (!available(isa)) {
    fail(Errc::bad_config,
         "kernel ISA '" + std::string(to_string(isa)) + "' is not available");
  }
  return isa == Isa::avx2 ? *avx2_table() : scalar_table();
}

const Table& active() noexcept {
  return *active_slot().load(std::memory_order_acquire);
}

Isa active_isa() noexcept { return active().isa; }

void select(Isa isa) {
  active_slot().store(&table(isa), std::memory_order_release);
}

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "?";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  return std::nullopt;
}

}  // namespace escom::kernels
