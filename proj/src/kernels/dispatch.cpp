#include <cstdlib>
#include <string_view>

#include "tables.hpp"

namespace zerocert::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(ZEROCERT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& resolve() noexcept {
  if (const char* forced = std::getenv("ZEROCERT_ISA"); forced != nullptr) {
    if (std::string_view(forced) == "scalar") return scalar_table();
  }
  if (const KernelTable* t = table_for(Isa::avx2)) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return &scalar_table();
    case Isa::avx2:
#if defined(ZEROCERT_HAVE_AVX2)
      if (cpu_has_avx2()) return &detail::avx2_table();
#endif
      return nullptr;
  }
  return nullptr;
}

bool isa_available(Isa isa) noexcept { return table_for(isa) != nullptr; }

const KernelTable& active() noexcept {
  static const KernelTable& table = resolve();
  return table;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace zerocert::kernels
