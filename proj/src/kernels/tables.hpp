#pragma once

#include "zerocert/kernels.hpp"

namespace zerocert::kernels::detail {

#if defined(ZEROCERT_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace zerocert::kernels::detail
