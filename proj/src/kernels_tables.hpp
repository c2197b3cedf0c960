#pragma once

#include "rvol/kernels.hpp"

// Internal linkage header: each backend TU defines its table here.
namespace rvol::kernels::detail {

extern const Backend scalar_table;

#if defined(RVOL_BUILD_AVX2)
extern const Backend avx2_table;
#endif

}  // namespace rvol::kernels::detail
