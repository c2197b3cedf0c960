#include "rvol/kernels.hpp"

#include <string>

#include "kernels_tables.hpp"
#include "rvol/errors.hpp"

namespace rvol::kernels {

namespace {

const Backend*& active_slot() {
  static const Backend* slot = avx2_backend() ? avx2_backend() : &scalar_backend();
  return slot;
}

}  // namespace

const Backend& scalar_backend() { return detail::scalar_table; }

const Backend* avx2_backend() {
#if defined(RVOL_BUILD_AVX2) && defined(__GNUC__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &detail::avx2_table;
  }
#endif
  return nullptr;
}

const Backend& active() { return *active_slot(); }

std::string_view active_name() { return active().name; }

void select(std::string_view name) {
  if (name == "auto") {
    active_slot() = avx2_backend() ? avx2_backend() : &scalar_backend();
    return;
  }
  if (name == "scalar") {
    active_slot() = &scalar_backend();
    return;
  }
  if (name == "avx2") {
    if (const Backend* b = avx2_backend()) {
      active_slot() = b;
      return;
    }
    throw UsageError("kernel backend 'avx2' is not available on this CPU/build");
  }
  throw UsageError("unknown kernel backend '" + std::string(name) +
                   "' (expected auto, scalar or avx2)");
}

std::vector<std::string_view> available() {
  std::vector<std::string_view> out{"scalar"};
  if (avx2_backend()) out.push_back("avx2");
  return out;
}

}  // namespace rvol::kernels
