#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>

#include "rvol/kernels.hpp"

// RVOL_KERNELS=scalar|avx2|auto pins the compute backend for the whole
// suite, so ctest can replay every test on the reference path.
int main(int argc, char** argv) {
  if (const char* backend = std::getenv("RVOL_KERNELS")) {
    rvol::kernels::select(backend);
    std::printf("[rvol_tests] kernel backend: %s\n",
                std::string(rvol::kernels::active_name()).c_str());
  }
  return doctest::Context(argc, argv).run();
}
