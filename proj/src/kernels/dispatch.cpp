#include "axcond/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace axcond::kernels {

#ifdef AXCOND_BUILD_AVX2
const Table* avx2_table_impl();
#endif

const Table* avx2_table() {
#ifdef AXCOND_BUILD_AVX2
  if (__builtin_cpu_supports("avx2")) return avx2_table_impl();
#endif
  return nullptr;
}

const Table& active() {
  static const Table* chosen = [] {
    const char* req = std::getenv("AXCOND_KERNELS");
    if (req != nullptr) {
      if (std::strcmp(req, "scalar") == 0) return &scalar_table();
      if (std::strcmp(req, "avx2") == 0) {
        const Table* t = avx2_table();
        if (t == nullptr)
          throw std::runtime_error("AXCOND_KERNELS=avx2 but avx2 is unavailable");
        return t;
      }
      throw std::runtime_error("AXCOND_KERNELS must be 'scalar' or 'avx2'");
    }
    const Table* t = avx2_table();
    return t != nullptr ? t : &scalar_table();
  }();
  return *chosen;
}

}  // namespace axcond::kernels
