#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace holoshape::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(HOLOSHAPE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable kScalar{
    "scalar",
    detail::dot_conj_scalar,
    detail::norm_sq_scalar,
    detail::multiply_scalar,
    detail::impose_amplitude_scalar,
    detail::amplitude_mismatch_sq_scalar,
};

#if defined(HOLOSHAPE_HAVE_AVX2)
const KernelTable kAvx2{
    "avx2",
    detail::dot_conj_avx2,
    detail::norm_sq_avx2,
    detail::multiply_avx2,
    detail::impose_amplitude_avx2,
    detail::amplitude_mismatch_sq_avx2,
};
#endif

const KernelTable& select() {
  if (const char* env = std::getenv("HOLOSHAPE_SIMD"); env && std::string_view(env) == "scalar") {
    return kScalar;
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(HOLOSHAPE_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace holoshape::kernels
