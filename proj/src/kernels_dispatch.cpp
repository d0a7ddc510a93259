#include <cstdlib>
#include <string>

#include "gravistoch/kernels.hpp"

namespace gravistoch::kernels {

#if defined(__x86_64__)
bool avx2_available() {
#ifdef GRAVISTOCH_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
#endif

const Ops& active_ops() {
    static const Ops* chosen = [] {
        const char* env = std::getenv("GRAVISTOCH_SIMD");
        const std::string want = env ? env : "auto";
#if defined(__x86_64__) && defined(GRAVISTOCH_HAVE_AVX2)
        if (want == "avx2" && avx2_available()) return &avx2_ops();
        if (want == "auto" && avx2_available()) return &avx2_ops();
#endif
        return &scalar_ops();
    }();
    return *chosen;
}

}  // namespace gravistoch::kernels
