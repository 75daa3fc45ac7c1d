#include "qspec/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace qspec::kernels {

#if defined(QSPEC_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels()
{
#if defined(QSPEC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels()
{
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* forced = std::getenv("QSPEC_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") {
            return scalar_kernels();
        }
        if (const KernelTable* fast = avx2_kernels()) {
            return *fast;
        }
        return scalar_kernels();
    }();
    return chosen;
}

} // namespace qspec::kernels
