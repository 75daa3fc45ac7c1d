#pragma once

// Quaternion array kernels: a scalar reference implementation and an AVX2
// variant, selected once at runtime. Both tables honour the same contract and
// are equivalence-tested against each other; results may differ by rounding
// only (the AVX2 path uses fused multiply-add).

#include "qspec/quaternion.hpp"

#include <cstddef>
#include <string_view>

namespace qspec::kernels {

struct KernelTable {
    std::string_view name;

    // c (m x p) = a (m x k) * b (k x p), all row-major, Hamilton products.
    void (*gemm)(std::size_t m, std::size_t k, std::size_t p, const Quaternion* a, const Quaternion* b,
                 Quaternion* c);

    // y[t] = s * x[t]. In-place (y == x) is allowed.
    void (*scale_left)(const Quaternion& s, const Quaternion* x, Quaternion* y, std::size_t count);

    // y[t] = x[t] * s. In-place (y == x) is allowed.
    void (*scale_right)(const Quaternion* x, const Quaternion& s, Quaternion* y, std::size_t count);

    // sum of |x[t]|^2
    double (*sum_squares)(const Quaternion* x, std::size_t count);
};

const KernelTable& scalar_kernels();

// nullptr unless the AVX2 variant was compiled in and the CPU supports AVX2+FMA.
const KernelTable* avx2_kernels();

// The table used by the library. AVX2 when available; setting the environment
// variable QSPEC_KERNELS=scalar forces the reference kernels.
const KernelTable& active_kernels();

} // namespace qspec::kernels
