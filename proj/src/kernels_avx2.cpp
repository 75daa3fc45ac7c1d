// AVX2 + FMA quaternion kernels. One quaternion fills one __m256d lane set,
// so a Hamilton product is four fused multiply-adds against permuted,
// sign-flipped copies of one operand:
//   p * x = p0 x + p1 (i x) + p2 (j x) + p3 (k x)
//   i x = (-x1,  x0, -x3,  x2)
//   j x = (-x2,  x3,  x0, -x1)
//   k x = (-x3, -x2,  x1,  x0)
// This file is compiled with -mavx2 -mfma; nothing here may run before the
// dispatcher has confirmed CPU support.

#include "qspec/kernels.hpp"

#include <immintrin.h>

#include <vector>

// std::vector<__m256d> is fine: the allocator honours the 32-byte alignment.
#pragma GCC diagnostic ignored "-Wignored-attributes"

namespace qspec::kernels {

static_assert(sizeof(Quaternion) == 4 * sizeof(double));

namespace {

inline __m256d load(const Quaternion& q) { return _mm256_loadu_pd(&q.a); }
inline void store(Quaternion& q, __m256d v) { _mm256_storeu_pd(&q.a, v); }

inline __m256d sign_mask(bool s0, bool s1, bool s2, bool s3)
{
    return _mm256_set_pd(s3 ? -0.0 : 0.0, s2 ? -0.0 : 0.0, s1 ? -0.0 : 0.0, s0 ? -0.0 : 0.0);
}

struct Units {
    __m256d i_sign = sign_mask(true, false, true, false);
    __m256d j_sign = sign_mask(true, false, false, true);
    __m256d k_sign = sign_mask(true, true, false, false);

    [[nodiscard]] __m256d times_i(__m256d x) const { return _mm256_xor_pd(_mm256_permute_pd(x, 0b0101), i_sign); }
    [[nodiscard]] __m256d times_j(__m256d x) const
    {
        return _mm256_xor_pd(_mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 3, 2)), j_sign);
    }
    [[nodiscard]] __m256d times_k(__m256d x) const
    {
        return _mm256_xor_pd(_mm256_permute4x64_pd(x, _MM_SHUFFLE(0, 1, 2, 3)), k_sign);
    }
};

void gemm_avx2(std::size_t m, std::size_t k, std::size_t p, const Quaternion* a, const Quaternion* b,
               Quaternion* c)
{
    const Units u;
    const std::size_t nb = k * p;
    // Row t of b premultiplied by 1, i, j, k.
    std::vector<__m256d> bx(4 * nb);
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d v = load(b[t]);
        bx[4 * t + 0] = v;
        bx[4 * t + 1] = u.times_i(v);
        bx[4 * t + 2] = u.times_j(v);
        bx[4 * t + 3] = u.times_k(v);
    }
    std::vector<__m256d> acc(p);
    for (std::size_t r = 0; r < m; ++r) {
        for (auto& v : acc) {
            v = _mm256_setzero_pd();
        }
        for (std::size_t t = 0; t < k; ++t) {
            const Quaternion& lhs = a[r * k + t];
            const __m256d l0 = _mm256_set1_pd(lhs.a);
            const __m256d l1 = _mm256_set1_pd(lhs.b);
            const __m256d l2 = _mm256_set1_pd(lhs.c);
            const __m256d l3 = _mm256_set1_pd(lhs.d);
            const __m256d* row = &bx[4 * t * p];
            for (std::size_t col = 0; col < p; ++col) {
                __m256d v = acc[col];
                v = _mm256_fmadd_pd(l0, row[4 * col + 0], v);
                v = _mm256_fmadd_pd(l1, row[4 * col + 1], v);
                v = _mm256_fmadd_pd(l2, row[4 * col + 2], v);
                v = _mm256_fmadd_pd(l3, row[4 * col + 3], v);
                acc[col] = v;
            }
        }
        for (std::size_t col = 0; col < p; ++col) {
            store(c[r * p + col], acc[col]);
        }
    }
}

void scale_left_avx2(const Quaternion& s, const Quaternion* x, Quaternion* y, std::size_t count)
{
    const Units u;
    const __m256d s0 = _mm256_set1_pd(s.a);
    const __m256d s1 = _mm256_set1_pd(s.b);
    const __m256d s2 = _mm256_set1_pd(s.c);
    const __m256d s3 = _mm256_set1_pd(s.d);
    for (std::size_t t = 0; t < count; ++t) {
        const __m256d v = load(x[t]);
        __m256d r = _mm256_mul_pd(s0, v);
        r = _mm256_fmadd_pd(s1, u.times_i(v), r);
        r = _mm256_fmadd_pd(s2, u.times_j(v), r);
        r = _mm256_fmadd_pd(s3, u.times_k(v), r);
        store(y[t], r);
    }
}

void scale_right_avx2(const Quaternion* x, const Quaternion& s, Quaternion* y, std::size_t count)
{
    // x * s = x0 s + x1 (i s) + x2 (j s) + x3 (k s)
    const Units u;
    const __m256d sv = load(s);
    const __m256d is = u.times_i(sv);
    const __m256d js = u.times_j(sv);
    const __m256d ks = u.times_k(sv);
    for (std::size_t t = 0; t < count; ++t) {
        const __m256d v = load(x[t]);
        __m256d r = _mm256_mul_pd(_mm256_permute4x64_pd(v, 0x00), sv);
        r = _mm256_fmadd_pd(_mm256_permute4x64_pd(v, 0x55), is, r);
        r = _mm256_fmadd_pd(_mm256_permute4x64_pd(v, 0xAA), js, r);
        r = _mm256_fmadd_pd(_mm256_permute4x64_pd(v, 0xFF), ks, r);
        store(y[t], r);
    }
}

double sum_squares_avx2(const Quaternion* x, std::size_t count)
{
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t t = 0; t < count; ++t) {
        const __m256d v = load(x[t]);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

} // namespace

const KernelTable& avx2_kernel_table()
{
    static const KernelTable table{"avx2", gemm_avx2, scale_left_avx2, scale_right_avx2, sum_squares_avx2};
    return table;
}

} // namespace qspec::kernels
