#include "qspec/kernels.hpp"

namespace qspec::kernels {

namespace {

void gemm_scalar(std::size_t m, std::size_t k, std::size_t p, const Quaternion* a, const Quaternion* b,
                 Quaternion* c)
{
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t col = 0; col < p; ++col) {
            Quaternion acc;
            for (std::size_t t = 0; t < k; ++t) {
                acc += a[r * k + t] * b[t * p + col];
            }
            c[r * p + col] = acc;
        }
    }
}

void scale_left_scalar(const Quaternion& s, const Quaternion* x, Quaternion* y, std::size_t count)
{
    for (std::size_t t = 0; t < count; ++t) {
        y[t] = s * x[t];
    }
}

void scale_right_scalar(const Quaternion* x, const Quaternion& s, Quaternion* y, std::size_t count)
{
    for (std::size_t t = 0; t < count; ++t) {
        y[t] = x[t] * s;
    }
}

double sum_squares_scalar(const Quaternion* x, std::size_t count)
{
    double acc = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        acc += x[t].norm2();
    }
    return acc;
}

} // namespace

const KernelTable& scalar_kernels()
{
    static const KernelTable table{"scalar", gemm_scalar, scale_left_scalar, scale_right_scalar,
                                   sum_squares_scalar};
    return table;
}

} // namespace qspec::kernels
