#pragma once

// Shared generators and independent oracles for the test binaries.

#include "qspec/qmatrix.hpp"
#include "qspec/spectrum.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace qspec::support {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Quaternion random_quaternion(Rng& rng, double scale = 1.0)
{
    return {scale * uniform(rng), scale * uniform(rng), scale * uniform(rng), scale * uniform(rng)};
}

inline Quaternion random_unit(Rng& rng)
{
    std::normal_distribution<double> g;
    Quaternion q{g(rng), g(rng), g(rng), g(rng)};
    return q * (1.0 / q.norm());
}

inline QMatrix random_matrix(Rng& rng, std::size_t n, double scale = 1.0)
{
    QMatrix a(n);
    for (auto& e : a.entries()) {
        e = random_quaternion(rng, scale);
    }
    return a;
}

// s A s^{-1} entrywise for a unit quaternion s: a similarity that keeps the
// S-spectrum and moves the eigen-structure off the slice.
inline QMatrix conjugate_entries(const QMatrix& a, const Quaternion& s)
{
    return right_multiply(left_multiply(s, a), s.conj());
}

// Random A whose spectrum lies in the half-plane Re > shift - radius:
// (random matrix scaled to Frobenius norm `radius`) + shift I.
inline QMatrix random_shifted(Rng& rng, std::size_t n, double radius, double shift)
{
    QMatrix a = random_matrix(rng, n);
    a *= radius / a.norm();
    return a + QMatrix::scalar(n, Quaternion{shift});
}

// Hamilton product through the Cayley-Dickson pair form
// (z1 + z2 j)(w1 + w2 j) = (z1 w1 - z2 conj(w2)) + (z1 w2 + z2 conj(w1)) j,
// with q = (a + b i) + (c + d i) j. Independent of qspec::mul.
inline Quaternion cayley_dickson(const Quaternion& p, const Quaternion& q)
{
    using C = std::complex<double>;
    const C z1{p.a, p.b}, z2{p.c, p.d}, w1{q.a, q.b}, w2{q.c, q.d};
    const C u = z1 * w1 - z2 * std::conj(w2);
    const C v = z1 * w2 + z2 * std::conj(w1);
    return {u.real(), u.imag(), v.real(), v.imag()};
}

inline QMatrix naive_product(const QMatrix& a, const QMatrix& b)
{
    const std::size_t n = a.size();
    QMatrix c(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t col = 0; col < n; ++col) {
            Quaternion acc;
            for (std::size_t t = 0; t < n; ++t) {
                acc += cayley_dickson(a(r, t), b(t, col));
            }
            c(r, col) = acc;
        }
    }
    return c;
}

inline double qdist(const Quaternion& p, const Quaternion& q) { return (p - q).norm(); }

// Matrix exponential of a complex matrix by plain Taylor summation with
// scaling and squaring; independent oracle for op_exp and the calculus.
inline ComplexMatrix taylor_exp(const ComplexMatrix& m)
{
    int s = 0;
    double norm = m.norm();
    while (norm > 0.25) {
        norm *= 0.5;
        ++s;
    }
    const ComplexMatrix b = m / std::ldexp(1.0, s);
    ComplexMatrix sum = ComplexMatrix::Identity(m.rows(), m.cols());
    ComplexMatrix term = sum;
    for (int k = 1; k < 40; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < s; ++k) {
        sum = sum * sum;
    }
    return sum;
}

} // namespace qspec::support
