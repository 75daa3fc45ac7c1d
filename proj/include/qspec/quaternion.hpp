#pragma once

/**
 * Quaternions q = a + b i + c j + d k with i^2 = j^2 = k^2 = ijk = -1.
 *
 * Multiplication is associative but not commutative. The complex numbers
 * are embedded as the distinguished slice C_i = { a + b i }, represented by
 * SliceComplex; every slice computation in the library uses that one slice.
 */

#include <cmath>
#include <complex>
#include <iosfwd>

namespace qspec {

using SliceComplex = std::complex<double>;

struct Quaternion {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_, double b_ = 0.0, double c_ = 0.0, double d_ = 0.0)
        : a(a_), b(b_), c(c_), d(d_)
    {
    }
    constexpr explicit Quaternion(SliceComplex z) : a(z.real()), b(z.imag()) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    [[nodiscard]] constexpr double real() const { return a; }
    [[nodiscard]] constexpr Quaternion imag() const { return {0.0, b, c, d}; }
    [[nodiscard]] constexpr Quaternion conj() const { return {a, -b, -c, -d}; }
    [[nodiscard]] constexpr double norm2() const { return a * a + b * b + c * c + d * d; }
    [[nodiscard]] double norm() const { return std::hypot(std::hypot(a, b), std::hypot(c, d)); }
    [[nodiscard]] double imag_norm() const { return std::hypot(b, c, d); }

    // Whether the value lies in C_i (no j, k part).
    [[nodiscard]] constexpr bool in_slice() const { return c == 0.0 && d == 0.0; }
    [[nodiscard]] constexpr SliceComplex slice() const { return {a, b}; }

    // Component by basis index 0..3 for {1, i, j, k}.
    [[nodiscard]] constexpr double operator[](int m) const
    {
        return m == 0 ? a : m == 1 ? b : m == 2 ? c : d;
    }

    constexpr Quaternion& operator+=(const Quaternion& o)
    {
        a += o.a; b += o.b; c += o.c; d += o.d;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o)
    {
        a -= o.a; b -= o.b; c -= o.c; d -= o.d;
        return *this;
    }
    constexpr Quaternion& operator*=(double s)
    {
        a *= s; b *= s; c *= s; d *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

// Hamilton product.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q)
{
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b, -q.c, -q.d}; }
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator/(Quaternion q, double s) { return q *= (1.0 / s); }

struct QuaternionParts {
    Quaternion conj;
    double norm;
    double re;
    Quaternion im;
};

QuaternionParts parts(const Quaternion& q);

// |q| below this is treated as zero by inv().
inline constexpr double kZeroEpsilon = 1e-300;

// conj(q) / |q|^2; throws ZeroDivisor for |q| < kZeroEpsilon.
Quaternion inv(const Quaternion& q);

// The conjugation sphere [q] = Re(q) + |Im(q)| S. im_norm == 0 is a real point.
struct Sphere {
    double re = 0.0;
    double im_norm = 0.0;

    // Upper representative re + im_norm i in C_i.
    [[nodiscard]] SliceComplex representative() const { return {re, im_norm}; }
    [[nodiscard]] double norm() const { return std::hypot(re, im_norm); }

    friend constexpr bool operator==(const Sphere&, const Sphere&) = default;
};

Sphere sphere_of(const Quaternion& q);

inline Sphere sphere_of(SliceComplex z) { return {z.real(), std::abs(z.imag())}; }

// True when p and q lie on the same sphere within an absolute tolerance.
bool same_sphere(const Quaternion& p, const Quaternion& q, double tol);

struct SliceRotation {
    Quaternion s;  // unit quaternion with s q s^{-1} == z
    SliceComplex z;  // Re(q) + |Im(q)| i
};

// Finds a unit s moving q into the upper half of C_i by conjugation.
SliceRotation rotate_to_slice(const Quaternion& q);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

} // namespace qspec
