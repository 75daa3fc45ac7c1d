#include "qspec/quaternion.hpp"

#include "qspec/error.hpp"

#include <ostream>

namespace qspec {

QuaternionParts parts(const Quaternion& q)
{
    return {q.conj(), q.norm(), q.real(), q.imag()};
}

Quaternion inv(const Quaternion& q)
{
    const double n = q.norm();
    if (!(n >= kZeroEpsilon)) {
        throw Error(ErrorCode::ZeroDivisor, "quaternion inverse of a (near) zero value");
    }
    // Divide twice by the norm rather than once by |q|^2 to stay clear of underflow.
    return (q.conj() / n) / n;
}

Sphere sphere_of(const Quaternion& q)
{
    return {q.real(), q.imag_norm()};
}

bool same_sphere(const Quaternion& p, const Quaternion& q, double tol)
{
    return std::abs(p.real() - q.real()) <= tol && std::abs(p.imag_norm() - q.imag_norm()) <= tol;
}

namespace {

// Unit quaternion (i + u)/|i + u| for a unit imaginary u in the closed
// hemisphere facing i. Conjugation by it is the half-turn taking u to i.
Quaternion half_turn_to_i(const Quaternion& u)
{
    const Quaternion w{0.0, 1.0 + u.b, u.c, u.d};
    return w / w.norm();
}

} // namespace

SliceRotation rotate_to_slice(const Quaternion& q)
{
    const double rho = q.imag_norm();
    if (rho == 0.0) {
        return {Quaternion{1.0}, SliceComplex{q.real(), 0.0}};
    }
    const Quaternion u = q.imag() / rho;
    const SliceComplex z{q.real(), rho};
    if (u.c == 0.0 && u.d == 0.0 && u.b > 0.0) {
        return {Quaternion{1.0}, z};
    }
    if (u.b >= 0.0) {
        return {half_turn_to_i(u), z};
    }
    // Lower hemisphere: j sends u to the upper hemisphere (j i j^-1 = -i), which
    // keeps |i + u| away from zero near u = -i. At u = -i this is exactly s = j.
    const Quaternion j = Quaternion::j();
    const Quaternion flipped = j * u * j.conj();
    if (flipped.c == 0.0 && flipped.d == 0.0) {
        return {j, z};
    }
    return {half_turn_to_i(flipped) * j, z};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q)
{
    return os << '[' << q.a << ", " << q.b << ", " << q.c << ", " << q.d << ']';
}

} // namespace qspec
