#include "qspec/qmatrix.hpp"

#include "qspec/error.hpp"
#include "qspec/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qspec {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what)
{
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": sizes " + std::to_string(a) + " and " + std::to_string(b));
    }
}

// 4x4 block of x -> p x in the (a, b, c, d) coordinates.
Eigen::Matrix4d left_block(const Quaternion& p)
{
    Eigen::Matrix4d m;
    m << p.a, -p.b, -p.c, -p.d,
         p.b,  p.a, -p.d,  p.c,
         p.c,  p.d,  p.a, -p.b,
         p.d, -p.c,  p.b,  p.a;
    return m;
}

// 4x4 block of x -> x q.
Eigen::Matrix4d right_block(const Quaternion& q)
{
    Eigen::Matrix4d m;
    m << q.a, -q.b, -q.c, -q.d,
         q.b,  q.a,  q.d, -q.c,
         q.c, -q.d,  q.a,  q.b,
         q.d,  q.c, -q.b,  q.a;
    return m;
}

// q = z1 + j z2 with z1, z2 in C_i: j (x + y i) = x j - y k.
SliceComplex first_part(const Quaternion& q) { return {q.a, q.b}; }
SliceComplex second_part(const Quaternion& q) { return {q.c, -q.d}; }
Quaternion from_parts(SliceComplex z1, SliceComplex z2) { return {z1.real(), z1.imag(), z2.real(), -z2.imag()}; }

} // namespace

QMatrix::QMatrix(std::size_t n, std::vector<Quaternion> entries) : n_(n), data_(std::move(entries))
{
    require_same_size(data_.size(), n * n, "QMatrix entries");
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) : n_(rows.size())
{
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
        require_same_size(row.size(), n_, "QMatrix row");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

QMatrix QMatrix::scalar(std::size_t n, const Quaternion& s)
{
    QMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = s;
    }
    return m;
}

QMatrix QMatrix::diagonal(std::span<const Quaternion> diag)
{
    QMatrix m(diag.size());
    for (std::size_t r = 0; r < diag.size(); ++r) {
        m(r, r) = diag[r];
    }
    return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o)
{
    require_same_size(n_, o.n_, "QMatrix sum");
    for (std::size_t t = 0; t < data_.size(); ++t) {
        data_[t] += o.data_[t];
    }
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o)
{
    require_same_size(n_, o.n_, "QMatrix difference");
    for (std::size_t t = 0; t < data_.size(); ++t) {
        data_[t] -= o.data_[t];
    }
    return *this;
}

QMatrix& QMatrix::operator*=(double s)
{
    for (auto& q : data_) {
        q *= s;
    }
    return *this;
}

double QMatrix::norm() const
{
    return std::sqrt(kernels::active_kernels().sum_squares(data_.data(), data_.size()));
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(const QMatrix& a) { return a * -1.0; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b)
{
    require_same_size(a.size(), b.size(), "QMatrix product");
    const std::size_t n = a.size();
    QMatrix c(n);
    kernels::active_kernels().gemm(n, n, n, a.entries().data(), b.entries().data(), c.entries().data());
    return c;
}

QMatrix left_multiply(const Quaternion& s, const QMatrix& a)
{
    QMatrix out(a.size());
    kernels::active_kernels().scale_left(s, a.entries().data(), out.entries().data(), a.entries().size());
    return out;
}

QMatrix right_multiply(const QMatrix& a, const Quaternion& s)
{
    QMatrix out(a.size());
    kernels::active_kernels().scale_right(a.entries().data(), s, out.entries().data(), a.entries().size());
    return out;
}

QMatrix power(const QMatrix& a, unsigned exponent)
{
    QMatrix result = QMatrix::identity(a.size());
    QMatrix base = a;
    while (exponent > 0) {
        if (exponent & 1U) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

QVector apply(const QMatrix& a, std::span<const Quaternion> x)
{
    require_same_size(x.size(), a.size(), "apply");
    QVector y(a.size());
    kernels::active_kernels().gemm(a.size(), a.size(), 1, a.entries().data(), x.data(), y.data());
    return y;
}

QVector right_scale(std::span<const Quaternion> x, const Quaternion& q)
{
    QVector y(x.size());
    kernels::active_kernels().scale_right(x.data(), q, y.data(), x.size());
    return y;
}

double max_entry_distance(const QMatrix& a, const QMatrix& b)
{
    require_same_size(a.size(), b.size(), "max_entry_distance");
    double worst = 0.0;
    for (std::size_t t = 0; t < a.entries().size(); ++t) {
        worst = std::max(worst, (a.entries()[t] - b.entries()[t]).norm());
    }
    return worst;
}

ComplexMatrix complex_adjoint(const QMatrix& a)
{
    const auto n = static_cast<Eigen::Index>(a.size());
    ComplexMatrix m(2 * n, 2 * n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const Quaternion& q = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            const SliceComplex a1 = first_part(q);
            const SliceComplex a2 = second_part(q);
            m(r, c) = a1;
            m(r, c + n) = -std::conj(a2);
            m(r + n, c) = a2;
            m(r + n, c + n) = std::conj(a1);
        }
    }
    return m;
}

ComplexVector complex_coordinates(std::span<const Quaternion> x)
{
    const auto n = static_cast<Eigen::Index>(x.size());
    ComplexVector v(2 * n);
    for (Eigen::Index r = 0; r < n; ++r) {
        v(r) = first_part(x[static_cast<std::size_t>(r)]);
        v(r + n) = second_part(x[static_cast<std::size_t>(r)]);
    }
    return v;
}

QVector from_complex_coordinates(const ComplexVector& v)
{
    if (v.size() % 2 != 0) {
        throw Error(ErrorCode::DimensionMismatch, "complex coordinate vector of odd length");
    }
    const Eigen::Index n = v.size() / 2;
    QVector x(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        x[static_cast<std::size_t>(r)] = from_parts(v(r), v(r + n));
    }
    return x;
}

namespace {

void require_even_square(const ComplexMatrix& m)
{
    if (m.rows() != m.cols() || m.rows() % 2 != 0) {
        throw Error(ErrorCode::DimensionMismatch, "complex adjoint must be square of even size, got " +
                                                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

// Least-squares projection of M onto the complex adjoints.
QMatrix project_to_adjoint(const ComplexMatrix& m)
{
    const Eigen::Index n = m.rows() / 2;
    QMatrix a(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const SliceComplex a1 = 0.5 * (m(r, c) + std::conj(m(r + n, c + n)));
            const SliceComplex a2 = 0.5 * (m(r + n, c) - std::conj(m(r, c + n)));
            a(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = from_parts(a1, a2);
        }
    }
    return a;
}

} // namespace

double structure_residual(const ComplexMatrix& m)
{
    require_even_square(m);
    return (m - complex_adjoint(project_to_adjoint(m))).norm();
}

QMatrix from_complex_adjoint(const ComplexMatrix& m, double tol)
{
    require_even_square(m);
    QMatrix a = project_to_adjoint(m);
    const double residual = (m - complex_adjoint(a)).norm();
    if (!(residual <= tol * (1.0 + m.norm()))) {
        throw Error(ErrorCode::StructureViolation,
                    "matrix is not a complex adjoint (residual " + std::to_string(residual) + ")");
    }
    return a;
}

QMatrix inverse(const QMatrix& a)
{
    const ComplexMatrix m = complex_adjoint(a);
    const Eigen::PartialPivLU<ComplexMatrix> lu(m);
    if (!(lu.rcond() > kSingularRcond)) {
        throw Error(ErrorCode::Singular, "quaternionic matrix is not invertible");
    }
    // The inverse of a complex adjoint is a complex adjoint; allow rounding only.
    return from_complex_adjoint(lu.inverse(), 1e-6);
}

RealOperator::RealOperator(std::size_t n, RealMatrix m) : n_(n), m_(std::move(m))
{
    const auto dim = static_cast<Eigen::Index>(4 * n);
    if (m_.rows() != dim || m_.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "real representation must be 4n x 4n");
    }
}

RealOperator RealOperator::identity(std::size_t n)
{
    const auto dim = static_cast<Eigen::Index>(4 * n);
    return {n, RealMatrix::Identity(dim, dim)};
}

RealOperator RealOperator::of(const QMatrix& a)
{
    const std::size_t n = a.size();
    RealMatrix m(4 * n, 4 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            m.block<4, 4>(static_cast<Eigen::Index>(4 * r), static_cast<Eigen::Index>(4 * c)) = left_block(a(r, c));
        }
    }
    return {n, std::move(m)};
}

RealOperator RealOperator::right_scalar(std::size_t n, const Quaternion& q)
{
    RealMatrix m = RealMatrix::Zero(4 * n, 4 * n);
    const Eigen::Matrix4d block = right_block(q);
    for (std::size_t r = 0; r < n; ++r) {
        m.block<4, 4>(static_cast<Eigen::Index>(4 * r), static_cast<Eigen::Index>(4 * r)) = block;
    }
    return {n, std::move(m)};
}

RealOperator RealOperator::left_scalar(std::size_t n, const Quaternion& q)
{
    return of(QMatrix::scalar(n, q));
}

QVector RealOperator::apply(std::span<const Quaternion> x) const
{
    require_same_size(x.size(), n_, "RealOperator::apply");
    RealVector v(4 * n_);
    for (std::size_t r = 0; r < n_; ++r) {
        for (int m = 0; m < 4; ++m) {
            v(static_cast<Eigen::Index>(4 * r) + m) = x[r][m];
        }
    }
    const RealVector w = m_ * v;
    QVector y(n_);
    for (std::size_t r = 0; r < n_; ++r) {
        const auto o = static_cast<Eigen::Index>(4 * r);
        y[r] = {w(o), w(o + 1), w(o + 2), w(o + 3)};
    }
    return y;
}

double RealOperator::smallest_singular_value() const
{
    if (n_ == 0) {
        return 0.0;
    }
    const Eigen::JacobiSVD<RealMatrix> svd(m_);
    return svd.singularValues().minCoeff();
}

RealOperator& RealOperator::operator+=(const RealOperator& o)
{
    require_same_size(n_, o.n_, "RealOperator sum");
    m_ += o.m_;
    return *this;
}

RealOperator& RealOperator::operator-=(const RealOperator& o)
{
    require_same_size(n_, o.n_, "RealOperator difference");
    m_ -= o.m_;
    return *this;
}

RealOperator operator*(const RealOperator& a, const RealOperator& b)
{
    require_same_size(a.n_, b.n_, "RealOperator composition");
    return {a.n_, a.m_ * b.m_};
}

RealOperator operator*(double s, RealOperator a)
{
    a.m_ *= s;
    return a;
}

QMatrix q_pencil(const QMatrix& a, const Quaternion& q)
{
    const std::size_t n = a.size();
    return a * a - (2.0 * q.real()) * a + QMatrix::scalar(n, Quaternion{q.norm2()});
}

ComplexMatrix delta(const QMatrix& a, SliceComplex q)
{
    const ComplexMatrix chi = complex_adjoint(a);
    return q * ComplexMatrix::Identity(chi.rows(), chi.cols()) - chi;
}

RealOperator delta_operator(const QMatrix& a, const Quaternion& q)
{
    return RealOperator::right_scalar(a.size(), q) - RealOperator::of(a);
}

} // namespace qspec
