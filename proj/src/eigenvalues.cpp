#include "qspec/eigenvalues.hpp"

#include "qspec/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweepsPerEigenvalue = 100;

// Reduces h in place to upper Hessenberg form by unitary similarity.
void reduce_to_hessenberg(ComplexMatrix& h)
{
    const Eigen::Index n = h.rows();
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
        const Eigen::Index len = n - k - 1;
        ComplexVector v = h.block(k + 1, k, len, 1);
        if (v.tail(len - 1).squaredNorm() == 0.0) {
            continue;
        }
        const double xnorm = v.norm();
        const SliceComplex x0 = v(0);
        const SliceComplex phase = std::abs(x0) == 0.0 ? SliceComplex{1.0, 0.0} : x0 / std::abs(x0);
        v(0) += phase * xnorm;
        v /= v.norm();

        // h <- P h P with P = I - 2 v v^H acting on rows/cols k+1..n-1.
        auto rows = h.block(k + 1, k, len, n - k);
        rows -= 2.0 * v * (v.adjoint() * rows);
        auto cols = h.block(0, k + 1, n, len);
        cols -= 2.0 * (cols * v) * v.adjoint();
        h.block(k + 2, k, len - 1, 1).setZero();
    }
}

struct Givens {
    double c;
    SliceComplex s;
};

// [c s; -conj(s) c] [x; y] = [r; 0]
Givens make_givens(SliceComplex x, SliceComplex y)
{
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) {
        return {1.0, {0.0, 0.0}};
    }
    if (ax == 0.0) {
        return {0.0, std::conj(y) / ay};
    }
    const double r = std::hypot(ax, ay);
    const SliceComplex phase = x / ax;
    return {ax / r, phase * std::conj(y) / r};
}

SliceComplex wilkinson_shift(SliceComplex a, SliceComplex b, SliceComplex c, SliceComplex d)
{
    const SliceComplex half = 0.5 * (a - d);
    const SliceComplex disc = std::sqrt(half * half + b * c);
    const SliceComplex mid = 0.5 * (a + d);
    const SliceComplex mu1 = mid + disc;
    const SliceComplex mu2 = mid - disc;
    return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

} // namespace

std::vector<SliceComplex> eigenvalues_unchecked(const ComplexMatrix& m)
{
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "eigenvalues of a non-square matrix");
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "eigenvalues of a matrix with non-finite entries");
    }
    ComplexMatrix h = m;
    reduce_to_hessenberg(h);
    const double hnorm = h.norm();

    std::vector<SliceComplex> values;
    values.reserve(static_cast<std::size_t>(h.rows()));
    Eigen::Index hi = h.rows() - 1;
    int sweeps = 0;
    while (hi >= 0) {
        Eigen::Index l = hi;
        while (l > 0) {
            double scale = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (scale == 0.0) {
                scale = hnorm;
            }
            if (std::abs(h(l, l - 1)) <= kEps * scale) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            values.push_back(h(hi, hi));
            --hi;
            sweeps = 0;
            continue;
        }
        if (++sweeps > kMaxSweepsPerEigenvalue) {
            throw Error(ErrorCode::NoConvergence,
                        "QR iteration stalled with " + std::to_string(hi + 1) + " eigenvalues left");
        }

        SliceComplex mu;
        if (sweeps % 10 == 0) {
            // Exceptional shift to break cycles.
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        for (Eigen::Index k = l; k < hi; ++k) {
            SliceComplex x;
            SliceComplex y;
            if (k == l) {
                x = h(l, l) - mu;
                y = h(l + 1, l);
            } else {
                x = h(k, k - 1);
                y = h(k + 1, k - 1);
            }
            const Givens g = make_givens(x, y);
            const Eigen::Index c0 = k > l ? k - 1 : l;
            for (Eigen::Index col = c0; col <= hi; ++col) {
                const SliceComplex top = h(k, col);
                const SliceComplex bot = h(k + 1, col);
                h(k, col) = g.c * top + g.s * bot;
                h(k + 1, col) = -std::conj(g.s) * top + g.c * bot;
            }
            const Eigen::Index r1 = std::min(k + 2, hi);
            for (Eigen::Index row = l; row <= r1; ++row) {
                const SliceComplex left = h(row, k);
                const SliceComplex right = h(row, k + 1);
                h(row, k) = g.c * left + std::conj(g.s) * right;
                h(row, k + 1) = -g.s * left + g.c * right;
            }
            if (k > l) {
                h(k + 1, k - 1) = 0.0;
            }
        }
    }
    return values;
}

double eigen_residual(const ComplexMatrix& m, SliceComplex lambda)
{
    if (m.rows() == 0) {
        return 0.0;
    }
    const ComplexMatrix shifted = lambda * ComplexMatrix::Identity(m.rows(), m.cols()) - m;
    const Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
    return svd.singularValues().minCoeff();
}

std::vector<SliceComplex> eigenvalues(const ComplexMatrix& m, double tol)
{
    std::vector<SliceComplex> values = eigenvalues_unchecked(m);
    const double bound = tol * m.norm();
    for (const SliceComplex& lambda : values) {
        const double residual = eigen_residual(m, lambda);
        if (!(residual <= bound)) {
            throw Error(ErrorCode::NoConvergence, "eigenvalue residual " + std::to_string(residual) +
                                                      " exceeds " + std::to_string(bound));
        }
    }
    return values;
}

} // namespace qspec
