#pragma once

// Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//
// Each rotation annihilates one off-diagonal pair (p,q) with a complex
// plane rotation; sweeps repeat until the off-diagonal mass is negligible.
// Quadratic convergence makes ~10 sweeps plenty for the problem sizes
// handled here, and the result keeps eigenvectors orthonormal to machine
// precision, which the entropy code downstream relies on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qcdet/complex_matrix.hpp"

namespace qcdet {

struct Spectrum {
    std::vector<double> eigenvalues;  // sorted descending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

inline Spectrum hermitian_eig(const ComplexMatrix& m, double hermiticity_tol = 1e-10) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hermitian_eig: matrix must be square");
    if (!is_hermitian(m, hermiticity_tol))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    const std::size_t n = m.rows();

    // Work on the Hermitian average so roundoff asymmetry in the input
    // cannot seed asymmetry in the iteration.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = frobenius_norm(a);
    const double stop = 1e-14 * std::max(scale, 1.0);
    const int max_sweeps = 64;

    for (int sweep = 0;; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(2.0 * off) <= stop) break;
        if (sweep >= max_sweeps)
            throw std::runtime_error("hermitian_eig: Jacobi iteration failed to converge");

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                const Complex phase = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- A R with R = I except R(p,p)=R(q,q)=c,
                // R(p,q) = s*phase, R(q,p) = -s*conj(phase).
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                // A <- R^dagger A
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
                // Accumulate eigenvectors: V <- V R.
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * phase * vip + c * viq;
                }

                a(p, q) = a(q, p) = Complex(0.0, 0.0);
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        spec.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) spec.eigenvectors(i, k) = v(i, order[k]);
    }
    return spec;
}

}  // namespace qcdet
