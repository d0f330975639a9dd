#pragma once

// Standard operator and state constructors: Pauli matrices, Weyl
// (phase/shift) unitaries, computational kets and the canonical maximally
// entangled state.

#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "qcdet/complex_matrix.hpp"

namespace qcdet {

// sigma_0..sigma_3 = I, X, Y, Z.
inline ComplexMatrix pauli(std::size_t i) {
    switch (i) {
        case 0: return ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}};
        case 1: return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
        case 2: return ComplexMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
        case 3: return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
        default: throw std::invalid_argument("pauli: index must be 0..3");
    }
}

// U_mn = sum_k exp(2*pi*i*k*m/d) |k><(k+n) mod d|.
// The index pair is (phase, shift); U_00 is the identity and
// tr(U_mn^dagger U_m'n') = d * delta_mm' * delta_nn'.
inline ComplexMatrix weyl(std::size_t d, std::size_t m, std::size_t n) {
    if (d == 0 || m >= d || n >= d)
        throw std::invalid_argument("weyl: indices must satisfy m,n < d");
    ComplexMatrix u(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * m) % d) /
                             static_cast<double>(d);
        u(k, (k + n) % d) = std::polar(1.0, angle);
    }
    return u;
}

inline ComplexMatrix basis_ket(std::size_t dim, std::size_t k) {
    if (k >= dim)
        throw std::invalid_argument("basis_ket: index out of range");
    ComplexMatrix v(dim, 1);
    v(k, 0) = 1.0;
    return v;
}

// (1/sqrt(d)) sum_i |ii> on reference (x) system.
inline ComplexMatrix max_entangled_ket(std::size_t d) {
    if (d == 0)
        throw std::invalid_argument("max_entangled_ket: dimension must be positive");
    ComplexMatrix v(d * d, 1);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) v(i * d + i, 0) = amp;
    return v;
}

inline ComplexMatrix maximally_mixed(std::size_t d) {
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= Complex(1.0 / static_cast<double>(d), 0.0);
    return m;
}

}  // namespace qcdet
