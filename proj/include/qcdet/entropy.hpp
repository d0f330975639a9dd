#pragma once

// Entropy functionals, all in base 2: Shannon and binary entropy,
// von Neumann entropy, entropy exchange and coherent information.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qcdet/channel.hpp"
#include "qcdet/complex_matrix.hpp"
#include "qcdet/hermitian_eig.hpp"
#include "qcdet/operators.hpp"

namespace qcdet {

// Eigenvalues of a density matrix may undershoot zero by roundoff; anything
// in [-kEigenvalueClamp, 0) is treated as exactly zero, anything lower is an
// error.
inline constexpr double kEigenvalueClamp = 1e-10;

// A discrete probability distribution. Entries in [-1e-12, 0) are clamped
// to zero on construction; the total must equal 1 within 1e-9.
class ProbabilityVector {
public:
    ProbabilityVector() : probs_{1.0} {}

    explicit ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty())
            throw std::invalid_argument("ProbabilityVector: empty");
        double sum = 0.0;
        for (double& p : probs_) {
            if (!std::isfinite(p) || p < -1e-12)
                throw std::invalid_argument("ProbabilityVector: negative or non-finite entry");
            if (p < 0.0) p = 0.0;
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("ProbabilityVector: entries do not sum to 1");
    }

    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    std::vector<double> probs_;
};

namespace detail {
inline double plog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }
}  // namespace detail

inline double shannon(const ProbabilityVector& p) {
    double h = 0.0;
    for (double x : p.probs()) h += detail::plog2p(x);
    return h;
}

inline double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    return detail::plog2p(x) + detail::plog2p(1.0 - x);
}

inline double von_neumann(const ComplexMatrix& rho) {
    if (std::abs(trace(rho) - Complex(1.0, 0.0)) > 1e-8)
        throw std::invalid_argument("von_neumann: state must have unit trace");
    const Spectrum spec = hermitian_eig(rho);
    double h = 0.0;
    for (double lambda : spec.eigenvalues) {
        if (lambda < -kEigenvalueClamp)
            throw std::invalid_argument("von_neumann: state has a negative eigenvalue");
        h += detail::plog2p(lambda);
    }
    return h;
}

// S((I_R (x) E)(|Psi_rho><Psi_rho|)) for a purification |Psi_rho> of rho.
inline double entropy_exchange(const Channel& ch, const ComplexMatrix& rho) {
    const std::size_t d = ch.d_in();
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("entropy_exchange: state dimension mismatch");

    // Purify through the eigendecomposition: |Psi> = sum_k sqrt(l_k) |k>|v_k>.
    const Spectrum spec = hermitian_eig(rho);
    std::vector<double> amps(d);
    for (std::size_t k = 0; k < d; ++k) {
        double lambda = spec.eigenvalues[k];
        if (lambda < -kEigenvalueClamp)
            throw std::invalid_argument("entropy_exchange: state has a negative eigenvalue");
        amps[k] = std::sqrt(std::max(lambda, 0.0));
    }

    const std::size_t n = d * ch.d_out();
    ComplexMatrix joint(n, n);
    ComplexMatrix w(n, 1);
    for (const auto& a : ch.kraus()) {
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t s = 0; s < ch.d_out(); ++s) {
                Complex sum = 0.0;
                for (std::size_t i = 0; i < d; ++i) sum += a(s, i) * spec.eigenvectors(i, k);
                w(k * ch.d_out() + s, 0) = amps[k] * sum;
            }
        joint += outer(w);
    }
    return von_neumann(joint);
}

// I_c(rho, E) = S(E(rho)) - S_e(rho, E); single channel use.
inline double coherent_information(const Channel& ch, const ComplexMatrix& rho) {
    return von_neumann(apply(ch, rho)) - entropy_exchange(ch, rho);
}

}  // namespace qcdet
