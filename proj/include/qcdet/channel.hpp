#pragma once

// Quantum channels in Kraus form, plus the built-in channel families used
// throughout: dephasing, depolarizing, Pauli (qubit and d-dimensional),
// erasure, amplitude damping and the two-Kraus normal form.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcdet/complex_matrix.hpp"
#include "qcdet/operators.hpp"

namespace qcdet {

// max |sum_j A_j^dagger A_j - I| entrywise.
inline double completeness_residual(const std::vector<ComplexMatrix>& kraus, std::size_t d_in) {
    ComplexMatrix sum(d_in, d_in);
    for (const auto& a : kraus) sum += matmul(dagger(a), a);
    return max_abs_diff(sum, ComplexMatrix::identity(d_in));
}

// A trace-preserving map rho -> sum_j A_j rho A_j^dagger. Input and output
// dimensions may differ (the erasure channel enlarges its output space).
class Channel {
public:
    Channel(std::size_t d_in, std::size_t d_out, std::vector<ComplexMatrix> kraus,
            std::string label = {}, double completeness_tol = 1e-10)
        : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)), label_(std::move(label)) {
        if (d_in_ == 0 || d_out_ == 0)
            throw std::invalid_argument("Channel: dimensions must be positive");
        if (kraus_.empty())
            throw std::invalid_argument("Channel: at least one Kraus operator required");
        for (const auto& a : kraus_) {
            if (a.rows() != d_out_ || a.cols() != d_in_)
                throw std::invalid_argument("Channel: Kraus operator has wrong shape");
            for (std::size_t r = 0; r < a.rows(); ++r)
                for (std::size_t c = 0; c < a.cols(); ++c)
                    if (!std::isfinite(a(r, c).real()) || !std::isfinite(a(r, c).imag()))
                        throw std::invalid_argument("Channel: Kraus entries must be finite");
        }
        const double residual = completeness_residual(kraus_, d_in_);
        if (residual > completeness_tol)
            throw std::invalid_argument("Channel: Kraus operators violate completeness, residual " +
                                        std::to_string(residual));
    }

    std::size_t d_in() const { return d_in_; }
    std::size_t d_out() const { return d_out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    const std::string& label() const { return label_; }

private:
    std::size_t d_in_;
    std::size_t d_out_;
    std::vector<ComplexMatrix> kraus_;
    std::string label_;
};

inline ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho) {
    if (rho.rows() != ch.d_in() || rho.cols() != ch.d_in())
        throw std::invalid_argument("apply: state dimension does not match channel input");
    if (!is_hermitian(rho, 1e-8) || std::abs(trace(rho) - Complex(1.0, 0.0)) > 1e-8)
        throw std::invalid_argument("apply: input is not a density matrix");
    ComplexMatrix out(ch.d_out(), ch.d_out());
    for (const auto& a : ch.kraus()) out += matmul(matmul(a, rho), dagger(a));
    return out;
}

// Joint state (I_R (x) E) |Psi><Psi| with |Psi> the canonical maximally
// entangled input; reference indexes the coarse blocks.
inline ComplexMatrix choi_output(const Channel& ch) {
    const std::size_t d = ch.d_in();
    const std::size_t n = d * ch.d_out();
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix joint(n, n);
    ComplexMatrix w(n, 1);
    for (const auto& a : ch.kraus()) {
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t s = 0; s < ch.d_out(); ++s) w(r * ch.d_out() + s, 0) = amp * a(s, r);
        joint += outer(w);
    }
    return joint;
}

inline Channel make_identity(std::size_t d = 2) {
    return Channel(d, d, {ComplexMatrix::identity(d)}, "identity");
}

// rho -> (1 - p/2) rho + (p/2) U rho U^dagger for a traceless unitary U.
inline Channel make_dephasing(double p, std::size_t d, const ComplexMatrix& u) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("make_dephasing: p must lie in [0,1]");
    if (u.rows() != d || u.cols() != d)
        throw std::invalid_argument("make_dephasing: U has wrong dimension");
    if (max_abs_diff(matmul(dagger(u), u), ComplexMatrix::identity(d)) > 1e-10)
        throw std::invalid_argument("make_dephasing: U is not unitary");
    if (std::abs(trace(u)) > 1e-10)
        throw std::invalid_argument("make_dephasing: U is not traceless");
    std::vector<ComplexMatrix> kraus;
    kraus.push_back(ComplexMatrix::identity(d) * Complex(std::sqrt(1.0 - p / 2.0), 0.0));
    if (p > 0.0) kraus.push_back(u * Complex(std::sqrt(p / 2.0), 0.0));
    return Channel(d, d, std::move(kraus), "dephasing");
}

// Default dephasing unitary: sigma_z for qubits, the cyclic shift for d > 2.
inline Channel make_dephasing(double p, std::size_t d = 2) {
    return make_dephasing(p, d, d == 2 ? pauli(3) : weyl(d, 0, 1));
}

// Weyl-mixture weights w_00 = 1-p, w_mn = p/(d^2-1) otherwise; for d = 2
// this is the familiar rho -> (1-p) rho + (p/3) sum_i sigma_i rho sigma_i.
// p in [0,1] spans exactly the completely positive range of the map.
inline Channel make_depolarizing(double p, std::size_t d = 2) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("make_depolarizing: p outside the CP range [0,1]");
    std::vector<ComplexMatrix> kraus;
    const double w = p / static_cast<double>(d * d - 1);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
            const double weight = (m == 0 && n == 0) ? 1.0 - p : w;
            if (weight == 0.0) continue;
            kraus.push_back(weyl(d, m, n) * Complex(std::sqrt(weight), 0.0));
        }
    return Channel(d, d, std::move(kraus), "depolarizing");
}

namespace detail {
inline void check_weights(const std::vector<double>& w, const char* who) {
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0))
            throw std::invalid_argument(std::string(who) + ": weights must be nonnegative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": weights must sum to 1");
}
}  // namespace detail

// rho -> sum_i p_i sigma_i rho sigma_i.
inline Channel make_pauli(double p0, double p1, double p2, double p3) {
    const std::vector<double> w{p0, p1, p2, p3};
    detail::check_weights(w, "make_pauli");
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < 4; ++i)
        if (w[i] > 0.0) kraus.push_back(pauli(i) * Complex(std::sqrt(w[i]), 0.0));
    return Channel(2, 2, std::move(kraus), "pauli");
}

// rho -> sum_mn p_mn U_mn rho U_mn^dagger; weights indexed m*d + n.
inline Channel make_generalized_pauli(const std::vector<double>& weights, std::size_t d) {
    if (weights.size() != d * d)
        throw std::invalid_argument("make_generalized_pauli: expected d^2 weights");
    detail::check_weights(weights, "make_generalized_pauli");
    std::vector<ComplexMatrix> kraus;
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
            const double w = weights[m * d + n];
            if (w > 0.0) kraus.push_back(weyl(d, m, n) * Complex(std::sqrt(w), 0.0));
        }
    return Channel(d, d, std::move(kraus), "generalized-pauli");
}

// rho -> (1-p) rho (+) p |e><e|. Output levels 0..d-1 carry the system and
// level d is the erasure flag.
inline Channel make_erasure(double p, std::size_t d = 2) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("make_erasure: p must lie in [0,1]");
    std::vector<ComplexMatrix> kraus;
    if (p < 1.0) {
        ComplexMatrix embed(d + 1, d);
        for (std::size_t i = 0; i < d; ++i) embed(i, i) = std::sqrt(1.0 - p);
        kraus.push_back(std::move(embed));
    }
    if (p > 0.0) {
        for (std::size_t i = 0; i < d; ++i) {
            ComplexMatrix flag(d + 1, d);
            flag(d, i) = std::sqrt(p);
            kraus.push_back(std::move(flag));
        }
    }
    return Channel(d, d + 1, std::move(kraus), "erasure");
}

inline Channel make_amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("make_amplitude_damping: gamma must lie in [0,1]");
    ComplexMatrix a0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
    ComplexMatrix a1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
    std::vector<ComplexMatrix> kraus{std::move(a0)};
    if (gamma > 0.0) kraus.push_back(std::move(a1));
    return Channel(2, 2, std::move(kraus), "amplitude-damping");
}

// A1 = cos(alpha)|0><0| + cos(beta)|1><1|, A2 = sin(beta)|0><1| + sin(alpha)|1><0|.
// Completeness holds identically for all real alpha, beta.
inline Channel make_two_kraus(double alpha, double beta) {
    ComplexMatrix a1{{std::cos(alpha), 0.0}, {0.0, std::cos(beta)}};
    ComplexMatrix a2{{0.0, std::sin(beta)}, {std::sin(alpha), 0.0}};
    return Channel(2, 2, {std::move(a1), std::move(a2)}, "two-kraus");
}

}  // namespace qcdet
