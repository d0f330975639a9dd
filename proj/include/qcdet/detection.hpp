#pragma once

// Detection of capacity lower bounds from entangled-basis measurements.
//
// The detected bound is Q_DET = S(E(I/d)) - H(p) where p is the Born-rule
// probability vector of the joint (reference (x) output) state over a
// complete entangled basis. For qubits the basis families B1/B2/B3 mix the
// Bell states pairwise with real coefficients (a,b) = (cos t1, sin t1) and
// (c,d) = (cos t2, sin t2); every projector in these families expands over
// the locally measurable Pauli strings, which is what makes the bound
// accessible with the three settings XX, YY, ZZ. In dimension d the fixed
// generalized Bell basis (I (x) U_mn)|Psi> plays the same role, and the
// erasure channel gets the flag-augmented variant.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcdet/channel.hpp"
#include "qcdet/complex_matrix.hpp"
#include "qcdet/entropy.hpp"
#include "qcdet/golden_section.hpp"
#include "qcdet/operators.hpp"

namespace qcdet {

enum class BasisFamily { b1, b2, b3, generalized_bell, erasure_flag, custom };

inline const char* to_string(BasisFamily f) {
    switch (f) {
        case BasisFamily::b1: return "B1";
        case BasisFamily::b2: return "B2";
        case BasisFamily::b3: return "B3";
        case BasisFamily::generalized_bell: return "GENERALIZED_BELL";
        case BasisFamily::erasure_flag: return "ERASURE_FLAG";
        case BasisFamily::custom: return "CUSTOM";
    }
    return "?";
}

struct BasisSpec {
    BasisFamily family = BasisFamily::b1;
    double theta1 = 0.0;  // (a,b) = (cos theta1, sin theta1)
    double theta2 = 0.0;  // (c,d) = (cos theta2, sin theta2)
    std::size_t dim = 2;  // system dimension
};

// A complete orthonormal basis of the composite space, kept as kets.
struct MeasurementBasis {
    BasisSpec spec;
    std::vector<ComplexMatrix> vectors;
};

// |Phi+>, |Phi->, |Psi+>, |Psi-> in the two-qubit computational ordering.
inline std::array<ComplexMatrix, 4> bell_states() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix phip(4, 1), phim(4, 1), psip(4, 1), psim(4, 1);
    phip(0, 0) = r;
    phip(3, 0) = r;
    phim(0, 0) = r;
    phim(3, 0) = -r;
    psip(1, 0) = r;
    psip(2, 0) = r;
    psim(1, 0) = r;
    psim(2, 0) = -r;
    return {phip, phim, psip, psim};
}

inline MeasurementBasis build_basis(const BasisSpec& spec) {
    MeasurementBasis basis;
    basis.spec = spec;
    const Complex i1(0.0, 1.0);

    switch (spec.family) {
        case BasisFamily::b1:
        case BasisFamily::b2:
        case BasisFamily::b3: {
            if (spec.dim != 2)
                throw std::invalid_argument("build_basis: B1/B2/B3 are qubit bases");
            const auto bell = bell_states();
            const Complex a(std::cos(spec.theta1), 0.0), b(std::sin(spec.theta1), 0.0);
            const Complex c(std::cos(spec.theta2), 0.0), d(std::sin(spec.theta2), 0.0);
            const auto& [phip, phim, psip, psim] = bell;
            if (spec.family == BasisFamily::b1) {
                basis.vectors = {a * phip + b * phim, (-b) * phip + a * phim,
                                 c * psip + d * psim, (-d) * psip + c * psim};
            } else if (spec.family == BasisFamily::b2) {
                basis.vectors = {a * phip + b * psip, (-b) * phip + a * psip,
                                 c * phim + d * psim, (-d) * phim + c * psim};
            } else {
                basis.vectors = {a * phip + i1 * b * psim, i1 * b * phip + a * psim,
                                 c * phim + i1 * d * psip, i1 * d * phim + c * psip};
            }
            break;
        }
        case BasisFamily::generalized_bell: {
            const std::size_t d = spec.dim;
            if (d < 2)
                throw std::invalid_argument("build_basis: dimension must be at least 2");
            const double amp = 1.0 / std::sqrt(static_cast<double>(d));
            for (std::size_t m = 0; m < d; ++m)
                for (std::size_t n = 0; n < d; ++n) {
                    const ComplexMatrix u = weyl(d, m, n);
                    ComplexMatrix v(d * d, 1);
                    for (std::size_t r = 0; r < d; ++r)
                        for (std::size_t s = 0; s < d; ++s) v(r * d + s, 0) = amp * u(s, r);
                    basis.vectors.push_back(std::move(v));
                }
            break;
        }
        case BasisFamily::erasure_flag: {
            // d^2 generalized Bell vectors embedded in the unerased sector
            // (the first of them is |Psi> itself) plus the d flag vectors
            // |i> (x) |e>. Output space dimension is d+1.
            const std::size_t d = spec.dim;
            if (d < 2)
                throw std::invalid_argument("build_basis: dimension must be at least 2");
            const std::size_t dout = d + 1;
            const double amp = 1.0 / std::sqrt(static_cast<double>(d));
            for (std::size_t m = 0; m < d; ++m)
                for (std::size_t n = 0; n < d; ++n) {
                    const ComplexMatrix u = weyl(d, m, n);
                    ComplexMatrix v(d * dout, 1);
                    for (std::size_t r = 0; r < d; ++r)
                        for (std::size_t s = 0; s < d; ++s) v(r * dout + s, 0) = amp * u(s, r);
                    basis.vectors.push_back(std::move(v));
                }
            for (std::size_t i = 0; i < d; ++i) {
                ComplexMatrix v(d * dout, 1);
                v(i * dout + d, 0) = 1.0;
                basis.vectors.push_back(std::move(v));
            }
            break;
        }
        case BasisFamily::custom:
            throw std::invalid_argument("build_basis: custom bases are supplied by the caller");
    }
    return basis;
}

// Real weights over the 16 two-qubit Pauli strings sigma_i (x) sigma_j.
struct PauliStringWeights {
    double w[4][4] = {};

    ComplexMatrix to_matrix() const {
        ComplexMatrix out(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (w[i][j] != 0.0)
                    out += kron(pauli(i), pauli(j)) * Complex(w[i][j], 0.0);
        return out;
    }
};

namespace detail {

// The six projector expansions. Each basis family needs two of them; the
// second and fourth projectors follow by the substitutions
// (a,b) -> (-b,a) and (c,d) -> (-d,c).

inline PauliStringWeights proj_phi_pair(double a, double b) {
    // a|Phi+> + b|Phi->
    PauliStringWeights w;
    w.w[0][0] = 0.25;
    w.w[3][3] = 0.25;
    w.w[1][1] = 0.25 * (a * a - b * b);
    w.w[2][2] = -0.25 * (a * a - b * b);
    w.w[3][0] = 0.5 * a * b;
    w.w[0][3] = 0.5 * a * b;
    return w;
}

inline PauliStringWeights proj_psi_pair(double c, double d) {
    // c|Psi+> + d|Psi->
    PauliStringWeights w;
    w.w[0][0] = 0.25;
    w.w[3][3] = -0.25;
    w.w[1][1] = 0.25 * (c * c - d * d);
    w.w[2][2] = 0.25 * (c * c - d * d);
    w.w[3][0] = 0.5 * c * d;
    w.w[0][3] = -0.5 * c * d;
    return w;
}

inline PauliStringWeights proj_phip_psip(double a, double b) {
    // a|Phi+> + b|Psi+>
    PauliStringWeights w;
    w.w[0][0] = 0.25;
    w.w[1][1] = 0.25;
    w.w[3][3] = 0.25 * (a * a - b * b);
    w.w[2][2] = -0.25 * (a * a - b * b);
    w.w[1][0] = 0.5 * a * b;
    w.w[0][1] = 0.5 * a * b;
    return w;
}

inline PauliStringWeights proj_phim_psim(double c, double d) {
    // c|Phi-> + d|Psi->
    PauliStringWeights w;
    w.w[0][0] = 0.25;
    w.w[1][1] = -0.25;
    w.w[3][3] = 0.25 * (c * c - d * d);
    w.w[2][2] = 0.25 * (c * c - d * d);
    w.w[1][0] = -0.5 * c * d;
    w.w[0][1] = 0.5 * c * d;
    return w;
}

inline PauliStringWeights proj_phip_ipsim(double a, double b) {
    // a|Phi+> + i b|Psi->
    PauliStringWeights w;
    w.w[0][0] = 0.25;
    w.w[2][2] = -0.25;
    w.w[3][3] = 0.25 * (a * a - b * b);
    w.w[1][1] = 0.25 * (a * a - b * b);
    w.w[2][0] = -0.5 * a * b;
    w.w[0][2] = 0.5 * a * b;
    return w;
}

inline PauliStringWeights proj_phim_ipsip(double c, double d) {
    // c|Phi-> + i d|Psi+>
    PauliStringWeights w;
    w.w[0][0] = 0.25;
    w.w[2][2] = 0.25;
    w.w[3][3] = 0.25 * (c * c - d * d);
    w.w[1][1] = -0.25 * (c * c - d * d);
    w.w[2][0] = 0.5 * c * d;
    w.w[0][2] = 0.5 * c * d;
    return w;
}

}  // namespace detail

// The four projectors of a qubit family expanded over Pauli strings; every
// string involved is measurable from the XX/YY/ZZ settings alone.
inline std::array<PauliStringWeights, 4> pauli_projector_decomposition(const BasisSpec& spec) {
    const double a = std::cos(spec.theta1), b = std::sin(spec.theta1);
    const double c = std::cos(spec.theta2), d = std::sin(spec.theta2);
    switch (spec.family) {
        case BasisFamily::b1:
            return {detail::proj_phi_pair(a, b), detail::proj_phi_pair(-b, a),
                    detail::proj_psi_pair(c, d), detail::proj_psi_pair(-d, c)};
        case BasisFamily::b2:
            return {detail::proj_phip_psip(a, b), detail::proj_phip_psip(-b, a),
                    detail::proj_phim_psim(c, d), detail::proj_phim_psim(-d, c)};
        case BasisFamily::b3:
            return {detail::proj_phip_ipsim(a, b), detail::proj_phip_ipsim(-b, a),
                    detail::proj_phim_ipsip(c, d), detail::proj_phim_ipsip(-d, c)};
        default:
            throw std::invalid_argument(
                "pauli_projector_decomposition: only B1/B2/B3 decompose over Pauli strings");
    }
}

// Born-rule vector p_i = <phi_i| joint |phi_i> over a complete basis.
inline ProbabilityVector probability_vector(const ComplexMatrix& joint,
                                            const MeasurementBasis& basis) {
    if (basis.vectors.empty())
        throw std::invalid_argument("probability_vector: empty basis");
    std::vector<double> probs;
    probs.reserve(basis.vectors.size());
    double sum = 0.0;
    for (const auto& v : basis.vectors) {
        if (v.rows() != joint.rows())
            throw std::invalid_argument("probability_vector: basis does not match state dimension");
        double p = real_expectation(v, joint);
        if (p < 0.0 && p >= -1e-12) p = 0.0;
        probs.push_back(p);
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("probability_vector: basis is not complete");
    return ProbabilityVector(std::move(probs));
}

// Same vector as probability_vector over the generalized Bell basis, but
// straight from the Kraus operators: p_mn = (1/d^2) sum_j |tr(U_mn^dag A_j)|^2.
inline ProbabilityVector probability_vector_from_kraus(const Channel& ch) {
    if (ch.d_in() != ch.d_out())
        throw std::invalid_argument("probability_vector_from_kraus: channel must be square");
    const std::size_t d = ch.d_in();
    std::vector<double> probs;
    probs.reserve(d * d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
            const ComplexMatrix udag = dagger(weyl(d, m, n));
            double p = 0.0;
            for (const auto& a : ch.kraus()) p += std::norm(trace(matmul(udag, a)));
            probs.push_back(p / static_cast<double>(d * d));
        }
    return ProbabilityVector(std::move(probs));
}

struct BoundReport {
    double q_det = 0.0;
    double ce_lower = 0.0;        // entanglement-assisted bound log2(d) + q_det
    double p_lower = 0.0;         // private capacity bound
    double output_entropy = 0.0;  // S(E(I/d))
    ProbabilityVector prob_vector;
    BasisSpec basis;
};

inline BoundReport make_bound_report(double output_entropy, ProbabilityVector pvec,
                                     const BasisSpec& basis, std::size_t d_in) {
    BoundReport r{0.0, 0.0, 0.0, output_entropy, std::move(pvec), basis};
    r.q_det = output_entropy - shannon(r.prob_vector);
    r.ce_lower = std::log2(static_cast<double>(d_in)) + r.q_det;
    r.p_lower = r.q_det;
    return r;
}

// Detected bound for a maximally entangled probe state.
inline BoundReport q_det(const Channel& ch, const MeasurementBasis& basis) {
    const ComplexMatrix joint = choi_output(ch);
    ProbabilityVector pvec = probability_vector(joint, basis);
    const double s_out = von_neumann(apply(ch, maximally_mixed(ch.d_in())));
    return make_bound_report(s_out, std::move(pvec), basis.spec, ch.d_in());
}

// ---------------------------------------------------------------------------
// Optimization over the qubit families.

// Expectation values <sigma_i (x) sigma_j> of a two-qubit state. Only the
// entries reachable with the local XX/YY/ZZ settings are ever consumed.
struct PauliExpectations {
    double e[4][4] = {};

    static PauliExpectations from_joint(const ComplexMatrix& joint) {
        if (joint.rows() != 4 || joint.cols() != 4)
            throw std::invalid_argument("PauliExpectations: expected a two-qubit state");
        PauliExpectations out;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                out.e[i][j] = trace(matmul(joint, kron(pauli(i), pauli(j)))).real();
        return out;
    }
};

inline double evaluate_probability(const PauliStringWeights& w, const PauliExpectations& e) {
    double p = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (w.w[i][j] != 0.0) p += w.w[i][j] * e.e[i][j];
    return p;
}

namespace detail {

// Within one family the first two projectors depend on theta1 only and the
// last two on theta2 only; each pair takes the form
//   p_{1,2}(t) = base +- (ccoef cos 2t + scoef sin 2t).
struct PairForm {
    double base = 0.0, ccoef = 0.0, scoef = 0.0;

    std::array<double, 2> probs(double theta) const {
        const double delta = ccoef * std::cos(2.0 * theta) + scoef * std::sin(2.0 * theta);
        return {base + delta, base - delta};
    }
};

inline std::array<PairForm, 2> family_pair_forms(BasisFamily f, const PauliExpectations& x) {
    const auto& e = x.e;
    switch (f) {
        case BasisFamily::b1:
            return {PairForm{0.25 * (1.0 + e[3][3]), 0.25 * (e[1][1] - e[2][2]),
                             0.25 * (e[3][0] + e[0][3])},
                    PairForm{0.25 * (1.0 - e[3][3]), 0.25 * (e[1][1] + e[2][2]),
                             0.25 * (e[3][0] - e[0][3])}};
        case BasisFamily::b2:
            return {PairForm{0.25 * (1.0 + e[1][1]), 0.25 * (e[3][3] - e[2][2]),
                             0.25 * (e[1][0] + e[0][1])},
                    PairForm{0.25 * (1.0 - e[1][1]), 0.25 * (e[3][3] + e[2][2]),
                             -0.25 * (e[1][0] - e[0][1])}};
        case BasisFamily::b3:
            return {PairForm{0.25 * (1.0 - e[2][2]), 0.25 * (e[3][3] + e[1][1]),
                             -0.25 * (e[2][0] - e[0][2])},
                    PairForm{0.25 * (1.0 + e[2][2]), 0.25 * (e[3][3] - e[1][1]),
                             0.25 * (e[2][0] + e[0][2])}};
        default:
            throw std::invalid_argument("family_pair_forms: only B1/B2/B3");
    }
}

// Shannon entropy of the four probabilities after clamping negatives (exact
// pipelines only graze zero by roundoff; estimated expectations can
// genuinely undershoot) and renormalizing.
inline double clamped_entropy(std::array<double, 2> p12, std::array<double, 2> p34) {
    double p[4] = {std::max(p12[0], 0.0), std::max(p12[1], 0.0), std::max(p34[0], 0.0),
                   std::max(p34[1], 0.0)};
    const double sum = p[0] + p[1] + p[2] + p[3];
    if (sum <= 0.0) return 0.0;
    double h = 0.0;
    for (double x : p) h += plog2p(x / sum);
    return h;
}

struct FamilyOptimum {
    double theta1 = 0.0, theta2 = 0.0;
    double entropy = 0.0;
};

// Equivalences used to canonicalize the reported angles: theta + pi flips
// both coefficients of a pair (same projectors, same order) and
// theta + pi/2 swaps the pair (same projectors, swapped order). The
// representative in [0, pi/2) is reported.
inline double canonical_theta(double theta) {
    const double half = 0.5 * std::numbers::pi;
    double t = std::fmod(theta, std::numbers::pi);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= half) t -= half;
    return t;
}

// Coarse 64x64 grid over [0, pi)^2 followed by coordinate golden-section
// refinement. The grid is evaluated through the pair structure: when no
// clamping is active the entropy splits into two independent terms, so the
// full grid minimum is the pair of per-axis minima; otherwise the
// renormalization couples the axes and the grid is scanned jointly.
inline FamilyOptimum optimize_family(BasisFamily f, const PauliExpectations& e) {
    constexpr int grid_n = 64;
    const double step = std::numbers::pi / grid_n;
    const auto forms = family_pair_forms(f, e);

    std::array<std::array<double, 2>, grid_n> p12, p34;
    bool clamping = false;
    for (int k = 0; k < grid_n; ++k) {
        p12[k] = forms[0].probs(k * step);
        p34[k] = forms[1].probs(k * step);
        clamping = clamping || p12[k][0] < -1e-12 || p12[k][1] < -1e-12 ||
                   p34[k][0] < -1e-12 || p34[k][1] < -1e-12;
    }

    int best1 = 0, best2 = 0;
    if (!clamping) {
        auto pair_ent = [](const std::array<double, 2>& p) {
            return plog2p(std::max(p[0], 0.0)) + plog2p(std::max(p[1], 0.0));
        };
        double h1 = pair_ent(p12[0]), h2 = pair_ent(p34[0]);
        for (int k = 1; k < grid_n; ++k) {
            if (pair_ent(p12[k]) < h1) { h1 = pair_ent(p12[k]); best1 = k; }
            if (pair_ent(p34[k]) < h2) { h2 = pair_ent(p34[k]); best2 = k; }
        }
    } else {
        double hbest = clamped_entropy(p12[0], p34[0]);
        for (int k1 = 0; k1 < grid_n; ++k1)
            for (int k2 = 0; k2 < grid_n; ++k2) {
                const double h = clamped_entropy(p12[k1], p34[k2]);
                if (h < hbest) { hbest = h; best1 = k1; best2 = k2; }
            }
    }

    double th1 = best1 * step, th2 = best2 * step;
    for (int round = 0; round < 3; ++round) {
        th1 = golden_section_max(
                  [&](double t) { return -clamped_entropy(forms[0].probs(t), forms[1].probs(th2)); },
                  th1 - step, th1 + step)
                  .x;
        th2 = golden_section_max(
                  [&](double t) { return -clamped_entropy(forms[0].probs(th1), forms[1].probs(t)); },
                  th2 - step, th2 + step)
                  .x;
    }

    FamilyOptimum opt;
    opt.theta1 = canonical_theta(th1);
    opt.theta2 = canonical_theta(th2);
    opt.entropy = clamped_entropy(forms[0].probs(opt.theta1), forms[1].probs(opt.theta2));
    return opt;
}

struct OptimizerResult {
    BasisFamily family = BasisFamily::b1;
    double theta1 = 0.0, theta2 = 0.0;
    double entropy = 0.0;
};

// Minimize H(p) over the three families. Ties within 1e-12 resolve to the
// lowest family index for determinism.
inline OptimizerResult optimize_over_families(const PauliExpectations& e) {
    OptimizerResult best;
    bool first = true;
    for (BasisFamily f : {BasisFamily::b1, BasisFamily::b2, BasisFamily::b3}) {
        const FamilyOptimum opt = optimize_family(f, e);
        if (first || opt.entropy < best.entropy - 1e-12) {
            best = {f, opt.theta1, opt.theta2, opt.entropy};
            first = false;
        }
    }
    return best;
}

}  // namespace detail

// Maximal detected bound over the families B1/B2/B3 with free coefficients.
inline BoundReport optimize_qdet(const Channel& ch) {
    if (ch.d_in() != 2 || ch.d_out() != 2)
        throw std::invalid_argument("optimize_qdet: requires a qubit channel");
    const ComplexMatrix joint = choi_output(ch);
    const auto expectations = PauliExpectations::from_joint(joint);
    const auto best = detail::optimize_over_families(expectations);

    const MeasurementBasis basis =
        build_basis(BasisSpec{best.family, best.theta1, best.theta2, 2});
    ProbabilityVector pvec = probability_vector(joint, basis);
    const double s_out = von_neumann(apply(ch, maximally_mixed(2)));
    return make_bound_report(s_out, std::move(pvec), basis.spec, 2);
}

}  // namespace qcdet
