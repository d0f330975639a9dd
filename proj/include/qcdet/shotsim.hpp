#pragma once

// Finite-statistics simulation of the qubit detection protocol. Only the
// three local settings XX, YY, ZZ are sampled; everything the estimator
// produces (output-state tomography, basis probabilities, the detected
// bound) is classical post-processing of those counts.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcdet/channel.hpp"
#include "qcdet/detection.hpp"
#include "qcdet/entropy.hpp"

namespace qcdet {

enum class PauliSetting { xx, yy, zz };

inline const char* to_string(PauliSetting s) {
    switch (s) {
        case PauliSetting::xx: return "XX";
        case PauliSetting::yy: return "YY";
        case PauliSetting::zz: return "ZZ";
    }
    return "?";
}

// Counts of the four outcome pairs (s,t), s on the reference qubit and t on
// the system qubit, each valued +1 or -1. Outcome index: 2*[s<0] + [t<0].
struct MeasurementRecord {
    PauliSetting setting = PauliSetting::xx;
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t shots = 0;
};

namespace detail {

inline std::array<ComplexMatrix, 2> setting_eigenkets(PauliSetting s) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (s) {
        case PauliSetting::xx:
            return {ComplexMatrix{{r}, {r}}, ComplexMatrix{{r}, {-r}}};
        case PauliSetting::yy:
            return {ComplexMatrix{{r}, {Complex(0.0, r)}},
                    ComplexMatrix{{r}, {Complex(0.0, -r)}}};
        case PauliSetting::zz:
            return {ComplexMatrix{{1.0}, {0.0}}, ComplexMatrix{{0.0}, {1.0}}};
    }
    throw std::invalid_argument("setting_eigenkets: bad setting");
}

// 53-bit uniform in [0,1); mt19937_64 keeps the stream fully specified, so
// sampled records are reproducible across platforms.
inline double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::mt19937_64 setting_rng(std::uint64_t seed, PauliSetting setting) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(setting)};
    return std::mt19937_64(seq);
}

}  // namespace detail

// Draw `shots` outcome pairs of the given local setting on the joint output
// of a maximally entangled probe. Deterministic per (seed, setting).
inline MeasurementRecord sample(const Channel& ch, PauliSetting setting, std::uint64_t shots,
                                std::uint64_t seed) {
    if (ch.d_in() != 2 || ch.d_out() != 2)
        throw std::invalid_argument("sample: requires a qubit channel");
    if (shots == 0)
        throw std::invalid_argument("sample: needs at least one shot");

    const ComplexMatrix joint = choi_output(ch);
    const auto kets = detail::setting_eigenkets(setting);

    std::array<double, 4> probs{};
    double total = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            double p = real_expectation(kron(kets[s], kets[t]), joint);
            if (p < 0.0) p = 0.0;
            probs[2 * s + t] = p;
            total += p;
        }
    for (double& p : probs) p /= total;

    MeasurementRecord rec;
    rec.setting = setting;
    rec.shots = shots;
    auto rng = detail::setting_rng(seed, setting);
    for (std::uint64_t n = 0; n < shots; ++n) {
        const double u = detail::uniform53(rng);
        double acc = 0.0;
        std::size_t outcome = 3;
        for (std::size_t k = 0; k < 4; ++k) {
            acc += probs[k];
            if (u < acc) {
                outcome = k;
                break;
            }
        }
        ++rec.counts[outcome];
    }
    return rec;
}

struct ShotEstimate {
    BoundReport report;
    bool renormalized = false;   // a probability estimate was negative and got clamped
    bool bloch_clamped = false;  // the tomographic Bloch vector exceeded unit length
};

namespace detail {

struct SettingStats {
    double product = 0.0;   // <sigma (x) sigma>
    double reference = 0.0; // <sigma (x) I>
    double system = 0.0;    // <I (x) sigma>
};

inline SettingStats record_stats(const MeasurementRecord& rec) {
    const auto& c = rec.counts;
    const std::uint64_t sum = c[0] + c[1] + c[2] + c[3];
    if (rec.shots == 0 || sum != rec.shots)
        throw std::invalid_argument("estimate_report: counts do not sum to shots");
    const double n = static_cast<double>(rec.shots);
    SettingStats st;
    st.product = (static_cast<double>(c[0]) - static_cast<double>(c[1]) -
                  static_cast<double>(c[2]) + static_cast<double>(c[3])) / n;
    st.reference = (static_cast<double>(c[0]) + static_cast<double>(c[1]) -
                    static_cast<double>(c[2]) - static_cast<double>(c[3])) / n;
    st.system = (static_cast<double>(c[0]) - static_cast<double>(c[1]) +
                 static_cast<double>(c[2]) - static_cast<double>(c[3])) / n;
    return st;
}

}  // namespace detail

// Reconstruct a BoundReport from the three setting records. With a basis
// spec the estimate is evaluated there; without one the detected bound is
// optimized over the families B1/B2/B3, exactly as in the noiseless path.
inline ShotEstimate estimate_report(const std::vector<MeasurementRecord>& records,
                                    const std::optional<BasisSpec>& basis = std::nullopt) {
    std::array<const MeasurementRecord*, 3> by_setting{};
    for (const auto& rec : records) {
        auto& slot = by_setting[static_cast<std::size_t>(rec.setting)];
        if (slot != nullptr)
            throw std::invalid_argument("estimate_report: duplicate setting record");
        slot = &rec;
    }
    for (std::size_t k = 0; k < 3; ++k)
        if (by_setting[k] == nullptr)
            throw std::invalid_argument(std::string("estimate_report: missing setting ") +
                                        to_string(static_cast<PauliSetting>(k)));

    PauliExpectations e;
    e.e[0][0] = 1.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto st = detail::record_stats(*by_setting[k]);
        const std::size_t i = k + 1;  // settings order matches sigma_x, sigma_y, sigma_z
        e.e[i][i] = st.product;
        e.e[i][0] = st.reference;
        e.e[0][i] = st.system;
    }

    ShotEstimate out;

    // Output-state tomography from the system-qubit marginals.
    double r2 = e.e[0][1] * e.e[0][1] + e.e[0][2] * e.e[0][2] + e.e[0][3] * e.e[0][3];
    if (r2 > 1.0) {
        const double scale = 1.0 / std::sqrt(r2);
        for (std::size_t i = 1; i < 4; ++i) e.e[0][i] *= scale;
        r2 = 1.0;
        out.bloch_clamped = true;
    }
    const double s_out = binary_entropy(0.5 * (1.0 + std::sqrt(r2)));

    BasisSpec spec;
    if (basis) {
        spec = *basis;
        if (spec.family != BasisFamily::b1 && spec.family != BasisFamily::b2 &&
            spec.family != BasisFamily::b3)
            throw std::invalid_argument("estimate_report: estimates exist for B1/B2/B3 only");
        if (spec.dim != 2)
            throw std::invalid_argument("estimate_report: qubit bases only");
    } else {
        const auto opt = detail::optimize_over_families(e);
        spec = BasisSpec{opt.family, opt.theta1, opt.theta2, 2};
    }

    const auto weights = pauli_projector_decomposition(spec);
    std::vector<double> probs(4);
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double p = evaluate_probability(weights[i], e);
        if (p < 0.0) {
            if (p < -1e-12) out.renormalized = true;
            p = 0.0;
        }
        probs[i] = p;
        sum += p;
    }
    if (sum <= 0.0)
        throw std::runtime_error("estimate_report: degenerate probability estimate");
    for (double& p : probs) p /= sum;

    out.report = make_bound_report(s_out, ProbabilityVector(std::move(probs)), spec, 2);
    return out;
}

}  // namespace qcdet
