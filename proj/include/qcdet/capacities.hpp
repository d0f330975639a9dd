#pragma once

// Closed-form reference capacities and bounds for the built-in channel
// families. These are the ground truths the detection pipeline is compared
// against.

#include <cmath>
#include <cstddef>

#include "qcdet/entropy.hpp"
#include "qcdet/golden_section.hpp"

namespace qcdet {

struct CapacityValue {
    double value = 0.0;
    bool exact = false;  // false: lower bound only
};

// Q = 1 - H2(p/2) is the exact quantum capacity for the qubit dephasing
// channel (it is degradable). For d > 2 the same expression with log2(d)
// is only the detectable lower bound.
inline CapacityValue capacity_dephasing(double p, std::size_t d = 2) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("capacity_dephasing: p must lie in [0,1]");
    const double value = std::log2(static_cast<double>(d)) - binary_entropy(p / 2.0);
    return {value, d == 2};
}

// Random-coding (hashing) lower bound for the depolarizing family.
inline double hashing_bound(double p, std::size_t d = 2) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("hashing_bound: p must lie in [0,1]");
    const double dd = static_cast<double>(d);
    return std::log2(dd) - binary_entropy(p) - p * std::log2(dd * dd - 1.0);
}

// Known upper bound Q <= 1 - 4p for the qubit depolarizing channel.
inline double depolarizing_upper(double p) { return 1.0 - 4.0 * p; }

inline double capacity_erasure(double p, std::size_t d = 2) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("capacity_erasure: p must lie in [0,1]");
    if (p >= 0.5) return 0.0;
    return (1.0 - 2.0 * p) * std::log2(static_cast<double>(d));
}

// Q = max_q H2((1-gamma) q) - H2(gamma q), zero from gamma = 1/2 on.
inline double capacity_amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("capacity_amplitude_damping: gamma must lie in [0,1]");
    if (gamma >= 0.5) return 0.0;
    auto objective = [gamma](double q) {
        return binary_entropy((1.0 - gamma) * q) - binary_entropy(gamma * q);
    };
    return std::max(0.0, maximize_scalar(objective, 0.0, 1.0).value);
}

// Degradability criterion for the two-Kraus family; on the complementary
// region the channel is antidegradable and Q = 0.
inline bool two_kraus_degradable(double alpha, double beta) {
    return std::cos(2.0 * alpha) * std::cos(2.0 * beta) > 0.0;
}

inline double capacity_two_kraus(double alpha, double beta) {
    if (!two_kraus_degradable(alpha, beta)) return 0.0;
    const double ca2 = std::cos(alpha) * std::cos(alpha);
    const double sa2 = std::sin(alpha) * std::sin(alpha);
    const double sb2 = std::sin(beta) * std::sin(beta);
    auto objective = [=](double p) {
        return binary_entropy(p * ca2 + (1.0 - p) * sb2) -
               binary_entropy(p * sa2 + (1.0 - p) * sb2);
    };
    return std::max(0.0, maximize_scalar(objective, 0.0, 1.0).value);
}

}  // namespace qcdet
