#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qcdet {

struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section ascent on [lo, hi]; assumes a single interior maximum.
template <typename F>
ScalarMax golden_section_max(F&& f, double lo, double hi, double xtol = 1e-10) {
    constexpr double invphi = 0.61803398874989484820;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

// Coarse scan followed by golden-section refinement inside the bracketing
// cells. Robust for smooth objectives that need not be globally unimodal.
template <typename F>
ScalarMax maximize_scalar(F&& f, double lo, double hi, int scan_points = 129,
                          double xtol = 1e-10) {
    if (!(hi > lo) || scan_points < 3)
        throw std::invalid_argument("maximize_scalar: invalid search interval");
    const double h = (hi - lo) / (scan_points - 1);
    int best = 0;
    double fbest = f(lo);
    for (int k = 1; k < scan_points; ++k) {
        const double fx = f(lo + k * h);
        if (fx > fbest) {
            fbest = fx;
            best = k;
        }
    }
    const double a = std::max(lo, lo + (best - 1) * h);
    const double b = std::min(hi, lo + (best + 1) * h);
    ScalarMax refined = golden_section_max(f, a, b, xtol);
    if (refined.value >= fbest) return refined;
    return {lo + best * h, fbest};
}

}  // namespace qcdet
