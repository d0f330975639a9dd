#pragma once

// Parameter sweeps over the channel zoo. Each grid point yields one row
// with the optimized and fixed-basis detected bounds plus whatever
// closed-form reference values exist for the family. Points are
// independent, so they may be evaluated concurrently; rows always come
// back in parameter order.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qcdet/capacities.hpp"
#include "qcdet/channel.hpp"
#include "qcdet/detection.hpp"
#include "qcdet/shotsim.hpp"

namespace qcdet {

enum class RunMode { exact, shots };

// A channel family plus its parameter assignment; sweeps override single
// parameters point by point.
struct ChannelModel {
    std::string family;  // dephasing|depolarizing|pauli|generalized-pauli|erasure|
                         // amplitude-damping|two-kraus|identity|custom
    std::size_t dim = 2;
    std::map<std::string, double> params;
    std::shared_ptr<const Channel> custom;  // set iff family == "custom"
};

struct RowParam {
    std::string name;
    double value = 0.0;
};

struct DetectionRow {
    std::vector<RowParam> params;
    double q_det_opt = 0.0;
    double q_det_bell = 0.0;
    double output_entropy = 0.0;
    double shannon_h = 0.0;  // H(p) of the optimizing basis
    double ce_lower = 0.0;
    double p_lower = 0.0;
    std::optional<double> capacity;       // exact reference where known
    std::optional<double> hashing_bound;  // random-coding lower bound
    std::optional<double> upper_bound;    // 1 - 4p for qubit depolarizing
    BasisSpec basis;
    bool renormalized = false;  // shots mode: clamped probability estimates
};

struct AxisSpec {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

struct RunSettings {
    RunMode mode = RunMode::exact;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: QCDET_THREADS env var, else hardware parallelism
};

namespace detail {

inline double require_param(const std::map<std::string, double>& params, const std::string& name,
                            const std::string& family) {
    auto it = params.find(name);
    if (it == params.end())
        throw std::invalid_argument("channel '" + family + "' needs parameter '" + name + "'");
    return it->second;
}

inline std::vector<double> pauli_weights_from_params(const std::map<std::string, double>& params,
                                                     std::size_t d, const std::string& prefix) {
    // Weight keys are p0..p3 for qubits, pMN for the d-dimensional family;
    // the identity weight may be omitted and is inferred from the rest.
    std::vector<double> w(d * d, 0.0);
    double partial = 0.0;
    bool have_identity = false;
    for (const auto& [name, value] : params) {
        if (name.size() < prefix.size() + 1 || name.compare(0, prefix.size(), prefix) != 0)
            continue;
        const std::string idx = name.substr(prefix.size());
        std::size_t flat = 0;
        if (d == 2 && idx.size() == 1 && idx[0] >= '0' && idx[0] <= '3') {
            // qubit order I, X, Y, Z; map to Weyl order I, X, iY-like, Z
            static constexpr std::size_t weyl_of_sigma[4] = {0, 1, 3, 2};
            flat = weyl_of_sigma[static_cast<std::size_t>(idx[0] - '0')];
        } else if (idx.size() == 2 && idx[0] >= '0' && idx[1] >= '0' &&
                   static_cast<std::size_t>(idx[0] - '0') < d &&
                   static_cast<std::size_t>(idx[1] - '0') < d) {
            flat = static_cast<std::size_t>(idx[0] - '0') * d +
                   static_cast<std::size_t>(idx[1] - '0');
        } else {
            throw std::invalid_argument("unrecognized Pauli weight parameter '" + name + "'");
        }
        w[flat] = value;
        if (flat == 0) have_identity = true;
        else partial += value;
    }
    if (!have_identity) {
        double w0 = 1.0 - partial;
        if (w0 < 0.0 && w0 > -1e-12) w0 = 0.0;
        w[0] = w0;
    }
    return w;
}

}  // namespace detail

inline Channel realize(const ChannelModel& model,
                       const std::map<std::string, double>& overrides = {}) {
    std::map<std::string, double> p = model.params;
    for (const auto& [k, v] : overrides) p[k] = v;

    const std::string& f = model.family;
    if (f == "identity") return make_identity(model.dim);
    if (f == "dephasing") return make_dephasing(detail::require_param(p, "p", f), model.dim);
    if (f == "depolarizing") return make_depolarizing(detail::require_param(p, "p", f), model.dim);
    if (f == "pauli") {
        const auto w = detail::pauli_weights_from_params(p, 2, "p");
        // weights arrive in Weyl order; hand them to the sigma-ordered factory
        return make_pauli(w[0], w[1], w[3], w[2]);
    }
    if (f == "generalized-pauli")
        return make_generalized_pauli(detail::pauli_weights_from_params(p, model.dim, "p"),
                                      model.dim);
    if (f == "erasure") return make_erasure(detail::require_param(p, "p", f), model.dim);
    if (f == "amplitude-damping")
        return make_amplitude_damping(detail::require_param(p, "gamma", f));
    if (f == "two-kraus")
        return make_two_kraus(detail::require_param(p, "alpha", f),
                              detail::require_param(p, "beta", f));
    if (f == "custom") {
        if (!model.custom)
            throw std::invalid_argument("custom channel model has no channel attached");
        if (!overrides.empty())
            throw std::invalid_argument("custom channels have no sweepable parameters");
        return *model.custom;
    }
    throw std::invalid_argument("unknown channel family '" + f + "'");
}

namespace detail {

// The fixed reference basis: plain Bell for qubit channels, generalized
// Bell for square qudit channels, the flag-augmented basis for erasure.
inline BasisSpec fixed_basis_spec(const Channel& ch) {
    if (ch.d_in() == ch.d_out())
        return BasisSpec{ch.d_in() == 2 ? BasisFamily::b1 : BasisFamily::generalized_bell, 0.0,
                         0.0, ch.d_in()};
    if (ch.d_out() == ch.d_in() + 1)
        return BasisSpec{BasisFamily::erasure_flag, 0.0, 0.0, ch.d_in()};
    throw std::invalid_argument("no canonical measurement basis for output dimension " +
                                std::to_string(ch.d_out()));
}

inline void fill_references(DetectionRow& row, const ChannelModel& model,
                            const std::map<std::string, double>& p) {
    const std::string& f = model.family;
    if (f == "identity") {
        row.capacity = std::log2(static_cast<double>(model.dim));
    } else if (f == "dephasing") {
        const auto cap = capacity_dephasing(p.at("p"), model.dim);
        if (cap.exact) row.capacity = cap.value;
    } else if (f == "depolarizing") {
        row.hashing_bound = hashing_bound(p.at("p"), model.dim);
        if (model.dim == 2) row.upper_bound = depolarizing_upper(p.at("p"));
    } else if (f == "pauli" || f == "generalized-pauli") {
        const std::size_t d = f == "pauli" ? 2 : model.dim;
        auto w = pauli_weights_from_params(p, d, "p");
        double h = 0.0;
        for (double x : w) h += plog2p(std::max(x, 0.0));
        row.hashing_bound = std::log2(static_cast<double>(d)) - h;
    } else if (f == "erasure") {
        row.capacity = capacity_erasure(p.at("p"), model.dim);
    } else if (f == "amplitude-damping") {
        row.capacity = capacity_amplitude_damping(p.at("gamma"));
    } else if (f == "two-kraus") {
        row.capacity = capacity_two_kraus(p.at("alpha"), p.at("beta"));
    }
}

}  // namespace detail

inline DetectionRow evaluate_point(const ChannelModel& model, const std::vector<RowParam>& point,
                                   const RunSettings& settings, std::uint64_t point_seed) {
    std::map<std::string, double> overrides;
    for (const auto& rp : point) overrides[rp.name] = rp.value;
    const Channel ch = realize(model, overrides);

    std::map<std::string, double> effective = model.params;
    for (const auto& [k, v] : overrides) effective[k] = v;

    DetectionRow row;
    row.params = point;

    const BasisSpec fixed = detail::fixed_basis_spec(ch);
    const bool qubit = ch.d_in() == 2 && ch.d_out() == 2;

    if (settings.mode == RunMode::exact) {
        const BoundReport bell = q_det(ch, build_basis(fixed));
        const BoundReport opt = qubit ? optimize_qdet(ch) : bell;
        row.q_det_opt = opt.q_det;
        row.q_det_bell = bell.q_det;
        row.output_entropy = opt.output_entropy;
        row.shannon_h = shannon(opt.prob_vector);
        row.ce_lower = opt.ce_lower;
        row.p_lower = opt.p_lower;
        row.basis = opt.basis;
    } else {
        if (!qubit)
            throw std::invalid_argument("shots mode supports qubit channels only");
        std::vector<MeasurementRecord> records;
        for (PauliSetting s : {PauliSetting::xx, PauliSetting::yy, PauliSetting::zz})
            records.push_back(sample(ch, s, settings.shots, point_seed));
        const ShotEstimate bell = estimate_report(records, fixed);
        const ShotEstimate opt = estimate_report(records, std::nullopt);
        row.q_det_opt = opt.report.q_det;
        row.q_det_bell = bell.report.q_det;
        row.output_entropy = opt.report.output_entropy;
        row.shannon_h = shannon(opt.report.prob_vector);
        row.ce_lower = opt.report.ce_lower;
        row.p_lower = opt.report.p_lower;
        row.basis = opt.report.basis;
        row.renormalized = opt.renormalized || bell.renormalized;
    }

    detail::fill_references(row, model, effective);
    return row;
}

inline unsigned default_thread_count() {
    if (const char* env = std::getenv("QCDET_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Expand 0, 1 or 2 axes into the full point list (row-major over the axes)
// and evaluate every point. Shots-mode sampling seeds advance with the
// point index so results do not depend on scheduling.
inline std::vector<DetectionRow> run_detection(const ChannelModel& model,
                                               const std::vector<AxisSpec>& axes,
                                               const RunSettings& settings) {
    if (axes.size() > 2)
        throw std::invalid_argument("run_detection: at most two sweep axes");
    for (const auto& ax : axes) {
        if (!(ax.step > 0.0))
            throw std::invalid_argument("run_detection: sweep step must be positive");
        if (ax.stop < ax.start)
            throw std::invalid_argument("run_detection: sweep range is empty");
    }

    auto axis_values = [](const AxisSpec& ax) {
        std::vector<double> v;
        for (double x = ax.start; x <= ax.stop + 1e-9 * ax.step; x += ax.step)
            v.push_back(x);
        return v;
    };

    std::vector<std::vector<RowParam>> points;
    if (axes.empty()) {
        std::vector<RowParam> fixed;
        for (const auto& [k, v] : model.params) fixed.push_back({k, v});
        points.push_back(std::move(fixed));
    } else if (axes.size() == 1) {
        for (double x : axis_values(axes[0])) points.push_back({{axes[0].param, x}});
    } else {
        for (double x : axis_values(axes[0]))
            for (double y : axis_values(axes[1]))
                points.push_back({{axes[0].param, x}, {axes[1].param, y}});
    }

    std::vector<DetectionRow> rows(points.size());
    const std::size_t threads =
        std::min<std::size_t>(settings.threads ? settings.threads : default_thread_count(),
                              points.size());

    if (threads <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i)
            rows[i] = evaluate_point(model, points[i], settings, settings.seed + i);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
            try {
                rows[i] = evaluate_point(model, points[i], settings, settings.seed + i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return rows;
}

}  // namespace qcdet
