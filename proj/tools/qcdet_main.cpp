// Command-line front end: configure a channel, run detections, sweeps or
// shot simulations, and emit CSV/JSON rows suitable for plotting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcdet/qcdet.hpp"

namespace {

using nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

qcdet::AxisSpec parse_axis(const std::string& text) {
    // name:start:stop:step
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
        throw CLI::ValidationError("sweep/grid spec must be name:start:stop:step, got '" + text +
                                   "'");
    qcdet::AxisSpec ax;
    ax.param = parts[0];
    try {
        ax.start = std::stod(parts[1]);
        ax.stop = std::stod(parts[2]);
        ax.step = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("sweep/grid spec has non-numeric bounds: '" + text + "'");
    }
    return ax;
}

std::pair<std::string, double> parse_param(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError("--param expects name=value, got '" + text + "'");
    try {
        return {text.substr(0, eq), std::stod(text.substr(eq + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--param has a non-numeric value: '" + text + "'");
    }
}

struct OutputColumns {
    std::vector<std::string> param_names;
};

void write_csv(std::ostream& os, const std::vector<std::string>& meta,
               const std::vector<qcdet::DetectionRow>& rows) {
    for (const auto& line : meta) os << "# " << line << "\n";
    if (rows.empty()) return;
    for (const auto& rp : rows.front().params) os << rp.name << ",";
    os << "q_det_opt,q_det_bell,output_entropy,shannon_h,capacity,hashing_bound,upper_bound,"
          "ce_lower,p_lower,basis_family,theta1,theta2,renormalized\n";
    for (const auto& row : rows) {
        for (const auto& rp : row.params) os << format_double(rp.value) << ",";
        os << format_double(row.q_det_opt) << "," << format_double(row.q_det_bell) << ","
           << format_double(row.output_entropy) << "," << format_double(row.shannon_h) << ",";
        os << (row.capacity ? format_double(*row.capacity) : "") << ",";
        os << (row.hashing_bound ? format_double(*row.hashing_bound) : "") << ",";
        os << (row.upper_bound ? format_double(*row.upper_bound) : "") << ",";
        os << format_double(row.ce_lower) << "," << format_double(row.p_lower) << ","
           << qcdet::to_string(row.basis.family) << "," << format_double(row.basis.theta1) << ","
           << format_double(row.basis.theta2) << "," << (row.renormalized ? 1 : 0) << "\n";
    }
}

void write_json(std::ostream& os, const std::map<std::string, std::string>& meta,
                const std::vector<qcdet::DetectionRow>& rows) {
    ordered_json doc;
    for (const auto& [k, v] : meta) doc["metadata"][k] = v;
    doc["rows"] = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        for (const auto& rp : row.params) r[rp.name] = rp.value;
        r["q_det_opt"] = row.q_det_opt;
        r["q_det_bell"] = row.q_det_bell;
        r["output_entropy"] = row.output_entropy;
        r["shannon_h"] = row.shannon_h;
        if (row.capacity) r["capacity"] = *row.capacity;
        if (row.hashing_bound) r["hashing_bound"] = *row.hashing_bound;
        if (row.upper_bound) r["upper_bound"] = *row.upper_bound;
        r["ce_lower"] = row.ce_lower;
        r["p_lower"] = row.p_lower;
        r["basis_family"] = qcdet::to_string(row.basis.family);
        r["theta1"] = row.basis.theta1;
        r["theta2"] = row.basis.theta2;
        r["renormalized"] = row.renormalized;
        doc["rows"].push_back(std::move(r));
    }
    os << doc.dump(2) << "\n";
}

int run_validate(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 2;
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    }
    try {
        const qcdet::ChannelDocument parsed = qcdet::parse_channel_document(doc);
        const double residual = qcdet::completeness_residual(parsed.kraus, parsed.d_in);
        std::cout << "label: " << parsed.label << "\n"
                  << "d_in: " << parsed.d_in << "\n"
                  << "d_out: " << parsed.d_out << "\n"
                  << "kraus operators: " << parsed.kraus.size() << "\n"
                  << "completeness residual: " << format_double(residual) << "\n";
        if (residual > 1e-8) {
            std::cout << "status: NOT trace preserving\n";
            return 1;
        }
        std::cout << "status: ok\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect lower bounds on quantum channel capacities from entangled-basis "
                 "measurement statistics"};
    app.set_version_flag("--version", qcdet::version);

    std::string channel;
    std::size_t dim = 2;
    std::vector<std::string> param_args;
    std::string sweep_arg;
    std::vector<std::string> grid_args;
    std::string mode_arg = "exact";
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string output = "-";
    std::string format = "csv";

    app.add_option("--channel", channel,
                   "Channel family (identity, dephasing, depolarizing, pauli, generalized-pauli, "
                   "erasure, amplitude-damping, two-kraus) or path to a custom-channel JSON file");
    app.add_option("--dim", dim, "System dimension for d-dimensional families")
        ->check(CLI::Range(std::size_t{2}, std::size_t{16}));
    app.add_option("--param", param_args, "Channel parameter as name=value (repeatable)");
    app.add_option("--sweep", sweep_arg, "Sweep one parameter: name:start:stop:step");
    app.add_option("--grid", grid_args, "Grid axis name:start:stop:step (give exactly twice)")
        ->expected(-1);
    app.add_option("--mode", mode_arg, "exact or shots")
        ->check(CLI::IsMember({"exact", "shots"}));
    app.add_option("--shots", shots, "Shots per measurement setting in shots mode");
    app.add_option("--seed", seed, "Base RNG seed for shots mode");
    app.add_option("--threads", threads, "Worker threads (default: QCDET_THREADS or all cores)");
    app.add_option("--output", output, "Output path, '-' for stdout");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* validate =
        app.add_subcommand("validate", "Check a custom-channel JSON document and report its "
                                       "dimensions, Kraus count and completeness residual");
    std::string validate_path;
    validate->add_option("config", validate_path, "Path to the channel JSON document")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return run_validate(validate_path);

    if (channel.empty()) {
        std::cerr << "error: --channel is required (see --help)\n";
        return 2;
    }

    try {
        qcdet::ChannelModel model;
        model.dim = dim;
        for (const auto& arg : param_args) {
            auto [name, value] = parse_param(arg);
            model.params[name] = value;
        }
        const bool is_file = channel.find('.') != std::string::npos ||
                             channel.find('/') != std::string::npos;
        if (is_file) {
            model.family = "custom";
            model.custom = std::make_shared<qcdet::Channel>(qcdet::load_channel_file(channel));
        } else {
            model.family = channel;
        }

        std::vector<qcdet::AxisSpec> axes;
        if (!sweep_arg.empty()) axes.push_back(parse_axis(sweep_arg));
        for (const auto& g : grid_args) axes.push_back(parse_axis(g));
        if (!sweep_arg.empty() && !grid_args.empty())
            throw std::invalid_argument("--sweep and --grid are mutually exclusive");
        if (!grid_args.empty() && grid_args.size() != 2)
            throw std::invalid_argument("--grid expects exactly two axis specs");

        qcdet::RunSettings settings;
        settings.mode = mode_arg == "shots" ? qcdet::RunMode::shots : qcdet::RunMode::exact;
        settings.shots = shots;
        settings.seed = seed;
        settings.threads = threads;

        const auto rows = qcdet::run_detection(model, axes, settings);

        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];

        std::ostream* os = &std::cout;
        std::ofstream file;
        if (output != "-") {
            file.open(output, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file '" + output + "'");
            os = &file;
        }

        if (format == "csv") {
            std::vector<std::string> meta{std::string("qcdet ") + qcdet::version,
                                          "command: " + cmd.str(),
                                          "channel: " + model.family +
                                              " dim=" + std::to_string(model.dim),
                                          "mode: " + mode_arg,
                                          "seed: " + std::to_string(seed)};
            write_csv(*os, meta, rows);
        } else {
            std::map<std::string, std::string> meta{
                {"version", qcdet::version},
                {"command", cmd.str()},
                {"channel", model.family},
                {"dim", std::to_string(model.dim)},
                {"mode", mode_arg},
                {"seed", std::to_string(seed)}};
            write_json(*os, meta, rows);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
