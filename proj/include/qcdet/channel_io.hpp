#pragma once

// JSON ingestion for user-supplied channels.
//
// Document schema:
//   {
//     "d_in": 2, "d_out": 2, "label": "optional",
//     "kraus": [ { "re": [[...],[...]], "im": [[...],[...]] }, ... ]
//   }
// Matrices are row-major, each d_out x d_in; "im" may be omitted for a real
// operator. Entries must be finite.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcdet/channel.hpp"

namespace qcdet {

struct ChannelDocument {
    std::size_t d_in = 0;
    std::size_t d_out = 0;
    std::vector<ComplexMatrix> kraus;
    std::string label;
};

namespace detail {

inline ComplexMatrix parse_component(const nlohmann::json& part, std::size_t rows,
                                     std::size_t cols, const char* name) {
    if (!part.is_array() || part.size() != rows)
        throw std::invalid_argument(std::string("load_channel: '") + name +
                                    "' must be a " + std::to_string(rows) + "-row matrix");
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = part[r];
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument(std::string("load_channel: '") + name +
                                        "' has a row of wrong length");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number())
                throw std::invalid_argument("load_channel: matrix entries must be numbers");
            const double x = row[c].get<double>();
            if (!std::isfinite(x))
                throw std::invalid_argument("load_channel: matrix entries must be finite");
            m(r, c) = x;
        }
    }
    return m;
}

}  // namespace detail

// Structural parse and finiteness checks only; completeness is not enforced
// here so that diagnostic tools can report the residual of an invalid set.
inline ChannelDocument parse_channel_document(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw std::invalid_argument("load_channel: document must be a JSON object");
    for (const char* key : {"d_in", "d_out", "kraus"})
        if (!doc.contains(key))
            throw std::invalid_argument(std::string("load_channel: missing field '") + key + "'");
    ChannelDocument out;
    if (!doc["d_in"].is_number_unsigned() || !doc["d_out"].is_number_unsigned())
        throw std::invalid_argument("load_channel: dimensions must be positive integers");
    out.d_in = doc["d_in"].get<std::size_t>();
    out.d_out = doc["d_out"].get<std::size_t>();
    if (out.d_in == 0 || out.d_out == 0)
        throw std::invalid_argument("load_channel: dimensions must be positive integers");
    out.label = doc.value("label", std::string("custom"));

    const auto& kraus = doc["kraus"];
    if (!kraus.is_array() || kraus.empty())
        throw std::invalid_argument("load_channel: 'kraus' must be a non-empty array");
    for (const auto& op : kraus) {
        if (!op.is_object() || !op.contains("re"))
            throw std::invalid_argument("load_channel: each Kraus entry needs a 're' matrix");
        ComplexMatrix m = detail::parse_component(op["re"], out.d_out, out.d_in, "re");
        if (op.contains("im")) {
            const ComplexMatrix im = detail::parse_component(op["im"], out.d_out, out.d_in, "im");
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    m(r, c) = Complex(m(r, c).real(), im(r, c).real());
        }
        out.kraus.push_back(std::move(m));
    }
    return out;
}

inline Channel load_channel(const nlohmann::json& doc) {
    ChannelDocument parsed = parse_channel_document(doc);
    return Channel(parsed.d_in, parsed.d_out, std::move(parsed.kraus), std::move(parsed.label),
                   1e-8);
}

inline Channel load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("load_channel: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("load_channel: malformed JSON in '" + path + "': " + e.what());
    }
    return load_channel(doc);
}

inline nlohmann::json channel_to_json(const Channel& ch) {
    nlohmann::json doc;
    doc["d_in"] = ch.d_in();
    doc["d_out"] = ch.d_out();
    doc["label"] = ch.label();
    doc["kraus"] = nlohmann::json::array();
    for (const auto& a : ch.kraus()) {
        nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
        for (std::size_t r = 0; r < a.rows(); ++r) {
            nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
            for (std::size_t c = 0; c < a.cols(); ++c) {
                rrow.push_back(a(r, c).real());
                irow.push_back(a(r, c).imag());
            }
            re.push_back(std::move(rrow));
            im.push_back(std::move(irow));
        }
        doc["kraus"].push_back({{"re", std::move(re)}, {"im", std::move(im)}});
    }
    return doc;
}

}  // namespace qcdet
