// Circuit JSON schema (version 1) and state JSON. A circuit document:
//   {"version":1, "n_qubits":N, "ops":[
//       {"gate":"cnot", "targets":[0,1]},
//       {"gate":"phase", "targets":[0], "params":{"delta":0.5}},
//       {"gate":"ry", "targets":[0], "params":{"theta":0.25},
//        "controls":{"qubits":[1],"values":[0]}}, ...]}
// Matrix payloads (u2/cu/c2u) are carried in params as m00_re..m11_im;
// cu adds "value", c2u adds "value0"/"value1". States:
//   {"n_qubits":N, "amps":[[re,im],...]} with 2^N rows.

#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qdos/circuit.hpp"

namespace qdos {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline double get_param(const nlohmann::json& params, const std::string& key) {
    if (!params.contains(key)) throw ParseError("missing param \"" + key + "\"");
    if (!params[key].is_number()) throw ParseError("param \"" + key + "\" must be a number");
    const double v = params[key].get<double>();
    if (!std::isfinite(v)) throw ParseError("param \"" + key + "\" must be finite");
    return v;
}

inline ComplexMatrix param_matrix(const nlohmann::json& params) {
    ComplexMatrix m(2);
    static const char* keys[4][2] = {{"m00_re", "m00_im"},
                                     {"m01_re", "m01_im"},
                                     {"m10_re", "m10_im"},
                                     {"m11_re", "m11_im"}};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const int e = r * 2 + c;
            m(r, c) = Complex{get_param(params, keys[e][0]), get_param(params, keys[e][1])};
        }
    return m;
}

inline void put_matrix(nlohmann::json& params, const ComplexMatrix& m) {
    params["m00_re"] = m(0, 0).real();
    params["m00_im"] = m(0, 0).imag();
    params["m01_re"] = m(0, 1).real();
    params["m01_im"] = m(0, 1).imag();
    params["m10_re"] = m(1, 0).real();
    params["m10_im"] = m(1, 0).imag();
    params["m11_re"] = m(1, 1).real();
    params["m11_im"] = m(1, 1).imag();
}

inline GateTag tag_from_name(const std::string& name) {
    static const std::map<std::string, GateTag> table = {
        {"not", GateTag::NOT},           {"h", GateTag::H},
        {"x", GateTag::PAULI_X},         {"y", GateTag::PAULI_Y},
        {"z", GateTag::PAULI_Z},         {"phase", GateTag::PHASE},
        {"ry", GateTag::RY},             {"u2", GateTag::U2},
        {"cnot", GateTag::CNOT},         {"cnot_bar", GateTag::CNOT_BAR},
        {"cnot_r", GateTag::CNOT_R},     {"cnot_r_bar", GateTag::CNOT_R_BAR},
        {"swap", GateTag::SWAP},         {"cphase", GateTag::CPHASE},
        {"cu", GateTag::CU},             {"toffoli", GateTag::TOFFOLI},
        {"c2phase", GateTag::C2PHASE},   {"c2u", GateTag::C2U},
    };
    auto it = table.find(name);
    if (it == table.end()) throw ParseError("unknown gate name \"" + name + "\"");
    return it->second;
}

inline std::vector<int> int_list(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
        out.push_back(e.get<int>());
    }
    return out;
}

}  // namespace detail

inline CircuitOp op_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("op must be an object");
    if (!j.contains("gate") || !j["gate"].is_string()) throw ParseError("op missing gate name");
    if (!j.contains("targets")) throw ParseError("op missing targets");
    const GateTag tag = detail::tag_from_name(j["gate"].get<std::string>());
    const nlohmann::json params = j.value("params", nlohmann::json::object());

    Gate g;
    try {
        switch (tag) {
            case GateTag::PHASE: g = Gate::phase(detail::get_param(params, "delta")); break;
            case GateTag::CPHASE: g = Gate::cphase(detail::get_param(params, "delta")); break;
            case GateTag::C2PHASE: g = Gate::c2phase(detail::get_param(params, "delta")); break;
            case GateTag::RY: g = Gate::ry(detail::get_param(params, "theta")); break;
            case GateTag::U2: g = Gate::u2(detail::param_matrix(params)); break;
            case GateTag::CU: {
                const double v = params.contains("value") ? detail::get_param(params, "value") : 1.0;
                if (v != 0.0 && v != 1.0) throw ParseError("cu value must be 0 or 1");
                g = Gate::cu(detail::param_matrix(params), static_cast<int>(v));
                break;
            }
            case GateTag::C2U: {
                const double v0 =
                    params.contains("value0") ? detail::get_param(params, "value0") : 1.0;
                const double v1 =
                    params.contains("value1") ? detail::get_param(params, "value1") : 1.0;
                if ((v0 != 0.0 && v0 != 1.0) || (v1 != 0.0 && v1 != 1.0))
                    throw ParseError("c2u values must be 0 or 1");
                g = Gate::c2u(detail::param_matrix(params),
                              {static_cast<int>(v0), static_cast<int>(v1)});
                break;
            }
            default: g = Gate{tag}; break;
        }
    } catch (const std::domain_error& e) {
        throw ParseError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    CircuitOp op;
    op.gate = std::move(g);
    op.targets = detail::int_list(j["targets"], "targets");
    if (j.contains("controls")) {
        const nlohmann::json& c = j["controls"];
        if (!c.is_object() || !c.contains("qubits") || !c.contains("values"))
            throw ParseError("controls must contain qubits and values");
        op.control_qubits = detail::int_list(c["qubits"], "control qubits");
        op.control_values = detail::int_list(c["values"], "control values");
    }
    return op;
}

inline nlohmann::json op_to_json(const CircuitOp& op) {
    nlohmann::json j;
    j["gate"] = gate_name(op.gate.tag);
    j["targets"] = op.targets;
    nlohmann::json params = nlohmann::json::object();
    switch (op.gate.tag) {
        case GateTag::PHASE:
        case GateTag::CPHASE:
        case GateTag::C2PHASE: params["delta"] = op.gate.angle; break;
        case GateTag::RY: params["theta"] = op.gate.angle; break;
        case GateTag::U2: detail::put_matrix(params, op.gate.payload); break;
        case GateTag::CU:
            detail::put_matrix(params, op.gate.payload);
            params["value"] = op.gate.control_values[0];
            break;
        case GateTag::C2U:
            detail::put_matrix(params, op.gate.payload);
            params["value0"] = op.gate.control_values[0];
            params["value1"] = op.gate.control_values[1];
            break;
        default: break;
    }
    if (!params.empty()) j["params"] = params;
    if (!op.control_qubits.empty())
        j["controls"] = {{"qubits", op.control_qubits}, {"values", op.control_values}};
    return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("circuit document must be an object");
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != 1)
        throw ParseError("circuit document requires \"version\": 1");
    if (!j.contains("n_qubits") || !j["n_qubits"].is_number_integer())
        throw ParseError("circuit document missing n_qubits");
    Circuit c;
    try {
        c = Circuit(j["n_qubits"].get<int>());
        if (j.contains("ops")) {
            if (!j["ops"].is_array()) throw ParseError("ops must be an array");
            for (const auto& oj : j["ops"]) c.add(op_from_json(oj));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return c;
}

inline nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["version"] = 1;
    j["n_qubits"] = c.n_qubits;
    j["ops"] = nlohmann::json::array();
    for (const CircuitOp& op : c.ops) j["ops"].push_back(op_to_json(op));
    return j;
}

inline StateVector state_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n_qubits") || !j.contains("amps"))
        throw ParseError("state document requires n_qubits and amps");
    if (!j["n_qubits"].is_number_integer()) throw ParseError("n_qubits must be an integer");
    const int n = j["n_qubits"].get<int>();
    if (n < 1 || n > 10) throw ParseError("state n_qubits must be in [1,10]");
    StateVector s(n);
    const nlohmann::json& amps = j["amps"];
    if (!amps.is_array() || amps.size() != s.size())
        throw ParseError("amps must list 2^n_qubits entries");
    for (std::size_t i = 0; i < s.size(); ++i) {
        const nlohmann::json& a = amps[i];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
            throw ParseError("each amplitude must be [re, im]");
        s[i] = Complex{a[0].get<double>(), a[1].get<double>()};
    }
    return s;
}

inline nlohmann::json state_to_json(const StateVector& s) {
    nlohmann::json j;
    j["n_qubits"] = s.n_qubits();
    j["amps"] = nlohmann::json::array();
    for (std::size_t i = 0; i < s.size(); ++i)
        j["amps"].push_back({s[i].real(), s[i].imag()});
    return j;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

}  // namespace qdos
