// Elementary gate catalogue. Matrix conventions: basis index bit k is
// qubit k, qubit 0 least significant. CNOT has its control on the most
// significant qubit (rows 2 and 3 swapped); the -R variants control from
// the least significant qubit; the barred variants trigger on control 0.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdos/complex_matrix.hpp"

namespace qdos {

enum class GateTag {
    NOT,
    H,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PHASE,
    RY,
    U2,
    CNOT,
    CNOT_BAR,
    CNOT_R,
    CNOT_R_BAR,
    SWAP,
    CPHASE,
    CU,
    TOFFOLI,
    C2PHASE,
    C2U,
};

struct Gate {
    GateTag tag = GateTag::NOT;
    double angle = 0.0;             // PHASE / RY / CPHASE / C2PHASE, radians
    ComplexMatrix payload;          // U2 / CU / C2U
    std::vector<int> control_values;  // CU: 1 entry, C2U: 2 entries

    static Gate not_() { return {GateTag::NOT}; }
    static Gate h() { return {GateTag::H}; }
    static Gate x() { return {GateTag::PAULI_X}; }
    static Gate y() { return {GateTag::PAULI_Y}; }
    static Gate z() { return {GateTag::PAULI_Z}; }
    static Gate phase(double delta) { return {GateTag::PHASE, normalize_angle(delta)}; }
    static Gate ry(double theta) { return {GateTag::RY, theta}; }
    static Gate u2(ComplexMatrix m) {
        Gate g{GateTag::U2};
        g.payload = check_payload(std::move(m), 2);
        return g;
    }
    static Gate cnot() { return {GateTag::CNOT}; }
    static Gate cnot_bar() { return {GateTag::CNOT_BAR}; }
    static Gate cnot_r() { return {GateTag::CNOT_R}; }
    static Gate cnot_r_bar() { return {GateTag::CNOT_R_BAR}; }
    static Gate swap() { return {GateTag::SWAP}; }
    static Gate cphase(double delta) { return {GateTag::CPHASE, normalize_angle(delta)}; }
    static Gate cu(ComplexMatrix m, int control_value = 1) {
        Gate g{GateTag::CU};
        g.payload = check_payload(std::move(m), 2);
        g.control_values = {control_value};
        return g;
    }
    static Gate toffoli() { return {GateTag::TOFFOLI}; }
    static Gate c2phase(double delta) { return {GateTag::C2PHASE, normalize_angle(delta)}; }
    static Gate c2u(ComplexMatrix m, std::vector<int> control_values = {1, 1}) {
        Gate g{GateTag::C2U};
        g.payload = check_payload(std::move(m), 2);
        if (control_values.size() != 2)
            throw std::invalid_argument("C2U: exactly two control values required");
        g.control_values = std::move(control_values);
        return g;
    }

    static ComplexMatrix check_payload(ComplexMatrix m, std::size_t dim) {
        if (m.dim() != dim) throw std::invalid_argument("gate payload: wrong dimension");
        if (!is_unitary(m, 1e-10))
            throw std::domain_error("gate payload: matrix is not unitary");
        return m;
    }
};

inline int gate_qubits(GateTag tag) {
    switch (tag) {
        case GateTag::NOT:
        case GateTag::H:
        case GateTag::PAULI_X:
        case GateTag::PAULI_Y:
        case GateTag::PAULI_Z:
        case GateTag::PHASE:
        case GateTag::RY:
        case GateTag::U2:
            return 1;
        case GateTag::CNOT:
        case GateTag::CNOT_BAR:
        case GateTag::CNOT_R:
        case GateTag::CNOT_R_BAR:
        case GateTag::SWAP:
        case GateTag::CPHASE:
        case GateTag::CU:
            return 2;
        default:
            return 3;
    }
}

inline int gate_qubits(const Gate& g) { return gate_qubits(g.tag); }

// Controlled embedding of u: identity on non-matching control subspaces,
// u on the matching one. Controls sit on the most significant qubits with
// LSB_TARGET (the default layout), on the least significant with MSB_TARGET.
// control_values[i] is the required value of the i-th control qubit,
// ascending significance.
enum class TargetPosition { LSB_TARGET, MSB_TARGET };

inline ComplexMatrix controlled(const ComplexMatrix& u, int n_controls,
                                const std::vector<int>& control_values,
                                TargetPosition target_position = TargetPosition::LSB_TARGET) {
    if (!is_unitary(u, 1e-10)) throw std::domain_error("controlled: payload is not unitary");
    if (n_controls < 1 || n_controls > 2)
        throw std::invalid_argument("controlled: n_controls must be 1 or 2");
    if (static_cast<int>(control_values.size()) != n_controls)
        throw std::invalid_argument("controlled: control_values length mismatch");

    const std::size_t ud = u.dim();
    const std::size_t dim = ud << n_controls;
    std::size_t pattern = 0;
    for (int i = 0; i < n_controls; ++i)
        if (control_values[i]) pattern |= std::size_t{1} << i;

    ComplexMatrix out(dim);
    const bool lsb = target_position == TargetPosition::LSB_TARGET;
    const std::size_t cmask = (std::size_t{1} << n_controls) - 1;
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t ctrl = lsb ? col / ud : col & cmask;
        const std::size_t tgt = lsb ? col % ud : col >> n_controls;
        if (ctrl != pattern) {
            out(col, col) = 1.0;
            continue;
        }
        for (std::size_t row_t = 0; row_t < ud; ++row_t) {
            const std::size_t row = lsb ? ctrl * ud + row_t : (row_t << n_controls) | ctrl;
            out(row, col) = u(row_t, tgt);
        }
    }
    return out;
}

inline ComplexMatrix gate_matrix(const Gate& g) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (g.tag) {
        case GateTag::NOT:
        case GateTag::PAULI_X:
            return {2, {0, 1, 1, 0}};
        case GateTag::H:
            return {2, {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2}};
        case GateTag::PAULI_Y:
            return {2, {0, Complex{0, -1}, Complex{0, 1}, 0}};
        case GateTag::PAULI_Z:
            return {2, {1, 0, 0, -1}};
        case GateTag::PHASE:
            return {2, {1, 0, 0, std::polar(1.0, g.angle)}};
        case GateTag::RY: {
            const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
            return {2, {c, -s, s, c}};
        }
        case GateTag::U2:
            return g.payload;
        case GateTag::CNOT:  // control MSB=1, swaps rows 2 and 3
            return {4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}};
        case GateTag::CNOT_BAR:  // control MSB=0, swaps rows 0 and 1
            return {4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}};
        case GateTag::CNOT_R:  // control LSB=1, swaps rows 1 and 3
            return {4, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0}};
        case GateTag::CNOT_R_BAR:  // control LSB=0, swaps rows 0 and 2
            return {4, {0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}};
        case GateTag::SWAP:
            return {4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}};
        case GateTag::CPHASE: {
            ComplexMatrix m = ComplexMatrix::identity(4);
            m(3, 3) = std::polar(1.0, g.angle);
            return m;
        }
        case GateTag::CU:
            return controlled(g.payload, 1, g.control_values);
        case GateTag::TOFFOLI: {
            ComplexMatrix m = ComplexMatrix::identity(8);
            m(6, 6) = m(7, 7) = 0.0;
            m(6, 7) = m(7, 6) = 1.0;
            return m;
        }
        case GateTag::C2PHASE: {
            ComplexMatrix m = ComplexMatrix::identity(8);
            m(7, 7) = std::polar(1.0, g.angle);
            return m;
        }
        case GateTag::C2U:
            return controlled(g.payload, 2, g.control_values);
    }
    throw std::logic_error("gate_matrix: unknown tag");
}

inline std::string gate_name(GateTag tag) {
    switch (tag) {
        case GateTag::NOT: return "not";
        case GateTag::H: return "h";
        case GateTag::PAULI_X: return "x";
        case GateTag::PAULI_Y: return "y";
        case GateTag::PAULI_Z: return "z";
        case GateTag::PHASE: return "phase";
        case GateTag::RY: return "ry";
        case GateTag::U2: return "u2";
        case GateTag::CNOT: return "cnot";
        case GateTag::CNOT_BAR: return "cnot_bar";
        case GateTag::CNOT_R: return "cnot_r";
        case GateTag::CNOT_R_BAR: return "cnot_r_bar";
        case GateTag::SWAP: return "swap";
        case GateTag::CPHASE: return "cphase";
        case GateTag::CU: return "cu";
        case GateTag::TOFFOLI: return "toffoli";
        case GateTag::C2PHASE: return "c2phase";
        case GateTag::C2U: return "c2u";
    }
    return "?";
}

}  // namespace qdos
