// Circuit data model, immersion of k-qubit gates into n-qubit registers,
// evaluation to a full unitary and state-vector simulation.

#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "qdos/complex_matrix.hpp"
#include "qdos/gates.hpp"

namespace qdos {

// An op applies `gate` to the register qubits in `targets` (gate-local
// qubit i, ascending significance, lands on targets[i]), optionally wrapped
// in controls on further register qubits with the given required values.
struct CircuitOp {
    Gate gate;
    std::vector<int> targets;
    std::vector<int> control_qubits;
    std::vector<int> control_values;

    // Register qubits this op touches, gate qubits first, controls above.
    std::vector<int> qubit_list() const {
        std::vector<int> qs = targets;
        qs.insert(qs.end(), control_qubits.begin(), control_qubits.end());
        return qs;
    }

    ComplexMatrix matrix() const {
        ComplexMatrix m = gate_matrix(gate);
        if (!control_qubits.empty())
            m = controlled(m, static_cast<int>(control_qubits.size()), control_values);
        return m;
    }
};

struct Circuit {
    int n_qubits = 1;
    std::vector<CircuitOp> ops;  // leftmost = first applied

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {
        if (n < 1 || n > 10) throw std::invalid_argument("Circuit: n_qubits must be in [1,10]");
    }

    Circuit& add(CircuitOp op) {
        validate_op(op);
        if (ops.size() >= 10000) throw std::invalid_argument("Circuit: depth cap exceeded");
        ops.push_back(std::move(op));
        return *this;
    }
    Circuit& add(Gate g, std::vector<int> targets) {
        return add(CircuitOp{std::move(g), std::move(targets), {}, {}});
    }
    Circuit& add(Gate g, std::vector<int> targets, std::vector<int> cqs, std::vector<int> cvs) {
        return add(CircuitOp{std::move(g), std::move(targets), std::move(cqs), std::move(cvs)});
    }

    void validate_op(const CircuitOp& op) const {
        if (static_cast<int>(op.targets.size()) != gate_qubits(op.gate))
            throw std::invalid_argument("CircuitOp: target count does not match gate arity");
        if (op.control_qubits.size() != op.control_values.size())
            throw std::invalid_argument("CircuitOp: control values length mismatch");
        if (op.control_qubits.size() > 2)
            throw std::invalid_argument("CircuitOp: at most two controls supported");
        std::set<int> seen;
        for (int q : op.qubit_list()) {
            if (q < 0 || q >= n_qubits) throw std::invalid_argument("CircuitOp: qubit out of range");
            if (!seen.insert(q).second)
                throw std::invalid_argument("CircuitOp: duplicate qubit index");
        }
        for (int v : op.control_values)
            if (v != 0 && v != 1) throw std::invalid_argument("CircuitOp: control value must be 0/1");
    }
};

namespace detail {

// Permutation matrix swapping qubits a and b of an n-qubit register.
inline ComplexMatrix qubit_swap_matrix(int a, int b, int n) {
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix p(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t ba = (x >> a) & 1, bb = (x >> b) & 1;
        std::size_t y = x & ~((std::size_t{1} << a) | (std::size_t{1} << b));
        y |= ba << b;
        y |= bb << a;
        p(y, x) = 1.0;
    }
    return p;
}

}  // namespace detail

// Embeds a k-qubit gate into an n-qubit register: acts as `gate` on the
// target qubits (gate-local qubit i on targets[i]) and as identity
// elsewhere. Realized as kron(I, gate) conjugated by a qubit permutation
// built as a product of transpositions, LSB first.
inline ComplexMatrix immerse(const ComplexMatrix& gate, const std::vector<int>& targets, int n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < gate.dim()) ++k;
    if ((std::size_t{1} << k) != gate.dim())
        throw std::invalid_argument("immerse: gate dim must be a power of two");
    if (targets.size() != k) throw std::invalid_argument("immerse: wrong number of targets");
    if (static_cast<int>(k) > n) throw std::invalid_argument("immerse: register too small");
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= n) throw std::invalid_argument("immerse: index out of range");
        if (!seen.insert(t).second) throw std::invalid_argument("immerse: duplicate targets");
    }

    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix full = ComplexMatrix::identity(1);
    for (int i = 0; i < n - static_cast<int>(k); ++i) full = kron(ComplexMatrix::identity(2), full);
    full = kron(full, gate);

    // perm[i] = register qubit holding local qubit i; locals k..n-1 get the
    // remaining register qubits in ascending order.
    std::vector<int> perm(targets.begin(), targets.end());
    for (int q = 0; q < n; ++q)
        if (!seen.count(q)) perm.push_back(q);

    // cur[i] = register qubit currently holding local qubit i; walk it to
    // perm with one transposition per position, LSB first.
    ComplexMatrix u = std::move(full);
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    for (int i = 0; i < n; ++i) {
        if (cur[i] == perm[i]) continue;
        int j = i + 1;
        while (cur[j] != perm[i]) ++j;
        ComplexMatrix p = detail::qubit_swap_matrix(cur[i], cur[j], n);
        u = p * u * p;
        std::swap(cur[i], cur[j]);
    }
    return u;
}

inline ComplexMatrix op_to_unitary(const CircuitOp& op, int n) {
    return immerse(op.matrix(), op.qubit_list(), n);
}

inline ComplexMatrix circuit_to_unitary(const Circuit& c) {
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    ComplexMatrix u = ComplexMatrix::identity(dim);
    for (const CircuitOp& op : c.ops) u = op_to_unitary(op, c.n_qubits) * u;
    return u;
}

// Applies a k-qubit matrix to the amplitudes along the given qubits,
// without materializing the full 2^n unitary.
inline void apply_gate_inplace(StateVector& s, const ComplexMatrix& m,
                               const std::vector<int>& qubits) {
    const std::size_t k = qubits.size();
    const std::size_t sub = std::size_t{1} << k;
    if (m.dim() != sub) throw std::invalid_argument("apply_gate_inplace: dim mismatch");
    const std::size_t dim = s.size();

    std::size_t qmask = 0;
    for (int q : qubits) qmask |= std::size_t{1} << q;

    std::vector<Complex> scratch(sub);
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & qmask) continue;  // enumerate indices with zeros on the gate qubits
        std::size_t idx[64];
        for (std::size_t t = 0; t < sub; ++t) {
            std::size_t x = base;
            for (std::size_t i = 0; i < k; ++i)
                if ((t >> i) & 1) x |= std::size_t{1} << qubits[i];
            idx[t] = x;
        }
        for (std::size_t r = 0; r < sub; ++r) {
            Complex acc{};
            for (std::size_t c = 0; c < sub; ++c) acc += m(r, c) * s[idx[c]];
            scratch[r] = acc;
        }
        for (std::size_t r = 0; r < sub; ++r) s[idx[r]] = scratch[r];
    }
}

inline StateVector simulate(const Circuit& c, const StateVector& input) {
    if (input.n_qubits() != c.n_qubits)
        throw std::invalid_argument("simulate: state/circuit qubit count mismatch");
    StateVector s = input;
    for (const CircuitOp& op : c.ops) apply_gate_inplace(s, op.matrix(), op.qubit_list());
    return s;
}

inline StateVector simulate(const Circuit& c) { return simulate(c, StateVector(c.n_qubits)); }

}  // namespace qdos
