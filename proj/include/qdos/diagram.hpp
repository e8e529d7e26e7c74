// Diagrams of states: one horizontal line per basis state, one block per
// gate, block segments labeled by the matrix entries. Complete diagrams map
// circuits one-to-one; simplified diagrams are rewritten to show the
// overall effect while encoding the same unitary.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdos/circuit.hpp"
#include "qdos/complex_matrix.hpp"

namespace qdos {

struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Segment {
    std::size_t from = 0, to = 0;
    Complex label{1.0, 0.0};
    bool thick = true;
};

// One gate block: acts on the state lines in `support`, identity elsewhere.
// A segment (from, to) exists iff the block matrix entry [to][from] is
// nonzero; complete-diagram blocks have full support.
struct GateBlock {
    std::size_t column = 0;
    std::vector<std::size_t> support;  // ascending basis-state indices
    std::vector<Segment> segments;
    std::string name;

    bool acts_on(std::size_t state) const {
        return std::binary_search(support.begin(), support.end(), state);
    }
};

struct Diagram {
    int n_qubits = 1;
    std::vector<GateBlock> blocks;
    bool has_flow = false;
    std::size_t input_basis = 0;
    std::vector<std::vector<bool>> live;  // per block boundary, when has_flow

    std::size_t n_lines() const { return std::size_t{1} << n_qubits; }
};

namespace detail {

constexpr double kSegmentTol = 1e-12;

// Block over the given support lines from a |support| x |support| matrix.
inline GateBlock block_from_matrix(const ComplexMatrix& m, std::vector<std::size_t> support,
                                   std::size_t column, std::string name) {
    GateBlock b;
    b.column = column;
    b.support = std::move(support);
    b.name = std::move(name);
    for (std::size_t c = 0; c < m.dim(); ++c)
        for (std::size_t r = 0; r < m.dim(); ++r)
            if (std::abs(m(r, c)) > kSegmentTol)
                b.segments.push_back({b.support[c], b.support[r], m(r, c)});
    return b;
}

inline ComplexMatrix block_matrix(const GateBlock& b) {
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < b.support.size(); ++i) pos[b.support[i]] = i;
    ComplexMatrix m(b.support.size());
    for (const Segment& s : b.segments) m(pos.at(s.to), pos.at(s.from)) = s.label;
    return m;
}

// Lines on which the block differs from the identity.
inline std::set<std::size_t> nontrivial_lines(const GateBlock& b) {
    std::set<std::size_t> out;
    std::map<std::size_t, Complex> self;
    for (const Segment& s : b.segments) {
        if (s.from != s.to) {
            out.insert(s.from);
            out.insert(s.to);
        } else {
            self[s.from] = s.label;
        }
    }
    for (std::size_t line : b.support) {
        auto it = self.find(line);
        if (it == self.end() || std::abs(it->second - Complex{1.0, 0.0}) > kSegmentTol)
            out.insert(line);
    }
    return out;
}

}  // namespace detail

inline ComplexMatrix diagram_to_unitary(const Diagram& d) {
    const std::size_t dim = d.n_lines();
    ComplexMatrix u = ComplexMatrix::identity(dim);
    for (const GateBlock& b : d.blocks) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            if (!b.acts_on(i)) m(i, i) = 1.0;
        for (const Segment& s : b.segments) {
            if (s.to >= dim || s.from >= dim)
                throw std::invalid_argument("diagram_to_unitary: segment out of range");
            m(s.to, s.from) = s.label;
        }
        u = m * u;
    }
    return u;
}

inline Diagram build_complete_diagram(const Circuit& c) {
    if (c.n_qubits > 6)
        throw SizeError("diagram rendering supports at most 6 qubits (64 state lines)");
    Diagram d;
    d.n_qubits = c.n_qubits;
    std::vector<std::size_t> full(d.n_lines());
    for (std::size_t i = 0; i < full.size(); ++i) full[i] = i;
    std::size_t col = 0;
    for (const CircuitOp& op : c.ops) {
        const ComplexMatrix m = op_to_unitary(op, c.n_qubits);
        d.blocks.push_back(detail::block_from_matrix(m, full, col++, gate_name(op.gate.tag)));
    }
    return d;
}

// Nonzero-pattern reachability from one input basis state: reachable
// segments and lines are thick, the rest thin. Exact cancellations are
// ignored by construction.
inline Diagram mark_information_flow(const Diagram& d, std::size_t input_basis_index) {
    if (input_basis_index >= d.n_lines())
        throw std::invalid_argument("mark_information_flow: index out of range");
    Diagram out = d;
    out.has_flow = true;
    out.input_basis = input_basis_index;
    out.live.assign(out.blocks.size() + 1, std::vector<bool>(d.n_lines(), false));
    out.live[0][input_basis_index] = true;
    for (std::size_t k = 0; k < out.blocks.size(); ++k) {
        GateBlock& b = out.blocks[k];
        for (std::size_t i = 0; i < d.n_lines(); ++i)
            if (out.live[k][i] && !b.acts_on(i)) out.live[k + 1][i] = true;
        for (Segment& s : b.segments) {
            s.thick = out.live[k][s.from];
            if (s.thick) out.live[k + 1][s.to] = true;
        }
    }
    return out;
}

namespace detail {

// One simplification pass: prune thin segments (flow marks only), drop
// identity blocks, split blocks into connected components, and merge each
// block into the nearest earlier block with equal-or-containing support
// when no block in between touches its lines. Returns true on change.
inline bool simplify_pass(Diagram& d) {
    bool changed = false;

    if (d.has_flow) {
        for (GateBlock& b : d.blocks) {
            const std::size_t before = b.segments.size();
            std::erase_if(b.segments, [](const Segment& s) { return !s.thick; });
            if (b.segments.size() != before) changed = true;
        }
    }

    // Split into connected components of the segment graph, restricted to
    // nontrivial lines; identity components vanish.
    std::vector<GateBlock> split;
    for (const GateBlock& b : d.blocks) {
        const std::set<std::size_t> lines = nontrivial_lines(b);
        if (lines.size() != b.support.size()) changed = true;
        std::map<std::size_t, std::size_t> comp;  // line -> component root
        for (std::size_t l : lines) comp[l] = l;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (const Segment& s : b.segments)
            if (lines.count(s.from) && lines.count(s.to)) comp[find(s.from)] = find(s.to);
        std::map<std::size_t, GateBlock> parts;
        for (std::size_t l : lines) {
            GateBlock& p = parts[find(l)];
            p.column = b.column;
            p.name = b.name;
            p.support.push_back(l);
        }
        for (const Segment& s : b.segments)
            if (lines.count(s.from)) parts[find(s.from)].segments.push_back(s);
        if (parts.size() > 1) changed = true;
        for (auto& [root, p] : parts) {
            std::sort(p.support.begin(), p.support.end());
            split.push_back(std::move(p));
        }
    }

    // Greedy timeline merge.
    std::vector<GateBlock> merged;
    for (GateBlock& nb : split) {
        int hit = -1;
        for (int j = static_cast<int>(merged.size()) - 1; j >= 0; --j) {
            bool overlap = false;
            for (std::size_t l : nb.support)
                if (merged[j].acts_on(l)) overlap = true;
            if (overlap) { hit = j; break; }
        }
        bool subset = hit >= 0;
        if (hit >= 0)
            for (std::size_t l : nb.support)
                if (!merged[hit].acts_on(l)) subset = false;
        if (subset) {
            GateBlock& prev = merged[hit];
            // Expand nb onto prev's support and take the product.
            GateBlock wide;
            wide.support = prev.support;
            wide.segments = nb.segments;
            for (std::size_t l : prev.support)
                if (!nb.acts_on(l)) wide.segments.push_back({l, l, Complex{1.0, 0.0}});
            const ComplexMatrix prod = block_matrix(wide) * block_matrix(prev);
            GateBlock nu = block_from_matrix(prod, prev.support, prev.column,
                                             prev.name == nb.name ? prev.name : "merged");
            merged[hit] = std::move(nu);
            changed = true;
        } else {
            merged.push_back(std::move(nb));
        }
    }

    d.blocks = std::move(merged);
    std::size_t col = 0;
    for (GateBlock& b : d.blocks) b.column = col++;
    return changed;
}

}  // namespace detail

// Rewrites to a fixpoint; without flow marks the encoded unitary is
// preserved up to global phase. With flow marks, thin segments are pruned,
// which preserves the action on the live subspace only.
inline Diagram simplify_diagram(const Diagram& d) {
    Diagram out = d;
    for (int pass = 0; pass < 100; ++pass)
        if (!detail::simplify_pass(out)) break;
    if (out.has_flow) {
        out.live.clear();
        out = mark_information_flow(out, out.input_basis);
    }
    return out;
}

}  // namespace qdos
