#include <random>

#include "doctest.h"
#include "qdos/diagram.hpp"
#include "qdos/random.hpp"
#include "qdos/render.hpp"
#include "qdos/synth.hpp"

using namespace qdos;

namespace {

Circuit random_circuit(int n, int n_ops, std::mt19937& rng) {
    Circuit c(n);
    std::uniform_int_distribution<int> qubit(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int i = 0; i < n_ops; ++i) {
        switch (kind(rng)) {
            case 0: c.add(Gate::h(), {qubit(rng)}); break;
            case 1: c.add(Gate::phase(ang(rng)), {qubit(rng)}); break;
            case 2: c.add(Gate::u2(random_unitary(2, rng)), {qubit(rng)}); break;
            case 3: {
                int a = qubit(rng), b = qubit(rng);
                if (a == b) b = (b + 1) % n;
                c.add(Gate::cnot(), {a, b});
                break;
            }
            default: {
                int a = qubit(rng), b = qubit(rng);
                if (a == b) b = (b + 1) % n;
                c.add(Gate::ry(ang(rng)), {a}, {b}, {i % 2});
                break;
            }
        }
    }
    return c;
}

Circuit dtilde_circuit(double t0, double t1) {
    Circuit c(2);
    c.add(Gate::ry(2 * t0), {0});
    c.add(Gate::cnot(), {0, 1});
    c.add(Gate::ry(2 * t1), {0});
    c.add(Gate::cnot(), {0, 1});
    return c;
}

}  // namespace

TEST_CASE("complete diagram structure") {
    Circuit cn(2);
    cn.add(Gate::cnot(), {0, 1});
    const Diagram d = build_complete_diagram(cn);
    CHECK(d.n_lines() == 4);
    REQUIRE(d.blocks.size() == 1);
    const GateBlock& b = d.blocks[0];
    CHECK(b.segments.size() == 4);
    bool seen00 = false, seen23 = false, seen32 = false;
    for (const Segment& s : b.segments) {
        if (s.from == 0 && s.to == 0) seen00 = true;
        if (s.from == 2 && s.to == 3) seen23 = true;
        if (s.from == 3 && s.to == 2) seen32 = true;
        CHECK(std::abs(s.label - Complex{1, 0}) <= 1e-15);
    }
    CHECK(seen00);
    CHECK(seen23);
    CHECK(seen32);

    Circuit h(1);
    h.add(Gate::h(), {0});
    const Diagram dh = build_complete_diagram(h);
    REQUIRE(dh.blocks.size() == 1);
    CHECK(dh.blocks[0].segments.size() == 4);
    int negatives = 0;
    for (const Segment& s : dh.blocks[0].segments)
        if (s.label.real() < 0) {
            ++negatives;
            CHECK(s.from == 1);
            CHECK(s.to == 1);
        }
    CHECK(negatives == 1);

    CHECK(build_complete_diagram(Circuit(2)).blocks.empty());
    CHECK_THROWS_AS(build_complete_diagram(Circuit(7)), SizeError);
}

TEST_CASE("segment count equals the nonzero count of each block") {
    std::mt19937 rng(61);
    for (int iter = 0; iter < 20; ++iter) {
        const Circuit c = random_circuit(3, 6, rng);
        const Diagram d = build_complete_diagram(c);
        REQUIRE(d.blocks.size() == c.ops.size());
        for (std::size_t k = 0; k < d.blocks.size(); ++k) {
            const ComplexMatrix u = op_to_unitary(c.ops[k], c.n_qubits);
            std::size_t nnz = 0;
            for (const Complex& e : u.entries())
                if (std::abs(e) > 1e-12) ++nnz;
            CHECK(d.blocks[k].segments.size() == nnz);
        }
    }
}

TEST_CASE("diagram faithfulness") {
    std::mt19937 rng(62);
    for (int iter = 0; iter < 50; ++iter) {
        const Circuit c = random_circuit(2 + iter % 3, 1 + iter % 20, rng);
        const Diagram d = build_complete_diagram(c);
        const ComplexMatrix u = circuit_to_unitary(c);
        CHECK(max_abs_diff(diagram_to_unitary(d), u) <= 1e-10);
        CHECK(equal_up_to_global_phase(diagram_to_unitary(simplify_diagram(d)), u, 1e-10).equal);
    }
}

TEST_CASE("information flow marking") {
    // RY then PHASE on one qubit: both lines live after the rotation block.
    Circuit c(1);
    c.add(Gate::ry(0.8), {0});
    c.add(Gate::phase(0.4), {0});
    const Diagram d = mark_information_flow(build_complete_diagram(c), 0);
    CHECK(d.has_flow);
    CHECK(d.live[0][0]);
    CHECK_FALSE(d.live[0][1]);
    CHECK(d.live[1][0]);
    CHECK(d.live[1][1]);
    CHECK(d.live[2][0]);
    CHECK(d.live[2][1]);

    // Identity circuit: only the input line is live.
    Circuit idc(1);
    idc.add(Gate::phase(0.0), {0});
    const Diagram di = mark_information_flow(build_complete_diagram(idc), 0);
    CHECK(di.live[1][0]);
    CHECK_FALSE(di.live[1][1]);

    // CNOT from |00>: only line 0 carries information.
    Circuit cn(2);
    cn.add(Gate::cnot(), {0, 1});
    const Diagram dc = mark_information_flow(build_complete_diagram(cn), 0);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 4; ++l) CHECK(dc.live[k][l] == (l == 0));

    CHECK_THROWS_AS(mark_information_flow(dc, 4), std::invalid_argument);
}

TEST_CASE("flow-mark soundness: live lines cover exact simulation support") {
    std::mt19937 rng(63);
    for (int iter = 0; iter < 20; ++iter) {
        const Circuit c = random_circuit(3, 8, rng);
        const std::size_t input = iter % 8;
        const Diagram d = mark_information_flow(build_complete_diagram(c), input);
        const StateVector out = simulate(c, StateVector::basis(3, input));
        for (std::size_t l = 0; l < 8; ++l)
            if (std::abs(out[l]) > 1e-9) CHECK(d.live.back()[l]);
    }
}

TEST_CASE("simplification collapses the D-tilde synthesis") {
    const double t0 = 0.4, t1 = 0.9;
    const Circuit c = dtilde_circuit(t0, t1);
    CHECK(max_abs_diff(circuit_to_unitary(c), build_dtilde({t0, t1})) <= 1e-12);

    const Diagram s = simplify_diagram(build_complete_diagram(c));
    REQUIRE(s.blocks.size() == 2);
    CHECK(max_abs_diff(diagram_to_unitary(s), build_dtilde({t0, t1})) <= 1e-12);

    for (const GateBlock& b : s.blocks) {
        REQUIRE(b.support.size() == 2);
        const bool upper = b.support[0] == 0;
        const double theta = upper ? t0 + t1 : t0 - t1;
        CHECK((upper ? b.support[1] == 1 : (b.support[0] == 2 && b.support[1] == 3)));
        const ComplexMatrix m = detail::block_matrix(b);
        CHECK(std::abs(m(0, 0) - Complex{std::cos(theta)}) <= 1e-12);
        CHECK(std::abs(m(1, 0) - Complex{std::sin(theta)}) <= 1e-12);
    }
}

TEST_CASE("simplification drops inverse pairs and isolates phases") {
    Circuit xx(1);
    xx.add(Gate::x(), {0});
    xx.add(Gate::x(), {0});
    CHECK(simplify_diagram(build_complete_diagram(xx)).blocks.empty());

    // The controlled-phase synthesis collapses to one block: a single
    // e^{i delta} label on line 11.
    const double delta = 0.7;
    const Diagram s = simplify_diagram(build_complete_diagram(synth_cphase(delta).circuit));
    REQUIRE(s.blocks.size() == 1);
    CHECK(s.blocks[0].support == std::vector<std::size_t>{3});
    REQUIRE(s.blocks[0].segments.size() == 1);
    CHECK(std::abs(s.blocks[0].segments[0].label - std::polar(1.0, delta)) <= 1e-12);
}

TEST_CASE("diagram_to_unitary validates segments") {
    Diagram d;
    d.n_qubits = 1;
    GateBlock b;
    b.support = {0, 1};
    b.segments.push_back({5, 0, Complex{1, 0}});
    d.blocks.push_back(b);
    CHECK_THROWS_AS(diagram_to_unitary(d), std::invalid_argument);
}

TEST_CASE("renderers are deterministic and structured") {
    Circuit cn(2);
    cn.add(Gate::cnot(), {0, 1});
    const Diagram d = build_complete_diagram(cn);

    RenderStyle svg;
    const std::string a = render(d, svg), b = render(d, svg);
    CHECK(a == b);

    // Exactly 4 state polylines, one crossing (two diagonal segments).
    std::size_t states = 0, diagonals = 0, pos = 0;
    while ((pos = a.find("class=\"state\"", pos)) != std::string::npos) {
        ++states;
        pos += 1;
    }
    pos = 0;
    while ((pos = a.find("<line class=\"seg\"", pos)) != std::string::npos) {
        const std::size_t y1 = a.find("y1=", pos), y2 = a.find("y2=", pos);
        const std::size_t e1 = a.find('"', y1 + 4), e2 = a.find('"', y2 + 4);
        if (a.substr(y1 + 4, e1 - y1 - 4) != a.substr(y2 + 4, e2 - y2 - 4)) ++diagonals;
        pos += 1;
    }
    CHECK(states == 4);
    CHECK(diagonals == 2);

    RenderStyle ascii;
    ascii.format = RenderFormat::ASCII;
    const std::string t = render(d, ascii);
    CHECK(t == render(d, ascii));
    CHECK(t.find("|10>") != std::string::npos);
    CHECK(t.find("\\3") != std::string::npos);
    CHECK(t.find("/2") != std::string::npos);

    // One-qubit NOT: two rows, crossing glyphs.
    Circuit nt(1);
    nt.add(Gate::not_(), {0});
    const std::string nta = render(build_complete_diagram(nt), ascii);
    CHECK(nta.find("\\1") != std::string::npos);
    CHECK(nta.find("/0") != std::string::npos);

    // H shows the minus label exactly once.
    Circuit h(1);
    h.add(Gate::h(), {0});
    const std::string ha = render(build_complete_diagram(h), ascii);
    std::size_t minus = 0;
    pos = 0;
    while ((pos = ha.find("(-", pos)) != std::string::npos) {
        ++minus;
        pos += 1;
    }
    std::size_t self_minus = ha.find("[-") != std::string::npos ? 1 : 0;
    CHECK(minus + self_minus >= 1);
}

TEST_CASE("label formatting conventions") {
    CHECK(detail::format_label(Complex{1, 0}) == "");
    CHECK(detail::format_label(Complex{-1, 0}) == "-");
    CHECK(detail::format_label(Complex{0, 1}) == "i");
    CHECK(detail::format_label(Complex{0, -1}) == "-i");
    CHECK(detail::format_label(std::polar(1.0, 0.7)) == "e^i0.7");
    CHECK(detail::format_label(Complex{0.5, 0}) == "0.5");
    CHECK(detail::format_label(Complex{0, 0.25}) == "0.25i");
    CHECK(detail::format_label(Complex{0.5, -0.25}) == "0.5-0.25i");
}

TEST_CASE("normalization coefficients are factored out by default") {
    // H's 1/sqrt(2) modulus is common to all four segments: labels reduce
    // to the sign pattern unless show_normalization is set.
    Circuit h(1);
    h.add(Gate::h(), {0});
    const Diagram d = build_complete_diagram(h);

    const std::vector<std::string> bare = detail::block_labels(d.blocks[0], false);
    for (const std::string& l : bare) CHECK((l.empty() || l == "-"));

    const std::vector<std::string> full = detail::block_labels(d.blocks[0], true);
    bool saw_value = false;
    for (const std::string& l : full)
        if (l.find("0.7071") != std::string::npos) saw_value = true;
    CHECK(saw_value);
}
