// Constructive gate-synthesis procedures: single-qubit Euler synthesis,
// controlled phases and unitaries, the D-tilde / D0 two-qubit template,
// diagonal phase schedules and two-/three-qubit state preparation.
// Every synthesis returns the circuit together with a certificate whose
// residual is recomputed from the circuit, never trusted from the solver.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qdos/circuit.hpp"
#include "qdos/complex_matrix.hpp"
#include "qdos/eigen.hpp"
#include "qdos/gates.hpp"

namespace qdos {

struct EulerAngles {
    double alpha = 0.0, delta = 0.0, gamma = 0.0;  // radians, each in (-pi, pi]
};

struct StatePrepParams1Q {
    double theta = 0.0;  // [0, pi]
    double delta = 0.0;  // (-pi, pi]
};

// Parameters of the block-rotation matrices D-tilde and D0, with the
// derived cosines/sines cached.
struct DTildeParams {
    double theta0 = 0.0, theta1 = 0.0;
    double c0, s0, c1, s1;
    double c_a, s_a;  // cos/sin(theta0 + theta1)
    double c_b, s_b;  // cos/sin(theta0 - theta1)

    DTildeParams(double t0, double t1)
        : theta0(t0), theta1(t1),
          c0(std::cos(t0)), s0(std::sin(t0)),
          c1(std::cos(t1)), s1(std::sin(t1)),
          c_a(std::cos(t0 + t1)), s_a(std::sin(t0 + t1)),
          c_b(std::cos(t0 - t1)), s_b(std::sin(t0 - t1)) {}
};

struct DiagonalPhases {
    int n_qubits;                // 2 or 3
    std::vector<double> phis;    // phi_1 .. phi_{2^n - 1}; phi_0 == 0

    DiagonalPhases(int n, std::vector<double> p) : n_qubits(n), phis(std::move(p)) {
        if (n_qubits != 2 && n_qubits != 3)
            throw std::invalid_argument("DiagonalPhases: n_qubits must be 2 or 3");
        const std::size_t want = (std::size_t{1} << n_qubits) - 1;
        if (phis.size() != want)
            throw std::invalid_argument("DiagonalPhases: wrong phi count");
        for (double& p_ : phis) p_ = normalize_angle(p_);
    }

    ComplexMatrix matrix() const {
        const std::size_t dim = std::size_t{1} << n_qubits;
        ComplexMatrix m(dim);
        m(0, 0) = 1.0;
        for (std::size_t i = 1; i < dim; ++i) m(i, i) = std::polar(1.0, phis[i - 1]);
        return m;
    }
};

// Phase-shift angles delta_1..delta_{2^n-1} bound to the synthesis circuit's
// gate slots (singles first, then pairwise controlled, then the full one).
struct PhaseSchedule {
    std::vector<double> deltas;
};

struct SynthesisResult {
    Circuit circuit;
    double residual = 0.0;      // max-norm error vs target, up to global phase
    double global_phase = 0.0;  // radians
};

namespace detail {

inline SynthesisResult certify(Circuit c, const ComplexMatrix& target) {
    const ComplexMatrix u = circuit_to_unitary(c);
    const PhaseMatch pm = equal_up_to_global_phase(u, target, 1e10);
    return {std::move(c), pm.residual, pm.phase};
}

inline SynthesisResult certify_state(Circuit c, const StateVector& target) {
    const StateVector out = simulate(c);
    const PhaseMatch pm = equal_up_to_global_phase(out, target, 1e10);
    return {std::move(c), pm.residual, pm.phase};
}

inline ComplexMatrix rz(double lambda) {
    return {2, {std::polar(1.0, -lambda / 2.0), 0, 0, std::polar(1.0, lambda / 2.0)}};
}

inline ComplexMatrix ry_matrix(double theta) { return gate_matrix(Gate::ry(theta)); }

inline Complex det2(const ComplexMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace detail

// Closed form of gamma H delta H alpha, prefactor e^{i(gamma+delta+alpha)/2}
// times a special unitary matrix.
inline ComplexMatrix euler_matrix(const EulerAngles& p) {
    const double c = std::cos(p.delta / 2.0), s = std::sin(p.delta / 2.0);
    const Complex pref = std::polar(1.0, (p.gamma + p.delta + p.alpha) / 2.0);
    const Complex mi{0.0, -1.0};
    ComplexMatrix m(2);
    m(0, 0) = pref * std::polar(1.0, -(p.gamma + p.alpha) / 2.0) * c;
    m(0, 1) = pref * mi * std::polar(1.0, -(p.gamma - p.alpha) / 2.0) * s;
    m(1, 0) = pref * mi * std::polar(1.0, (p.gamma - p.alpha) / 2.0) * s;
    m(1, 1) = pref * std::polar(1.0, (p.gamma + p.alpha) / 2.0) * c;
    return m;
}

// [PHASE(alpha), H, PHASE(delta), H, PHASE(gamma)] on one qubit.
inline SynthesisResult su2_from_euler(const EulerAngles& p) {
    Circuit c(1);
    c.add(Gate::phase(p.alpha), {0});
    c.add(Gate::h(), {0});
    c.add(Gate::phase(p.delta), {0});
    c.add(Gate::h(), {0});
    c.add(Gate::phase(p.gamma), {0});
    return detail::certify(std::move(c), euler_matrix(p));
}

// Inverts the Euler closed form for an arbitrary 2x2 unitary; the result
// reconstructs u up to global phase. Degenerate |u00| in {0,1}: the
// unconstrained angle is fixed to 0.
inline EulerAngles euler_from_su2(const ComplexMatrix& u) {
    if (u.dim() != 2 || !is_unitary(u, 1e-10))
        throw std::domain_error("euler_from_su2: input must be a 2x2 unitary");
    const double phi = std::arg(detail::det2(u)) / 2.0;
    const Complex a = u(0, 0) * std::polar(1.0, -phi);
    const Complex b = u(1, 0) * std::polar(1.0, -phi);

    EulerAngles p;
    p.delta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    double sum, dif;  // sum = gamma + alpha, dif = gamma - alpha
    if (std::abs(a) <= 1e-12) {
        p.alpha = 0.0;
        dif = 2.0 * std::arg(b) + kPi;
        p.gamma = normalize_angle(dif);
        return p;
    }
    sum = -2.0 * std::arg(a);
    if (std::abs(b) <= 1e-12) {
        p.alpha = 0.0;
        p.gamma = normalize_angle(sum);
        return p;
    }
    dif = 2.0 * std::arg(b) + kPi;
    // Normalizing gamma and alpha individually only costs a global -1.
    p.gamma = normalize_angle((sum + dif) / 2.0);
    p.alpha = normalize_angle((sum - dif) / 2.0);
    return p;
}

// [RY(theta), PHASE(delta)] on |0>: amplitudes (cos t/2, e^{i d} sin t/2).
inline SynthesisResult prep_1q(const StatePrepParams1Q& p) {
    Circuit c(1);
    c.add(Gate::ry(p.theta), {0});
    c.add(Gate::phase(p.delta), {0});
    StateVector target(1, {std::cos(p.theta / 2.0),
                           std::polar(1.0, p.delta) * std::sin(p.theta / 2.0)});
    return detail::certify_state(std::move(c), target);
}

// Controlled phase via two CNOTs and three phase-shift gates; the +-delta/2
// pattern interferes destructively on 01 and 10 and constructively on 11.
inline SynthesisResult synth_cphase(double delta) {
    Circuit c(2);
    c.add(Gate::phase(delta / 2.0), {0});
    c.add(Gate::phase(delta / 2.0), {1});
    c.add(Gate::cnot(), {0, 1});
    c.add(Gate::phase(-delta / 2.0), {0});
    c.add(Gate::cnot(), {0, 1});
    ComplexMatrix target = ComplexMatrix::identity(4);
    target(3, 3) = std::polar(1.0, delta);
    return detail::certify(std::move(c), target);
}

struct AbcGates {
    ComplexMatrix a, b, c;
};

// A B C = I and A NOT B NOT C = su, built from the ZYZ rotation angles of su.
inline AbcGates abc_decompose(const ComplexMatrix& su) {
    if (su.dim() != 2 || !is_unitary(su, 1e-10))
        throw std::domain_error("abc_decompose: input must be a 2x2 unitary");
    if (std::abs(detail::det2(su) - Complex{1.0, 0.0}) > 1e-9)
        throw std::domain_error("abc_decompose: determinant must be 1 (strip the phase first)");

    const double theta = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
    double sum = 0.0, dif = 0.0;  // sum = beta + lambda, dif = beta - lambda
    if (std::abs(su(0, 0)) > 1e-12) sum = -2.0 * std::arg(su(0, 0));
    if (std::abs(su(1, 0)) > 1e-12) dif = 2.0 * std::arg(su(1, 0));
    const double beta = (sum + dif) / 2.0, lambda = (sum - dif) / 2.0;

    AbcGates g;
    g.a = detail::rz(beta) * detail::ry_matrix(theta / 2.0);
    g.b = detail::ry_matrix(-theta / 2.0) * detail::rz(-(lambda + beta) / 2.0);
    g.c = detail::rz((lambda - beta) / 2.0);
    return g;
}

// Controlled special unitary: [C, CNOT, B, CNOT, A] with A B C = I.
inline SynthesisResult synth_csu2(const ComplexMatrix& su) {
    AbcGates g = abc_decompose(su);
    Circuit c(2);
    c.add(Gate::u2(g.c), {0});
    c.add(Gate::cnot(), {0, 1});
    c.add(Gate::u2(g.b), {0});
    c.add(Gate::cnot(), {0, 1});
    c.add(Gate::u2(g.a), {0});
    return detail::certify(std::move(c), controlled(su, 1, {1}));
}

// General controlled unitary: factor out the determinant phase, run the
// special-unitary synthesis, then V(delta) = delta x I on the MSB.
inline SynthesisResult synth_cu(const ComplexMatrix& u) {
    if (u.dim() != 2 || !is_unitary(u, 1e-10))
        throw std::domain_error("synth_cu: input must be a 2x2 unitary");
    const double phi = std::arg(detail::det2(u)) / 2.0;
    ComplexMatrix su(2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t cc = 0; cc < 2; ++cc) su(r, cc) = u(r, cc) * std::polar(1.0, -phi);
    SynthesisResult inner = synth_csu2(su);
    Circuit c = std::move(inner.circuit);
    c.add(Gate::phase(phi), {1});
    return detail::certify(std::move(c), controlled(u, 1, {1}));
}

inline ComplexMatrix build_dtilde(const DTildeParams& p) {
    ComplexMatrix m(4);
    m(0, 0) = p.c_a; m(0, 1) = -p.s_a;
    m(1, 0) = p.s_a; m(1, 1) = p.c_a;
    m(2, 2) = p.c_b; m(2, 3) = -p.s_b;
    m(3, 2) = p.s_b; m(3, 3) = p.c_b;
    return m;
}

inline ComplexMatrix build_d0(const DTildeParams& p) {
    const ComplexMatrix swap = gate_matrix(Gate::swap());
    return swap * build_dtilde(p) * swap;
}

namespace detail {

struct Svd2 {
    ComplexMatrix left;       // columns
    std::array<double, 2> sigma;  // descending, in [0, 1] for our callers
    ComplexMatrix right;      // columns; m = left * diag(sigma) * right^H
};

inline ComplexMatrix orth_complement_col(const ComplexMatrix& m, std::size_t col) {
    ComplexMatrix v(2);  // used as a 2-vector in column 0
    v(0, 0) = -std::conj(m(1, col));
    v(1, 0) = std::conj(m(0, col));
    return v;
}

inline Svd2 svd2(const ComplexMatrix& m) {
    if (m.dim() != 2) throw std::invalid_argument("svd2: 2x2 only");
    // Eigen-decompose m^H m (Hermitian PSD).
    const ComplexMatrix b = m.adjoint() * m;
    const double tr = b(0, 0).real() + b(1, 1).real();
    const double dt = (b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0)).real();
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * dt, 0.0));
    const double lam0 = (tr + disc) / 2.0, lam1 = std::max((tr - disc) / 2.0, 0.0);

    ComplexMatrix right(2);
    if (std::abs(b(0, 1)) > 1e-15 * std::max(1.0, tr)) {
        Complex v0 = b(0, 1), v1 = Complex{lam0} - b(0, 0);
        Complex w0 = Complex{lam0} - b(1, 1), w1 = b(1, 0);
        if (std::norm(w0) + std::norm(w1) > std::norm(v0) + std::norm(v1)) { v0 = w0; v1 = w1; }
        const double nn = std::sqrt(std::norm(v0) + std::norm(v1));
        right(0, 0) = v0 / nn;
        right(1, 0) = v1 / nn;
    } else {
        const bool flip = b(1, 1).real() > b(0, 0).real();
        right(0, 0) = flip ? 0.0 : 1.0;
        right(1, 0) = flip ? 1.0 : 0.0;
    }
    const ComplexMatrix comp = orth_complement_col(right, 0);
    right(0, 1) = comp(0, 0);
    right(1, 1) = comp(1, 0);

    Svd2 out;
    out.sigma = {std::sqrt(std::max(lam0, 0.0)), std::sqrt(lam1)};
    out.right = right;
    out.left = ComplexMatrix(2);
    for (std::size_t j = 0; j < 2; ++j) {
        Complex l0 = m(0, 0) * right(0, j) + m(0, 1) * right(1, j);
        Complex l1 = m(1, 0) * right(0, j) + m(1, 1) * right(1, j);
        const double nn = std::sqrt(std::norm(l0) + std::norm(l1));
        if (nn > 1e-12) {
            out.left(0, j) = l0 / nn;
            out.left(1, j) = l1 / nn;
        } else if (j == 1) {
            const ComplexMatrix c = orth_complement_col(out.left, 0);
            out.left(0, 1) = c(0, 0);
            out.left(1, 1) = c(1, 0);
        } else {
            out.left(0, 0) = 1.0;  // m ~ 0, any orthonormal pair will do
            out.left(1, 0) = 0.0;
        }
    }
    return out;
}

}  // namespace detail

// Cosine-sine style 2+2 block decomposition of a 4x4 unitary:
// u = diag(L0,L1) * D0(theta_a, theta_b) * diag(R0,R1), emitted as four
// controlled single-qubit blocks around the D0 rotation pair.
inline SynthesisResult synth_2q_unitary(const ComplexMatrix& u) {
    if (u.dim() != 4 || !is_unitary(u, 1e-10))
        throw std::domain_error("synth_2q_unitary: input must be a 4x4 unitary");

    // MSB-block split: block row/col 0 covers indices {0,1}, block 1 {2,3}.
    auto block = [&](std::size_t br, std::size_t bc) {
        ComplexMatrix b(2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) b(r, c) = u(2 * br + r, 2 * bc + c);
        return b;
    };
    const ComplexMatrix u00 = block(0, 0), u01 = block(0, 1);
    const ComplexMatrix u10 = block(1, 0), u11 = block(1, 1);

    detail::Svd2 sv = detail::svd2(u00);
    const ComplexMatrix l0 = sv.left, r0 = sv.right;

    // Columns of u10*r0 are orthogonal with norms sin(theta_j).
    const ComplexMatrix x = u10 * r0;
    std::array<double, 2> cosv{std::min(sv.sigma[0], 1.0), std::min(sv.sigma[1], 1.0)};
    std::array<double, 2> sinv{};
    std::array<double, 2> theta{};
    for (std::size_t j = 0; j < 2; ++j) {
        sinv[j] = std::sqrt(std::norm(x(0, j)) + std::norm(x(1, j)));
        theta[j] = std::atan2(sinv[j], cosv[j]);  // in [0, pi/2]
    }

    ComplexMatrix l1(2);
    const std::size_t big = sinv[0] >= sinv[1] ? 0 : 1;
    const std::size_t small = 1 - big;
    if (sinv[big] > 1e-12) {
        l1(0, big) = x(0, big) / sinv[big];
        l1(1, big) = x(1, big) / sinv[big];
        ComplexMatrix comp(2);
        comp(0, 0) = -std::conj(l1(1, big));
        comp(1, 0) = std::conj(l1(0, big));
        // Phase-align the completed column with its (possibly tiny) data.
        Complex ip = std::conj(comp(0, 0)) * x(0, small) + std::conj(comp(1, 0)) * x(1, small);
        const Complex ph = std::abs(ip) > 1e-13 ? ip / std::abs(ip) : Complex{1.0};
        l1(0, small) = comp(0, 0) * ph;
        l1(1, small) = comp(1, 0) * ph;
    } else {
        l1 = ComplexMatrix::identity(2);  // u10 ~ 0; gauge is irrelevant
    }

    // Rows of R1^H from whichever off/on-diagonal block is better conditioned.
    const ComplexMatrix l1h_u11 = l1.adjoint() * u11;
    const ComplexMatrix l0h_u01 = l0.adjoint() * u01;
    ComplexMatrix r1h(2);
    for (std::size_t j = 0; j < 2; ++j) {
        Complex e0, e1;
        if (cosv[j] >= sinv[j]) {
            e0 = l1h_u11(j, 0) / cosv[j];
            e1 = l1h_u11(j, 1) / cosv[j];
        } else {
            e0 = -l0h_u01(j, 0) / sinv[j];
            e1 = -l0h_u01(j, 1) / sinv[j];
        }
        const double nn = std::sqrt(std::norm(e0) + std::norm(e1));
        r1h(j, 0) = e0 / nn;
        r1h(j, 1) = e1 / nn;
    }
    Circuit c(2);
    c.add(Gate::u2(r0.adjoint()), {0}, {1}, {0});
    c.add(Gate::u2(r1h), {0}, {1}, {1});
    c.add(Gate::ry(2.0 * theta[0]), {1}, {0}, {0});
    c.add(Gate::ry(2.0 * theta[1]), {1}, {0}, {1});
    c.add(Gate::u2(l0), {0}, {1}, {0});
    c.add(Gate::u2(l1), {0}, {1}, {1});
    return detail::certify(std::move(c), u);
}

// Doubly-controlled U from controlled square roots: CV, CNOT, CV^dagger,
// CNOT, CV with V^2 = U; the Toffoli emerges for U = NOT.
inline SynthesisResult synth_c2u(const ComplexMatrix& u) {
    if (u.dim() != 2 || !is_unitary(u, 1e-10))
        throw std::domain_error("synth_c2u: input must be a 2x2 unitary");
    const ComplexMatrix v = unitary_sqrt(u);
    Circuit c(3);
    c.add(Gate::u2(v), {0}, {1}, {1});
    c.add(Gate::cnot(), {1, 2});
    c.add(Gate::u2(v.adjoint()), {0}, {1}, {1});
    c.add(Gate::cnot(), {1, 2});
    c.add(Gate::u2(v), {0}, {2}, {1});
    return detail::certify(std::move(c), controlled(u, 2, {1, 1}));
}

// Doubly-controlled phase via two Toffolis, two phase shifts and one
// controlled phase; destructive interference on 001, 011, 101 and 110.
inline SynthesisResult synth_c2phase(double delta) {
    Circuit c(3);
    c.add(Gate::phase(delta / 2.0), {0});
    c.add(Gate::toffoli(), {0, 1, 2});
    c.add(Gate::phase(-delta / 2.0), {0});
    c.add(Gate::toffoli(), {0, 1, 2});
    c.add(Gate::cphase(delta / 2.0), {1, 2});
    ComplexMatrix target = ComplexMatrix::identity(8);
    target(7, 7) = std::polar(1.0, delta);
    return detail::certify(std::move(c), target);
}

// Inverse linear relations mapping target diagonal phases to gate angles.
inline PhaseSchedule diag_schedule(const DiagonalPhases& p) {
    const std::vector<double>& f = p.phis;
    PhaseSchedule s;
    if (p.n_qubits == 2) {
        s.deltas = {f[0], f[1], f[2] - f[0] - f[1]};
    } else {
        // phis indexed phi_1..phi_7 as f[0]..f[6]
        s.deltas = {f[0],
                    f[1],
                    f[3],
                    f[5] - f[1] - f[3],
                    f[4] - f[0] - f[3],
                    f[2] - f[0] - f[1],
                    f[6] + f[0] + f[1] + f[3] - f[2] - f[4] - f[5]};
    }
    return s;
}

// Phase-shift / controlled-phase circuit carrying the schedule angles.
inline SynthesisResult synth_diag(const DiagonalPhases& p) {
    const PhaseSchedule s = diag_schedule(p);
    Circuit c(p.n_qubits);
    if (p.n_qubits == 2) {
        c.add(Gate::phase(s.deltas[0]), {0});
        c.add(Gate::phase(s.deltas[1]), {1});
        c.add(Gate::cphase(s.deltas[2]), {0, 1});
    } else {
        c.add(Gate::phase(s.deltas[0]), {0});
        c.add(Gate::phase(s.deltas[1]), {1});
        c.add(Gate::phase(s.deltas[2]), {2});
        c.add(Gate::cphase(s.deltas[3]), {1, 2});
        c.add(Gate::cphase(s.deltas[4]), {0, 2});
        c.add(Gate::cphase(s.deltas[5]), {0, 1});
        c.add(Gate::c2phase(s.deltas[6]), {0, 1, 2});
    }
    return detail::certify(std::move(c), p.matrix());
}

// Rotation cascade for target amplitude moduli; angles come from
// arctangents of branch-probability square roots, zero branches get 0.
inline SynthesisResult synth_state_amplitudes(const std::vector<double>& moduli, int n) {
    if (n != 2 && n != 3) throw std::invalid_argument("synth_state_amplitudes: n must be 2 or 3");
    const std::size_t dim = std::size_t{1} << n;
    if (moduli.size() != dim)
        throw std::invalid_argument("synth_state_amplitudes: wrong modulus count");
    double sq = 0.0;
    for (double m : moduli) {
        if (m < 0.0) throw std::invalid_argument("synth_state_amplitudes: moduli must be >= 0");
        sq += m * m;
    }
    if (std::abs(sq - 1.0) > 1e-10)
        throw std::invalid_argument("synth_state_amplitudes: moduli must be normalized");

    auto branch_angle = [](double lo, double hi) {
        return (lo == 0.0 && hi == 0.0) ? 0.0 : 2.0 * std::atan2(hi, lo);
    };

    Circuit c(n);
    if (n == 2) {
        const double p0 = std::hypot(moduli[0], moduli[1]);
        const double p1 = std::hypot(moduli[2], moduli[3]);
        c.add(Gate::ry(branch_angle(p0, p1)), {1});
        c.add(Gate::ry(branch_angle(moduli[0], moduli[1])), {0}, {1}, {0});
        c.add(Gate::ry(branch_angle(moduli[2], moduli[3])), {0}, {1}, {1});
    } else {
        // Stage A on the two most significant qubits, over the four groups
        // g = (q2 q1); stage B applies the doubly-controlled rotations in
        // control-value order 00, 01, 10, 11.
        std::array<double, 4> g{};
        for (std::size_t i = 0; i < 8; ++i) g[i >> 1] += moduli[i] * moduli[i];
        for (double& v : g) v = std::sqrt(v);
        const double top0 = std::hypot(g[0], g[1]);
        const double top1 = std::hypot(g[2], g[3]);
        c.add(Gate::ry(branch_angle(top0, top1)), {2});
        c.add(Gate::ry(branch_angle(g[0], g[1])), {1}, {2}, {0});
        c.add(Gate::ry(branch_angle(g[2], g[3])), {1}, {2}, {1});
        for (int gi = 0; gi < 4; ++gi)
            c.add(Gate::ry(branch_angle(moduli[2 * gi], moduli[2 * gi + 1])), {0}, {1, 2},
                  {gi & 1, gi >> 1});
    }

    StateVector target(n, [&] {
        std::vector<Complex> amps(dim);
        for (std::size_t i = 0; i < dim; ++i) amps[i] = moduli[i];
        return amps;
    }());
    return detail::certify_state(std::move(c), target);
}

// Full state synthesis: amplitude moduli first, then the diagonal phase
// circuit for the phases relative to the first nonzero amplitude.
inline SynthesisResult synth_state(const StateVector& target, int n) {
    if (target.n_qubits() != n)
        throw std::invalid_argument("synth_state: state size does not match n");
    if (std::abs(target.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("synth_state: target must be normalized");
    const std::size_t dim = target.size();

    std::vector<double> moduli(dim);
    for (std::size_t i = 0; i < dim; ++i) moduli[i] = std::abs(target[i]);

    std::size_t ref = 0;
    while (ref < dim && moduli[ref] <= 1e-12) ++ref;
    const double ref_arg = ref < dim ? std::arg(target[ref]) : 0.0;

    std::vector<double> phis(dim - 1, 0.0);
    for (std::size_t i = 1; i < dim; ++i)
        if (moduli[i] > 1e-12) phis[i - 1] = normalize_angle(std::arg(target[i]) - ref_arg);

    SynthesisResult amp = synth_state_amplitudes(moduli, n);
    Circuit c = std::move(amp.circuit);
    const SynthesisResult dia = synth_diag(DiagonalPhases(n, phis));
    for (const CircuitOp& op : dia.circuit.ops) c.add(op);
    return detail::certify_state(std::move(c), target);
}

}  // namespace qdos
