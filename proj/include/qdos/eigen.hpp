// Eigendecomposition of Hermitian and unitary matrices via cyclic Jacobi
// sweeps. Sized for gate work (dim <= 1024); deterministic ordering.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdos/complex_matrix.hpp"

namespace qdos {

struct HermitianEig {
    std::vector<double> values;
    ComplexMatrix vectors;  // column j is the eigenvector for values[j]
};

// Cyclic Jacobi for complex Hermitian matrices.
inline HermitianEig hermitian_eig(ComplexMatrix a, double tol = 1e-14) {
    const std::size_t n = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(max_abs(a), 1.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= tol * scale) continue;
                const Complex phase = a(p, q) / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex spq = s * phase;         // J(p,q)
                const Complex sqp = -s * std::conj(phase);  // J(q,p)

                // a <- J^H a J, acting on rows/cols p and q only
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * sqp;
                    a(k, q) = akp * spq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(c) * apk + std::conj(sqp) * aqk;
                    a(q, k) = std::conj(spq) * apk + std::conj(c) * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * sqp;
                    v(k, q) = vkp * spq + vkq * c;
                }
            }
        }
    }

    HermitianEig out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();
    out.vectors = std::move(v);
    return out;
}

struct UnitaryEig {
    std::vector<double> phases;  // each in (-pi, pi]
    ComplexMatrix vectors;
};

// Eigendecomposition of a unitary (hence normal) matrix. Diagonalizes the
// commuting Hermitian pair (U+U^H)/2 and (U-U^H)/(2i); eigenvalue clusters
// of the first are split by the second.
inline UnitaryEig unitary_eig(const ComplexMatrix& u, double tol = 1e-8) {
    if (!is_unitary(u, 1e-8))
        throw std::domain_error("unitary_eig: input is not unitary");
    const std::size_t n = u.dim();
    const ComplexMatrix uh = u.adjoint();
    ComplexMatrix a(n), b(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            a(r, c) = 0.5 * (u(r, c) + uh(r, c));
            b(r, c) = Complex{0.0, -0.5} * (u(r, c) - uh(r, c));
        }

    HermitianEig ea = hermitian_eig(a);

    // Sort by the cosine part so clusters are contiguous.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return ea.values[i] < ea.values[j]; });
    ComplexMatrix v(n);
    std::vector<double> cosv(n);
    for (std::size_t j = 0; j < n; ++j) {
        cosv[j] = ea.values[order[j]];
        for (std::size_t r = 0; r < n; ++r) v(r, j) = ea.vectors(r, order[j]);
    }

    // Split degenerate cosine clusters with the sine part.
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo + 1;
        while (hi < n && std::abs(cosv[hi] - cosv[lo]) <= tol) ++hi;
        const std::size_t k = hi - lo;
        if (k > 1) {
            ComplexMatrix sub(k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    Complex acc{};
                    for (std::size_t r = 0; r < n; ++r)
                        for (std::size_t c = 0; c < n; ++c)
                            acc += std::conj(v(r, lo + i)) * b(r, c) * v(c, lo + j);
                    sub(i, j) = acc;
                }
            HermitianEig eb = hermitian_eig(sub);
            ComplexMatrix rotated(n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t j = 0; j < k; ++j) {
                    Complex acc{};
                    for (std::size_t i = 0; i < k; ++i) acc += v(r, lo + i) * eb.vectors(i, j);
                    rotated(r, lo + j) = acc;
                }
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t j = 0; j < k; ++j) v(r, lo + j) = rotated(r, lo + j);
        }
        lo = hi;
    }

    UnitaryEig out;
    out.phases.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex ca{}, cb{};
        for (std::size_t r = 0; r < n; ++r) {
            Complex avj{}, bvj{};
            for (std::size_t c = 0; c < n; ++c) {
                avj += a(r, c) * v(c, j);
                bvj += b(r, c) * v(c, j);
            }
            ca += std::conj(v(r, j)) * avj;
            cb += std::conj(v(r, j)) * bvj;
        }
        double phi = std::atan2(cb.real(), ca.real());
        if (phi <= -kPi) phi = kPi;  // pin the branch cut to +pi
        out.phases[j] = phi;
    }

    // Deterministic order: ascending phase, ties by current index.
    std::vector<std::size_t> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t i, std::size_t j) {
        return out.phases[i] < out.phases[j];
    });
    ComplexMatrix vf(n);
    std::vector<double> pf(n);
    for (std::size_t j = 0; j < n; ++j) {
        pf[j] = out.phases[ord[j]];
        for (std::size_t r = 0; r < n; ++r) vf(r, j) = v(r, ord[j]);
    }
    out.phases = std::move(pf);
    out.vectors = std::move(vf);
    return out;
}

// Principal unitary square root: eigenphase lambda in (-pi, pi] maps to
// lambda/2, so sqrt(Z) = diag(1, i).
inline ComplexMatrix unitary_sqrt(const ComplexMatrix& u) {
    UnitaryEig e = unitary_eig(u);
    const std::size_t n = u.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc{};
            for (std::size_t j = 0; j < n; ++j)
                acc += e.vectors(r, j) * std::polar(1.0, e.phases[j] / 2.0) *
                       std::conj(e.vectors(c, j));
            out(r, c) = acc;
        }
    return out;
}

}  // namespace qdos
