// Seeded random unitaries and states for tests and --random CLI runs.
// Haar-distributed unitaries via Gaussian matrix + Gram-Schmidt with the
// phase fix on the diagonal of R.

#pragma once

#include <random>

#include "qdos/complex_matrix.hpp"

namespace qdos {

inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto& col : cols)
        for (Complex& z : col) z = Complex{gauss(rng), gauss(rng)};

    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            Complex dot{};
            for (std::size_t r = 0; r < dim; ++r) dot += std::conj(cols[p][r]) * cols[c][r];
            for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= dot * cols[p][r];
        }
        double norm = 0.0;
        for (const Complex& z : cols[c]) norm += std::norm(z);
        norm = std::sqrt(norm);
        // Fix the phase so the distribution stays Haar after normalization.
        const Complex lead = cols[c][c];
        const Complex phase = std::abs(lead) > 1e-300 ? lead / std::abs(lead) : Complex{1.0, 0.0};
        for (Complex& z : cols[c]) z /= norm * phase;
    }

    ComplexMatrix u(dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) u(r, c) = cols[c][r];
    return u;
}

inline StateVector random_state(int n_qubits, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector s(n_qubits);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = Complex{gauss(rng), gauss(rng)};
    s.normalize();
    return s;
}

}  // namespace qdos
