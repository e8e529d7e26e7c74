// Dense complex linear algebra for gate-level quantum circuit work.
// Basis convention used everywhere: basis states are indexed 0..dim-1,
// bit k of the index is qubit k's value, qubit 0 is the least significant.

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdos {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into (-pi, pi].
inline double normalize_angle(double x) {
    if (x > -kPi && x <= kPi) return x;
    double y = std::fmod(x + kPi, 2.0 * kPi);
    if (y <= 0.0) y += 2.0 * kPi;
    return y - kPi;
}

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_)
            throw std::invalid_argument("ComplexMatrix: entry count does not match dim");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    bool operator==(const ComplexMatrix& o) const {
        return dim_ == o.dim_ && entries_ == o.entries_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matmul: dimension mismatch");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex arc = a(r, k);
            if (arc == Complex{}) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += arc * b(k, c);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}

// Kronecker product, MSB-left: kron(I2, U) applies U to the least
// significant qubit (block-diagonal form).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra)
        for (std::size_t ca = 0; ca < na; ++ca) {
            const Complex f = a(ra, ca);
            if (f == Complex{}) continue;
            for (std::size_t rb = 0; rb < nb; ++rb)
                for (std::size_t cb = 0; cb < nb; ++cb)
                    out(ra * nb + rb, ca * nb + cb) = f * b(rb, cb);
        }
    return out;
}

inline double max_abs(const ComplexMatrix& m) {
    double mx = 0.0;
    for (const auto& e : m.entries()) mx = std::max(mx, std::abs(e));
    return mx;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double mx = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        mx = std::max(mx, std::abs(a.entries()[i] - b.entries()[i]));
    return mx;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = 1e-10) {
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.dim())) <= tol;
}

struct PhaseMatch {
    bool equal = false;
    double phase = 0.0;     // normalized to (-pi, pi]
    double residual = 0.0;  // max-norm after phase alignment
};

// True iff a == e^{i phi} b for some phi, within tol in max-norm.
// phi is read off the largest-modulus entry of b.
inline PhaseMatch equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b,
                                           double tol) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
    std::size_t best = 0;
    double bmax = 0.0;
    for (std::size_t i = 0; i < b.entries().size(); ++i) {
        const double v = std::abs(b.entries()[i]);
        if (v > bmax) { bmax = v; best = i; }
    }
    PhaseMatch res;
    if (bmax == 0.0) {
        res.residual = max_abs(a);
        res.equal = res.residual <= tol;
        return res;
    }
    const Complex ratio = a.entries()[best] / b.entries()[best];
    res.phase = normalize_angle(std::arg(ratio));
    const Complex f = std::polar(1.0, res.phase);
    double mx = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        mx = std::max(mx, std::abs(a.entries()[i] - f * b.entries()[i]));
    res.residual = mx;
    res.equal = mx <= tol;
    return res;
}

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(int n_qubits)
        : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
        amps_[0] = 1.0;
    }
    StateVector(int n_qubits, std::vector<Complex> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {
        if (amps_.size() != (std::size_t{1} << n_qubits_))
            throw std::invalid_argument("StateVector: amplitude count must be 2^n");
    }

    static StateVector basis(int n_qubits, std::size_t index) {
        StateVector s(n_qubits);
        s.amps_[0] = 0.0;
        s.amps_.at(index) = 1.0;
        return s;
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }
    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<Complex>& amps() const { return amps_; }
    std::vector<Complex>& amps() { return amps_; }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    void normalize() {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("StateVector: zero vector cannot be normalized");
        for (auto& a : amps_) a /= n;
    }

private:
    int n_qubits_ = 0;
    std::vector<Complex> amps_{Complex{1.0, 0.0}};
};

inline StateVector apply(const ComplexMatrix& m, const StateVector& s) {
    if (m.dim() != s.size())
        throw std::invalid_argument("apply: dimension mismatch");
    StateVector out(s.n_qubits());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < m.dim(); ++c) acc += m(r, c) * s[c];
        out[r] = acc;
    }
    return out;
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double mx = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
    return mx;
}

inline PhaseMatch equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                           double tol) {
    ComplexMatrix ma(a.size()), mb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) { ma(i, 0) = a[i]; mb(i, 0) = b[i]; }
    return equal_up_to_global_phase(ma, mb, tol);
}

// --- Matrix text format ---------------------------------------------------
// First line: dim. Then dim lines, each with dim whitespace-separated
// entries of the form "re+imj" (17 significant digits on output).

inline std::string format_complex_entry(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

inline Complex parse_complex_entry(const std::string& tok) {
    if (tok.empty() || tok.back() != 'j')
        throw std::invalid_argument("matrix entry must end in 'j': " + tok);
    std::size_t split = std::string::npos;
    for (std::size_t i = tok.size() - 1; i >= 1; --i) {
        const char c = tok[i];
        if ((c == '+' || c == '-') && tok[i - 1] != 'e' && tok[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw std::invalid_argument("malformed matrix entry: " + tok);
    const double re = std::stod(tok.substr(0, split));
    const double im = std::stod(tok.substr(split, tok.size() - 1 - split));
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument("non-finite matrix entry: " + tok);
    return {re, im};
}

inline void write_matrix_text(std::ostream& os, const ComplexMatrix& m) {
    os << m.dim() << '\n';
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c) os << ' ';
            os << format_complex_entry(m(r, c));
        }
        os << '\n';
    }
}

inline ComplexMatrix read_matrix_text(std::istream& is) {
    std::size_t dim = 0;
    if (!(is >> dim) || dim == 0)
        throw std::invalid_argument("matrix text: missing or invalid dim");
    ComplexMatrix m(dim);
    std::string tok;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            if (!(is >> tok))
                throw std::invalid_argument("matrix text: truncated input");
            m(r, c) = parse_complex_entry(tok);
        }
    return m;
}

}  // namespace qdos
