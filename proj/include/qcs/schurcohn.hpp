#ifndef QCS_SCHURCOHN_HPP
#define QCS_SCHURCOHN_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcs/numkernel.hpp"
#include "qcs/polycore.hpp"

namespace qcs {

struct DegenerateSequence : std::runtime_error {
    std::vector<int> indices;
    explicit DegenerateSequence(std::vector<int> idx)
        : std::runtime_error("Schur-Cohn sequence has near-zero determinants"),
          indices(std::move(idx)) {}
};

enum class LSign { Plus, Minus };

// The 2n x 2n block matrix [[tM_n, +-t(conj N_n)],[+-N_n, conj M_n]] with
// M_n upper triangular on the leading coefficients and N_n on the trailing
// ones. Both signs share one determinant D_n.
inline CMatrix build_L(const Poly& f, int n, LSign sign = LSign::Plus) {
    const int d = f.degree();
    if (n < 1 || n > d) throw std::out_of_range("build_L: n outside [1, d]");
    const double sgn = (sign == LSign::Plus) ? 1.0 : -1.0;
    CMatrix out(2 * n, 2 * n);
    // M_n(i,j) = a_{d-j+i}, N_n(i,j) = a_{j-i} for i <= j (0-based upper triangles).
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cplx mij = f.coeff(d - j + i);
            const cplx nij = f.coeff(j - i);
            out(j, i) = mij;                              // tM_n
            out(j, n + i) = sgn * std::conj(nij);         // +- t(conj N_n)
            out(n + i, j) = sgn * nij;                    // +- N_n
            out(n + i, n + j) = std::conj(mij);           // conj M_n
        }
    return out;
}

struct SchurCohnSeq {
    int d = 0;
    std::vector<double> D;               // D[0] = 1, length d+1
    std::vector<double> imag_residuals;  // |Im| of raw determinants, length d+1
    std::vector<int> degenerate_indices;
};

// Degeneracy gates compare |D_n| against ||a||_2^{2n}. The l1 analogue is a
// worst-case Hadamard bound that over-rejects badly by n = 8; the l2 power
// tracks typical determinant magnitudes across degrees.
inline double schur_cohn_scale(const Poly& f, int n) {
    double s = 0.0;
    for (const auto& a : f.coeffs()) s += std::norm(a);
    return std::pow(s, n);  // (||a||_2)^{2n}
}

inline SchurCohnSeq schur_cohn_sequence(const Poly& f, double tol = 1e-9) {
    const int d = f.degree();
    if (d < 1) throw std::invalid_argument("schur_cohn_sequence: degree must be >= 1");
    SchurCohnSeq seq;
    seq.d = d;
    seq.D.assign(static_cast<size_t>(d) + 1, 1.0);
    seq.imag_residuals.assign(static_cast<size_t>(d) + 1, 0.0);
    for (int n = 1; n <= d; ++n) {
        cplx raw;
        try {
            raw = det(build_L(f, n, LSign::Plus));
        } catch (const SingularMatrix&) {
            raw = 0.0;
        }
        seq.D[static_cast<size_t>(n)] = raw.real();
        seq.imag_residuals[static_cast<size_t>(n)] = std::abs(raw.imag());
        if (std::abs(raw.real()) <= tol * schur_cohn_scale(f, n))
            seq.degenerate_indices.push_back(n);
    }
    return seq;
}

struct InsideCount {
    int q = 0;
    int inside = 0;
};

// Sign changes in (D_0, ..., D_d) give q; the polynomial then has d - q roots
// inside the unit circle, provided no D_n vanished.
inline InsideCount count_inside(const SchurCohnSeq& seq) {
    if (!seq.degenerate_indices.empty())
        throw DegenerateSequence(seq.degenerate_indices);
    InsideCount out;
    for (int n = 1; n <= seq.d; ++n)
        if ((seq.D[static_cast<size_t>(n - 1)] > 0.0) !=
            (seq.D[static_cast<size_t>(n)] > 0.0))
            ++out.q;
    out.inside = seq.d - out.q;
    return out;
}

}  // namespace qcs

#endif  // QCS_SCHURCOHN_HPP
