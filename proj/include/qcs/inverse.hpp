#ifndef QCS_INVERSE_HPP
#define QCS_INVERSE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcs/numkernel.hpp"
#include "qcs/polycore.hpp"
#include "qcs/schurcohn.hpp"

namespace qcs {

struct DegenerateDn : std::runtime_error {
    int n;
    double magnitude;
    DegenerateDn(int n_, double mag)
        : std::runtime_error("D_" + std::to_string(n_) + " below degeneracy tolerance"),
          n(n_), magnitude(mag) {}
};

struct ConjugatePairingViolation : std::runtime_error {
    ConjugatePairingViolation()
        : std::runtime_error("solved vector violates conjugate pairing") {}
};

struct SingularS : std::runtime_error {
    int n;
    explicit SingularS(int n_)
        : std::runtime_error("matrix product S_" + std::to_string(n_) +
                             " numerically singular"),
          n(n_) {}
};

struct ZeroDenominator : std::runtime_error {
    int n;
    double magnitude;
    ZeroDenominator(int n_, double mag)
        : std::runtime_error("inductive step " + std::to_string(n_) +
                             ": Re(a conj(i b)) vanishes"),
          n(n_), magnitude(mag) {}
};

struct SingularP : std::runtime_error {
    int n;
    explicit SingularP(int n_)
        : std::runtime_error("block matrix P at level " + std::to_string(n_) +
                             " numerically singular"),
          n(n_) {}
};

// d unimodular symmetric blocks; block n covers t in [r(n-1)/2, rn/2).
struct HamiltonianSeq {
    int d = 0;
    int L = 0;
    int r = 0;
    std::vector<Sym2> H;  // H[n-1] is the n-th block
    double max_asymmetry = 0.0;
};

struct EqSolution109 {
    int n = 0;
    std::vector<cplx> zplus;
    std::vector<cplx> zminus;
};

namespace detail {

inline double d_scale(const CoeffSeq& seq, int n) {
    return schur_cohn_scale(seq_to_poly(seq), n);
}

inline void gate_dn(const SchurCohnSeq& sc, const CoeffSeq& seq, int n,
                    double tol = 1e-9) {
    const double mag = std::abs(sc.D[static_cast<size_t>(n)]);
    if (mag <= tol * d_scale(seq, n)) throw DegenerateDn(n, mag);
}

// Solve L_n^{sign} v = -+(0..2conj(C_L), 2C_L..0), check the conjugate pairing
// of the 2n-vector, return the first half.
inline std::vector<cplx> solve_half(const CoeffSeq& seq, int n, LSign sign) {
    const Poly f = seq_to_poly(seq);
    const CMatrix L = build_L(f, n, sign);
    std::vector<cplx> rhs(static_cast<size_t>(2 * n));
    const double s = (sign == LSign::Plus) ? -1.0 : 1.0;
    rhs[static_cast<size_t>(n - 1)] = s * 2.0 * std::conj(seq.C_L());
    rhs[static_cast<size_t>(n)] = s * 2.0 * seq.C_L();
    const auto lu = lu_det_solve(L, rhs);
    const auto& v = *lu.solution;
    double vnorm = 0.0;
    for (const auto& x : v) vnorm = std::max(vnorm, std::abs(x));
    for (int k = 0; k < n; ++k) {
        const cplx mirror = std::conj(v[static_cast<size_t>(2 * n - 1 - k)]);
        if (std::abs(v[static_cast<size_t>(k)] - mirror) > 1e-8 * (1.0 + vnorm))
            throw ConjugatePairingViolation();
    }
    return std::vector<cplx>(v.begin(), v.begin() + n);
}

}  // namespace detail

inline EqSolution109 solve_eq109(const CoeffSeq& seq, int n, double tol = 1e-9) {
    if (n < 1 || n > seq.d) throw std::out_of_range("solve_eq109: n outside [1, d]");
    const SchurCohnSeq sc = schur_cohn_sequence(seq_to_poly(seq), tol);
    detail::gate_dn(sc, seq, n, tol);
    EqSolution109 out;
    out.n = n;
    out.zplus = detail::solve_half(seq, n, LSign::Plus);
    out.zminus = detail::solve_half(seq, n, LSign::Minus);
    return out;
}

namespace detail {

// R_k = [[Re z_k^+(1), Im z_k^+(1)], [-Im z_k^-(1), Re z_k^-(1)]] as a flat
// 2x2 of doubles.
struct Mat2 {
    double a, b, c, d;
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double det() const { return a * d - b * c; }
};

// Solve (S J) H = J' S for the 2x2 H; returns the raw (possibly slightly
// asymmetric) matrix.
inline Mat2 solve_h_from_s(const Mat2& s, int n) {
    const Mat2 J{0.0, -1.0, 1.0, 0.0};
    const Mat2 Jp{0.0, 1.0, -1.0, 0.0};
    const Mat2 lhs = s * J;
    const Mat2 rhs = Jp * s;
    const double dt = lhs.det();
    if (std::abs(dt) <= 1e-13 * (std::abs(lhs.a * lhs.d) + std::abs(lhs.b * lhs.c) + 1e-300))
        throw SingularS(n);
    return {(lhs.d * rhs.a - lhs.b * rhs.c) / dt, (lhs.d * rhs.b - lhs.b * rhs.d) / dt,
            (lhs.a * rhs.c - lhs.c * rhs.a) / dt, (lhs.a * rhs.d - lhs.c * rhs.b) / dt};
}

}  // namespace detail

// Linear-equation path: z_n^{+-}(1) from the 2n x 2n solves, then the matrix
// relation S_n J H_n = J' S_n with S_n = R_n ... R_1.
inline HamiltonianSeq hamiltonian_linear(const CoeffSeq& seq, double tol = 1e-9) {
    const Poly f = seq_to_poly(seq);
    const SchurCohnSeq sc = schur_cohn_sequence(f, tol);
    for (int n = 1; n <= seq.d; ++n) detail::gate_dn(sc, seq, n, tol);

    HamiltonianSeq out;
    out.d = seq.d;
    out.L = seq.L;
    out.r = seq.r;
    detail::Mat2 s{1.0, 0.0, 0.0, 1.0};
    for (int n = 1; n <= seq.d; ++n) {
        const cplx zp = detail::solve_half(seq, n, LSign::Plus)[0];
        const cplx zm = detail::solve_half(seq, n, LSign::Minus)[0];
        const detail::Mat2 r{zp.real(), zp.imag(), -zm.imag(), zm.real()};
        s = r * s;  // R_n applied on the left
        const detail::Mat2 h = detail::solve_h_from_s(s, n);
        const double asym = std::abs(h.b - h.c);
        const double hnorm = std::max({std::abs(h.a), std::abs(h.b), std::abs(h.c),
                                       std::abs(h.d), 1e-300});
        if (asym > 1e-8 * hnorm)
            throw std::runtime_error("hamiltonian_linear: asymmetry residual too large");
        out.max_asymmetry = std::max(out.max_asymmetry, asym / hnorm);
        out.H.push_back(Sym2{h.a, 0.5 * (h.b + h.c), h.d});
    }
    return out;
}

enum class OmegaOrdering { Theorem, Alternative };

struct OmegaState {
    int n = 0;
    std::vector<cplx> omega;  // length 4(d - n + 1)

    // Block 2 is the reversed conjugate of block 1, block 4 of block 3.
    double redundancy_residual() const {
        const int m = static_cast<int>(omega.size()) / 4;
        double res = 0.0, norm = 0.0;
        for (const auto& x : omega) norm = std::max(norm, std::abs(x));
        for (int i = 0; i < m; ++i) {
            res = std::max(res, std::abs(omega[static_cast<size_t>(m + i)] -
                                         std::conj(omega[static_cast<size_t>(m - 1 - i)])));
            res = std::max(res,
                           std::abs(omega[static_cast<size_t>(3 * m + i)] -
                                    std::conj(omega[static_cast<size_t>(3 * m - 1 - i)])));
        }
        return res / (1.0 + norm);
    }
};

struct InductiveResult {
    HamiltonianSeq hseq;
    std::vector<OmegaState> trajectory;  // Omega_0 .. Omega_d
};

namespace detail {

// P_k(H): 4(k+1) square. Rows: the two continuity ladders, then the
// first-order-system constraints (1-i beta) a - i gamma b = 0 and its
// conjugate on the reversed blocks.
inline CMatrix build_P(int k, const Sym2& h) {
    const int w = k + 1;
    CMatrix p(4 * w, 4 * w);
    const cplx one_mib(1.0, -h.beta);
    const cplx mig(0.0, -h.gamma);
    const cplx mia(0.0, -h.alpha);
    for (int i = 0; i <= k + 1; ++i) {
        if (i <= k) {
            p(i, i) = 1.0;
            p(k + 2 + i, 2 * w + i) = 1.0;
        }
        if (i >= 1) {
            p(i, w + i - 1) = 1.0;
            p(k + 2 + i, 3 * w + i - 1) = 1.0;
        }
    }
    for (int i = 0; i < k; ++i) {
        p(2 * k + 4 + i, i + 1) = one_mib;
        p(2 * k + 4 + i, 2 * w + i + 1) = mig;
        p(3 * k + 4 + i, w + i) = mia;
        p(3 * k + 4 + i, 3 * w + i) = one_mib;
    }
    return p;
}

// Q_k: 4(k+1) x 4(k+2); folds each block of Omega_n with its reversed
// conjugate partner, zero rows below.
inline CMatrix build_Q(int k) {
    const int w = k + 2;
    CMatrix q(4 * (k + 1), 4 * w);
    for (int i = 0; i < w; ++i) {
        q(i, i) = 1.0;
        q(i, w + i) = 1.0;
        q(k + 2 + i, 2 * w + i) = 1.0;
        q(k + 2 + i, 3 * w + i) = 1.0;
    }
    return q;
}

inline std::vector<cplx> rev_conj(const std::vector<cplx>& v) {
    std::vector<cplx> out(v.rbegin(), v.rend());
    for (auto& x : out) x = std::conj(x);
    return out;
}

inline Sym2 h_from_ab(cplx a, cplx b, int level) {
    const cplx ib(-b.imag(), b.real());
    const cplx prod = a * std::conj(ib);
    const double denom = prod.real();
    if (std::abs(denom) < 1e-12 * (std::norm(a) + std::norm(b)))
        throw ZeroDenominator(level, std::abs(denom));
    return Sym2{std::norm(b) / denom, prod.imag() / denom, std::norm(a) / denom};
}

}  // namespace detail

// Inductive path: propagate the coefficient vector Omega_n level by level,
// reading each H block off the top-frequency pair. The seed uses
// B_0 = i A_0 = (i/2)(C_L, ..., C_{-L}); with both halves equal the
// denominator of the H extraction vanishes identically.
inline InductiveResult hamiltonian_inductive(
    const CoeffSeq& seq, OmegaOrdering ordering = OmegaOrdering::Theorem,
    double tol = 1e-9) {
    const Poly f = seq_to_poly(seq);
    const SchurCohnSeq sc = schur_cohn_sequence(f, tol);
    for (int n = 1; n <= seq.d; ++n) detail::gate_dn(sc, seq, n, tol);

    const int d = seq.d;
    std::vector<cplx> a0(seq.c);
    for (auto& x : a0) x *= 0.5;
    std::vector<cplx> b0(a0);
    for (auto& x : b0) x *= cplx(0.0, 1.0);

    OmegaState omega;
    omega.n = 0;
    omega.omega = a0;
    auto append = [&](const std::vector<cplx>& v) {
        omega.omega.insert(omega.omega.end(), v.begin(), v.end());
    };
    append(detail::rev_conj(a0));
    append(b0);
    append(detail::rev_conj(b0));

    InductiveResult out;
    out.hseq.d = d;
    out.hseq.L = seq.L;
    out.hseq.r = seq.r;
    out.trajectory.push_back(omega);

    for (int n = 0; n < d; ++n) {
        const int blk = d - n + 1;  // block length of Omega_n
        const int k = d - n - 1;
        const CMatrix q = detail::build_Q(k);
        const std::vector<cplx> folded = q * omega.omega;

        cplx a_top, b_top;
        if (ordering == OmegaOrdering::Theorem) {
            a_top = omega.omega[0] + omega.omega[static_cast<size_t>(blk)];
            b_top = omega.omega[static_cast<size_t>(2 * blk)] +
                    omega.omega[static_cast<size_t>(3 * blk)];
        } else {
            a_top = folded[0];
            b_top = folded[static_cast<size_t>(k + 2)];
        }
        const Sym2 h = detail::h_from_ab(a_top, b_top, n + 1);
        out.hseq.H.push_back(h);

        const CMatrix p = detail::build_P(k, h);
        OmegaState next;
        next.n = n + 1;
        try {
            next.omega = *lu_det_solve(p, folded).solution;
        } catch (const SingularMatrix&) {
            throw SingularP(n + 1);
        }
        if (next.redundancy_residual() > 1e-8)
            throw std::runtime_error(
                "hamiltonian_inductive: conjugate-block redundancy violated");
        omega = next;
        out.trajectory.push_back(omega);
    }
    return out;
}

struct Eq114Report {
    std::vector<double> min_eigenvalues;  // of D_{n-1} D_n H_n, per n
    bool pass = true;
};

inline Eq114Report check_eq114(const HamiltonianSeq& hseq, const SchurCohnSeq& sc) {
    if (hseq.d != sc.d) throw std::invalid_argument("check_eq114: degree mismatch");
    Eq114Report rep;
    for (int n = 1; n <= hseq.d; ++n) {
        const double s =
            sc.D[static_cast<size_t>(n - 1)] * sc.D[static_cast<size_t>(n)];
        const auto ev = hseq.H[static_cast<size_t>(n - 1)].scaled(s).eigenvalues();
        rep.min_eigenvalues.push_back(ev.first);
        if (ev.first <= 0.0) rep.pass = false;
    }
    return rep;
}

struct IdentityPair {
    cplx lhs;
    cplx rhs;
};

namespace detail {

inline cplx det_col_replaced(const CoeffSeq& seq, int n, LSign sign,
                             const std::vector<cplx>& col, int col_index) {
    CMatrix m = build_L(seq_to_poly(seq), n, sign);
    m.set_column(col_index, col);
    try {
        return det(m);
    } catch (const SingularMatrix&) {
        return 0.0;
    }
}

}  // namespace detail

// Column-replacement determinant identity: both sides of eq. (lhs via the four
// replaced determinants, rhs via D_{n-2} D_n).
inline IdentityPair identity_eq320(const CoeffSeq& seq, int n, double tol = 1e-9) {
    if (n < 1 || n > seq.d) throw std::out_of_range("identity_eq320: n outside [1, d]");
    const SchurCohnSeq sc = schur_cohn_sequence(seq_to_poly(seq), tol);
    detail::gate_dn(sc, seq, n, tol);

    std::vector<cplx> c_minus(static_cast<size_t>(2 * n));
    std::vector<cplx> c_plus(static_cast<size_t>(2 * n));
    c_minus[static_cast<size_t>(n - 1)] = -2.0 * std::conj(seq.C_L());
    c_minus[static_cast<size_t>(n)] = -2.0 * seq.C_L();
    c_plus[static_cast<size_t>(n - 1)] = 2.0 * std::conj(seq.C_L());
    c_plus[static_cast<size_t>(n)] = 2.0 * seq.C_L();

    const cplx p1 = detail::det_col_replaced(seq, n, LSign::Plus, c_minus, 0);
    const cplx m1 = detail::det_col_replaced(seq, n, LSign::Minus, c_plus, 2 * n - 1);
    const cplx p2 = detail::det_col_replaced(seq, n, LSign::Plus, c_minus, 2 * n - 1);
    const cplx m2 = detail::det_col_replaced(seq, n, LSign::Minus, c_plus, 0);

    IdentityPair out;
    out.lhs = 0.5 * (p1 * m1 + p2 * m2);
    const double cl2 = std::norm(seq.C_L());
    if (n >= 2)
        out.rhs = 4.0 * cl2 * cl2 * sc.D[static_cast<size_t>(n - 2)] *
                  sc.D[static_cast<size_t>(n)];
    else
        out.rhs = -4.0 * cl2 * sc.D[1];
    return out;
}

// Product identity tying the first-entry solutions of the two signed systems
// to the determinant sequence.
inline IdentityPair identity_eq322(const CoeffSeq& seq, int n, double tol = 1e-9) {
    if (n < 1 || n > seq.d) throw std::out_of_range("identity_eq322: n outside [1, d]");
    const SchurCohnSeq sc = schur_cohn_sequence(seq_to_poly(seq), tol);
    for (int k = 1; k <= n; ++k) detail::gate_dn(sc, seq, k, tol);

    double prod = 1.0;
    for (int k = 1; k <= n; ++k) {
        const cplx zp = detail::solve_half(seq, k, LSign::Plus)[0];
        const cplx zm = detail::solve_half(seq, k, LSign::Minus)[0];
        prod *= (zp * std::conj(zm)).real();
    }
    IdentityPair out;
    out.lhs = -prod;
    const double cl2 = std::norm(seq.C_L());
    out.rhs = std::pow(4.0, n) * std::pow(cl2, 2 * n - 1) /
              (sc.D[static_cast<size_t>(n - 1)] * sc.D[static_cast<size_t>(n)]);
    return out;
}

}  // namespace qcs

#endif  // QCS_INVERSE_HPP
