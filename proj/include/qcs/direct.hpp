#ifndef QCS_DIRECT_HPP
#define QCS_DIRECT_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcs/exppoly.hpp"
#include "qcs/inverse.hpp"
#include "qcs/numkernel.hpp"
#include "qcs/polycore.hpp"

namespace qcs {

struct NotUnimodular : std::runtime_error {
    NotUnimodular() : std::runtime_error("Hamiltonian block determinant is not 1") {}
};

struct ZeroBoundary : std::runtime_error {
    ZeroBoundary() : std::runtime_error("boundary vector (A, B) must be nonzero") {}
};

struct ContinuityViolation : std::runtime_error {
    explicit ContinuityViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSpectrum : std::runtime_error {
    explicit DegenerateSpectrum(const std::string& what) : std::runtime_error(what) {}
};

struct AmbiguousSignature : std::runtime_error {
    int n;
    explicit AmbiguousSignature(int n_)
        : std::runtime_error("Hamiltonian block " + std::to_string(n_) +
                             " is near-singular"),
          n(n_) {}
};

struct GridTouchesJoint : std::runtime_error {
    double t;
    explicit GridTouchesJoint(double t_)
        : std::runtime_error("finite-difference grid point too close to a piece joint"),
          t(t_) {}
};

// 2x2 matrix of exponential polynomials; the transfer matrix across one
// constant-H piece of width r/2.
struct TransferBlock {
    std::array<ExpPoly, 4> e;  // row-major [m11, m12, m21, m22]

    ExpPoly& operator()(int i, int j) { return e[static_cast<size_t>(2 * i + j)]; }
    const ExpPoly& operator()(int i, int j) const {
        return e[static_cast<size_t>(2 * i + j)];
    }

    std::array<ExpPoly, 2> apply(const std::array<ExpPoly, 2>& v) const {
        return {(*this)(0, 0) * v[0] + (*this)(0, 1) * v[1],
                (*this)(1, 0) * v[0] + (*this)(1, 1) * v[1]};
    }

    TransferBlock operator*(const TransferBlock& o) const {
        TransferBlock out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
        return out;
    }

    ExpPoly det() const {
        return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    }
};

// [[cos(lz) - beta sin(lz), -gamma sin(lz)], [alpha sin(lz), cos(lz) + beta
// sin(lz)]] with l = r/2, encoded on the half-step lattice: cos(lz) has
// coefficients 1/2 at m = +-r, sin(lz) has -i/2 at +r and +i/2 at -r.
inline TransferBlock transfer_block(const Sym2& h, int r, double tol = 1e-9) {
    if (std::abs(h.det() - 1.0) > tol * (1.0 + std::abs(h.alpha) + std::abs(h.gamma)))
        throw NotUnimodular();
    ExpPoly cosl, sinl;
    cosl.add_term(r, 0.5);
    cosl.add_term(-r, 0.5);
    sinl.add_term(r, cplx(0.0, -0.5));
    sinl.add_term(-r, cplx(0.0, 0.5));
    TransferBlock t;
    t(0, 0) = cosl - sinl.scale(h.beta);
    t(0, 1) = sinl.scale(-h.gamma);
    t(1, 0) = sinl.scale(h.alpha);
    t(1, 1) = cosl + sinl.scale(h.beta);
    return t;
}

// Exact solution of the piecewise-constant first-order system. Piece n
// covers [r(n-1)/2, rn/2); A[n-1], B[n-1] hold the value at the piece's left
// endpoint as functions of z (coefficient at half-step m multiplies
// e^{imz/2}). Interior points are reached by a partial-width transfer matrix
// applied to the next piece's left-endpoint value: the two frequency branches
// move with opposite slopes in t, so no single phase shift covers a piece.
struct PiecewiseSolution {
    int d = 0;
    int L = 0;
    int r = 0;
    double boundary_A = 0.0, boundary_B = 0.0;
    std::vector<Sym2> H;     // the blocks the solution was built from
    std::vector<ExpPoly> A;  // A[n-1] is piece n at its left endpoint
    std::vector<ExpPoly> B;

    double piece_start(int n) const { return 0.5 * r * (n - 1); }

    int piece_of(double t) const {
        int n = static_cast<int>(std::floor(2.0 * t / r)) + 1;
        return std::min(std::max(n, 1), d);
    }

    std::pair<cplx, cplx> eval_pair(double t, cplx z) const {
        const int n = piece_of(t);
        cplx a, b;
        if (n < d) {
            a = A[static_cast<size_t>(n)].eval(z);
            b = B[static_cast<size_t>(n)].eval(z);
        } else {
            a = boundary_A;
            b = boundary_B;
        }
        const double w = piece_start(n) + 0.5 * r - t;  // remaining width
        const Sym2& h = H[static_cast<size_t>(n - 1)];
        const cplx c = std::cos(w * z), s = std::sin(w * z);
        return {(c - h.beta * s) * a - h.gamma * s * b,
                h.alpha * s * a + (c + h.beta * s) * b};
    }

    cplx eval_A(double t, cplx z) const { return eval_pair(t, z).first; }
    cplx eval_B(double t, cplx z) const { return eval_pair(t, z).second; }
    cplx eval_E(double t, cplx z) const {
        const auto [a, b] = eval_pair(t, z);
        return a - cplx(0.0, 1.0) * b;
    }

    // Left-endpoint coefficients of piece n keyed by absolute half-step
    // frequency m + r(n-1) (half-steps of mu where the paper-style absolute
    // lattice point is mu = m/2 + t_n).
    ExpPoly::Map a_map(int n) const { return abs_map(A, n); }
    ExpPoly::Map b_map(int n) const { return abs_map(B, n); }

private:
    ExpPoly::Map abs_map(const std::vector<ExpPoly>& comp, int n) const {
        ExpPoly::Map out;
        const int offset = r * (n - 1);  // 2 * t_n in half-steps
        for (const auto& [m, c] : comp[static_cast<size_t>(n - 1)].coeffs())
            out.emplace(m + offset, c);
        return out;
    }
};

// Right-to-left accumulation of transfer blocks applied to the boundary
// vector; piece n's stored pair is the partial product T_n ... T_d (A, B).
inline PiecewiseSolution solve_direct(const HamiltonianSeq& hseq, double A, double B,
                                      double tol = 1e-9) {
    if (A == 0.0 && B == 0.0) throw ZeroBoundary();
    PiecewiseSolution sol;
    sol.d = hseq.d;
    sol.L = hseq.L;
    sol.r = hseq.r;
    sol.boundary_A = A;
    sol.boundary_B = B;
    sol.H = hseq.H;
    sol.A.resize(static_cast<size_t>(hseq.d));
    sol.B.resize(static_cast<size_t>(hseq.d));

    std::array<ExpPoly, 2> vec{ExpPoly::constant(A), ExpPoly::constant(B)};
    for (int n = hseq.d; n >= 1; --n) {
        vec = transfer_block(hseq.H[static_cast<size_t>(n - 1)], hseq.r, tol).apply(vec);
        sol.A[static_cast<size_t>(n - 1)] = vec[0];
        sol.B[static_cast<size_t>(n - 1)] = vec[1];
    }

    // Sanity before handing the object out: the stored left-endpoint values
    // must match a numeric partial-width transfer applied to the neighbor,
    // and E(t, 0) is constant (the transfer is the identity at z = 0).
    const std::array<cplx, 3> zs{cplx(1.0, 0.0), cplx(0.3, 0.7), cplx(-1.1, 0.2)};
    // roundoff lives at the scale of the largest intermediate piece, not the
    // (possibly heavily cancelled) final one
    double scale = 1.0;
    for (int n = 1; n <= hseq.d; ++n)
        scale = std::max(scale, 1.0 + sol.A[static_cast<size_t>(n - 1)].norm1() +
                                    sol.B[static_cast<size_t>(n - 1)].norm1());
    for (int n = 1; n <= hseq.d; ++n) {
        const ExpPoly& an = sol.A[static_cast<size_t>(n - 1)];
        const ExpPoly& bn = sol.B[static_cast<size_t>(n - 1)];
        const double tn = sol.piece_start(n);
        for (const cplx z : zs) {
            const double zfac = std::exp(std::abs(z.imag()) * (hseq.L + 1.0));
            const auto [va, vb] = sol.eval_pair(tn, z);
            if (std::abs(va - an.eval(z)) > 1e-10 * scale * zfac ||
                std::abs(vb - bn.eval(z)) > 1e-10 * scale * zfac)
                throw ContinuityViolation("piece value mismatch at piece " +
                                          std::to_string(n));
        }
        const cplx e0 = an.eval(0.0) - cplx(0.0, 1.0) * bn.eval(0.0);
        if (std::abs(e0 - cplx(A, -B)) > 1e-12 * scale)
            throw ContinuityViolation("E(t,0) drifted at piece " + std::to_string(n));
    }
    return sol;
}

enum class DegeneracyClass { FullDegree, PropTo1i, PropTo1minusI, Zero };

inline const char* to_string(DegeneracyClass c) {
    switch (c) {
        case DegeneracyClass::FullDegree: return "FullDegree";
        case DegeneracyClass::PropTo1i: return "PropTo1i";
        case DegeneracyClass::PropTo1minusI: return "PropTo1minusI";
        case DegeneracyClass::Zero: return "Zero";
    }
    return "?";
}

struct DegeneracyReport {
    std::array<cplx, 2> vector;
    DegeneracyClass cls = DegeneracyClass::FullDegree;
};

// v = (1/2^d) prod (I - i J H_n) (A, B); proportionality to (1, i), (1, -i)
// or vanishing signals coefficient dropout in E(0, z).
inline DegeneracyReport degeneracy_test(const HamiltonianSeq& hseq, double A, double B,
                                        double tol = 1e-9) {
    std::array<cplx, 2> v{cplx(A, 0.0), cplx(B, 0.0)};
    double growth = 1.0;
    for (int n = hseq.d; n >= 1; --n) {
        const Sym2& h = hseq.H[static_cast<size_t>(n - 1)];
        // I - iJH = [[1 + i beta, i gamma], [-i alpha, 1 - i beta]]
        const cplx v0 = cplx(1.0, h.beta) * v[0] + cplx(0.0, h.gamma) * v[1];
        const cplx v1 = cplx(0.0, -h.alpha) * v[0] + cplx(1.0, -h.beta) * v[1];
        v = {0.5 * v0, 0.5 * v1};
        growth *= 1.0 + std::abs(h.alpha) + std::abs(h.beta) + std::abs(h.gamma);
    }
    DegeneracyReport rep;
    rep.vector = v;
    const double vnorm = std::hypot(std::abs(v[0]), std::abs(v[1]));
    const double zero_gate =
        tol * std::ldexp(1.0, -hseq.d) * std::hypot(A, B) * growth;
    if (vnorm <= zero_gate)
        rep.cls = DegeneracyClass::Zero;
    else if (std::abs(v[1] - cplx(0.0, 1.0) * v[0]) <= tol * vnorm)
        rep.cls = DegeneracyClass::PropTo1i;
    else if (std::abs(v[1] + cplx(0.0, 1.0) * v[0]) <= tol * vnorm)
        rep.cls = DegeneracyClass::PropTo1minusI;
    return rep;
}

// Read E(0,z) = A(0,z) - i B(0,z) off piece 1 and fold it back into a
// polynomial via f(e^{-irz}) = e^{-irdz/2} E(0,z). Demands the full
// frequency lattice {L - rj} with nonzero end coefficients.
inline Poly extract_poly(const PiecewiseSolution& sol, double tol = 1e-9) {
    const ExpPoly e = sol.A.front() - sol.B.front().scale(cplx(0.0, 1.0));
    const double gate = tol * (e.norm1() + 1e-300);
    std::vector<cplx> coeffs(static_cast<size_t>(sol.d) + 1);
    for (const auto& [m, c] : e.coeffs()) {
        if (std::abs(c) <= gate) continue;
        // m must equal 2(L - r j) for some 0 <= j <= d
        const int num = 2 * sol.L - m;
        if (num % (2 * sol.r) != 0)
            throw DegenerateSpectrum("frequency off lattice: m = " + std::to_string(m));
        const int j = num / (2 * sol.r);
        if (j < 0 || j > sol.d)
            throw DegenerateSpectrum("frequency outside lattice range: m = " +
                                     std::to_string(m));
        coeffs[static_cast<size_t>(j)] = c;  // C_{L-rj} = a_j of the polynomial
    }
    if (std::abs(coeffs.front()) <= gate || std::abs(coeffs.back()) <= gate)
        throw DegenerateSpectrum("end coefficient vanished");
    return Poly(std::move(coeffs));
}

struct SignatureCount {
    int q = 0;        // number of negative-definite blocks
    int inside = 0;   // d - q
    int flips = 0;    // consecutive definiteness changes, reported only
};

inline SignatureCount signature_count(const HamiltonianSeq& hseq, double tol = 1e-9) {
    SignatureCount out;
    Sym2Class prev = Sym2Class::PosDef;
    for (int n = 1; n <= hseq.d; ++n) {
        const Sym2Class c = sym2_classify(hseq.H[static_cast<size_t>(n - 1)], tol);
        if (c == Sym2Class::NearSingular || c == Sym2Class::Indef)
            throw AmbiguousSignature(n);
        if (c == Sym2Class::NegDef) ++out.q;
        if (n > 1 && c != prev) ++out.flips;
        prev = c;
    }
    out.inside = hseq.d - out.q;
    return out;
}

// Independent finite-difference check that -d/dt (A,B) = z J H(t) (A,B) at
// interior points, central differences with step h.
inline double ode_residual(const HamiltonianSeq& hseq, const PiecewiseSolution& sol,
                           const std::vector<double>& t_grid,
                           const std::vector<cplx>& z_grid, double h = 1e-5) {
    double worst = 0.0;
    for (const double t : t_grid) {
        const double local = std::fmod(t, 0.5 * hseq.r);
        if (t <= 2.0 * h || t >= hseq.L - 2.0 * h || local < 2.0 * h ||
            0.5 * hseq.r - local < 2.0 * h)
            throw GridTouchesJoint(t);
        const Sym2& H = hseq.H[static_cast<size_t>(sol.piece_of(t) - 1)];
        for (const cplx z : z_grid) {
            const cplx dA = (sol.eval_A(t + h, z) - sol.eval_A(t - h, z)) / (2.0 * h);
            const cplx dB = (sol.eval_B(t + h, z) - sol.eval_B(t - h, z)) / (2.0 * h);
            const cplx a = sol.eval_A(t, z);
            const cplx b = sol.eval_B(t, z);
            // z J H (A,B) with J = [[0,-1],[1,0]]
            const cplx r1 = dA + z * (-(H.beta * a + H.gamma * b));
            const cplx r2 = dB + z * (H.alpha * a + H.beta * b);
            const double norm =
                1.0 + std::abs(z) * std::hypot(std::abs(a), std::abs(b));
            worst = std::max(worst, std::hypot(std::abs(r1), std::abs(r2)) / norm);
        }
    }
    return worst;
}

}  // namespace qcs

#endif  // QCS_DIRECT_HPP
