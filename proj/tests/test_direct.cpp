#include <catch2/catch_amalgamated.hpp>

#include "qcs/corpus.hpp"
#include "qcs/direct.hpp"

using namespace qcs;
using Catch::Approx;

namespace {

CoeffSeq make_seq(std::vector<cplx> c) {
    CoeffSeq s;
    s.d = static_cast<int>(c.size()) - 1;
    std::tie(s.L, s.r) = CoeffSeq::lattice(s.d);
    s.c = std::move(c);
    return s;
}

// Scale-invariant coefficient distance between two polynomials.
double poly_distance_up_to_scale(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return 1e300;
    // match on the largest coefficient of a
    int kbest = 0;
    for (int k = 0; k <= a.degree(); ++k)
        if (std::abs(a.coeff(k)) > std::abs(a.coeff(kbest))) kbest = k;
    const cplx s = b.coeff(kbest) / a.coeff(kbest);
    double worst = 0.0, scale = 0.0;
    for (int k = 0; k <= a.degree(); ++k) {
        worst = std::max(worst, std::abs(s * a.coeff(k) - b.coeff(k)));
        scale = std::max(scale, std::abs(b.coeff(k)));
    }
    return worst / scale;
}

}  // namespace

TEST_CASE("transfer block is the cos/sin matrix and unimodular") {
    Sym2 h{1.0 / 3.0, 0.0, 3.0};
    TransferBlock t = transfer_block(h, 2);
    for (const cplx z : {cplx(0.7, 0.0), cplx(0.3, -0.6), cplx(-1.2, 0.4)}) {
        const cplx c = std::cos(z), s = std::sin(z);  // l = r/2 = 1
        REQUIRE(std::abs(t(0, 0).eval(z) - c) < 1e-14);
        REQUIRE(std::abs(t(0, 1).eval(z) - (-3.0 * s)) < 1e-14);
        REQUIRE(std::abs(t(1, 0).eval(z) - s / 3.0) < 1e-14);
        REQUIRE(std::abs(t(1, 1).eval(z) - c) < 1e-14);
        REQUIRE(std::abs(t.det().eval(z) - 1.0) < 1e-13);
    }
    REQUIRE_THROWS_AS(transfer_block(Sym2{1.0, 0.0, 2.0}, 2), NotUnimodular);
}

TEST_CASE("frozen d=1 piecewise solution") {
    HamiltonianSeq hs;
    hs.d = 1;
    std::tie(hs.L, hs.r) = CoeffSeq::lattice(1);
    hs.H = {Sym2{1.0 / 3.0, 0.0, 3.0}};
    PiecewiseSolution sol = solve_direct(hs, 1.5, 0.0);
    // A(t,z) = 1.5 cos((1-t)z), B(t,z) = 0.5 sin((1-t)z) on [0,1]
    for (double t : {0.0, 0.25, 0.6, 0.95}) {
        for (const cplx z : {cplx(0.8, 0.0), cplx(0.2, 0.5)}) {
            REQUIRE(std::abs(sol.eval_A(t, z) - 1.5 * std::cos((1.0 - t) * z)) < 1e-13);
            REQUIRE(std::abs(sol.eval_B(t, z) - 0.5 * std::sin((1.0 - t) * z)) < 1e-13);
        }
    }
    // E(0,z) = 0.5 e^{iz} + e^{-iz}
    const cplx z(0.4, 0.3);
    const cplx e0 = sol.eval_E(0.0, z);
    const cplx want = 0.5 * std::exp(cplx(0.0, 1.0) * z) + std::exp(cplx(0.0, -1.0) * z);
    REQUIRE(std::abs(e0 - want) < 1e-13);

    Poly f = extract_poly(sol);
    REQUIRE(f.degree() == 1);
    REQUIRE(std::abs(f.coeff(0) - cplx(0.5)) < 1e-12);
    REQUIRE(std::abs(f.coeff(1) - cplx(1.0)) < 1e-12);
}

TEST_CASE("zero boundary rejected") {
    HamiltonianSeq hs;
    hs.d = 1;
    std::tie(hs.L, hs.r) = CoeffSeq::lattice(1);
    hs.H = {Sym2{1.0, 0.0, 1.0}};
    REQUIRE_THROWS_AS(solve_direct(hs, 0.0, 0.0), ZeroBoundary);
}

TEST_CASE("roundtrip reproduces the polynomial up to scale") {
    CorpusGen gen(211);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + trial % 6;
        CoeffSeq s = gen.random_seq(d);
        HamiltonianSeq h = hamiltonian_linear(s);
        // right-endpoint boundary is the constant pair (Re E(0), -Im E(0))
        cplx e0 = 0.0;
        for (const auto& c : s.c) e0 += c;
        PiecewiseSolution sol = solve_direct(h, e0.real(), -e0.imag());
        Poly f = extract_poly(sol);
        REQUIRE(poly_distance_up_to_scale(f, seq_to_poly(s)) < 1e-8);
    }
}

TEST_CASE("degeneracy classes on the frozen examples") {
    auto seq_of = [](std::vector<Sym2> blocks) {
        HamiltonianSeq hs;
        hs.d = static_cast<int>(blocks.size());
        std::tie(hs.L, hs.r) = CoeffSeq::lattice(hs.d);
        hs.H = std::move(blocks);
        return hs;
    };
    // single identity block: v proportional to (1, -i)
    REQUIRE(degeneracy_test(seq_of({Sym2{1, 0, 1}}), 1.0, 0.0).cls ==
            DegeneracyClass::PropTo1minusI);
    // (I, -I): the product annihilates every boundary vector
    REQUIRE(degeneracy_test(seq_of({Sym2{1, 0, 1}, Sym2{-1, 0, -1}}), 1.0, 0.0).cls ==
            DegeneracyClass::Zero);
    // diagonal block with gamma != 1: nothing degenerates
    REQUIRE(degeneracy_test(seq_of({Sym2{0.5, 0, 2.0}}), 1.0, 0.0).cls ==
            DegeneracyClass::FullDegree);
}

TEST_CASE("degenerate spectrum detected on extraction") {
    HamiltonianSeq hs;
    hs.d = 1;
    std::tie(hs.L, hs.r) = CoeffSeq::lattice(1);
    hs.H = {Sym2{1.0, 0.0, 1.0}};
    // identity block drops the top frequency: E(0,z) = e^{-iz} only
    PiecewiseSolution sol = solve_direct(hs, 1.0, 0.0);
    REQUIRE_THROWS_AS(extract_poly(sol), DegenerateSpectrum);
    REQUIRE(degeneracy_test(hs, 1.0, 0.0).cls != DegeneracyClass::FullDegree);
}

TEST_CASE("signature count matches the determinant sign changes") {
    Poly f({cplx(-0.8), cplx(-1.6), cplx(1.0)});
    CoeffSeq s = poly_to_seq(f);
    HamiltonianSeq h = hamiltonian_linear(s);
    SignatureCount sig = signature_count(h);
    REQUIRE(sig.q == 1);
    REQUIRE(sig.inside == 1);
    InsideCount ic = count_inside(schur_cohn_sequence(f));
    REQUIRE(sig.q == ic.q);
}

TEST_CASE("indefinite block makes the signature ambiguous") {
    HamiltonianSeq hs;
    hs.d = 1;
    std::tie(hs.L, hs.r) = CoeffSeq::lattice(1);
    hs.H = {Sym2{1.0, 0.0, -1.0}};
    REQUIRE_THROWS_AS(signature_count(hs), AmbiguousSignature);
}

TEST_CASE("finite differences satisfy the first-order system") {
    CorpusGen gen(223);
    CoeffSeq s = gen.random_seq(4);
    HamiltonianSeq h = hamiltonian_linear(s);
    PiecewiseSolution sol = solve_direct(h, 1.0, 0.0);
    std::vector<double> ts;
    for (int n = 1; n <= h.d; ++n) ts.push_back(sol.piece_start(n) + 0.2 * h.r);
    std::vector<cplx> zs{cplx(1.0, 0.0), cplx(0.5, 0.5), cplx(-1.3, 0.2)};
    REQUIRE(ode_residual(h, sol, ts, zs) < 1e-6);
    REQUIRE_THROWS_AS(ode_residual(h, sol, {sol.piece_start(2)}, zs),
                      GridTouchesJoint);
}

TEST_CASE("continuity across joints at random arguments") {
    CorpusGen gen(227);
    CoeffSeq s = gen.random_seq(5);
    HamiltonianSeq h = hamiltonian_linear(s);
    PiecewiseSolution sol = solve_direct(h, 1.0, 0.0);
    double scale = 1.0;
    for (int n = 1; n <= h.d; ++n)
        scale = std::max(scale, sol.A[static_cast<size_t>(n - 1)].norm1() +
                                    sol.B[static_cast<size_t>(n - 1)].norm1());
    const double eps = 1e-9;
    for (int n = 2; n <= h.d; ++n) {
        const double tj = sol.piece_start(n);
        for (const cplx z : {cplx(0.9, 0.0), cplx(0.2, 0.4)}) {
            REQUIRE(std::abs(sol.eval_A(tj - eps, z) - sol.eval_A(tj + eps, z)) <
                    1e-6 * scale);
            REQUIRE(std::abs(sol.eval_B(tj - eps, z) - sol.eval_B(tj + eps, z)) <
                    1e-6 * scale);
        }
    }
    // E(t, 0) is constant in t
    const cplx e0 = sol.eval_E(0.0, 0.0);
    for (double t : {0.3, 1.7, 2.2})
        REQUIRE(std::abs(sol.eval_E(t, 0.0) - e0) < 1e-12 * scale);
}
