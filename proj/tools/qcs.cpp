// qcs: command-line front end for the polynomial <-> Hamiltonian pipeline.
// All structured output is JSON on stdout except `sample`, which emits CSV.
// Errors exit 1 with {"error": {"kind", "detail"}}.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcs/corpus.hpp"
#include "qcs/direct.hpp"
#include "qcs/inverse.hpp"
#include "qcs/json_io.hpp"

using namespace qcs;

namespace {

struct CliError : std::runtime_error {
    std::string kind;
    CliError(std::string k, const std::string& detail)
        : std::runtime_error(detail), kind(std::move(k)) {}
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("io", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw CliError("parse", path + ": " + e.what());
    }
}

struct Inputs {
    std::string poly_path, seq_path, ham_path;
    std::vector<double> boundary{1.0, 0.0};
    double tol_degeneracy = 1e-9;
    double tol_proportionality = 1e-9;
    double tol_residual = 1e-8;
    bool normalize = false;

    CoeffSeq load_seq() const {
        if (!poly_path.empty() && !seq_path.empty())
            throw CliError("usage", "give either --poly or --seq, not both");
        CoeffSeq s;
        if (!poly_path.empty()) {
            s = poly_to_seq(poly_from_json(read_json_file(poly_path)));
        } else if (!seq_path.empty()) {
            s = seq_from_json(read_json_file(seq_path));
        } else {
            throw CliError("usage", "need --poly or --seq");
        }
        if (normalize) {
            cplx sum = 0.0;
            for (const auto& c : s.c) sum += c;
            if (std::abs(sum) < 1e-14)
                throw CliError("normalize", "coefficient sum vanishes; E(0) = 0");
            for (auto& c : s.c) c /= sum;
        }
        return s;
    }

    HamiltonianSeq load_ham() const {
        if (ham_path.empty()) throw CliError("usage", "need --hamiltonians");
        return hamiltonians_from_json(read_json_file(ham_path));
    }
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_count_roots(const Inputs& in) {
    const CoeffSeq s = in.load_seq();
    const SchurCohnSeq sc = schur_cohn_sequence(seq_to_poly(s), in.tol_degeneracy);
    const InsideCount c = count_inside(sc);
    emit(json{{"D", sc.D}, {"q", c.q}, {"inside", c.inside}});
    return 0;
}

int cmd_hamiltonian(const Inputs& in, const std::string& method) {
    const CoeffSeq s = in.load_seq();
    if (method == "linear") {
        emit(to_json(hamiltonian_linear(s, in.tol_degeneracy)));
    } else if (method == "inductive") {
        emit(to_json(hamiltonian_inductive(s, OmegaOrdering::Theorem,
                                           in.tol_degeneracy)
                         .hseq));
    } else if (method == "both") {
        const HamiltonianSeq lin = hamiltonian_linear(s, in.tol_degeneracy);
        const HamiltonianSeq ind =
            hamiltonian_inductive(s, OmegaOrdering::Theorem, in.tol_degeneracy).hseq;
        double gap = 0.0;
        for (int n = 0; n < s.d; ++n) {
            const Sym2& a = lin.H[static_cast<size_t>(n)];
            const Sym2& b = ind.H[static_cast<size_t>(n)];
            const double scale =
                1.0 + std::abs(a.alpha) + std::abs(a.beta) + std::abs(a.gamma);
            gap = std::max({gap, std::abs(a.alpha - b.alpha) / scale,
                            std::abs(a.beta - b.beta) / scale,
                            std::abs(a.gamma - b.gamma) / scale});
        }
        emit(json{{"linear", to_json(lin)},
                  {"inductive", to_json(ind)},
                  {"max_block_gap", gap}});
    } else {
        throw CliError("usage", "method must be linear, inductive, or both");
    }
    return 0;
}

int cmd_reconstruct(const Inputs& in) {
    const HamiltonianSeq h = in.load_ham();
    const double A = in.boundary[0], B = in.boundary[1];
    const DegeneracyReport deg =
        degeneracy_test(h, A, B, in.tol_proportionality);
    json out{{"class", to_string(deg.cls)},
             {"vector", json::array({to_json(deg.vector[0]), to_json(deg.vector[1])})}};
    if (deg.cls == DegeneracyClass::FullDegree) {
        const PiecewiseSolution sol = solve_direct(h, A, B, in.tol_degeneracy);
        Poly f = extract_poly(sol, in.tol_residual);
        if (in.normalize) {
            cplx e0 = 0.0;  // E(0) is the coefficient sum
            for (const auto& x : f.coeffs()) e0 += x;
            if (std::abs(e0) < 1e-14)
                throw CliError("normalize", "reconstructed E(0) vanishes");
            std::vector<cplx> c = f.coeffs();
            for (auto& x : c) x /= e0;
            f = Poly(std::move(c));
        }
        out["poly"] = to_json(f);
        const SignatureCount sig = signature_count(h, in.tol_degeneracy);
        out["q"] = sig.q;
        out["inside"] = sig.inside;
        out["flips"] = sig.flips;
    }
    emit(out);
    return 0;
}

int cmd_roundtrip(const Inputs& in) {
    const CoeffSeq s = in.load_seq();
    const HamiltonianSeq h = hamiltonian_linear(s, in.tol_degeneracy);
    cplx bnd = 0.0;  // right-endpoint boundary (Re E(0), -Im E(0))
    for (const auto& c : s.c) bnd += c;
    const PiecewiseSolution sol =
        solve_direct(h, bnd.real(), -bnd.imag(), in.tol_degeneracy);
    const Poly f = extract_poly(sol, in.tol_residual);
    const Poly g = seq_to_poly(s);
    if (f.degree() != g.degree())
        throw CliError("roundtrip", "degree changed across the roundtrip");
    int kbest = 0;
    for (int k = 0; k <= f.degree(); ++k)
        if (std::abs(f.coeff(k)) > std::abs(f.coeff(kbest))) kbest = k;
    const cplx scale = g.coeff(kbest) / f.coeff(kbest);
    double worst = 0.0, mag = 0.0;
    for (int k = 0; k <= f.degree(); ++k) {
        worst = std::max(worst, std::abs(scale * f.coeff(k) - g.coeff(k)));
        mag = std::max(mag, std::abs(g.coeff(k)));
    }
    emit(json{{"max_coeff_error", worst / mag},
              {"scale", to_json(scale)},
              {"degree", f.degree()}});
    return 0;
}

int cmd_oracle(const Inputs& in) {
    const CoeffSeq s = in.load_seq();
    const RootReport rep = find_roots(seq_to_poly(s));
    json roots = json::array();
    for (const auto& z : rep.roots) roots.push_back(to_json(z));
    emit(json{{"roots", roots},
              {"inside", rep.inside},
              {"outside", rep.outside},
              {"min_circle_distance", rep.min_circle_distance},
              {"on_circle_ambiguous", rep.on_circle_ambiguous}});
    return 0;
}

int cmd_verify_identities(const Inputs& in) {
    const CoeffSeq s = in.load_seq();
    const Poly f = seq_to_poly(s);
    json rows = json::array();
    for (int n = 1; n <= s.d; ++n) {
        const IdentityPair a = identity_eq320(s, n, in.tol_degeneracy);
        const IdentityPair b = identity_eq322(s, n, in.tol_degeneracy);
        const cplx dp = det(build_L(f, n, LSign::Plus));
        const cplx dm = det(build_L(f, n, LSign::Minus));
        rows.push_back(json{
            {"n", n},
            {"column_identity",
             {{"lhs", to_json(a.lhs)},
              {"rhs", to_json(a.rhs)},
              {"residual", std::abs(a.lhs - a.rhs) / (1.0 + std::abs(a.rhs))}}},
            {"product_identity",
             {{"lhs", to_json(b.lhs)},
              {"rhs", to_json(b.rhs)},
              {"residual", std::abs(b.lhs - b.rhs) / (1.0 + std::abs(b.rhs))}}},
            {"det_sign_gap", std::abs(dp - dm) / (1.0 + std::abs(dp))}});
    }
    emit(json{{"identities", rows}});
    return 0;
}

int cmd_sample(const Inputs& in, int count) {
    const HamiltonianSeq h = in.load_ham();
    const PiecewiseSolution sol =
        solve_direct(h, in.boundary[0], in.boundary[1], in.tol_degeneracy);
    std::printf("t,x,A,B,absE\n");
    const int tn = std::max(count, 2);
    for (int i = 0; i < tn; ++i) {
        // stay strictly inside the pieces
        const double t = h.L * (i + 0.5) / tn;
        for (int j = 0; j <= 24; ++j) {
            const double x = -3.0 + 0.25 * j;
            const cplx a = sol.eval_A(t, x), b = sol.eval_B(t, x);
            std::printf("%.12g,%.12g,%.12g,%.12g,%.12g\n", t, x, a.real(), b.real(),
                        std::abs(a - cplx(0.0, 1.0) * b));
        }
    }
    return 0;
}

int cmd_corpus(uint64_t seed, int count, int dmax, const Inputs& in) {
    CorpusGen gen(seed);
    int pass = 0;
    json fails = json::array();
    for (int i = 0; i < count; ++i) {
        const int d = 1 + static_cast<int>(static_cast<uint64_t>(i) % dmax);
        std::string why;
        try {
            const CoeffSeq s = gen.random_seq(d);
            const HamiltonianSeq lin = hamiltonian_linear(s, in.tol_degeneracy);
            const HamiltonianSeq ind =
                hamiltonian_inductive(s, OmegaOrdering::Theorem, in.tol_degeneracy)
                    .hseq;
            for (int n = 0; n < d && why.empty(); ++n) {
                const Sym2& a = lin.H[static_cast<size_t>(n)];
                const Sym2& b = ind.H[static_cast<size_t>(n)];
                const double scale =
                    1.0 + std::abs(a.alpha) + std::abs(a.beta) + std::abs(a.gamma);
                if (std::abs(a.alpha - b.alpha) > 1e-8 * scale ||
                    std::abs(a.beta - b.beta) > 1e-8 * scale ||
                    std::abs(a.gamma - b.gamma) > 1e-8 * scale)
                    why = "path disagreement at block " + std::to_string(n + 1);
                if (std::abs(a.det() - 1.0) >
                    1e-9 * (1.0 + std::abs(a.alpha) + std::abs(a.gamma)))
                    why = "non-unimodular block " + std::to_string(n + 1);
            }
            if (why.empty()) {
                cplx bnd = 0.0;
                for (const auto& c : s.c) bnd += c;
                const PiecewiseSolution sol =
                    solve_direct(lin, bnd.real(), -bnd.imag(), in.tol_degeneracy);
                const Poly f = extract_poly(sol, in.tol_residual);
                const Poly g = seq_to_poly(s);
                int kbest = 0;
                for (int k = 0; k <= d; ++k)
                    if (std::abs(f.coeff(k)) > std::abs(f.coeff(kbest))) kbest = k;
                const cplx scale = g.coeff(kbest) / f.coeff(kbest);
                double worst = 0.0, mag = 0.0;
                for (int k = 0; k <= d; ++k) {
                    worst = std::max(worst, std::abs(scale * f.coeff(k) - g.coeff(k)));
                    mag = std::max(mag, std::abs(g.coeff(k)));
                }
                if (worst > 1e-8 * mag) why = "roundtrip error too large";
            }
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (why.empty())
            ++pass;
        else
            fails.push_back(json{{"index", i}, {"reason", why}});
    }
    emit(json{{"count", count}, {"pass", pass}, {"fail", count - pass},
              {"failures", fails}});
    return (count == pass) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial <-> piecewise-constant Hamiltonian pipeline"};
    app.require_subcommand(1);

    Inputs in;
    std::string method = "linear";
    uint64_t seed = 1;
    int count = 50;
    int dmax = 8;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--poly", in.poly_path, "polynomial JSON file");
        sub->add_option("--seq", in.seq_path, "coefficient sequence JSON file");
        sub->add_option("--hamiltonians", in.ham_path, "Hamiltonian blocks JSON file");
        sub->add_option("--boundary", in.boundary, "boundary values A B")
            ->expected(2);
        sub->add_option("--tol-degeneracy", in.tol_degeneracy);
        sub->add_option("--tol-proportionality", in.tol_proportionality);
        sub->add_option("--tol-residual", in.tol_residual);
        sub->add_flag("--normalize", in.normalize, "scale so E(0) = 1");
    };

    CLI::App* c_count = app.add_subcommand("count-roots");
    CLI::App* c_ham = app.add_subcommand("hamiltonian");
    c_ham->add_option("--method", method, "linear | inductive | both");
    CLI::App* c_rec = app.add_subcommand("reconstruct");
    CLI::App* c_rt = app.add_subcommand("roundtrip");
    CLI::App* c_or = app.add_subcommand("oracle");
    CLI::App* c_ver = app.add_subcommand("verify-identities");
    CLI::App* c_smp = app.add_subcommand("sample");
    c_smp->add_option("--count", count, "number of t samples");
    CLI::App* c_cor = app.add_subcommand("corpus");
    c_cor->add_option("--seed", seed, "corpus seed");
    c_cor->add_option("--count", count, "number of instances");
    c_cor->add_option("--dmax", dmax, "maximum degree");
    for (CLI::App* sub : {c_count, c_ham, c_rec, c_rt, c_or, c_ver, c_smp, c_cor})
        add_common(sub);

    CLI11_PARSE(app, argc, argv);

    auto fail = [](const std::string& kind, const std::string& detail) {
        std::cout << json{{"error", {{"kind", kind}, {"detail", detail}}}}.dump(2)
                  << "\n";
        return 1;
    };

    try {
        if (c_count->parsed()) return cmd_count_roots(in);
        if (c_ham->parsed()) return cmd_hamiltonian(in, method);
        if (c_rec->parsed()) return cmd_reconstruct(in);
        if (c_rt->parsed()) return cmd_roundtrip(in);
        if (c_or->parsed()) return cmd_oracle(in);
        if (c_ver->parsed()) return cmd_verify_identities(in);
        if (c_smp->parsed()) return cmd_sample(in, count);
        if (c_cor->parsed()) return cmd_corpus(seed, count, dmax, in);
    } catch (const CliError& e) {
        return fail(e.kind, e.what());
    } catch (const DegenerateSequence& e) {
        return fail("degenerate", e.what());
    } catch (const DegenerateDn& e) {
        return fail("degenerate", e.what());
    } catch (const DegenerateSpectrum& e) {
        return fail("degenerate-spectrum", e.what());
    } catch (const AmbiguousSignature& e) {
        return fail("ambiguous-signature", e.what());
    } catch (const NoConvergence& e) {
        return fail("no-convergence", e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
