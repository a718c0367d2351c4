#ifndef QCS_CORPUS_HPP
#define QCS_CORPUS_HPP

#include <random>
#include <stdexcept>

#include "qcs/polycore.hpp"
#include "qcs/schurcohn.hpp"

namespace qcs {

// Seeded generators for verification sweeps. Coefficients are i.i.d. complex
// standard normal, rejection-resampled until every |D_n| clears the
// degeneracy gate, so downstream theorem hypotheses hold by construction.
class CorpusGen {
public:
    explicit CorpusGen(uint64_t seed) : rng_(seed) {}

    cplx normal() { return {gauss_(rng_), gauss_(rng_)}; }

    CoeffSeq random_seq(int d, double gate = 1e-6, int max_tries = 1000) {
        for (int tries = 0; tries < max_tries; ++tries) {
            CoeffSeq s;
            s.d = d;
            std::tie(s.L, s.r) = CoeffSeq::lattice(d);
            s.c.resize(static_cast<size_t>(d) + 1);
            for (auto& c : s.c) c = normal();
            if (std::abs(s.C_L()) < 0.1 || std::abs(s.C_mL()) < 0.1) continue;
            if (non_degenerate(seq_to_poly(s), gate)) return s;
        }
        throw std::runtime_error("corpus: rejection sampling exhausted");
    }

    // Polynomial with roots sampled away from the unit circle by at least
    // `band`; returns the expected inside count alongside.
    std::pair<Poly, int> random_rooted_poly(int d, double band = 0.05) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        while (true) {
            std::vector<cplx> roots;
            int inside = 0;
            for (int k = 0; k < d; ++k) {
                double rho;
                do {
                    rho = 2.0 * unit(rng_);
                } while (std::abs(rho - 1.0) < band);
                const double theta = 2.0 * std::numbers::pi * unit(rng_);
                roots.emplace_back(rho * std::cos(theta), rho * std::sin(theta));
                if (rho < 1.0) ++inside;
            }
            std::vector<cplx> c{1.0};
            for (const auto& rho : roots) {
                c.push_back(0.0);
                for (size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - rho * c[j];
                c[0] *= -rho;
            }
            Poly f{std::move(c)};
            if (f.coeff(0) != 0.0) return {f, inside};
        }
    }

    static bool non_degenerate(const Poly& f, double gate = 1e-6) {
        return schur_cohn_sequence(f, gate).degenerate_indices.empty();
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace qcs

#endif  // QCS_CORPUS_HPP
