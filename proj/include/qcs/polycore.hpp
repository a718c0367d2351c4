#ifndef QCS_POLYCORE_HPP
#define QCS_POLYCORE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qcs/numkernel.hpp"

namespace qcs {

struct ZeroEndCoefficient : std::runtime_error {
    ZeroEndCoefficient()
        : std::runtime_error("polynomial has a zero end coefficient (a_0 or a_d)") {}
};

struct NoConvergence : std::runtime_error {
    double worst_residual;
    explicit NoConvergence(double res)
        : std::runtime_error("root finder did not converge"), worst_residual(res) {}
};

// Complex polynomial a_0 + a_1 x + ... + a_d x^d, trailing zeros trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)]
                                                          : cplx{};
    }

    cplx eval(cplx x) const {
        cplx s = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
        return s;
    }

    double coeff_abs_sum() const {
        double s = 0.0;
        for (const auto& a : c_) s += std::abs(a);
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
    std::vector<cplx> c_;
};

// f^sharp: coefficients conjugate-reversed. Degree may drop when a_0 = 0.
inline Poly sharp(const Poly& f) {
    const int d = f.degree();
    std::vector<cplx> b(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) b[static_cast<size_t>(k)] = std::conj(f.coeff(d - k));
    return Poly(std::move(b));
}

// The coefficient sequence (C_L, C_{L-r}, ..., C_{-L}) with (L,r) fixed by the
// parity of d: (d/2, 1) for even d, (d, 2) for odd d, so 2L = rd.
struct CoeffSeq {
    int d = 0;
    int L = 0;
    int r = 0;
    std::vector<cplx> c;  // c[j] = C_{L - r*j}, j = 0..d

    static std::pair<int, int> lattice(int d) {
        return (d % 2 == 0) ? std::pair<int, int>{d / 2, 1} : std::pair<int, int>{d, 2};
    }

    cplx C_L() const { return c.front(); }
    cplx C_mL() const { return c.back(); }
};

// a_k = C_{L - r k}: the polynomial coefficient of T^k and the sequence entry
// at frequency L - rk are the same number.
inline CoeffSeq poly_to_seq(const Poly& f, bool strict = true) {
    const int d = f.degree();
    if (d < 1) throw std::invalid_argument("poly_to_seq: degree must be >= 1");
    if (strict && (f.coeff(0) == 0.0 || f.coeff(d) == 0.0)) throw ZeroEndCoefficient();
    CoeffSeq s;
    s.d = d;
    std::tie(s.L, s.r) = CoeffSeq::lattice(d);
    s.c.resize(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) s.c[static_cast<size_t>(k)] = f.coeff(k);
    return s;
}

inline Poly seq_to_poly(const CoeffSeq& s) {
    return Poly(s.c);
}

struct RootReport {
    std::vector<cplx> roots;
    int inside = 0;
    int outside = 0;
    double min_circle_distance = 0.0;
    bool on_circle_ambiguous = false;
};

// Aberth-Ehrlich simultaneous iteration. Used only as an independent oracle
// against the determinant-based counts; never feeds the Hamiltonian paths.
inline RootReport find_roots(const Poly& f, double tol = 1e-12, int max_iter = 500,
                             double tol_circle = 1e-7) {
    const int d = f.degree();
    if (d < 1) throw std::invalid_argument("find_roots: degree must be >= 1");

    // Strip zero roots at the origin first; Aberth handles the rest.
    int zero_roots = 0;
    std::vector<cplx> c = f.coeffs();
    while (zero_roots < d && c[static_cast<size_t>(zero_roots)] == 0.0) ++zero_roots;
    std::vector<cplx> cc(c.begin() + zero_roots, c.end());
    const int m = static_cast<int>(cc.size()) - 1;

    std::vector<cplx> roots(static_cast<size_t>(m));
    if (m > 0) {
        const double radius = std::pow(std::abs(cc.front() / cc.back()), 1.0 / m);
        const double r0 = (radius > 0.0 && std::isfinite(radius)) ? radius : 1.0;
        for (int k = 0; k < m; ++k) {
            const double theta =
                2.0 * std::numbers::pi * k / m + 0.3;  // offset breaks symmetry lock
            roots[static_cast<size_t>(k)] = r0 * cplx(std::cos(theta), std::sin(theta));
        }

        Poly g(cc);
        std::vector<cplx> dcoef(cc.size() - 1);
        for (size_t k = 1; k < cc.size(); ++k)
            dcoef[k - 1] = cc[k] * static_cast<double>(k);
        Poly gp(dcoef);

        const double csum = g.coeff_abs_sum();
        double worst = 0.0;
        bool done = false;
        for (int it = 0; it < max_iter && !done; ++it) {
            done = true;
            worst = 0.0;
            for (int k = 0; k < m; ++k) {
                const cplx z = roots[static_cast<size_t>(k)];
                const cplx fv = g.eval(z);
                const double bound =
                    tol * csum * std::pow(std::max(1.0, std::abs(z)), m);
                worst = std::max(worst, std::abs(fv));
                if (std::abs(fv) <= bound) continue;
                const cplx fpv = gp.eval(z);
                cplx sum = 0.0;
                for (int j = 0; j < m; ++j)
                    if (j != k) sum += 1.0 / (z - roots[static_cast<size_t>(j)]);
                const cplx newton = fv / fpv;
                const cplx step = newton / (1.0 - newton * sum);
                roots[static_cast<size_t>(k)] = z - step;
                done = false;
            }
        }
        // Final residual check at the settled points.
        for (int k = 0; k < m; ++k) {
            const cplx z = roots[static_cast<size_t>(k)];
            const double bound = tol * csum * std::pow(std::max(1.0, std::abs(z)), m);
            if (std::abs(g.eval(z)) > bound * 1e3)
                throw NoConvergence(std::abs(g.eval(z)));
        }
    }
    for (int k = 0; k < zero_roots; ++k) roots.push_back(0.0);

    RootReport rep;
    rep.roots = roots;
    rep.min_circle_distance = std::numeric_limits<double>::infinity();
    for (const auto& z : roots) {
        const double dist = std::abs(std::abs(z) - 1.0);
        rep.min_circle_distance = std::min(rep.min_circle_distance, dist);
        if (std::abs(z) < 1.0)
            ++rep.inside;
        else
            ++rep.outside;
    }
    if (rep.min_circle_distance <= tol_circle) rep.on_circle_ambiguous = true;
    return rep;
}

}  // namespace qcs

#endif  // QCS_POLYCORE_HPP
