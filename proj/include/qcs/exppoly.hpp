#ifndef QCS_EXPPOLY_HPP
#define QCS_EXPPOLY_HPP

#include <cmath>
#include <complex>
#include <map>

#include "qcs/polycore.hpp"

namespace qcs {

// Finite exponential sum  sum_m c_m e^{i m z / 2}  over a half-step integer
// frequency lattice, so that both parities r = 1, 2 index with integers.
// Zero coefficients are never stored.
class ExpPoly {
public:
    using Map = std::map<int, cplx>;

    ExpPoly() = default;

    static ExpPoly term(int m, cplx c) {
        ExpPoly p;
        p.add_term(m, c);
        return p;
    }
    static ExpPoly constant(cplx c) { return term(0, c); }

    void add_term(int m, cplx c) {
        if (c == 0.0) return;
        auto [it, inserted] = c_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0.0) c_.erase(it);
        }
    }

    const Map& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }

    cplx coeff(int m) const {
        auto it = c_.find(m);
        return it == c_.end() ? cplx{} : it->second;
    }

    cplx eval(cplx z) const {
        cplx s = 0.0;
        for (const auto& [m, c] : c_) s += c * std::exp(cplx(0.0, 0.5 * m) * z);
        return s;
    }

    double norm1() const {
        double s = 0.0;
        for (const auto& [m, c] : c_) s += std::abs(c);
        return s;
    }

    ExpPoly operator+(const ExpPoly& other) const {
        ExpPoly out = *this;
        for (const auto& [m, c] : other.c_) out.add_term(m, c);
        return out;
    }

    ExpPoly operator-(const ExpPoly& other) const {
        ExpPoly out = *this;
        for (const auto& [m, c] : other.c_) out.add_term(m, -c);
        return out;
    }

    ExpPoly operator*(const ExpPoly& other) const {
        ExpPoly out;
        for (const auto& [m1, c1] : c_)
            for (const auto& [m2, c2] : other.c_) out.add_term(m1 + m2, c1 * c2);
        return out;
    }

    ExpPoly scale(cplx s) const {
        ExpPoly out;
        if (s == 0.0) return out;
        for (const auto& [m, c] : c_) out.c_.emplace(m, s * c);
        return out;
    }

    // c_m -> conj(c_{-m}); realizes P^sharp(z) = conj(P(conj z)).
    ExpPoly sharp() const {
        ExpPoly out;
        for (const auto& [m, c] : c_) out.c_.emplace(-m, std::conj(c));
        return out;
    }

    // Shift every frequency by `dm` half-steps (multiplication by e^{i dm z/2}).
    ExpPoly shifted(int dm) const {
        ExpPoly out;
        for (const auto& [m, c] : c_) out.c_.emplace(m + dm, c);
        return out;
    }

    // Drop coefficients at or below tol relative to the l1 norm. Reporting
    // aid only; arithmetic keeps exact cancellation noise.
    ExpPoly clean(double tol) const {
        const double gate = tol * norm1();
        ExpPoly out;
        for (const auto& [m, c] : c_)
            if (std::abs(c) > gate) out.c_.emplace(m, c);
        return out;
    }

    bool real_symmetric(double tol = 0.0) const {
        for (const auto& [m, c] : c_)
            if (std::abs(coeff(-m) - std::conj(c)) > tol * (1.0 + norm1())) return false;
        return true;
    }

private:
    Map c_;
};

// E_C(z) = sum_j C_{L-rj} e^{i(L-rj)z}; frequency L-rj sits at half-step
// index 2(L-rj).
inline ExpPoly from_seq(const CoeffSeq& s) {
    ExpPoly e;
    for (int j = 0; j <= s.d; ++j)
        e.add_term(2 * (s.L - s.r * j), s.c[static_cast<size_t>(j)]);
    return e;
}

struct ABPair {
    ExpPoly A, B;
};

// A = (E + E^sharp)/2, B = (i/2)(E - E^sharp); both real on the real axis.
inline ABPair ab_split(const ExpPoly& e) {
    const ExpPoly es = e.sharp();
    return {(e + es).scale(0.5), (e - es).scale(cplx(0.0, 0.5))};
}

}  // namespace qcs

#endif  // QCS_EXPPOLY_HPP
