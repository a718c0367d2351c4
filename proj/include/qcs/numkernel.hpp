#ifndef QCS_NUMKERNEL_HPP
#define QCS_NUMKERNEL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcs {

using cplx = std::complex<double>;

struct SingularMatrix : std::runtime_error {
    int pivot_index;
    explicit SingularMatrix(int k)
        : std::runtime_error("singular matrix: pivot " + std::to_string(k) +
                             " below tolerance"),
          pivot_index(k) {}
};

// Dense complex matrix, row-major. Everything here is tiny (order <= 4(d+1)),
// so no blocking or structure exploitation.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    void set_column(int j, const std::vector<cplx>& col) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = col[static_cast<size_t>(i)];
    }

    CMatrix operator*(const CMatrix& other) const {
        CMatrix out(rows_, other.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const cplx aik = (*this)(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < other.cols_; ++j) out(i, j) += aik * other(k, j);
            }
        return out;
    }

    std::vector<cplx> operator*(const std::vector<cplx>& v) const {
        std::vector<cplx> out(static_cast<size_t>(rows_));
        for (int i = 0; i < rows_; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[static_cast<size_t>(j)];
            out[static_cast<size_t>(i)] = s;
        }
        return out;
    }

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

struct LuResult {
    cplx det;
    std::optional<std::vector<cplx>> solution;
};

inline constexpr double kEpsPivot = 1e-13;

// LU with partial (row) pivoting; determinant is the pivot product times the
// permutation sign. A pivot below eps_pivot relative to the largest initial
// row norm raises SingularMatrix.
inline LuResult lu_det_solve(CMatrix m,
                             std::optional<std::vector<cplx>> rhs = std::nullopt,
                             double eps_pivot = kEpsPivot) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("lu_det_solve: matrix must be square");
    const int n = m.rows();
    if (rhs && static_cast<int>(rhs->size()) != n)
        throw std::invalid_argument("lu_det_solve: rhs length mismatch");

    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        double rnorm = 0.0;
        for (int j = 0; j < n; ++j) rnorm = std::max(rnorm, std::abs(m(i, j)));
        scale = std::max(scale, rnorm);
    }
    if (scale == 0.0) throw SingularMatrix(0);

    std::vector<cplx> x;
    if (rhs) x = *rhs;
    cplx det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(m(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best <= eps_pivot * scale) throw SingularMatrix(k);
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(m(k, j), m(piv, j));
            if (rhs) std::swap(x[static_cast<size_t>(k)], x[static_cast<size_t>(piv)]);
            det = -det;
        }
        det *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = m(i, k) / m(k, k);
            m(i, k) = f;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
            if (rhs) x[static_cast<size_t>(i)] -= f * x[static_cast<size_t>(k)];
        }
    }
    LuResult out{det, std::nullopt};
    if (rhs) {
        for (int i = n - 1; i >= 0; --i) {
            cplx s = x[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j) s -= m(i, j) * x[static_cast<size_t>(j)];
            x[static_cast<size_t>(i)] = s / m(i, i);
        }
        out.solution = std::move(x);
    }
    return out;
}

inline cplx det(const CMatrix& m, double eps_pivot = kEpsPivot) {
    return lu_det_solve(m, std::nullopt, eps_pivot).det;
}

// Real symmetric 2x2 block [[alpha, beta],[beta, gamma]].
struct Sym2 {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;

    double det() const { return alpha * gamma - beta * beta; }
    double trace() const { return alpha + gamma; }

    // Closed-form eigenvalues, ascending.
    std::pair<double, double> eigenvalues() const {
        const double mid = 0.5 * (alpha + gamma);
        const double rad = std::hypot(0.5 * (alpha - gamma), beta);
        return {mid - rad, mid + rad};
    }

    Sym2 operator-() const { return {-alpha, -beta, -gamma}; }
    Sym2 scaled(double s) const { return {s * alpha, s * beta, s * gamma}; }
};

enum class Sym2Class { PosDef, NegDef, Indef, NearSingular };

inline const char* to_string(Sym2Class c) {
    switch (c) {
        case Sym2Class::PosDef: return "PosDef";
        case Sym2Class::NegDef: return "NegDef";
        case Sym2Class::Indef: return "Indef";
        case Sym2Class::NearSingular: return "NearSingular";
    }
    return "?";
}

inline Sym2Class sym2_classify(const Sym2& s, double tol = 1e-9) {
    const auto [lo, hi] = s.eigenvalues();
    const double gate = tol * (1.0 + std::abs(s.alpha) + std::abs(s.gamma));
    if (std::min(std::abs(lo), std::abs(hi)) <= gate) return Sym2Class::NearSingular;
    if (lo > 0.0) return Sym2Class::PosDef;
    if (hi < 0.0) return Sym2Class::NegDef;
    return Sym2Class::Indef;
}

}  // namespace qcs

#endif  // QCS_NUMKERNEL_HPP
