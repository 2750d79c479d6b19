#pragma once
// Truncated power series with integer or integer-matrix coefficients.

#include "quiver.hpp"
#include "rational.hpp"
#include "smith.hpp"

#include <sstream>

namespace preproj {

class Series {
public:
    Series() = default;
    explicit Series(int D) : c_(D + 1) {}
    Series(int D, std::vector<Integer> coeffs) : c_(D + 1) {
        for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = coeffs[i];
    }
    static Series one(int D) {
        Series s(D);
        s.c_[0] = 1;
        return s;
    }
    static Series monomial(int D, int k, Integer c = 1) {
        Series s(D);
        if (k <= D) s.c_[k] = std::move(c);
        return s;
    }

    int trunc() const { return static_cast<int>(c_.size()) - 1; }
    const Integer& operator[](int k) const { return c_.at(k); }
    Integer& operator[](int k) { return c_.at(k); }
    const std::vector<Integer>& coeffs() const { return c_; }

    friend Series operator+(const Series& a, const Series& b) {
        Series s(std::min(a.trunc(), b.trunc()));
        for (int k = 0; k <= s.trunc(); ++k) s.c_[k] = a.c_[k] + b.c_[k];
        return s;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series s(std::min(a.trunc(), b.trunc()));
        for (int k = 0; k <= s.trunc(); ++k) s.c_[k] = a.c_[k] - b.c_[k];
        return s;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series s(std::min(a.trunc(), b.trunc()));
        for (int i = 0; i <= s.trunc(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; i + j <= s.trunc(); ++j)
                if (!b.c_[j].is_zero()) s.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return s;
    }
    friend bool operator==(const Series& a, const Series& b) {
        int D = std::min(a.trunc(), b.trunc());
        for (int k = 0; k <= D; ++k)
            if (a.c_[k] != b.c_[k]) return false;
        return true;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // First degree where the two series differ, or -1.
    friend int first_difference(const Series& a, const Series& b) {
        int D = std::min(a.trunc(), b.trunc());
        for (int k = 0; k <= D; ++k)
            if (a.c_[k] != b.c_[k]) return k;
        return -1;
    }

    Series inverse() const {
        if (!c_[0].is_unit()) throw std::domain_error("Series::inverse: constant term is not a unit");
        Series s(trunc());
        const Integer& u = c_[0];  // u = u^{-1}
        s.c_[0] = u;
        for (int k = 1; k <= trunc(); ++k) {
            Integer acc;
            for (int j = 1; j <= k; ++j)
                if (!c_[j].is_zero()) acc += c_[j] * s.c_[k - j];
            s.c_[k] = -(acc * u);
        }
        return s;
    }

    // f(t^m)
    Series substitute_power(int m) const {
        Series s(trunc());
        for (int k = 0; k * m <= trunc(); ++k) s.c_[k * m] = c_[k];
        return s;
    }

    std::string str() const {
        std::ostringstream os;
        for (int k = 0; k <= trunc(); ++k) os << (k ? "," : "") << c_[k];
        return os.str();
    }

private:
    std::vector<Integer> c_;
};

// (1 - t^m)^(-e) for any integer e.
inline Series one_minus_tm_pow(int m, long e, int D) {
    if (e == 0) return Series::one(D);
    Series s(D);
    if (e > 0) {
        for (int k = 0; k * m <= D; ++k) s[k * m] = binomial(Integer(e + k - 1), static_cast<unsigned>(k));
    } else {
        long f = -e;
        for (long k = 0; k <= f && k * m <= D; ++k) {
            Integer b = binomial(Integer(f), static_cast<unsigned>(k));
            s[static_cast<int>(k * m)] = (k % 2) ? -b : b;
        }
    }
    return s;
}

// Sym(V)_+ series: prod_{m>=1} (1 - t^m)^(-a_m); a[m] for m >= 1, a[0] ignored.
inline Series sym_plus_series(const std::vector<Integer>& a, int D) {
    Series s = Series::one(D);
    for (int m = 1; m <= D && m < static_cast<int>(a.size()); ++m) {
        if (a[m].sign() < 0) throw std::invalid_argument("sym_plus_series: negative exponent");
        if (a[m].is_zero()) continue;
        s = s * one_minus_tm_pow(m, a[m].to_int64(), D);
    }
    return s;
}

// prod_{m>=1} (1 - t^m)^(-e_m) for integer exponents of either sign.
inline Series euler_product(const std::vector<Integer>& e, int D) {
    Series s = Series::one(D);
    for (int m = 1; m <= D && m < static_cast<int>(e.size()); ++m)
        if (!e[m].is_zero()) s = s * one_minus_tm_pow(m, e[m].to_int64(), D);
    return s;
}

class MatrixSeries {
public:
    MatrixSeries() = default;
    MatrixSeries(int n, int D) : n_(n), c_(D + 1, DenseMatrix(n, std::vector<Integer>(n))) {}

    int dim() const { return n_; }
    int trunc() const { return static_cast<int>(c_.size()) - 1; }
    const DenseMatrix& operator[](int k) const { return c_.at(k); }
    DenseMatrix& operator[](int k) { return c_.at(k); }

    Series entry(int i, int j) const {
        Series s(trunc());
        for (int k = 0; k <= trunc(); ++k) s[k] = c_[k][i][j];
        return s;
    }

    friend MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("MatrixSeries: size mismatch");
        MatrixSeries s(a.n_, std::min(a.trunc(), b.trunc()));
        for (int i = 0; i <= s.trunc(); ++i)
            for (int j = 0; i + j <= s.trunc(); ++j) {
                DenseMatrix p = matmul(a.c_[i], b.c_[j]);
                for (int r = 0; r < a.n_; ++r)
                    for (int c = 0; c < a.n_; ++c) s.c_[i + j][r][c] += p[r][c];
            }
        return s;
    }
    friend MatrixSeries operator+(const MatrixSeries& a, const MatrixSeries& b) { return combine(a, b, 1); }
    friend MatrixSeries operator-(const MatrixSeries& a, const MatrixSeries& b) { return combine(a, b, -1); }
    friend bool operator==(const MatrixSeries& a, const MatrixSeries& b) {
        int D = std::min(a.trunc(), b.trunc());
        for (int k = 0; k <= D; ++k)
            if (a.c_[k] != b.c_[k]) return false;
        return a.n_ == b.n_;
    }

    static MatrixSeries identity(int n, int D) {
        MatrixSeries s(n, D);
        for (int i = 0; i < n; ++i) s.c_[0][i][i] = 1;
        return s;
    }

    // Requires the constant term to be invertible over Z.
    MatrixSeries inverse() const {
        DenseMatrix c0inv = integral_inverse(c_[0]);
        MatrixSeries s(n_, trunc());
        s.c_[0] = c0inv;
        for (int k = 1; k <= trunc(); ++k) {
            DenseMatrix acc(n_, std::vector<Integer>(n_));
            for (int j = 1; j <= k; ++j) {
                DenseMatrix p = matmul(c_[j], s.c_[k - j]);
                for (int r = 0; r < n_; ++r)
                    for (int c = 0; c < n_; ++c) acc[r][c] += p[r][c];
            }
            DenseMatrix t = matmul(c0inv, acc);
            for (auto& row : t)
                for (auto& v : row) v = -v;
            s.c_[k] = std::move(t);
        }
        return s;
    }

    // Determinant as a scalar series; elimination needs a pivot with unit constant term in each column.
    Series det() const {
        int D = trunc();
        std::vector<std::vector<Series>> m(n_, std::vector<Series>(n_, Series(D)));
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) m[r][c] = entry(r, c);
        Series d = Series::one(D);
        for (int k = 0; k < n_; ++k) {
            int p = -1;
            for (int r = k; r < n_; ++r)
                if (m[r][k][0].is_unit()) { p = r; break; }
            if (p < 0) throw std::domain_error("MatrixSeries::det: no unit pivot");
            if (p != k) { std::swap(m[p], m[k]); d = Series(D) - d; }
            Series inv = m[k][k].inverse();
            d = d * m[k][k];
            for (int r = k + 1; r < n_; ++r) {
                if (std::all_of(m[r][k].coeffs().begin(), m[r][k].coeffs().end(), [](const Integer& v) { return v.is_zero(); }))
                    continue;
                Series f = m[r][k] * inv;
                for (int c = k; c < n_; ++c) m[r][c] = m[r][c] - f * m[k][c];
            }
        }
        return d;
    }

    MatrixSeries substitute_power(int m) const {
        MatrixSeries s(n_, trunc());
        for (int k = 0; k * m <= trunc(); ++k) s.c_[k * m] = c_[k];
        return s;
    }

private:
    static MatrixSeries combine(const MatrixSeries& a, const MatrixSeries& b, int sign) {
        if (a.n_ != b.n_) throw std::invalid_argument("MatrixSeries: size mismatch");
        MatrixSeries s(a.n_, std::min(a.trunc(), b.trunc()));
        for (int k = 0; k <= s.trunc(); ++k)
            for (int r = 0; r < a.n_; ++r)
                for (int c = 0; c < a.n_; ++c)
                    s.c_[k][r][c] = sign > 0 ? a.c_[k][r][c] + b.c_[k][r][c] : a.c_[k][r][c] - b.c_[k][r][c];
        return s;
    }
    static DenseMatrix integral_inverse(const DenseMatrix& a) {
        int n = static_cast<int>(a.size());
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
            m[i][n + i] = Rational(1);
        }
        for (int k = 0; k < n; ++k) {
            int p = k;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) throw std::domain_error("MatrixSeries: singular constant term");
            std::swap(m[p], m[k]);
            Rational inv = m[k][k].inverse();
            for (auto& v : m[k]) v = v * inv;
            for (int r = 0; r < n; ++r) {
                if (r == k || m[r][k].is_zero()) continue;
                Rational f = m[r][k];
                for (int c = 0; c < 2 * n; ++c) m[r][c] = m[r][c] - f * m[k][c];
            }
        }
        DenseMatrix out(n, std::vector<Integer>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!m[i][n + j].is_integral()) throw std::domain_error("MatrixSeries: constant term not invertible over Z");
                out[i][j] = m[i][n + j].num();
            }
        return out;
    }

    int n_ = 0;
    std::vector<DenseMatrix> c_;
};

// Adjacency matrix of the double of q (q itself when it is already a double).
inline DenseMatrix double_adjacency(const Quiver& q) {
    int n = q.num_vertices();
    DenseMatrix c(n, std::vector<Integer>(n));
    for (const auto& a : q.arrows()) {
        c[a.src][a.dst] += 1;
        if (!q.starred()) c[a.dst][a.src] += 1;
    }
    return c;
}

// 1 - tC + t^2 * 1_{Q0 \ J}
inline MatrixSeries cartan_t(const Quiver& q, const std::vector<int>& white, int D) {
    int n = q.num_vertices();
    DenseMatrix C = double_adjacency(q);
    MatrixSeries m(n, D);
    std::vector<bool> w(n, false);
    for (int j : white) w.at(j) = true;
    for (int i = 0; i < n; ++i) {
        m[0][i][i] = 1;
        if (D >= 2 && !w[i]) m[2][i][i] = 1;
        for (int j = 0; j < n && D >= 1; ++j) m[1][i][j] = -C[i][j];
    }
    return m;
}

struct FormulaDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// h(Pi_{Q,J}; t) = (1 - tC + t^2 1_{Q0 \ J})^{-1}.
inline MatrixSeries hilbert_prep(const Quiver& q, const std::vector<int>& white, int D) {
    if (white.empty() && !q.starred()) {
        QuiverClass c = classify(q);
        if (c.kind == Kind::Dynkin)
            throw FormulaDomainError("hilbert_prep: the formula does not hold for Dynkin quivers with J empty");
    }
    return cartan_t(q, white, D).inverse();
}

// Chebyshev polynomials of the second kind evaluated at C: phi_0 = 1, phi_1 = C, phi_{m+1} = C phi_m - phi_{m-1}.
inline std::vector<DenseMatrix> chebyshev_second(const DenseMatrix& C, int D) {
    int n = static_cast<int>(C.size());
    std::vector<DenseMatrix> phi;
    phi.push_back(identity_matrix(n));
    if (D >= 1) phi.push_back(C);
    for (int m = 1; m < D; ++m) {
        DenseMatrix next = matmul(C, phi[m]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) next[i][j] -= phi[m - 1][i][j];
        phi.push_back(std::move(next));
    }
    return phi;
}

// det(1 - tC + t^2) as a polynomial in t.
inline Series cartan_det(const Quiver& q, int D) { return cartan_t(q, {}, D).det(); }

// zeta(V, L; t) = prod_{m>=1} 1 / det(1 - hV(t^m) + hL(t^m)).
inline Series zeta(const MatrixSeries& hV, const MatrixSeries& hL, int D) {
    int n = hV.dim();
    MatrixSeries base = MatrixSeries::identity(n, D) - hV + hL;
    Series z = Series::one(D);
    for (int m = 1; m <= D; ++m) {
        Series d = base.substitute_power(m).det();
        if (!d[0].is_unit()) throw std::domain_error("zeta: degree-0 determinant is not a unit");
        z = z * d.inverse();
    }
    return z;
}

struct NcciResult {
    bool holds = true;
    int first_failure = -1;
};

// h(A) == (1 - h(V) + h(L))^{-1} up to degree D.
inline NcciResult ncci_check(const MatrixSeries& hV, const MatrixSeries& hL, const MatrixSeries& hA, int D) {
    int n = hV.dim();
    MatrixSeries pred = (MatrixSeries::identity(n, D) - hV + hL).inverse();
    for (int k = 0; k <= D && k <= hA.trunc(); ++k)
        if (pred[k] != hA[k]) return {false, k};
    return {};
}

// Closed-form torsion series of Lambda for extended Dynkin quivers in characteristic p.
inline Series hT(const QuiverClass& c, int p, int D) {
    Series s(D);
    if (c.kind != Kind::ExtendedDynkin) throw std::invalid_argument("hT: needs an extended Dynkin class");
    auto add = [&](int k) { if (k <= D) s[k] += 1; };
    if (c.type == 'D' && p == 2)
        for (int m = 1; m <= (c.rank - 2) / 2; ++m) add(4 * m);
    if (c.type == 'E') {
        if (p == 2) {
            add(4);
            if (c.rank >= 7) { add(8); add(16); }
            if (c.rank == 8) add(28);
        }
        if (p == 3) {
            add(6);
            if (c.rank == 8) add(18);
        }
        if (p == 5 && c.rank == 8) add(10);
    }
    return s;
}

struct EgidResult {
    bool holds = false;
    int first_failure = -1;
    std::vector<Integer> a;         // a_m = h(i0 Pi i0)_m
    std::vector<Integer> exponents; // e_m = a_m - a_{m-2}
    Series lhs, rhs;
};

// prod (1 - t^m)^{-(a_m - a_{m-2})} == (1 - t^2)^{-1} prod 1/det(1 - t^m C + t^{2m}).
// With `literal_a0` the degree-0 term a_0 = 1 enters the m = 2 exponent; otherwise a_0 counts as 0.
inline EgidResult egid_check(const Quiver& q, int i0, int D, bool literal_a0 = false) {
    EgidResult r;
    MatrixSeries h = cartan_t(q, {}, D).inverse();
    r.a.resize(D + 1);
    for (int m = 0; m <= D; ++m) r.a[m] = h[m][i0][i0];
    r.exponents.assign(D + 1, Integer(0));
    for (int m = 1; m <= D; ++m) {
        Integer prev = m >= 2 ? r.a[m - 2] : Integer(0);
        if (m == 2 && !literal_a0) prev = 0;
        r.exponents[m] = r.a[m] - prev;
    }
    r.lhs = euler_product(r.exponents, D);
    Series det = cartan_det(q, D);
    Series rhs = one_minus_tm_pow(2, 1, D);
    for (int m = 1; m <= D; ++m) rhs = rhs * det.substitute_power(m).inverse();
    r.rhs = rhs;
    r.first_failure = first_difference(r.lhs, r.rhs);
    r.holds = r.first_failure < 0;
    return r;
}

}  // namespace preproj
