#pragma once
// Sparse integer matrices, Smith normal form and quotient structure.

#include "integer.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace preproj {

using SparseRow = std::vector<std::pair<int, Integer>>;  // sorted by column, no zeros

class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols) : cols_(cols), data_(rows) {}

    static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>>& m) {
        int c = m.empty() ? 0 : static_cast<int>(m[0].size());
        SparseIntMatrix s(0, c);
        for (const auto& row : m) {
            if (static_cast<int>(row.size()) != c) throw std::invalid_argument("ragged dense matrix");
            SparseRow r;
            for (int j = 0; j < c; ++j)
                if (!row[j].is_zero()) r.emplace_back(j, row[j]);
            s.data_.push_back(std::move(r));
        }
        return s;
    }

    int rows() const { return static_cast<int>(data_.size()); }
    int cols() const { return cols_; }
    void set_cols(int c) { cols_ = c; }
    const SparseRow& row(int i) const { return data_.at(i); }
    const std::vector<SparseRow>& data() const { return data_; }
    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    // Accepts unsorted entries; duplicates are summed and zeros dropped.
    void add_row(SparseRow r) {
        std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        SparseRow out;
        for (auto& e : r) {
            if (e.first < 0 || e.first >= cols_) throw std::out_of_range("SparseIntMatrix: column out of range");
            if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
            else out.push_back(std::move(e));
            if (out.back().second.is_zero()) out.pop_back();
        }
        data_.push_back(std::move(out));
    }

    std::vector<std::vector<Integer>> to_dense() const {
        std::vector<std::vector<Integer>> m(rows(), std::vector<Integer>(cols_));
        for (int i = 0; i < rows(); ++i)
            for (const auto& [j, v] : data_[i]) m[i][j] = v;
        return m;
    }

private:
    int cols_ = 0;
    std::vector<SparseRow> data_;
};

using DenseMatrix = std::vector<std::vector<Integer>>;

inline DenseMatrix identity_matrix(int n) {
    DenseMatrix m(n, std::vector<Integer>(n));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    int n = static_cast<int>(a.size()), k = b.empty() ? 0 : static_cast<int>(b.size());
    int m = b.empty() ? 0 : static_cast<int>(b[0].size());
    DenseMatrix c(n, std::vector<Integer>(m));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

struct SmithResult {
    int rank = 0;
    std::vector<Integer> diagonal;  // nonzero diagonal entries, positive, each dividing the next
    std::optional<DenseMatrix> U, V;  // U * M * V = diag(diagonal, 0) when requested

    std::vector<Integer> nontrivial() const {
        std::vector<Integer> out;
        for (const auto& d : diagonal)
            if (!d.is_one()) out.push_back(d);
        return out;
    }
};

namespace detail {

// In-place dense SNF; optionally tracks U (rows) and V (columns).
inline SmithResult smith_dense_impl(DenseMatrix a, bool transforms) {
    int n = static_cast<int>(a.size());
    int m = n ? static_cast<int>(a[0].size()) : 0;
    DenseMatrix U, V;
    if (transforms) { U = identity_matrix(n); V = identity_matrix(m); }
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        if (transforms) std::swap(U[i], U[j]);
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (auto& row : a) std::swap(row[i], row[j]);
        if (transforms) for (auto& row : V) std::swap(row[i], row[j]);
    };
    // row_i -= f * row_j
    auto row_op = [&](int i, int j, const Integer& f) {
        if (f.is_zero()) return;
        for (int c = 0; c < m; ++c)
            if (!a[j][c].is_zero()) a[i][c] -= f * a[j][c];
        if (transforms)
            for (int c = 0; c < n; ++c)
                if (!U[j][c].is_zero()) U[i][c] -= f * U[j][c];
    };
    auto col_op = [&](int i, int j, const Integer& f) {
        if (f.is_zero()) return;
        for (int r = 0; r < n; ++r)
            if (!a[r][j].is_zero()) a[r][i] -= f * a[r][j];
        if (transforms)
            for (int r = 0; r < m; ++r)
                if (!V[r][j].is_zero()) V[r][i] -= f * V[r][j];
    };
    auto negate_row = [&](int i) {
        for (auto& v : a[i]) v = -v;
        if (transforms) for (auto& v : U[i]) v = -v;
    };

    int t = 0;
    for (; t < std::min(n, m); ++t) {
        // pivot: smallest nonzero absolute value in the trailing block
        int pr = -1, pc = -1;
        Integer best;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j)
                if (!a[i][j].is_zero() && (pr < 0 || abs(a[i][j]) < best)) {
                    pr = i; pc = j; best = abs(a[i][j]);
                    if (best.is_one()) goto found;
                }
    found:
        if (pr < 0) break;
        swap_rows(t, pr);
        swap_cols(t, pc);
        while (true) {
            bool dirty = false;
            for (int i = t + 1; i < n; ++i) {
                if (a[i][t].is_zero()) continue;
                Integer f = floor_div(a[i][t], a[t][t]);
                row_op(i, t, f);
                if (!a[i][t].is_zero()) {
                    dirty = true;
                    if (abs(a[i][t]) < abs(a[t][t])) swap_rows(t, i);
                }
            }
            for (int j = t + 1; j < m; ++j) {
                if (a[t][j].is_zero()) continue;
                Integer f = floor_div(a[t][j], a[t][t]);
                col_op(j, t, f);
                if (!a[t][j].is_zero()) {
                    dirty = true;
                    if (abs(a[t][j]) < abs(a[t][t])) swap_cols(t, j);
                }
            }
            if (dirty) continue;
            // divisibility of the trailing block by the pivot
            int bad = -1;
            for (int i = t + 1; i < n && bad < 0; ++i)
                for (int j = t + 1; j < m; ++j)
                    if (!divides(a[t][t], a[i][j])) { bad = i; break; }
            if (bad < 0) break;
            row_op(t, bad, Integer(-1));
        }
        if (a[t][t].sign() < 0) negate_row(t);
    }
    SmithResult res;
    res.rank = t;
    for (int i = 0; i < t; ++i) res.diagonal.push_back(a[i][i]);
    if (transforms) { res.U = std::move(U); res.V = std::move(V); }
    return res;
}

// Rank and |a nonzero maximal minor| by fraction-free elimination with full pivoting.
// Entries stay minors of the input, so their size is bounded by Hadamard's inequality.
inline std::pair<int, Integer> rank_and_minor(DenseMatrix a) {
    int n = static_cast<int>(a.size());
    int m = n ? static_cast<int>(a[0].size()) : 0;
    Integer prev = 1;
    int r = 0;
    for (; r < std::min(n, m); ++r) {
        int pr = -1, pc = -1;
        Integer best;
        for (int i = r; i < n; ++i)
            for (int j = r; j < m; ++j)
                if (!a[i][j].is_zero() && (pr < 0 || abs(a[i][j]) < best)) { pr = i; pc = j; best = abs(a[i][j]); }
        if (pr < 0) break;
        std::swap(a[r], a[pr]);
        if (pc != r)
            for (auto& row : a) std::swap(row[r], row[pc]);
        for (int i = r + 1; i < n; ++i) {
            for (int j = r + 1; j < m; ++j) a[i][j] = (a[i][j] * a[r][r] - a[i][r] * a[r][j]) / prev;
            a[i][r] = 0;
        }
        prev = a[r][r];
    }
    return {r, abs(prev)};
}

// Invariant factors over Z/N for N a multiple of d_1 ... d_r; all entries stay in [0, N).
// Pivots are normalized to divisors of N, so ideal divisibility is integer divisibility.
inline std::vector<Integer> smith_mod(DenseMatrix a, const Integer& N) {
    int n = static_cast<int>(a.size());
    int m = n ? static_cast<int>(a[0].size()) : 0;
    for (auto& row : a)
        for (auto& v : row) v = mod_nonneg(v, N);
    auto normalize_pivot = [&](int t) {
        Integer g = gcd(a[t][t], N);
        if (a[t][t] == g) return;
        Integer M = N / g;
        Integer u = mod_nonneg(a[t][t] / g, M);
        while (!gcd(u, N).is_one()) u += M;
        Integer s, k;
        xgcd(u, N, s, k);
        s = mod_nonneg(s, N);
        for (auto& v : a[t])
            if (!v.is_zero()) v = mod_nonneg(v * s, N);
    };
    auto row_op = [&](int i, int j, const Integer& f) {
        for (int c = 0; c < m; ++c)
            if (!a[j][c].is_zero()) a[i][c] = mod_nonneg(a[i][c] - f * a[j][c], N);
    };
    auto col_op = [&](int i, int j, const Integer& f) {
        for (int r = 0; r < n; ++r)
            if (!a[r][j].is_zero()) a[r][i] = mod_nonneg(a[r][i] - f * a[r][j], N);
    };
    auto swap_cols = [&](int i, int j) {
        if (i != j)
            for (auto& row : a) std::swap(row[i], row[j]);
    };
    std::vector<Integer> diag;
    for (int t = 0; t < std::min(n, m); ++t) {
        int pr = -1, pc = -1;
        Integer best;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j)
                if (!a[i][j].is_zero()) {
                    Integer g = gcd(a[i][j], N);
                    if (pr < 0 || g < best) { pr = i; pc = j; best = g; }
                }
        if (pr < 0) break;
        std::swap(a[t], a[pr]);
        swap_cols(t, pc);
        normalize_pivot(t);
        while (true) {
            bool dirty = false;
            for (int i = t + 1; i < n; ++i) {
                if (a[i][t].is_zero()) continue;
                row_op(i, t, a[i][t] / a[t][t]);
                if (!a[i][t].is_zero()) {
                    std::swap(a[t], a[i]);
                    normalize_pivot(t);
                    dirty = true;
                }
            }
            for (int j = t + 1; j < m; ++j) {
                if (a[t][j].is_zero()) continue;
                col_op(j, t, a[t][j] / a[t][t]);
                if (!a[t][j].is_zero()) {
                    swap_cols(t, j);
                    normalize_pivot(t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            int bad = -1;
            for (int i = t + 1; i < n && bad < 0; ++i)
                for (int j = t + 1; j < m; ++j)
                    if (!divides(a[t][t], a[i][j])) { bad = i; break; }
            if (bad < 0) break;
            row_op(t, bad, Integer(-1));
        }
        diag.push_back(a[t][t]);
    }
    return diag;
}

}  // namespace detail

inline SmithResult smith_dense(const DenseMatrix& m, bool transforms = false) {
    if (transforms) return detail::smith_dense_impl(m, true);
    auto [rank, minor] = detail::rank_and_minor(m);
    SmithResult res;
    res.rank = rank;
    if (rank == 0) return res;
    if (minor.is_one()) {
        res.diagonal.assign(rank, Integer(1));
        return res;
    }
    auto diag = detail::smith_mod(m, minor);
    // the chain over Z/N is d_1 | ... | d_r | N | ... ; zero classes stand for N
    for (auto& d : diag) d = gcd(d, minor);
    while (static_cast<int>(diag.size()) < rank) diag.push_back(minor);
    std::sort(diag.begin(), diag.end());
    diag.resize(rank);
    res.diagonal = std::move(diag);
    return res;
}

// Sparse SNF: unit pivots are eliminated in place (each contributes a factor 1),
// the remaining block goes through the dense routine.
inline SmithResult smith_normal_form(const SparseIntMatrix& mat, bool transforms = false) {
    if (transforms) return smith_dense(mat.to_dense(), true);
    int nr = mat.rows(), nc = mat.cols();
    std::vector<SparseRow> rows = mat.data();
    std::vector<char> row_alive(nr, 1), col_alive(nc, 1);
    std::vector<std::vector<int>> col_rows(nc);
    for (int i = 0; i < nr; ++i)
        for (const auto& e : rows[i]) col_rows[e.first].push_back(i);

    auto find = [&](const SparseRow& r, int c) -> const Integer* {
        auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, int x) { return e.first < x; });
        return (it != r.end() && it->first == c) ? &it->second : nullptr;
    };

    int units = 0;
    bool progress = true;
    std::vector<int> order;
    while (progress) {
        progress = false;
        order.clear();
        for (int i = 0; i < nr; ++i)
            if (row_alive[i] && !rows[i].empty()) order.push_back(i);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return rows[x].size() < rows[y].size(); });
        for (int r : order) {
            if (!row_alive[r] || rows[r].empty()) continue;
            int pc = -1;
            std::size_t best = 0;
            for (const auto& [c, v] : rows[r])
                if (v.is_unit() && (pc < 0 || col_rows[c].size() < best)) { pc = c; best = col_rows[c].size(); }
            if (pc < 0) continue;
            Integer pv = *find(rows[r], pc);
            const SparseRow prow = rows[r];
            for (int r2 : col_rows[pc]) {
                if (r2 == r || !row_alive[r2]) continue;
                const Integer* e = find(rows[r2], pc);
                if (!e) continue;
                Integer f = *e * pv;  // pv = +-1, so e/pv = e*pv
                SparseRow merged;
                merged.reserve(rows[r2].size() + prow.size());
                auto i = rows[r2].begin();
                auto j = prow.begin();
                while (i != rows[r2].end() || j != prow.end()) {
                    if (j == prow.end() || (i != rows[r2].end() && i->first < j->first)) {
                        merged.push_back(std::move(*i));
                        ++i;
                    } else if (i == rows[r2].end() || j->first < i->first) {
                        merged.emplace_back(j->first, -(f * j->second));
                        col_rows[j->first].push_back(r2);
                        ++j;
                    } else {
                        Integer v = i->second - f * j->second;
                        if (!v.is_zero()) merged.emplace_back(i->first, std::move(v));
                        ++i;
                        ++j;
                    }
                }
                rows[r2].swap(merged);
            }
            row_alive[r] = 0;
            col_alive[pc] = 0;
            col_rows[pc].clear();
            col_rows[pc].shrink_to_fit();
            ++units;
            progress = true;
        }
    }
    // Remaining block.
    std::vector<int> live_rows;
    std::vector<int> col_map(nc, -1);
    int ncol = 0;
    for (int i = 0; i < nr; ++i) {
        if (!row_alive[i] || rows[i].empty()) continue;
        live_rows.push_back(i);
        for (const auto& e : rows[i])
            if (col_map[e.first] < 0) col_map[e.first] = ncol++;
    }
    SmithResult res;
    res.diagonal.assign(units, Integer(1));
    if (!live_rows.empty()) {
        DenseMatrix d(live_rows.size(), std::vector<Integer>(ncol));
        for (std::size_t k = 0; k < live_rows.size(); ++k)
            for (const auto& e : rows[live_rows[k]]) d[k][col_map[e.first]] = e.second;
        SmithResult rest = smith_dense(d, false);
        for (auto& v : rest.diagonal) res.diagonal.push_back(v);
    }
    res.rank = static_cast<int>(res.diagonal.size());
    return res;
}

// Rank over F_p of an integer matrix (p < 2^31).
inline int rank_mod(const SparseIntMatrix& mat, std::int64_t p) {
    auto red = [p](const Integer& v) {
        return mod_nonneg(v, Integer(p)).to_int64();
    };
    auto inv = [p](std::int64_t a) {
        std::int64_t r = 1, e = p - 2, b = a % p;
        while (e) {
            if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % p);
            b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
            e >>= 1;
        }
        return r;
    };
    using Row = std::vector<std::pair<int, std::int64_t>>;
    // pivot rows keyed by leading column
    std::map<int, Row> pivots;
    int rank = 0;
    for (const auto& r : mat.data()) {
        Row row;
        for (const auto& [c, v] : r) {
            std::int64_t x = red(v);
            if (x) row.emplace_back(c, x);
        }
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) {
                std::int64_t s = inv(row.front().second);
                for (auto& e : row) e.second = static_cast<std::int64_t>(static_cast<__int128>(e.second) * s % p);
                pivots.emplace(row.front().first, std::move(row));
                ++rank;
                break;
            }
            std::int64_t f = row.front().second;
            const Row& pr = it->second;
            Row merged;
            auto i = row.begin();
            auto j = pr.begin();
            while (i != row.end() || j != pr.end()) {
                if (j == pr.end() || (i != row.end() && i->first < j->first)) merged.push_back(*i++);
                else if (i == row.end() || j->first < i->first) {
                    merged.emplace_back(j->first, (p - static_cast<std::int64_t>(static_cast<__int128>(f) * j->second % p)) % p);
                    ++j;
                } else {
                    std::int64_t v = (i->second - static_cast<std::int64_t>(static_cast<__int128>(f) * j->second % p)) % p;
                    if (v < 0) v += p;
                    if (v) merged.emplace_back(i->first, v);
                    ++i;
                    ++j;
                }
            }
            row.swap(merged);
        }
    }
    return rank;
}

struct TorsionSummary {
    int free_rank = 0;
    std::vector<Integer> invariant_factors;  // each > 1, each dividing the next

    bool torsion_free() const { return invariant_factors.empty(); }
    std::string str() const {
        std::ostringstream os;
        os << "Z^" << free_rank;
        for (const auto& f : invariant_factors) os << " + Z/" << f;
        return os.str();
    }
    // Prime-power decomposition of the torsion part: (p, exponent) per cyclic summand.
    std::vector<std::pair<Integer, int>> primary_parts() const {
        std::vector<std::pair<Integer, int>> out;
        for (auto f : invariant_factors) {
            Integer p = 2;
            while (!f.is_one()) {
                if (p * p > f) { out.emplace_back(f, 1); break; }
                int e = 0;
                while (divides(p, f)) { f = f / p; ++e; }
                if (e) out.emplace_back(p, e);
                p += 1;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    friend bool operator==(const TorsionSummary& a, const TorsionSummary& b) {
        return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
    }
};

inline TorsionSummary quotient_structure(int ambient_rank, const SparseIntMatrix& relations) {
    if (relations.cols() != ambient_rank) throw std::invalid_argument("quotient_structure: dimension mismatch");
    SmithResult s = smith_normal_form(relations);
    TorsionSummary t;
    t.free_rank = ambient_rank - s.rank;
    t.invariant_factors = s.nontrivial();
    return t;
}

inline TorsionSummary quotient_structure(int ambient_rank, const std::vector<std::vector<Integer>>& rows) {
    SparseIntMatrix m(0, ambient_rank);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != ambient_rank) throw std::invalid_argument("quotient_structure: dimension mismatch");
        SparseRow sr;
        for (int j = 0; j < ambient_rank; ++j)
            if (!r[j].is_zero()) sr.emplace_back(j, r[j]);
        m.add_row(std::move(sr));
    }
    return quotient_structure(ambient_rank, m);
}

// Invariant factors > 1 of the span; empty iff the span is saturated.
inline std::vector<Integer> saturation_gap(int ambient_rank, const SparseIntMatrix& relations) {
    return quotient_structure(ambient_rank, relations).invariant_factors;
}

inline std::vector<Integer> saturation_gap(int ambient_rank, const std::vector<std::vector<Integer>>& rows) {
    return quotient_structure(ambient_rank, rows).invariant_factors;
}

// Order of the class of v in Z^n / span(rows); 0 when v has infinite order.
// [L + Zv : L] is the ratio of the products of the invariant factors.
inline Integer order_in_quotient(const SparseIntMatrix& relations, const SparseRow& v) {
    SmithResult a = smith_normal_form(relations);
    SparseIntMatrix ext = relations;
    ext.add_row(v);
    SmithResult b = smith_normal_form(ext);
    if (b.rank > a.rank) return Integer(0);
    Integer pa = 1, pb = 1;
    for (const auto& d : a.diagonal) pa *= d;
    for (const auto& d : b.diagonal) pb *= d;
    return pa / pb;
}

// Integral row echelon basis of a lattice, for repeated exact membership tests.
class LatticeEchelon {
public:
    explicit LatticeEchelon(int cols = 0) : cols_(cols) {}
    explicit LatticeEchelon(const SparseIntMatrix& m) : cols_(m.cols()) {
        for (const auto& r : m.data()) add(r);
    }

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(pivots_.size()); }

    void add(SparseRow v) {
        normalize(v);
        while (!v.empty()) {
            int c = v.front().first;
            auto it = pivots_.find(c);
            if (it == pivots_.end()) {
                if (v.front().second.sign() < 0)
                    for (auto& e : v) e.second = -e.second;
                pivots_.emplace(c, std::move(v));
                return;
            }
            SparseRow& p = it->second;
            const Integer a = p.front().second, b = v.front().second;
            if (divides(a, b)) {
                v = combine(Integer(1), v, -(b / a), p);
                continue;
            }
            // replace the pivot by the gcd row, keep eliminating the remainder
            Integer s, t;
            Integer g = xgcd(a, b, s, t);
            SparseRow np = combine(s, p, t, v);
            SparseRow rest = combine(a / g, v, -(b / g), p);
            p = std::move(np);
            if (p.front().second.sign() < 0)
                for (auto& e : p) e.second = -e.second;
            v = std::move(rest);
        }
    }

    // Remainder after reduction; empty iff v lies in the lattice.
    SparseRow reduce(SparseRow v) const {
        normalize(v);
        SparseRow kept;
        while (!v.empty()) {
            int c = v.front().first;
            auto it = pivots_.find(c);
            if (it == pivots_.end() || !divides(it->second.front().second, v.front().second)) {
                kept.push_back(v.front());
                v.erase(v.begin());
                continue;
            }
            v = combine(Integer(1), v, -(v.front().second / it->second.front().second), it->second);
        }
        return kept;
    }
    bool contains(const SparseRow& v) const { return reduce(v).empty(); }

private:
    static void normalize(SparseRow& v) {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        SparseRow out;
        for (auto& e : v) {
            if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
            else out.push_back(e);
            if (out.back().second.is_zero()) out.pop_back();
        }
        v.swap(out);
    }
    static SparseRow combine(const Integer& x, const SparseRow& u, const Integer& y, const SparseRow& w) {
        SparseRow out;
        auto i = u.begin();
        auto j = w.begin();
        while (i != u.end() || j != w.end()) {
            Integer val;
            int c;
            if (j == w.end() || (i != u.end() && i->first < j->first)) {
                c = i->first;
                val = x * i->second;
                ++i;
            } else if (i == u.end() || j->first < i->first) {
                c = j->first;
                val = y * j->second;
                ++j;
            } else {
                c = i->first;
                val = x * i->second + y * j->second;
                ++i;
                ++j;
            }
            if (!val.is_zero()) out.emplace_back(c, std::move(val));
        }
        return out;
    }

    int cols_;
    std::map<int, SparseRow> pivots_;
};

}  // namespace preproj
