#pragma once
// Lambda = Pi / [Pi, Pi] degree by degree, with exact torsion; the classes r^(p^l),
// the p-th power map on cyclic words and the ghost map.

#include "constructs.hpp"
#include "rewrite.hpp"
#include "series.hpp"

#include <chrono>

namespace preproj {

// Rank of a sparse matrix over a field coefficient type (Rational or Zmod with prime modulus).
template <class C>
int field_rank(std::vector<std::vector<std::pair<int, C>>> rows) {
    std::map<int, std::vector<std::pair<int, C>>> pivots;
    int rank = 0;
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, C>> cur;
        for (auto& e : row) {
            if (!cur.empty() && cur.back().first == e.first) cur.back().second += e.second;
            else cur.push_back(e);
            if (cur.back().second.is_zero()) cur.pop_back();
        }
        while (!cur.empty()) {
            auto it = pivots.find(cur.front().first);
            if (it == pivots.end()) {
                C inv = inverse(cur.front().second);
                for (auto& e : cur) e.second = e.second * inv;
                pivots.emplace(cur.front().first, std::move(cur));
                ++rank;
                break;
            }
            C f = cur.front().second;
            const auto& pr = it->second;
            std::vector<std::pair<int, C>> merged;
            auto i = cur.begin();
            auto j = pr.begin();
            while (i != cur.end() || j != pr.end()) {
                if (j == pr.end() || (i != cur.end() && i->first < j->first)) merged.push_back(*i++);
                else if (i == cur.end() || j->first < i->first) {
                    merged.emplace_back(j->first, C(-(f * j->second)));
                    ++j;
                } else {
                    C v = i->second - f * j->second;
                    if (!v.is_zero()) merged.emplace_back(i->first, v);
                    ++i;
                    ++j;
                }
            }
            cur.swap(merged);
        }
    }
    return rank;
}

enum class LambdaMethod { Auto, Rewrite, Cyclic };

inline std::string method_name(LambdaMethod m) {
    switch (m) {
        case LambdaMethod::Rewrite: return "rewrite";
        case LambdaMethod::Cyclic: return "cyclic";
        default: return "auto";
    }
}

// One graded piece of Lambda: ambient basis of cyclic classes and the relation lattice.
struct LambdaPiece {
    int degree = 0;
    std::vector<Path> basis;                        // canonical cyclic representatives
    std::unordered_map<Path, int, PathHash> index;  // representative -> column
    SparseIntMatrix relations;
    TorsionSummary summary;
};

struct GradedTorsionReport {
    QuiverPtr quiver;
    std::vector<int> white;
    int degree_bound = 0;
    LambdaMethod method = LambdaMethod::Auto;
    std::string provenance;
    std::vector<LambdaPiece> pieces;  // index = degree

    const TorsionSummary& at(int d) const { return pieces.at(d).summary; }
    bool torsion_free() const {
        for (const auto& p : pieces)
            if (!p.summary.torsion_free()) return false;
        return true;
    }
    // degree -> invariant factors, only for degrees with torsion
    std::map<int, std::vector<Integer>> torsion_table() const {
        std::map<int, std::vector<Integer>> t;
        for (const auto& p : pieces)
            if (!p.summary.torsion_free()) t[p.degree] = p.summary.invariant_factors;
        return t;
    }
};

// Ranking with the forest arrows on top, so that LM(e_i r e_i) = a a* for the forest arrow a at i.
inline MonomialOrder forest_order(const Quiver& dq, const Forest& f) {
    std::vector<int> ranking;
    std::vector<bool> in_forest(dq.num_arrows(), false);
    for (int a : f.arrows) in_forest[a] = true;
    for (int a = 0; a < dq.num_arrows(); ++a)
        if (!in_forest[a]) ranking.push_back(a);
    for (int a : f.arrows) ranking.push_back(a);
    return MonomialOrder::graded_lex(ranking);
}

inline MonomialOrder default_order(const Quiver& dq, const std::vector<int>& white) {
    if (!white.empty()) return forest_order(dq, forest_for_white(dq, white));
    return MonomialOrder::by_id(dq.num_arrows());
}

// Completed reduction system for Pi_{Q,J} up to degree D.
template <class C = Integer>
RewriteSystem<C> prep_system(const QuiverPtr& dq, const std::vector<int>& white, int D) {
    return complete(preprojective_relation<C>(dq, white), dq, default_order(*dq, white), D);
}

namespace detail {

inline void add_class(LambdaPiece& piece, const Path& canon) {
    if (piece.index.count(canon)) return;
    piece.index.emplace(canon, static_cast<int>(piece.basis.size()));
    piece.basis.push_back(canon);
}

inline void finalize_basis(LambdaPiece& piece) {
    std::sort(piece.basis.begin(), piece.basis.end());
    piece.index.clear();
    for (std::size_t k = 0; k < piece.basis.size(); ++k) piece.index.emplace(piece.basis[k], static_cast<int>(k));
}

struct RowHash {
    std::size_t operator()(const SparseRow& r) const {
        std::size_t h = r.size();
        for (const auto& [c, v] : r) h = h * 1000003u ^ (static_cast<std::size_t>(c) * 31u + v.hash());
        return h;
    }
};
struct RowEq {
    bool operator()(const SparseRow& a, const SparseRow& b) const {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
        return true;
    }
};

// Canonical row: sorted, zero-free, first entry positive (row and its negative are the same relation).
inline SparseRow canonical_row(std::unordered_map<int, Integer>& acc) {
    SparseRow r;
    for (auto& [c, v] : acc)
        if (!v.is_zero()) r.emplace_back(c, v);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!r.empty() && r.front().second.sign() < 0)
        for (auto& e : r) e.second = -e.second;
    return r;
}

}  // namespace detail

// Cyclic classes of closed normal monomials; relations from commutators of normal monomials.
inline std::vector<LambdaPiece> lambda_pieces_rewrite(const RewriteSystem<Integer>& sys, int D) {
    const QuiverPtr& q = sys.quiver();
    int n = q->num_vertices();
    // normal monomials by degree and endpoints
    std::vector<std::vector<std::vector<std::vector<Path>>>> nm(
        D + 1, std::vector<std::vector<std::vector<Path>>>(n, std::vector<std::vector<Path>>(n)));
    sys.walk_normal(-1, D, [&](const Path& p) { nm[p.len][p.src][p.tgt].push_back(p); });
    std::vector<LambdaPiece> pieces(D + 1);
    for (int d = 0; d <= D; ++d) {
        LambdaPiece& piece = pieces[d];
        piece.degree = d;
        for (int i = 0; i < n; ++i)
            for (const Path& p : nm[d][i][i]) detail::add_class(piece, canonical_rotation(*q, p));
        detail::finalize_basis(piece);
        piece.relations = SparseIntMatrix(0, static_cast<int>(piece.basis.size()));
        std::unordered_set<SparseRow, detail::RowHash, detail::RowEq> seen;
        for (int k = 1; 2 * k <= d; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (const Path& m1 : nm[k][i][j])
                        for (const Path& m2 : nm[d - k][j][i]) {
                            Element<Integer> a = sys.reduce_monomial(concat(m1, m2));
                            Element<Integer> b = sys.reduce_monomial(concat(m2, m1));
                            std::unordered_map<int, Integer> acc;
                            for (const auto& [p, c] : a.terms()) acc[piece.index.at(canonical_rotation(*q, p))] += c;
                            for (const auto& [p, c] : b.terms()) acc[piece.index.at(canonical_rotation(*q, p))] -= c;
                            SparseRow row = detail::canonical_row(acc);
                            if (row.empty()) continue;
                            if (seen.insert(row).second) piece.relations.add_row(row);
                        }
    }
    return pieces;
}

// Cyclic words of the double modulo [r_i w] for closed w at black i.
inline std::vector<LambdaPiece> lambda_pieces_cyclic(const QuiverPtr& dq, const std::vector<int>& white, int D) {
    int n = dq->num_vertices();
    auto rel = preprojective_relation<Integer>(dq, white);
    std::vector<int> black;
    {
        std::vector<bool> w(n, false);
        for (int j : white) w[j] = true;
        for (int i = 0; i < n; ++i)
            if (!w[i]) black.push_back(i);
    }
    std::vector<LambdaPiece> pieces(D + 1);
    for (int d = 0; d <= D; ++d) {
        LambdaPiece& piece = pieces[d];
        piece.degree = d;
        for (int i = 0; i < n; ++i)
            for (const Path& p : all_paths(*dq, d, i, i)) detail::add_class(piece, canonical_rotation(*dq, p));
        detail::finalize_basis(piece);
        piece.relations = SparseIntMatrix(0, static_cast<int>(piece.basis.size()));
        if (d < 2) continue;
        std::unordered_set<SparseRow, detail::RowHash, detail::RowEq> seen;
        for (std::size_t b = 0; b < black.size(); ++b) {
            int i = black[b];
            for (const Path& w : all_paths(*dq, d - 2, i, i)) {
                std::unordered_map<int, Integer> acc;
                for (const auto& [p, c] : rel[b].terms())
                    acc[piece.index.at(canonical_rotation(*dq, concat(p, w)))] += c;
                SparseRow row = detail::canonical_row(acc);
                if (row.empty()) continue;
                if (seen.insert(row).second) piece.relations.add_row(row);
            }
        }
    }
    return pieces;
}

struct LambdaOptions {
    LambdaMethod method = LambdaMethod::Auto;
    bool keep_matrices = true;
};

inline GradedTorsionReport lambda_graded(const QuiverPtr& dq, const std::vector<int>& white, int D,
                                         LambdaOptions opt = {}) {
    if (!dq->starred()) throw std::invalid_argument("lambda_graded: expects a double quiver");
    GradedTorsionReport rep;
    rep.quiver = dq;
    rep.white = white;
    rep.degree_bound = D;
    LambdaMethod m = opt.method;
    if (m != LambdaMethod::Cyclic) {
        try {
            auto sys = prep_system<Integer>(dq, white, D);
            rep.pieces = lambda_pieces_rewrite(sys, D);
            rep.method = LambdaMethod::Rewrite;
            rep.provenance = "normal monomials of a completed reduction system (" +
                             std::to_string(sys.rules().size()) + " rules)";
        } catch (const NonUnitLead& e) {
            if (m == LambdaMethod::Rewrite) throw;
            m = LambdaMethod::Cyclic;
        }
    }
    if (m == LambdaMethod::Cyclic) {
        rep.pieces = lambda_pieces_cyclic(dq, white, D);
        rep.method = LambdaMethod::Cyclic;
        rep.provenance = "cyclic words modulo cyclic multiples of the local relations";
    }
    for (auto& piece : rep.pieces) {
        piece.summary = quotient_structure(static_cast<int>(piece.basis.size()), piece.relations);
        if (!opt.keep_matrices) piece.relations = SparseIntMatrix(0, 0);
    }
    return rep;
}

// Lambda from an already completed system (same pipeline as the rewrite route).
inline GradedTorsionReport lambda_from_system(const RewriteSystem<Integer>& sys, const std::vector<int>& white, int D) {
    GradedTorsionReport rep;
    rep.quiver = sys.quiver();
    rep.white = white;
    rep.degree_bound = D;
    rep.method = LambdaMethod::Rewrite;
    rep.provenance = "normal monomials of a completed reduction system";
    rep.pieces = lambda_pieces_rewrite(sys, D);
    for (auto& piece : rep.pieces)
        piece.summary = quotient_structure(static_cast<int>(piece.basis.size()), piece.relations);
    return rep;
}

// Dimension of Lambda_d over a field: Q (C = Rational) or F_p (C = Zmod with prime modulus).
template <class C>
std::vector<int> lambda_field_dims(const QuiverPtr& dq, const std::vector<int>& white, int D, const C& like) {
    auto gens = preprojective_relation<C>(dq, white);
    C one = CoeffTraits<C>::from_int(Integer(1), like);
    for (auto& g : gens) g = one * g;
    auto sys = complete(gens, dq, default_order(*dq, white), D);
    int n = dq->num_vertices();
    std::vector<std::vector<std::vector<std::vector<Path>>>> nm(
        D + 1, std::vector<std::vector<std::vector<Path>>>(n, std::vector<std::vector<Path>>(n)));
    sys.walk_normal(-1, D, [&](const Path& p) { nm[p.len][p.src][p.tgt].push_back(p); });
    std::vector<int> dims;
    for (int d = 0; d <= D; ++d) {
        LambdaPiece piece;
        for (int i = 0; i < n; ++i)
            for (const Path& p : nm[d][i][i]) detail::add_class(piece, canonical_rotation(*dq, p));
        std::vector<std::vector<std::pair<int, C>>> rows;
        for (int k = 1; 2 * k <= d; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (const Path& m1 : nm[k][i][j])
                        for (const Path& m2 : nm[d - k][j][i]) {
                            auto a = sys.reduce_monomial(concat(m1, m2));
                            auto b = sys.reduce_monomial(concat(m2, m1));
                            std::vector<std::pair<int, C>> row;
                            for (const auto& [p, c] : a.terms()) row.emplace_back(piece.index.at(canonical_rotation(*dq, p)), c);
                            for (const auto& [p, c] : b.terms())
                                row.emplace_back(piece.index.at(canonical_rotation(*dq, p)), C(-c));
                            rows.push_back(std::move(row));
                        }
        dims.push_back(static_cast<int>(piece.basis.size()) - field_rank<C>(std::move(rows)));
    }
    return dims;
}

// ---------------------------------------------------------------------------
// Classes in Lambda

struct HomologyClass {
    int degree = 0;
    SparseRow coords;  // in the basis of the corresponding LambdaPiece
    std::string label;
};

// Coordinates of a cyclic element of the double's path algebra in the Lambda ambient basis.
inline SparseRow lambda_coordinates(const GradedTorsionReport& rep, const CyclicElement<Integer>& c, int d,
                                    const RewriteSystem<Integer>* sys) {
    const LambdaPiece& piece = rep.pieces.at(d);
    std::unordered_map<int, Integer> acc;
    for (const auto& [p, v] : c.terms()) {
        if (p.len != d) throw std::invalid_argument("lambda_coordinates: inhomogeneous element");
        if (rep.method == LambdaMethod::Cyclic || !sys) {
            acc[piece.index.at(p)] += v;
        } else {
            Element<Integer> nf = sys->reduce_monomial(p);
            for (const auto& [t, w] : nf.terms())
                acc[piece.index.at(canonical_rotation(*rep.quiver, t))] += v * w;
        }
    }
    SparseRow r;
    for (auto& [k, v] : acc)
        if (!v.is_zero()) r.emplace_back(k, v);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

// (1/p)[r^{p^l}] in the cyclic words of the double (before passing to Lambda).
inline CyclicElement<Integer> r_power_cyclic(const QuiverPtr& dq, int p, int l) {
    int m = 1;
    for (int k = 0; k < l; ++k) m *= p;
    CyclicElement<Integer> total(dq);
    for (const auto& ri : preprojective_relation<Integer>(dq)) {
        Element<Integer> pw = ri;
        for (int k = 1; k < m; ++k) pw = pw * ri;
        total += cyclic_project(pw);
    }
    std::unordered_map<Path, Integer, PathHash> out;
    for (const auto& [w, c] : total.terms()) {
        if (!divides(Integer(p), c)) throw std::logic_error("r_power_class: [r^(p^l)] is not divisible by p");
        out.emplace(w, c / Integer(p));
    }
    return CyclicElement<Integer>::from_canonical_map(dq, out);
}

inline HomologyClass r_power_class(const GradedTorsionReport& rep, const RewriteSystem<Integer>* sys, int p, int l) {
    int m = 1;
    for (int k = 0; k < l; ++k) m *= p;
    if (2 * m > rep.degree_bound) throw std::invalid_argument("r_power_class: degree exceeds the report");
    HomologyClass h;
    h.degree = 2 * m;
    h.coords = lambda_coordinates(rep, r_power_cyclic(rep.quiver, p, l), h.degree, sys);
    h.label = "r^(" + std::to_string(p) + (l > 1 ? "^" + std::to_string(l) : "") + ")";
    return h;
}

// Smallest k >= 1 with k*c in the relation lattice, 0 when c has infinite order.
inline Integer order_of(const HomologyClass& c, const GradedTorsionReport& rep) {
    const LambdaPiece& piece = rep.pieces.at(c.degree);
    if (c.coords.empty()) return Integer(1);
    return order_in_quotient(piece.relations, c.coords);
}

// The additive p-th power map on cyclic words mod p: sum c_w [w] -> sum c_w [w^p].
inline CyclicElement<Zmod> frobenius_cyc(const CyclicElement<Zmod>& c, int p) {
    const QuiverPtr& q = c.quiver();
    std::unordered_map<Path, Zmod, PathHash> out;
    for (const auto& [w, v] : c.terms()) {
        Path pw = w;
        for (int k = 1; k < p; ++k) pw = concat(pw, w);
        Path canon = canonical_rotation(*q, pw);
        auto [it, fresh] = out.try_emplace(canon, v);
        if (!fresh) it->second += v;
    }
    return CyclicElement<Zmod>::from_canonical_map(q, out);
}

template <class C>
CyclicElement<Zmod> reduce_mod(const CyclicElement<C>& c, int p) {
    std::unordered_map<Path, Zmod, PathHash> out;
    for (const auto& [w, v] : c.terms()) {
        Zmod z(mod_nonneg(v, Integer(p)).to_int64(), p);
        if (!z.is_zero()) out.emplace(w, z);
    }
    return CyclicElement<Zmod>::from_canonical_map(c.quiver(), out);
}

// Ghost components w_n = sum_{k<=n} p^k [a_k^{p^{n-k}}].
inline std::vector<CyclicElement<Integer>> ghost(const std::vector<Element<Integer>>& a, int p) {
    std::vector<CyclicElement<Integer>> out;
    for (std::size_t n = 0; n < a.size(); ++n) {
        CyclicElement<Integer> w(a[0].quiver());
        Integer pk = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            long e = 1;
            for (std::size_t j = k; j < n; ++j) e *= p;
            Element<Integer> pw = a[k];
            if (a[k].is_zero()) {
                pk *= p;
                continue;
            }
            for (long j = 1; j < e; ++j) pw = pw * a[k];
            w += pk * cyclic_project(pw);
            pk *= p;
        }
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace preproj
