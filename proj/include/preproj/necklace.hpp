#pragma once
// Necklace Lie bialgebra on cyclic words of a double quiver, its lifts to paths,
// and the induced Poisson bracket on i0 Pi i0 for extended Dynkin quivers.

#include "homology.hpp"

namespace preproj {

// Formal sum of pairs of paths. Used for P (x) P, L (x) P (first slot canonical) and wedges.
template <class C = Integer>
class TensorElement {
public:
    using Key = std::pair<Path, Path>;

    TensorElement() = default;
    explicit TensorElement(QuiverPtr q) : q_(std::move(q)) {}

    const QuiverPtr& quiver() const { return q_; }
    const std::map<Key, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Path& x, const Path& y, const C& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(Key{x, y}, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    TensorElement& operator+=(const TensorElement& o) {
        if (!q_) q_ = o.q_;
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    TensorElement& operator-=(const TensorElement& o) {
        if (!q_) q_ = o.q_;
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, C(-c));
        return *this;
    }
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(const C& s, const TensorElement& a) {
        TensorElement out(a.q_);
        for (const auto& [k, c] : a.terms_) out.add(k.first, k.second, s * c);
        return out;
    }
    friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

    // Apply (f (x) g) slotwise.
    template <class F, class G>
    TensorElement map(F&& f, G&& g) const {
        TensorElement out(q_);
        for (const auto& [k, c] : terms_) out.add(f(k.first), g(k.second), c);
        return out;
    }

    std::string str(const char* sep = " (x) ", bool bracket_left = false, bool bracket_right = false) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            s += render_coeff_prefix(it->second, first);
            std::string l = render_path(*q_, it->first.first), r = render_path(*q_, it->first.second);
            s += (bracket_left ? "[" + l + "]" : l) + sep + (bracket_right ? "[" + r + "]" : r);
            first = false;
        }
        return s;
    }

private:
    QuiverPtr q_;
    std::map<Key, C> terms_;
};

// Formal sum u ^ v with u ^ v = -(v ^ u); keys are ordered pairs of canonical cyclic words with first <= second.
template <class C = Integer>
class WedgePair {
public:
    WedgePair() = default;
    explicit WedgePair(QuiverPtr q) : body_(std::move(q)) {}

    void add(const Path& u, const Path& v, const C& c) {
        const Quiver& q = *body_.quiver();
        Path cu = canonical_rotation(q, u), cv = canonical_rotation(q, v);
        if (cu == cv) return;
        if (cv < cu) body_.add(cv, cu, C(-c));
        else body_.add(cu, cv, c);
    }
    const std::map<std::pair<Path, Path>, C>& terms() const { return body_.terms(); }
    bool is_zero() const { return body_.is_zero(); }
    const QuiverPtr& quiver() const { return body_.quiver(); }
    WedgePair& operator+=(const WedgePair& o) {
        body_ += o.body_;
        return *this;
    }
    friend bool operator==(const WedgePair& a, const WedgePair& b) { return a.body_ == b.body_; }
    std::string str() const { return body_.str(" ^ ", true, true); }

private:
    TensorElement<C> body_;
};

namespace detail {

// Cyclic segment of the closed word w: n letters starting at position start; idempotent at v when n = 0.
inline Path cyc_seg(const Quiver& q, const Path& w, int start, int n, int v) {
    if (n == 0) return Path::idempotent(v);
    int m = w.len;
    std::vector<int> ids(n);
    for (int k = 0; k < n; ++k) ids[k] = w[(start + k) % m];
    return Path::from_arrows(q, ids);
}

inline Path lin_seg(const Quiver& q, const Path& w, int from, int n, int v) {
    if (n == 0) return Path::idempotent(v);
    return w.sub(q, from, n);
}

inline Path join(const Path& x, const Path& y) {
    if (!composable(x, y)) throw std::logic_error("necklace: incompatible pieces");
    return concat(x, y);
}

}  // namespace detail

// d_a [w] = sum over occurrences of a in w of the word read from just after a around to just before it.
template <class C>
Element<C> partial_derivative(int a, const CyclicElement<C>& w) {
    const QuiverPtr& qp = w.quiver();
    const Quiver& q = *qp;
    std::unordered_map<Path, C, PathHash> acc;
    for (const auto& [p, c] : w.terms()) {
        int m = p.len;
        for (int i = 0; i < m; ++i) {
            if (p[i] != a) continue;
            Path piece = detail::cyc_seg(q, p, i + 1, m - 1, q.dst(a));
            auto [it, fresh] = acc.try_emplace(piece, c);
            if (!fresh) it->second += c;
        }
    }
    return Element<C>::from_map(qp, acc);
}

// D_a(a1...am) = sum_{i: ai = a} a1...a(i-1) (x) a(i+1)...am.
template <class C>
TensorElement<C> double_derivative(int a, const Element<C>& x) {
    const Quiver& q = *x.quiver();
    TensorElement<C> out(x.quiver());
    for (const auto& [p, c] : x.terms())
        for (int i = 0; i < p.len; ++i) {
            if (p[i] != a) continue;
            out.add(detail::lin_seg(q, p, 0, i, q.src(a)), detail::lin_seg(q, p, i + 1, p.len - i - 1, q.dst(a)), c);
        }
    return out;
}

// Necklace bracket on cyclic words.
template <class C>
CyclicElement<C> bracket(const CyclicElement<C>& u, const CyclicElement<C>& v) {
    const QuiverPtr& qp = u.quiver();
    const Quiver& q = *qp;
    std::unordered_map<Path, C, PathHash> acc;
    for (const auto& [p, cp] : u.terms())
        for (const auto& [r, cr] : v.terms())
            for (int i = 0; i < p.len; ++i)
                for (int j = 0; j < r.len; ++j) {
                    int w = q.omega(p[i], r[j]);
                    if (!w) continue;
                    Path left = detail::cyc_seg(q, p, i + 1, p.len - 1, q.dst(p[i]));
                    Path right = detail::cyc_seg(q, r, j + 1, r.len - 1, q.dst(r[j]));
                    Path word = detail::join(left, right);
                    C c = C(w) * cp * cr;
                    auto [it, fresh] = acc.try_emplace(canonical_rotation(q, word), c);
                    if (!fresh) it->second += c;
                }
    return CyclicElement<C>::from_canonical_map(qp, acc);
}

// Necklace cobracket.
template <class C>
WedgePair<C> cobracket(const CyclicElement<C>& u) {
    const Quiver& q = *u.quiver();
    WedgePair<C> out(u.quiver());
    for (const auto& [p, c] : u.terms()) {
        int m = p.len;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                int w = q.omega(p[i], p[j]);
                if (!w) continue;
                Path first = detail::cyc_seg(q, p, j + 1, m - (j - i) - 1, q.dst(p[j]));
                Path second = detail::cyc_seg(q, p, i + 1, j - i - 1, q.dst(p[i]));
                out.add(first, second, C(w) * c);
            }
    }
    return out;
}

// br(u ^ v) = {u, v}.
template <class C>
CyclicElement<C> bracket_of_wedge(const WedgePair<C>& x) {
    CyclicElement<C> out(x.quiver());
    for (const auto& [k, c] : x.terms())
        out += c * bracket(CyclicElement<C>::of(x.quiver(), k.first), CyclicElement<C>::of(x.quiver(), k.second));
    return out;
}

// Loday bracket L (x) P -> P.
template <class C>
Element<C> loday_bracket(const CyclicElement<C>& u, const Element<C>& x) {
    const QuiverPtr& qp = u.quiver();
    const Quiver& q = *qp;
    std::unordered_map<Path, C, PathHash> acc;
    for (const auto& [p, cp] : u.terms())
        for (const auto& [b, cb] : x.terms())
            for (int i = 0; i < p.len; ++i)
                for (int j = 0; j < b.len; ++j) {
                    int w = q.omega(p[i], b[j]);
                    if (!w) continue;
                    Path pre = detail::lin_seg(q, b, 0, j, q.src(b[j]));
                    Path mid = detail::cyc_seg(q, p, i + 1, p.len - 1, q.dst(p[i]));
                    Path post = detail::lin_seg(q, b, j + 1, b.len - j - 1, q.dst(b[j]));
                    Path word = detail::join(detail::join(pre, mid), post);
                    C c = C(w) * cp * cb;
                    auto [it, fresh] = acc.try_emplace(word, c);
                    if (!fresh) it->second += c;
                }
    return Element<C>::from_map(qp, acc);
}

// Double Poisson bracket P (x) P -> P (x) P.
template <class C>
TensorElement<C> double_bracket(const Element<C>& x, const Element<C>& y) {
    const Quiver& q = *x.quiver();
    TensorElement<C> out(x.quiver());
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms())
            for (int i = 0; i < a.len; ++i)
                for (int j = 0; j < b.len; ++j) {
                    int w = q.omega(a[i], b[j]);
                    if (!w) continue;
                    Path b_pre = detail::lin_seg(q, b, 0, j, q.src(b[j]));
                    Path a_post = detail::lin_seg(q, a, i + 1, a.len - i - 1, q.dst(a[i]));
                    Path a_pre = detail::lin_seg(q, a, 0, i, q.src(a[i]));
                    Path b_post = detail::lin_seg(q, b, j + 1, b.len - j - 1, q.dst(b[j]));
                    out.add(detail::join(b_pre, a_post), detail::join(a_pre, b_post), C(w) * ca * cb);
                }
    return out;
}

// m: P (x) P -> P.
template <class C>
Element<C> multiply_tensor(const TensorElement<C>& t) {
    std::unordered_map<Path, C, PathHash> acc;
    for (const auto& [k, c] : t.terms()) {
        if (!composable(k.first, k.second)) continue;
        auto [it, fresh] = acc.try_emplace(concat(k.first, k.second), c);
        if (!fresh) it->second += c;
    }
    return Element<C>::from_map(t.quiver(), acc);
}

// delta_l : P -> L (x) P, first slot canonical.
template <class C>
TensorElement<C> delta_ell(const Element<C>& x) {
    const Quiver& q = *x.quiver();
    TensorElement<C> out(x.quiver());
    for (const auto& [p, c] : x.terms()) {
        int n = p.len;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int w = q.omega(p[i], p[j]);
                if (!w) continue;
                Path inner = detail::lin_seg(q, p, i + 1, j - i - 1, q.dst(p[i]));
                Path outer = detail::join(detail::lin_seg(q, p, 0, i, q.src(p[i])),
                                          detail::lin_seg(q, p, j + 1, n - j - 1, q.dst(p[j])));
                out.add(canonical_rotation(q, inner), outer, C(-w) * c);
            }
    }
    return out;
}

// Right side of the BV identity: delta_l(a)(1 (x) b) + (1 (x) a) delta_l(b) - (pr (x) 1){{a, b}}.
template <class C>
TensorElement<C> bv_rhs(const Element<C>& a, const Element<C>& b) {
    const Quiver& q = *a.quiver();
    TensorElement<C> out(a.quiver());
    auto right_mul = [&](const TensorElement<C>& t, const Element<C>& y, bool on_left) {
        for (const auto& [k, c] : t.terms())
            for (const auto& [p, cp] : y.terms()) {
                const Path& x = k.second;
                if (on_left ? !composable(p, x) : !composable(x, p)) continue;
                out.add(k.first, on_left ? concat(p, x) : concat(x, p), c * cp);
            }
    };
    right_mul(delta_ell(a), b, false);
    right_mul(delta_ell(b), a, true);
    const auto db = double_bracket(a, b);
    for (const auto& [k, c] : db.terms()) {
        if (!k.first.closed()) continue;
        out.add(canonical_rotation(q, k.first), k.second, C(-c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Poisson bracket on i0 Pi i0 through Lambda.

struct PoissonContext {
    QuiverPtr dq;
    int i0 = 0;
    int degree_bound = 0;
    RewriteSystem<Integer> sys;
    GradedTorsionReport lambda;
};

inline PoissonContext poisson_context(const QuiverPtr& dq, int i0, int D) {
    PoissonContext ctx{dq, i0, D, prep_system<Integer>(dq, {}, D), {}};
    ctx.lambda.quiver = dq;
    ctx.lambda.degree_bound = D;
    ctx.lambda.method = LambdaMethod::Rewrite;
    ctx.lambda.pieces = lambda_pieces_rewrite(ctx.sys, D);
    return ctx;
}

namespace detail {

// Exact rational solution of sum_k x_k cols[k] = rhs, if one exists.
inline std::optional<std::vector<Rational>> solve_columns(const std::vector<SparseRow>& cols, const SparseRow& rhs,
                                                         int nrows) {
    int n = static_cast<int>(cols.size());
    std::vector<std::vector<Rational>> m(nrows, std::vector<Rational>(n + 1, Rational(0)));
    for (int k = 0; k < n; ++k)
        for (const auto& [r, v] : cols[k]) m[r][k] += Rational(v);
    for (const auto& [r, v] : rhs) m[r][n] += Rational(v);
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < n && row < nrows; ++c) {
        int piv = -1;
        for (int r = row; r < nrows; ++r)
            if (!m[r][c].is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[row]);
        Rational inv = m[row][c].inverse();
        for (int k = c; k <= n; ++k) m[row][k] = m[row][k] * inv;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Rational f = m[r][c];
            for (int k = c; k <= n; ++k) m[r][k] = m[r][k] - f * m[row][k];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (int r = row; r < nrows; ++r)
        if (!m[r][n].is_zero()) return std::nullopt;
    std::vector<Rational> x(n, Rational(0));
    for (int r = 0; r < row; ++r) x[pivot_col[r]] = m[r][n];
    return x;
}

}  // namespace detail

// {f, g} = q{j(f), j(g)}: bracket the cyclic classes, then take the unique element of i0 Pi i0
// with the same image in Lambda tensor Q.
inline Element<Rational> poisson_i0(const PoissonContext& ctx, const Element<Integer>& f, const Element<Integer>& g) {
    const Quiver& q = *ctx.dq;
    CyclicElement<Integer> br = bracket(cyclic_project(f), cyclic_project(g));
    Element<Rational> zero(ctx.dq);
    if (br.is_zero()) return zero;
    int d = br.degree();
    if (d > ctx.degree_bound) throw DegreeBeyondCertification("poisson_i0: degree " + std::to_string(d));
    const LambdaPiece& piece = ctx.lambda.pieces.at(d);
    SparseRow rhs = lambda_coordinates(ctx.lambda, br, d, &ctx.sys);
    std::vector<Path> basis;
    ctx.sys.walk_normal(ctx.i0, d, [&](const Path& p) {
        if (p.len == d && p.tgt == ctx.i0) basis.push_back(p);
    });
    std::vector<SparseRow> cols;
    for (const Path& p : basis) cols.push_back({{piece.index.at(canonical_rotation(q, p)), Integer(1)}});
    for (const auto& r : piece.relations.data()) cols.push_back(r);
    auto sol = detail::solve_columns(cols, rhs, static_cast<int>(piece.basis.size()));
    if (!sol) throw std::logic_error("poisson_i0: bracket has no preimage in i0 Pi i0");
    std::vector<std::pair<Path, Rational>> ts;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!(*sol)[k].is_zero()) ts.emplace_back(basis[k], (*sol)[k]);
    return Element<Rational>::from_terms(ctx.dq, std::move(ts));
}

inline Element<Rational> to_rational(const Element<Integer>& x) {
    std::vector<std::pair<Path, Rational>> ts;
    for (const auto& [p, c] : x.terms()) ts.emplace_back(p, Rational(c));
    return Element<Rational>::from_terms(x.quiver(), std::move(ts));
}

// Normal form in Pi of a product of elements.
inline Element<Integer> pi_product(const PoissonContext& ctx, const std::vector<Element<Integer>>& xs) {
    Element<Integer> acc = Element<Integer>::identity(ctx.dq);
    for (const auto& x : xs) acc = ctx.sys.reduce(acc * x);
    return acc;
}

}  // namespace preproj
