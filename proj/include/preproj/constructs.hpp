#pragma once
// Named elements: preprojective relations, z_{a,b}, W_{a,b} and bituples.

#include "cyclic.hpp"

#include <numeric>
#include <set>

namespace preproj {

// Local relations e_i r e_i for every black vertex i (not in `white`),
// r = sum over original arrows of (a a* - a* a).
template <class C = Integer>
std::vector<Element<C>> preprojective_relation(const QuiverPtr& dq, const std::vector<int>& white = {}) {
    if (!dq->starred()) throw std::invalid_argument("preprojective_relation: quiver must be a double");
    std::vector<bool> is_white(dq->num_vertices(), false);
    for (int j : white) is_white.at(j) = true;
    std::vector<Element<C>> out;
    int m = dq->num_original_arrows();
    for (int i = 0; i < dq->num_vertices(); ++i) {
        if (is_white[i]) continue;
        std::vector<typename Element<C>::Term> ts;
        for (int a = 0; a < m; ++a) {
            int as = dq->star(a);
            if (dq->src(a) == i) ts.emplace_back(Path::from_arrows(*dq, {a, as}), C(1));
            if (dq->dst(a) == i) ts.emplace_back(Path::from_arrows(*dq, {as, a}), C(-1));
        }
        out.push_back(Element<C>::from_terms(dq, std::move(ts)));
    }
    return out;
}

template <class C = Integer>
Element<C> preprojective_r(const QuiverPtr& dq) {
    Element<C> r(dq);
    for (auto& ri : preprojective_relation<C>(dq)) r += ri;
    return r;
}

template <class C>
Element<C> power(const Element<C>& x, int n, const Element<C>& one) {
    Element<C> r = one;
    for (int k = 0; k < n; ++k) r = r * x;
    return r;
}

// z_{a,b} = (xy)^b x^{a-b} for a >= b, else (yx)^a y^{b-a}; z_{0,0} = 1.
template <class C>
Element<C> z_ab(int a, int b, const Element<C>& x, const Element<C>& y) {
    if (a < 0 || b < 0) throw std::invalid_argument("z_ab: negative exponent");
    QuiverPtr q = x.quiver() ? x.quiver() : y.quiver();
    Element<C> one = Element<C>::identity(q);
    if (a >= b) return power(x * y, b, one) * power(x, a - b, one);
    return power(y * x, a, one) * power(y, b - a, one);
}

struct Bituple {
    std::vector<int> a_seq, b_seq;
    int period = 0;
    int rep = 0;
};

inline std::pair<int, int> rep_of(const std::vector<int>& a_seq, const std::vector<int>& b_seq) {
    if (a_seq.empty() || a_seq.size() != b_seq.size()) throw std::invalid_argument("rep_of: need equal nonempty tuples");
    int k = static_cast<int>(a_seq.size());
    for (int per = 1; per <= k; ++per) {
        if (k % per) continue;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) ok = a_seq[i] == a_seq[(i + per) % k] && b_seq[i] == b_seq[(i + per) % k];
        if (ok) return {per, k / per};
    }
    return {k, 1};
}

inline Bituple make_bituple(std::vector<int> a_seq, std::vector<int> b_seq) {
    auto [per, rep] = rep_of(a_seq, b_seq);
    return {std::move(a_seq), std::move(b_seq), per, rep};
}

// All pairs of tuples with a_l > b_l >= 0, sum(a_l + 1) = A, sum(b_l + 1) = B,
// one representative per simultaneous rotation class (the lexicographically least).
inline std::vector<Bituple> enumerate_bituples(int A, int B) {
    std::vector<Bituple> out;
    std::vector<std::pair<int, int>> seq;
    auto is_min_rotation = [&] {
        int k = static_cast<int>(seq.size());
        for (int s = 1; s < k; ++s)
            for (int i = 0; i < k; ++i) {
                auto x = seq[(i + s) % k], y = seq[i];
                if (x < y) return false;
                if (y < x) break;
            }
        return true;
    };
    auto rec = [&](auto&& self, int ra, int rb) -> void {
        if (ra == 0 && rb == 0) {
            if (!seq.empty() && is_min_rotation()) {
                std::vector<int> as, bs;
                for (auto [x, y] : seq) { as.push_back(x); bs.push_back(y); }
                out.push_back(make_bituple(std::move(as), std::move(bs)));
            }
            return;
        }
        if (ra <= 0 || rb <= 0) return;
        for (int b = 0; b + 1 <= rb; ++b)
            for (int a = b + 1; a + 1 <= ra; ++a) {
                seq.emplace_back(a, b);
                self(self, ra - a - 1, rb - b - 1);
                seq.pop_back();
            }
    };
    rec(rec, A, B);
    return out;
}

// W_{a,b} in the cyclic words of the algebra generated by x, y and r'.
template <class C>
CyclicElement<C> w_ab(int a, int b, const Element<C>& x, const Element<C>& y, const Element<C>& rprime) {
    if (a < 1 || b < 1) throw std::invalid_argument("w_ab: need a, b >= 1");
    QuiverPtr q = rprime.quiver();
    CyclicElement<C> out(q);
    if (a == b) {
        Element<C> one = Element<C>::identity(q);
        Element<C> xy = x * y;
        return cyclic_project(power(xy + rprime, a, one)) - cyclic_project(power(xy, a, one));
    }
    bool upper = a > b;
    int big = upper ? a : b, small = upper ? b : a;
    int g = std::gcd(a, b);
    for (const auto& t : enumerate_bituples(big, small)) {
        if (g % t.rep) throw std::logic_error("w_ab: non-integral coefficient");
        Element<C> word = Element<C>::identity(q);
        for (std::size_t l = 0; l < t.a_seq.size(); ++l) {
            Element<C> z = upper ? z_ab(t.a_seq[l], t.b_seq[l], x, y) : z_ab(t.b_seq[l], t.a_seq[l], x, y);
            word = word * (upper ? -rprime : rprime) * z;
        }
        out += C(g / t.rep) * cyclic_project(word);
    }
    return out;
}

// The one-vertex quiver with loops x, y and a formal letter r' used for W_{a,b}.
inline QuiverPtr formal_xyr() {
    Quiver q;
    q.add_vertex("0");
    q.add_arrow(0, 0, "x");
    q.add_arrow(0, 0, "y");
    q.add_arrow(0, 0, "r'");
    return std::make_shared<const Quiver>(std::move(q));
}

// Bidegree in (x, y) of a word over formal_xyr, r' counting as (1,1).
inline std::pair<int, int> xyr_bidegree(const Path& p) {
    int a = 0, b = 0;
    for (int i = 0; i < p.len; ++i) {
        if (p.a[i] == 0) ++a;
        else if (p.a[i] == 1) ++b;
        else { ++a; ++b; }
    }
    return {a, b};
}

// i_s Pi i_s for a star with branch lengths d_k: Z<x_1..x_n> / (x_k^(d_k+1), x_1 + ... + x_n).
// Loops are named x, y, z when there are at most three branches.
struct StarAlgebra {
    QuiverPtr quiver;
    std::vector<Element<Integer>> generators;
};

inline StarAlgebra star_algebra(const std::vector<int>& lengths) {
    if (lengths.empty()) throw std::invalid_argument("star_algebra: need at least one branch");
    Quiver q;
    q.add_vertex("s");
    const char* short_names[] = {"x", "y", "z"};
    for (std::size_t k = 0; k < lengths.size(); ++k)
        q.add_arrow(0, 0, lengths.size() <= 3 ? short_names[k] : "x" + std::to_string(k + 1));
    StarAlgebra A{std::make_shared<const Quiver>(std::move(q)), {}};
    Element<Integer> sum(A.quiver);
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        std::vector<int> ids(lengths[k] + 1, static_cast<int>(k));
        A.generators.push_back(Element<Integer>::monomial(A.quiver, Path::from_arrows(*A.quiver, ids)));
        sum += Element<Integer>::arrow(A.quiver, static_cast<int>(k));
    }
    A.generators.push_back(sum);
    return A;
}

}  // namespace preproj
