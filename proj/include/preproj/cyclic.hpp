#pragma once
// Cyclic words: closed paths up to rotation, and linear combinations of them.

#include "element.hpp"

#include <cstring>

namespace preproj {

// Starting offset of the lexicographically least rotation (Booth).
inline int least_rotation(const std::uint8_t* s, int n) {
    if (n <= 1) return 0;
    std::vector<int> f(2 * n, -1);
    int k = 0;
    for (int j = 1; j < 2 * n; ++j) {
        std::uint8_t sj = s[j % n];
        int i = f[j - k - 1];
        while (i != -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j - i - 1;
            i = f[i];
        }
        if (i == -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

inline Path rotate(const Quiver& q, const Path& p, int k) {
    if (p.len == 0 || k % p.len == 0) return p;
    k %= p.len;
    Path r;
    r.len = p.len;
    std::memcpy(r.a.data(), p.a.data() + k, p.len - k);
    std::memcpy(r.a.data() + (p.len - k), p.a.data(), k);
    r.src = r.tgt = static_cast<std::uint8_t>(q.src(r.a[0]));
    return r;
}

inline Path canonical_rotation(const Quiver& q, const Path& p) {
    if (!p.closed()) throw std::invalid_argument("canonical_rotation: path is not closed");
    return rotate(q, p, least_rotation(p.a.data(), p.len));
}

// Smallest period of a closed word (len when aperiodic).
inline int word_period(const Path& p) {
    for (int d = 1; d < p.len; ++d) {
        if (p.len % d) continue;
        if (std::memcmp(p.a.data(), p.a.data() + d, p.len - d) == 0) return d;
    }
    return p.len;
}

struct CyclicClass {
    Path rep;
    int degree() const { return rep.len; }
    friend bool operator==(const CyclicClass& x, const CyclicClass& y) { return x.rep == y.rep; }
    friend bool operator<(const CyclicClass& x, const CyclicClass& y) { return x.rep < y.rep; }
};

inline CyclicClass cyclic_class(const Quiver& q, const Path& p) { return {canonical_rotation(q, p)}; }

inline std::string render_cyclic(const Quiver& q, const Path& p) { return "[" + render_path(q, p) + "]"; }

// A linear combination of cyclic classes; every stored path is in canonical rotation.
template <class C = Integer>
class CyclicElement {
public:
    using Term = std::pair<Path, C>;

    CyclicElement() = default;
    explicit CyclicElement(QuiverPtr q) : body_(std::move(q)) {}

    static CyclicElement of(QuiverPtr q, const Path& p, C c = C(1)) {
        Path r = canonical_rotation(*q, p);
        CyclicElement e;
        e.body_ = Element<C>::monomial(std::move(q), r, std::move(c));
        return e;
    }
    template <class Map>
    static CyclicElement from_canonical_map(QuiverPtr q, Map&& m) {
        CyclicElement e;
        e.body_ = Element<C>::from_map(std::move(q), std::forward<Map>(m));
        return e;
    }

    const QuiverPtr& quiver() const { return body_.quiver(); }
    const std::vector<Term>& terms() const { return body_.terms(); }
    bool is_zero() const { return body_.is_zero(); }
    int degree() const { return body_.degree(); }
    C coeff(const Path& canonical) const { return body_.coeff(canonical); }
    const Element<C>& as_element() const { return body_; }
    CyclicElement component(int d) const { return wrap(body_.component(d)); }

    friend CyclicElement operator+(const CyclicElement& x, const CyclicElement& y) { return wrap(x.body_ + y.body_); }
    friend CyclicElement operator-(const CyclicElement& x, const CyclicElement& y) { return wrap(x.body_ - y.body_); }
    CyclicElement operator-() const { return wrap(-body_); }
    CyclicElement& operator+=(const CyclicElement& y) { return *this = *this + y; }
    CyclicElement& operator-=(const CyclicElement& y) { return *this = *this - y; }
    friend CyclicElement operator*(const C& c, const CyclicElement& x) { return wrap(c * x.body_); }
    friend bool operator==(const CyclicElement& x, const CyclicElement& y) { return x.body_ == y.body_; }
    friend bool operator!=(const CyclicElement& x, const CyclicElement& y) { return !(x == y); }

    std::string str() const {
        if (body_.is_zero()) return "0";
        std::string s;
        bool first = true;
        const auto& ts = body_.terms();
        for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
            s += render_coeff_prefix(it->second, first);
            s += render_cyclic(*quiver(), it->first);
            first = false;
        }
        return s;
    }

    static CyclicElement parse(QuiverPtr q, const std::string& text, const C& like = C(0)) {
        std::vector<Term> ts;
        for (auto& [coeff, body] : split_terms(text)) {
            if (body.size() < 2 || body.front() != '[' || body.back() != ']')
                throw std::invalid_argument("cyclic term must be bracketed: '" + body + "'");
            Path p = parse_path(*q, split_ws(body.substr(1, body.size() - 2)));
            if (!p.closed()) throw std::invalid_argument("cyclic term is not a closed path: '" + body + "'");
            ts.emplace_back(canonical_rotation(*q, p), parse_coeff<C>(coeff, like));
        }
        CyclicElement e;
        e.body_ = Element<C>::from_terms(q, std::move(ts));
        return e;
    }

private:
    static CyclicElement wrap(Element<C> b) {
        CyclicElement e;
        e.body_ = std::move(b);
        return e;
    }
    Element<C> body_;
};

// Projection P -> P/[P,P]: open paths vanish, closed ones go to their rotation class.
template <class C>
CyclicElement<C> cyclic_project(const Element<C>& x) {
    std::unordered_map<Path, C, PathHash> acc;
    const QuiverPtr& q = x.quiver();
    for (const auto& [p, c] : x.terms()) {
        if (!p.closed()) continue;
        auto [it, fresh] = acc.try_emplace(canonical_rotation(*q, p), c);
        if (!fresh) it->second += c;
    }
    return CyclicElement<C>::from_canonical_map(q, acc);
}

}  // namespace preproj
