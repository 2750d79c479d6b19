#pragma once
// Sparse linear combinations of paths in a path algebra.

#include "path.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace preproj {

template <class C>
bool coeff_negative(const C& c) {
    if constexpr (requires { c.sign(); }) return c.sign() < 0;
    else return false;
}

template <class C>
C parse_coeff(const std::string& s, const C& like) {
    if constexpr (std::is_same_v<C, Rational>) {
        auto slash = s.find('/');
        if (slash != std::string::npos) return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
        return Rational(Integer(s));
    } else {
        return CoeffTraits<C>::from_int(Integer(s), like);
    }
}

// Splits "2*[x y] - [y x]" style text into signed (coefficient, body) pairs.
// The body is whatever follows the optional "N*" prefix, with surrounding blanks removed.
inline std::vector<std::pair<std::string, std::string>> split_terms(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string s = text;
    std::size_t i = 0;
    auto skip = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip();
    if (i == s.size() || s.substr(i) == "0") return out;
    bool first = true;
    while (i < s.size()) {
        skip();
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') {
            neg = s[i] == '-';
            ++i;
            skip();
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in '" + text + "'");
        }
        first = false;
        // the term extends to the next " + " or " - " at bracket depth zero
        std::size_t j = i;
        int depth = 0;
        while (j < s.size()) {
            char c = s[j];
            if (c == '[' || c == '(') ++depth;
            else if (c == ']' || c == ')') --depth;
            else if (depth == 0 && (c == '+' || c == '-') && j > i && std::isspace(static_cast<unsigned char>(s[j - 1])))
                break;
            ++j;
        }
        std::string term = s.substr(i, j - i);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) term.pop_back();
        std::string coeff = "1", body = term;
        std::size_t k = 0;
        while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) || term[k] == '/')) ++k;
        if (k > 0 && k < term.size() && term[k] == '*') {
            coeff = term.substr(0, k);
            body = term.substr(k + 1);
        } else if (k == term.size() && k > 0) {
            coeff = term;
            body.clear();
        }
        if (neg) coeff = "-" + coeff;
        out.emplace_back(coeff, body);
        i = j;
    }
    return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

template <class C>
std::string render_coeff_prefix(const C& c, bool first) {
    bool neg = coeff_negative(c);
    C a = neg ? C(-c) : c;
    std::string s;
    if (first) s = neg ? "-" : "";
    else s = neg ? " - " : " + ";
    if (!a.is_one()) s += to_string(a) + "*";
    return s;
}

template <class C = Integer>
class Element {
public:
    using Term = std::pair<Path, C>;

    Element() = default;
    explicit Element(QuiverPtr q) : q_(std::move(q)) {}

    static Element monomial(QuiverPtr q, const Path& p, C c = C(1)) {
        Element e(std::move(q));
        if (!c.is_zero()) e.terms_.emplace_back(p, std::move(c));
        return e;
    }
    static Element idempotent(QuiverPtr q, int v) { return monomial(q, Path::idempotent(v)); }
    static Element arrow(QuiverPtr q, int a) {
        Path p = Path::arrow(*q, a);
        return monomial(std::move(q), p);
    }
    static Element identity(QuiverPtr q) {
        Element e(q);
        for (int v = 0; v < q->num_vertices(); ++v) e.terms_.emplace_back(Path::idempotent(v), C(1));
        return e;
    }
    template <class Map>
    static Element from_map(QuiverPtr q, Map&& m) {
        Element e(std::move(q));
        for (auto& [p, c] : m)
            if (!c.is_zero()) e.terms_.emplace_back(p, c);
        std::sort(e.terms_.begin(), e.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        return e;
    }
    static Element from_terms(QuiverPtr q, std::vector<Term> ts) {
        Element e(std::move(q));
        std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        for (auto& t : ts) {
            if (!e.terms_.empty() && e.terms_.back().first == t.first) e.terms_.back().second += t.second;
            else e.terms_.push_back(std::move(t));
            if (e.terms_.back().second.is_zero()) e.terms_.pop_back();
        }
        return e;
    }

    const QuiverPtr& quiver() const { return q_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const { return terms_.empty() ? -1 : terms_.back().first.len; }
    bool homogeneous() const { return terms_.empty() || terms_.front().first.len == terms_.back().first.len; }

    C coeff(const Path& p) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                                   [](const Term& t, const Path& x) { return t.first < x; });
        if (it != terms_.end() && it->first == p) return it->second;
        return C(0);
    }

    Element component(int d) const {
        Element e(q_);
        for (const auto& t : terms_)
            if (t.first.len == d) e.terms_.push_back(t);
        return e;
    }
    Element truncated(int d) const {
        Element e(q_);
        for (const auto& t : terms_)
            if (t.first.len <= d) e.terms_.push_back(t);
        return e;
    }

    friend Element operator+(const Element& x, const Element& y) { return combine(x, y, false); }
    friend Element operator-(const Element& x, const Element& y) { return combine(x, y, true); }
    Element operator-() const {
        Element e = *this;
        for (auto& t : e.terms_) t.second = -t.second;
        return e;
    }
    Element& operator+=(const Element& y) { return *this = *this + y; }
    Element& operator-=(const Element& y) { return *this = *this - y; }

    friend Element operator*(const C& c, const Element& x) {
        Element e(x.q_);
        if (c.is_zero()) return e;
        for (const auto& t : x.terms_) {
            C v = c * t.second;
            if (!v.is_zero()) e.terms_.emplace_back(t.first, std::move(v));
        }
        return e;
    }

    friend Element operator*(const Element& x, const Element& y) { return multiply(x, y, -1); }

    // Product discarding every term of degree above `bound` (no truncation when bound < 0).
    static Element multiply(const Element& x, const Element& y, int bound) {
        QuiverPtr q = join(x, y);
        std::unordered_map<Path, C, PathHash> acc;
        for (const auto& [p, c] : x.terms_)
            for (const auto& [r, d] : y.terms_) {
                if (!composable(p, r)) continue;
                if (bound >= 0 && p.len + r.len > bound) continue;
                auto [it, fresh] = acc.try_emplace(concat(p, r), c * d);
                if (!fresh) it->second += c * d;
            }
        return from_map(q, acc);
    }

    friend bool operator==(const Element& x, const Element& y) {
        if (x.terms_.size() != y.terms_.size()) return false;
        for (std::size_t i = 0; i < x.terms_.size(); ++i)
            if (x.terms_[i].first != y.terms_[i].first || x.terms_[i].second != y.terms_[i].second) return false;
        return true;
    }
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

    // Terms in descending (degree, monomial) order.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            s += render_coeff_prefix(it->second, first);
            s += render_path(*q_, it->first);
            first = false;
        }
        return s;
    }

    static Element parse(QuiverPtr q, const std::string& text, const C& like = C(0)) {
        std::vector<Term> ts;
        for (auto& [coeff, body] : split_terms(text)) {
            auto toks = split_ws(body);
            if (toks.empty()) throw std::invalid_argument("bare scalar term in '" + text + "'");
            ts.emplace_back(parse_path(*q, toks), parse_coeff<C>(coeff, like));
        }
        return from_terms(q, std::move(ts));
    }

private:
    static QuiverPtr join(const Element& x, const Element& y) {
        if (x.q_ && y.q_ && x.q_ != y.q_) throw std::invalid_argument("elements live over different quivers");
        return x.q_ ? x.q_ : y.q_;
    }
    static Element combine(const Element& x, const Element& y, bool subtract) {
        Element e(join(x, y));
        e.terms_.reserve(x.terms_.size() + y.terms_.size());
        auto i = x.terms_.begin(), j = y.terms_.begin();
        while (i != x.terms_.end() || j != y.terms_.end()) {
            if (j == y.terms_.end() || (i != x.terms_.end() && i->first < j->first)) {
                e.terms_.push_back(*i++);
            } else if (i == x.terms_.end() || j->first < i->first) {
                e.terms_.emplace_back(j->first, subtract ? C(-j->second) : j->second);
                ++j;
            } else {
                C v = subtract ? C(i->second - j->second) : C(i->second + j->second);
                if (!v.is_zero()) e.terms_.emplace_back(i->first, std::move(v));
                ++i;
                ++j;
            }
        }
        return e;
    }

    QuiverPtr q_;
    std::vector<Term> terms_;
};

}  // namespace preproj
