#pragma once
// Graded Poisson algebras k[X,Y,Z]/(F) given by a bracket table, and their zeroth
// Poisson homology HP0 = A/{A,A} degree by degree over Q or F_p.

#include "homology.hpp"

#include <array>

namespace preproj {

using Exponent = std::array<int, 3>;

// Commutative polynomial in three variables with integer coefficients.
struct Poly {
    std::map<Exponent, Integer> terms;

    Poly() = default;
    Poly(std::initializer_list<std::pair<Exponent, long>> ts) {
        for (const auto& [e, c] : ts) add(e, Integer(c));
    }
    static Poly var(int k) {
        Poly p;
        Exponent e{0, 0, 0};
        e[k] = 1;
        p.add(e, Integer(1));
        return p;
    }
    void add(const Exponent& e, const Integer& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    friend Poly operator+(Poly a, const Poly& b) {
        for (const auto& [e, c] : b.terms) a.add(e, c);
        return a;
    }
    friend Poly operator-(Poly a, const Poly& b) {
        for (const auto& [e, c] : b.terms) a.add(e, -c);
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        for (const auto& [e, c] : a.terms)
            for (const auto& [f, d] : b.terms) out.add({e[0] + f[0], e[1] + f[1], e[2] + f[2]}, c * d);
        return out;
    }
    friend Poly operator*(const Integer& s, const Poly& a) {
        Poly out;
        for (const auto& [e, c] : a.terms) out.add(e, s * c);
        return out;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }

    std::string str(const std::array<std::string, 3>& names = {"X", "Y", "Z"}) const {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (int k = 0; k < 3; ++k) {
                if (!e[k]) continue;
                if (!mono.empty()) mono += "*";
                mono += names[k];
                if (e[k] > 1) mono += "^" + std::to_string(e[k]);
            }
            if (mono.empty()) {
                s += first ? c.str() : (c.sign() < 0 ? " - " + (-c).str() : " + " + c.str());
            } else {
                s += render_coeff_prefix(c, first);
                s += mono;
            }
            first = false;
        }
        return s;
    }
};

inline Poly monomial(const Exponent& e, long c = 1) {
    Poly p;
    p.add(e, Integer(c));
    return p;
}

struct PoissonPresentation {
    std::string name;
    std::array<int, 3> degrees{};  // weights of X, Y, Z
    Poly relation;                 // F, with leading monomial lead
    Exponent lead{};               // coefficient of lead in F must be +-1
    std::array<Poly, 3> brackets;  // {X,Y}, {X,Z}, {Y,Z}
    int bracket_degree = -2;

    int weight(const Exponent& e) const { return e[0] * degrees[0] + e[1] * degrees[1] + e[2] * degrees[2]; }
    bool normal(const Exponent& e) const {
        return !(e[0] >= lead[0] && e[1] >= lead[1] && e[2] >= lead[2]);
    }

    // Reduce modulo F by replacing lead with lead - F/c.
    Poly reduce(Poly p) const {
        const Integer lc = relation.terms.at(lead);
        Poly tail = relation;
        tail.terms.erase(lead);
        Poly out;
        while (!p.is_zero()) {
            std::optional<Exponent> hit;
            for (auto jt = p.terms.begin(); jt != p.terms.end(); ++jt)
                if (!normal(jt->first)) { hit = jt->first; break; }
            if (!hit) return out + p;
            Exponent e = *hit;
            Integer c = p.terms.at(e);
            p.terms.erase(e);
            Exponent rest{e[0] - lead[0], e[1] - lead[1], e[2] - lead[2]};
            // lead = -(tail)/lc, lc = +-1
            p = p - (c * lc) * (monomial(rest) * tail);
        }
        return out;
    }

    // {x_k, x_l} from the table, with antisymmetry.
    Poly generator_bracket(int k, int l) const {
        if (k == l) return Poly();
        if (k > l) return Integer(-1) * generator_bracket(l, k);
        if (k == 0 && l == 1) return brackets[0];
        if (k == 0 && l == 2) return brackets[1];
        return brackets[2];
    }

    // {x_k, m} by the Leibniz rule.
    Poly bracket_with_monomial(int k, const Exponent& m) const {
        Poly out;
        for (int l = 0; l < 3; ++l) {
            if (!m[l]) continue;
            Exponent rest = m;
            rest[l] -= 1;
            out = out + Integer(m[l]) * (monomial(rest) * generator_bracket(k, l));
        }
        return reduce(out);
    }

    // Full bracket of two polynomials.
    Poly bracket(const Poly& f, const Poly& g) const {
        Poly out;
        for (const auto& [e, c] : f.terms)
            for (int k = 0; k < 3; ++k) {
                if (!e[k]) continue;
                Exponent rest = e;
                rest[k] -= 1;
                Poly bg;
                for (const auto& [m, d] : g.terms) bg = bg + d * bracket_with_monomial(k, m);
                out = out + (Integer(e[k]) * c) * (monomial(rest) * bg);
            }
        return reduce(out);
    }

    // Normal monomials of weight d.
    std::vector<Exponent> basis(int d) const {
        std::vector<Exponent> out;
        for (int c = 0; c * degrees[2] <= d; ++c)
            for (int b = 0; c * degrees[2] + b * degrees[1] <= d; ++b) {
                int rem = d - c * degrees[2] - b * degrees[1];
                if (rem % degrees[0]) continue;
                Exponent e{rem / degrees[0], b, c};
                if (normal(e)) out.push_back(e);
            }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long k = 2; k * k <= p; ++k)
        if (p % k == 0) return false;
    return true;
}

// dim of HP0 in each weight 0..D, over F_p (modulus = p) or Q (modulus = 0).
inline std::vector<int> hp0_poisson(const PoissonPresentation& P, long modulus, int D) {
    if (modulus != 0 && !is_prime(modulus)) throw std::invalid_argument("hp0_poisson: modulus must be prime or 0");
    std::vector<int> dims;
    for (int d = 0; d <= D; ++d) {
        auto B = P.basis(d);
        std::map<Exponent, int> col;
        for (std::size_t k = 0; k < B.size(); ++k) col[B[k]] = static_cast<int>(k);
        SparseIntMatrix rel(0, static_cast<int>(B.size()));
        // {A, A} is spanned by {x_k, m} for generators x_k and normal monomials m
        for (int k = 0; k < 3; ++k) {
            int w = d - P.degrees[k] - P.bracket_degree;
            if (w < 0) continue;
            for (const auto& m : P.basis(w)) {
                Poly b = P.bracket_with_monomial(k, m);
                SparseRow row;
                for (const auto& [e, c] : b.terms) row.emplace_back(col.at(e), c);
                std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
                if (!row.empty()) rel.add_row(std::move(row));
            }
        }
        int r = modulus ? rank_mod(rel, modulus) : smith_normal_form(rel).rank;
        dims.push_back(static_cast<int>(B.size()) - r);
    }
    return dims;
}

namespace presentations {

inline PoissonPresentation affine_a(int n) {
    PoissonPresentation P;
    P.name = "~A" + std::to_string(n - 1);
    P.degrees = {n, n, 2};
    P.relation = Poly{{{1, 1, 0}, 1}, {{0, 0, n}, -1}};
    P.lead = {1, 1, 0};
    P.brackets[0] = monomial({0, 0, n - 1}, n);
    P.brackets[1] = monomial({1, 0, 0}, 1);
    P.brackets[2] = monomial({0, 1, 0}, -1);
    return P;
}

// X, Y, Z of degrees 4, 4, 6 in the D~4 case; brackets as computed by the necklace engine.
inline PoissonPresentation affine_d4() {
    PoissonPresentation P;
    P.name = "~D4";
    P.degrees = {4, 4, 6};
    P.relation = Poly{{{0, 0, 2}, 1}, {{1, 2, 0}, 1}, {{2, 1, 0}, -1}};
    P.lead = {0, 0, 2};
    P.brackets[0] = monomial({0, 0, 1}, 2);
    P.brackets[1] = Poly{{{2, 0, 0}, 1}, {{1, 1, 0}, -2}};
    P.brackets[2] = Poly{{{0, 2, 0}, 1}, {{1, 1, 0}, -2}};
    return P;
}

inline PoissonPresentation affine_e6() {
    PoissonPresentation P;
    P.name = "~E6";
    P.degrees = {6, 8, 12};
    P.relation = Poly{{{0, 0, 2}, 1}, {{0, 3, 0}, 1}, {{2, 0, 1}, 1}};
    P.lead = {0, 0, 2};
    P.brackets[0] = Poly{{{0, 0, 1}, -2}, {{2, 0, 0}, -1}};
    P.brackets[1] = monomial({0, 2, 0}, 3);
    P.brackets[2] = monomial({1, 0, 1}, -2);
    return P;
}

inline PoissonPresentation affine_e7() {
    PoissonPresentation P;
    P.name = "~E7";
    P.degrees = {8, 12, 18};
    P.relation = Poly{{{0, 0, 2}, 1}, {{3, 1, 0}, -1}, {{0, 3, 0}, 1}};
    P.lead = {0, 0, 2};
    P.brackets[0] = monomial({0, 0, 1}, -2);
    P.brackets[1] = Poly{{{0, 2, 0}, 3}, {{3, 0, 0}, -1}};
    P.brackets[2] = monomial({2, 1, 0}, 3);
    return P;
}

inline PoissonPresentation affine_e8() {
    PoissonPresentation P;
    P.name = "~E8";
    P.degrees = {12, 20, 30};
    P.relation = Poly{{{0, 0, 2}, 1}, {{5, 0, 0}, 1}, {{0, 3, 0}, 1}};
    P.lead = {0, 0, 2};
    P.brackets[0] = monomial({0, 0, 1}, -2);
    P.brackets[1] = monomial({0, 2, 0}, 3);
    P.brackets[2] = monomial({4, 0, 0}, -5);
    return P;
}

inline PoissonPresentation abelian(const PoissonPresentation& base) {
    PoissonPresentation P = base;
    P.name = base.name + " (abelian)";
    P.brackets = {Poly(), Poly(), Poly()};
    return P;
}

inline PoissonPresentation by_name(const std::string& name) {
    if (name == "affine_a2" || name == "~A2") return affine_a(3);
    if (name == "affine_d4" || name == "~D4") return affine_d4();
    if (name == "affine_e6" || name == "~E6") return affine_e6();
    if (name == "affine_e7" || name == "~E7") return affine_e7();
    if (name == "affine_e8" || name == "~E8") return affine_e8();
    throw std::invalid_argument("unknown Poisson presentation '" + name + "'");
}

}  // namespace presentations

// Weights of the F_2 basis of HP0 for ~E6 read off the explicit list
// xy x^2a y^2b, xyz x^2a y^2b, xz y^2b, yz, z, y, x, 1.
inline std::vector<int> e6_hp0_f2_expected(int D) {
    std::vector<int> dims(D + 1, 0);
    const int x = 6, y = 8, z = 12;
    auto bump = [&](int w) {
        if (w <= D) ++dims[w];
    };
    for (int a = 0; 2 * a * x <= D; ++a)
        for (int b = 0; 2 * a * x + 2 * b * y <= D; ++b) {
            bump(x + y + 2 * a * x + 2 * b * y);
            bump(x + y + z + 2 * a * x + 2 * b * y);
        }
    for (int b = 0; 2 * b * y <= D; ++b) bump(x + z + 2 * b * y);
    for (int w : {y + z, z, y, x, 0}) bump(w);
    return dims;
}

}  // namespace preproj
