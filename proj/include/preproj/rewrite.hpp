#pragma once
// Reduction systems in path algebras: normal forms, truncated Buchberger completion,
// normal monomials and a linear-algebra confluence check.

#include "cyclic.hpp"
#include "order.hpp"
#include "smith.hpp"

#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace preproj {

struct NonUnitLead : std::runtime_error {
    int degree;
    std::string element;
    NonUnitLead(int d, std::string e)
        : std::runtime_error("non-unit leading coefficient in degree " + std::to_string(d) + ": " + e),
          degree(d), element(std::move(e)) {}
};

struct DegreeBeyondCertification : std::out_of_range {
    explicit DegreeBeyondCertification(const std::string& m) : std::out_of_range(m) {}
};

template <class C>
struct RewriteRule {
    Path lm;
    C lc;
    Element<C> element;  // lm carries coefficient lc
};

// Leading monomial and coefficient of a nonzero element under `order`.
template <class C>
std::pair<Path, C> leading_term(const Element<C>& x, const MonomialOrder& order) {
    if (x.is_zero()) throw std::invalid_argument("leading_term of zero");
    const auto* best = &x.terms().front();
    for (const auto& t : x.terms())
        if (order.compare(t.first, best->first) > 0) best = &t;
    return {best->first, best->second};
}

// Bytes-only key for subword lookups (endpoints ignored by equality and hash).
inline Path word_key(const std::uint8_t* p, int n) {
    Path k;
    k.len = static_cast<std::uint8_t>(n);
    std::memcpy(k.a.data(), p, n);
    return k;
}

template <class C>
std::string render_ordered(const Element<C>& x, const MonomialOrder& order, bool compact) {
    if (x.is_zero()) return "0";
    auto ts = x.terms();
    std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) { return order.compare(a.first, b.first) > 0; });
    std::string s;
    bool first = true;
    for (const auto& [p, c] : ts) {
        bool neg = coeff_negative(c);
        C a = neg ? C(-c) : c;
        s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string mono = compact ? render_compact(*x.quiver(), p) : render_path(*x.quiver(), p);
        if (!a.is_one()) s += to_string(a) + (compact ? "" : "*");
        else if (compact && p.len == 0) mono = "1";
        s += mono;
        first = false;
    }
    return s;
}

template <class C = Integer>
class RewriteSystem {
public:
    RewriteSystem(QuiverPtr q, MonomialOrder order) : q_(std::move(q)), order_(std::move(order)) {
        if (order_.num_arrows() != q_->num_arrows()) throw std::invalid_argument("order does not match quiver");
    }
    RewriteSystem(const RewriteSystem& o)
        : q_(o.q_), order_(o.order_), rules_(o.rules_), index_(o.index_), lengths_(o.lengths_),
          complete_to_(o.complete_to_) {}

    const QuiverPtr& quiver() const { return q_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<RewriteRule<C>>& rules() const { return rules_; }
    int complete_to_degree() const { return complete_to_; }
    void set_complete_to_degree(int d) { complete_to_ = d; }

    // Adds x as a rule, scaled so that its leading coefficient is 1.
    void add_rule(const Element<C>& x) {
        auto [lm, lc] = leading_term(x, order_);
        if (!lc.is_unit()) throw NonUnitLead(lm.len, x.str());
        Element<C> e = lc.is_one() ? x : C(inverse(lc)) * x;
        if (index_.count(lm)) throw std::invalid_argument("duplicate leading monomial");
        index_.emplace(word_key(lm.a.data(), lm.len), static_cast<int>(rules_.size()));
        rules_.push_back({lm, C(1), std::move(e)});
        if (std::find(lengths_.begin(), lengths_.end(), lm.len) == lengths_.end()) {
            lengths_.push_back(lm.len);
            std::sort(lengths_.begin(), lengths_.end());
        }
        invalidate_memo(lm.len);
    }

    void replace_rule_element(int i, Element<C> e) {
        rules_[i].element = std::move(e);
        invalidate_memo(rules_[i].lm.len);
    }

    // Leftmost occurrence of a leading monomial: (rule, position), or (-1, -1).
    std::pair<int, int> find_lm(const Path& m) const {
        for (int pos = 0; pos < m.len; ++pos)
            for (int L : lengths_) {
                if (pos + L > m.len) break;
                auto it = index_.find(word_key(m.a.data() + pos, L));
                if (it != index_.end()) return {it->second, pos};
            }
        return {-1, -1};
    }
    bool reducible(const Path& m) const { return find_lm(m).first >= 0; }

    Element<C> reduce_monomial(const Path& m) const {
        if (auto hit = memo_get(m)) return *hit;
        std::map<Path, C, MonomialOrder::Greater> work(order_.greater());
        std::unordered_map<Path, C, PathHash> out;
        work.emplace(m, C(1));
        while (!work.empty()) {
            auto node = work.extract(work.begin());
            const Path& p = node.key();
            const C& c = node.mapped();
            if (c.is_zero()) continue;
            const Element<C>* cached = (p == m) ? nullptr : memo_get(p);
            if (cached) {
                for (const auto& [t, d] : cached->terms()) add_to(out, t, c * d);
                continue;
            }
            auto [ri, pos] = find_lm(p);
            if (ri < 0) {
                add_to(out, p, c);
                continue;
            }
            const auto& rule = rules_[ri];
            Path u = p.sub(*q_, 0, pos);
            Path v = p.sub(*q_, pos + rule.lm.len, p.len - pos - rule.lm.len);
            for (const auto& [t, d] : rule.element.terms()) {
                if (t == rule.lm) continue;
                Path w = concat3(u, t, v);
                C val = -(c * d);
                auto [it, fresh] = work.try_emplace(w, val);
                if (!fresh) it->second += val;
            }
        }
        Element<C> res = Element<C>::from_map(q_, out);
        memo_put(m, res);
        return res;
    }

    Element<C> reduce(const Element<C>& x) const {
        std::unordered_map<Path, C, PathHash> acc;
        for (const auto& [p, c] : x.terms()) {
            Element<C> r = reduce_monomial(p);
            for (const auto& [t, d] : r.terms()) add_to(acc, t, c * d);
        }
        return Element<C>::from_map(x.quiver() ? x.quiver() : q_, acc);
    }

    // Degree-d paths from i to j (any endpoint when negative) containing no leading monomial.
    std::vector<Path> normal_monomials(int i, int j, int d) const {
        check_certified(d);
        std::vector<Path> out;
        walk_normal(i, d, [&](const Path& p) {
            if (p.len == d && (j < 0 || p.tgt == j)) out.push_back(p);
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    // counts[d][i][j] = number of normal paths i -> j of length d, d <= D.
    std::vector<std::vector<std::vector<long long>>> normal_counts(int D) const {
        check_certified(D);
        int n = q_->num_vertices();
        std::vector<std::vector<std::vector<long long>>> c(D + 1, std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0)));
        walk_normal(-1, D, [&](const Path& p) { ++c[p.len][p.src][p.tgt]; });
        return c;
    }

    // Depth-first enumeration of normal paths of length <= D, calling f on each (including idempotents).
    template <class F>
    void walk_normal(int start, int D, F&& f) const {
        Path p;
        for (int v = 0; v < q_->num_vertices(); ++v) {
            if (start >= 0 && v != start) continue;
            p = Path::idempotent(v);
            walk_rec(p, D, f);
        }
    }

    std::vector<int> sorted_rule_indices() const {
        std::vector<int> idx(rules_.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return order_.compare(rules_[a].lm, rules_[b].lm) > 0; });
        return idx;
    }

    // One rule per line, largest leading monomial first.
    std::string listing(bool compact) const {
        std::string s;
        for (int i : sorted_rule_indices()) s += render_ordered(rules_[i].element, order_, compact) + "\n";
        return s;
    }

    void clear_memo() const {
        std::lock_guard<std::mutex> g(mu_);
        memo_.clear();
    }

private:
    template <class F>
    void walk_rec(Path& p, int D, F& f) const {
        f(p);
        if (p.len == D) return;
        int v = p.tgt;
        for (int a : q_->out_arrows(v)) {
            Path np = concat(p, Path::arrow(*q_, a));
            bool bad = false;
            for (int L : lengths_) {
                if (L > np.len) break;
                if (index_.count(word_key(np.a.data() + np.len - L, L))) { bad = true; break; }
            }
            if (!bad) walk_rec(np, D, f);
        }
    }

    void check_certified(int d) const {
        if (complete_to_ >= 0 && d > complete_to_)
            throw DegreeBeyondCertification("degree " + std::to_string(d) + " beyond certified bound " +
                                            std::to_string(complete_to_));
    }

    static void add_to(std::unordered_map<Path, C, PathHash>& acc, const Path& p, const C& c) {
        auto [it, fresh] = acc.try_emplace(p, c);
        if (!fresh) it->second += c;
    }

    const Element<C>* memo_get(const Path& p) const {
        std::lock_guard<std::mutex> g(mu_);
        if (p.len >= memo_limit_) return nullptr;
        auto it = memo_.find(p);
        return it == memo_.end() ? nullptr : &it->second;
    }
    void memo_put(const Path& p, const Element<C>& e) const {
        std::lock_guard<std::mutex> g(mu_);
        if (p.len >= memo_limit_) return;
        memo_.emplace(p, e);
    }
    void invalidate_memo(int from_degree) {
        std::lock_guard<std::mutex> g(mu_);
        for (auto it = memo_.begin(); it != memo_.end();)
            if (it->first.len >= from_degree) it = memo_.erase(it);
            else ++it;
    }

public:
    // Monomials of length >= limit are never cached (used while completing).
    void set_memo_limit(int limit) const { memo_limit_ = limit; }

private:
    QuiverPtr q_;
    MonomialOrder order_;
    std::vector<RewriteRule<C>> rules_;
    std::unordered_map<Path, int, PathHash> index_;
    std::vector<int> lengths_;
    int complete_to_ = -1;
    mutable std::mutex mu_;
    mutable std::unordered_map<Path, Element<C>, PathHash> memo_;
    mutable int memo_limit_ = 1 << 20;
};

struct CompletionStats {
    long overlaps = 0;
    long reductions_to_zero = 0;
};

// Truncated noncommutative Buchberger for homogeneous generators.
template <class C>
RewriteSystem<C> complete(const std::vector<Element<C>>& gens, const QuiverPtr& q, const MonomialOrder& order,
                          int degree_bound, CompletionStats* stats = nullptr) {
    RewriteSystem<C> sys(q, order);
    std::map<int, std::vector<Element<C>>> by_degree;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.homogeneous()) throw std::invalid_argument("complete: generators must be homogeneous");
        by_degree[g.degree()].push_back(g);
    }
    // prefix index of leading monomials: key = prefix bytes, value = rules with that prefix
    std::unordered_map<Path, std::vector<int>, PathHash> prefixes;
    auto index_prefixes = [&](int r) {
        const Path& lm = sys.rules()[r].lm;
        for (int k = 1; k < lm.len; ++k) prefixes[word_key(lm.a.data(), k)].push_back(r);
    };
    for (int d = 0; d <= degree_bound; ++d) {
        sys.set_memo_limit(d);
        std::vector<Element<C>> cands;
        if (by_degree.count(d))
            for (const auto& g : by_degree[d]) cands.push_back(g);
        int nrules = static_cast<int>(sys.rules().size());
        for (int fi = 0; fi < nrules; ++fi) {
            const auto& f = sys.rules()[fi];
            const Path& u = f.lm;
            for (int k = 1; k < u.len; ++k) {
                int vlen = d - u.len + k;
                if (vlen <= k) continue;
                auto it = prefixes.find(word_key(u.a.data() + u.len - k, k));
                if (it == prefixes.end()) continue;
                for (int gi : it->second) {
                    const auto& g = sys.rules()[gi];
                    if (g.lm.len != vlen) continue;
                    Path right = g.lm.sub(*q, k, vlen - k);
                    Path left = u.sub(*q, 0, u.len - k);
                    Element<C> s = Element<C>::multiply(f.element, Element<C>::monomial(q, right), -1) -
                                   Element<C>::multiply(Element<C>::monomial(q, left), g.element, -1);
                    cands.push_back(std::move(s));
                    if (stats) ++stats->overlaps;
                }
            }
        }
        int first_new = static_cast<int>(sys.rules().size());
        for (const auto& cnd : cands) {
            Element<C> h = sys.reduce(cnd);
            if (h.is_zero()) {
                if (stats) ++stats->reductions_to_zero;
                continue;
            }
            sys.add_rule(h);
            index_prefixes(static_cast<int>(sys.rules().size()) - 1);
        }
        // tails of the rules added in this degree may contain later leading monomials
        int total = static_cast<int>(sys.rules().size());
        for (int r = first_new; r < total; ++r) {
            const auto& rule = sys.rules()[r];
            Element<C> tail = rule.element - Element<C>::monomial(q, rule.lm, rule.lc);
            sys.replace_rule_element(r, Element<C>::monomial(q, rule.lm, rule.lc) + sys.reduce(tail));
        }
    }
    sys.set_memo_limit(1 << 20);
    sys.set_complete_to_degree(degree_bound);
    return sys;
}

// ---------------------------------------------------------------------------
// Confluence by linear algebra

template <class C>
struct ReductionInstance {
    Path lm;              // declared leading monomial
    Element<C> element;   // lm has a unit coefficient in element
};

struct ConfluenceReport {
    bool confluent = true;
    int failing_degree = -1;
    std::string witness;  // nonzero combination of irreducible monomials in the span, if any
    std::vector<int> checked_degrees;
};

namespace detail {

// Reduces x by the chosen pivot instances until no pivot LM remains; gives up after `budget` steps.
template <class C>
Element<C> reduce_by_pivots(Element<C> x, const std::unordered_map<Path, const ReductionInstance<C>*, PathHash>& piv,
                            long budget) {
    while (budget-- > 0) {
        const ReductionInstance<C>* hit = nullptr;
        C c;
        for (const auto& [p, v] : x.terms()) {
            auto it = piv.find(p);
            if (it != piv.end()) { hit = it->second; c = v; break; }
        }
        if (!hit) return x;
        C lc = hit->element.coeff(hit->lm);
        x = x - C(c * inverse(lc)) * hit->element;
    }
    return x;
}

}  // namespace detail

// Instances grouped by degree of their declared leading monomial. Up to each degree the
// reductions are confluent iff the span of all instances so far has rank equal to the number
// of distinct leading monomials. The witness is a nonzero remainder of an instance after
// reduction by one chosen instance per leading monomial.
template <class C>
ConfluenceReport diamond_check_instances(const std::vector<ReductionInstance<C>>& instances, int degree_bound) {
    ConfluenceReport rep;
    std::map<int, std::vector<const ReductionInstance<C>*>> by_deg;
    for (const auto& in : instances) {
        if (in.lm.len > degree_bound) continue;
        if (!in.element.coeff(in.lm).is_unit()) throw std::invalid_argument("diamond_check: non-unit coefficient at LM");
        by_deg[in.lm.len].push_back(&in);
    }
    std::unordered_map<Path, int, PathHash> cols;
    std::unordered_map<Path, const ReductionInstance<C>*, PathHash> pivots;
    std::vector<SparseRow> rows;
    std::vector<const ReductionInstance<C>*> seen;
    for (auto& [d, list] : by_deg) {
        for (const auto* in : list) {
            pivots.emplace(in->lm, in);
            seen.push_back(in);
            if constexpr (std::is_same_v<C, Integer>) {
                SparseRow r;
                for (const auto& [p, c] : in->element.terms()) {
                    auto [it, fresh] = cols.try_emplace(p, static_cast<int>(cols.size()));
                    r.emplace_back(it->second, c);
                }
                rows.push_back(std::move(r));
            }
        }
        rep.checked_degrees.push_back(d);
        bool ok = true;
        if constexpr (std::is_same_v<C, Integer>) {
            SparseIntMatrix m(0, static_cast<int>(cols.size()));
            for (const auto& r : rows) m.add_row(r);
            ok = smith_normal_form(m).rank == static_cast<int>(pivots.size());
        }
        for (const auto* in : seen) {
            if (pivots.at(in->lm) == in) continue;
            Element<C> w = detail::reduce_by_pivots(in->element, pivots, 100000);
            if (!w.is_zero()) {
                rep.confluent = false;
                rep.failing_degree = d;
                rep.witness = w.str();
                return rep;
            }
        }
        if (!ok) {
            rep.confluent = false;
            rep.failing_degree = d;
            return rep;
        }
    }
    return rep;
}

// All framed instances u * rule * v with |u lm v| <= degree_bound, for explicit (lm, element) rules.
template <class C>
ConfluenceReport diamond_check(const std::vector<RewriteRule<C>>& rules, int degree_bound) {
    std::vector<ReductionInstance<C>> inst;
    if (rules.empty()) return {};
    QuiverPtr q = rules.front().element.quiver();
    for (const auto& r : rules) {
        for (int lu = 0; lu + r.lm.len <= degree_bound; ++lu)
            for (const Path& u : all_paths(*q, lu, -1, r.lm.src))
                for (int lv = 0; lu + r.lm.len + lv <= degree_bound; ++lv)
                    for (const Path& v : all_paths(*q, lv, r.lm.tgt, -1)) {
                        Element<C> e = Element<C>::monomial(q, u) * r.element * Element<C>::monomial(q, v);
                        inst.push_back({concat3(u, r.lm, v), std::move(e)});
                    }
    }
    return diamond_check_instances(inst, degree_bound);
}

}  // namespace preproj
