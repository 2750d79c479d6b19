#pragma once
// Weighted graded-lexicographic orders on path monomials.

#include "path.hpp"

#include <numeric>
#include <vector>

namespace preproj {

class MonomialOrder {
public:
    MonomialOrder() = default;

    // Arrow ids in increasing order: ranking[0] is the smallest arrow.
    static MonomialOrder graded_lex(const std::vector<int>& ranking, std::vector<int> weights = {}) {
        MonomialOrder o;
        int n = static_cast<int>(ranking.size());
        o.rank_.assign(n, -1);
        for (int k = 0; k < n; ++k) o.rank_.at(ranking[k]) = k;
        for (int r : o.rank_)
            if (r < 0) throw std::invalid_argument("MonomialOrder: ranking is not a permutation");
        if (weights.empty()) weights.assign(n, 1);
        if (static_cast<int>(weights.size()) != n) throw std::invalid_argument("MonomialOrder: weight count mismatch");
        for (int w : weights)
            if (w < 1) throw std::invalid_argument("MonomialOrder: weights must be positive");
        o.weight_ = std::move(weights);
        return o;
    }
    // Arrow id order.
    static MonomialOrder by_id(int num_arrows) {
        std::vector<int> r(num_arrows);
        std::iota(r.begin(), r.end(), 0);
        return graded_lex(r);
    }

    int num_arrows() const { return static_cast<int>(rank_.size()); }
    int rank(int a) const { return rank_[a]; }
    int weight(int a) const { return weight_[a]; }

    int weighted_degree(const Path& p) const {
        int w = 0;
        for (int i = 0; i < p.len; ++i) w += weight_[p.a[i]];
        return w;
    }

    // -1, 0, 1 as x is smaller, equal, larger than y.
    int compare(const Path& x, const Path& y) const {
        int wx = weighted_degree(x), wy = weighted_degree(y);
        if (wx != wy) return wx < wy ? -1 : 1;
        if (x.len != y.len) return x.len < y.len ? -1 : 1;
        if (x.len == 0) return x.src == y.src ? 0 : (x.src < y.src ? -1 : 1);
        for (int i = 0; i < x.len; ++i) {
            int rx = rank_[x.a[i]], ry = rank_[y.a[i]];
            if (rx != ry) return rx < ry ? -1 : 1;
        }
        return 0;
    }
    bool less(const Path& x, const Path& y) const { return compare(x, y) < 0; }

    struct Greater {
        const MonomialOrder* o;
        bool operator()(const Path& x, const Path& y) const { return o->compare(x, y) > 0; }
    };
    Greater greater() const { return Greater{this}; }

private:
    std::vector<int> rank_;
    std::vector<int> weight_;
};

}  // namespace preproj
