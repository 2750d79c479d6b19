#pragma once
// Finite quivers, doubling, classification and the named catalog.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace preproj {

struct Arrow {
    std::string name;
    int src = 0;
    int dst = 0;
};

class Quiver {
public:
    Quiver() = default;

    int add_vertex(std::string name = {}) {
        if (name.empty()) name = std::to_string(vertices_.size());
        if (find_vertex(name) >= 0) throw std::invalid_argument("duplicate vertex '" + name + "'");
        vertices_.push_back(std::move(name));
        out_.emplace_back();
        in_.emplace_back();
        return static_cast<int>(vertices_.size()) - 1;
    }
    int add_arrow(int src, int dst, std::string name = {}, std::string dual_name = {}) {
        if (starred_) throw std::logic_error("cannot add arrows to a double");
        check_vertex(src);
        check_vertex(dst);
        if (name.empty()) name = "a" + std::to_string(arrows_.size());
        if (find_arrow(name) >= 0) throw std::invalid_argument("duplicate arrow '" + name + "'");
        arrows_.push_back({std::move(name), src, dst});
        dual_names_.push_back(std::move(dual_name));
        int id = static_cast<int>(arrows_.size()) - 1;
        out_[src].push_back(id);
        in_[dst].push_back(id);
        return id;
    }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const std::string& vertex_name(int v) const { return vertices_.at(v); }
    const Arrow& arrow(int a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int src(int a) const { return arrows_[a].src; }
    int dst(int a) const { return arrows_[a].dst; }
    const std::string& arrow_name(int a) const { return arrows_.at(a).name; }
    const std::vector<int>& out_arrows(int v) const { return out_.at(v); }
    const std::vector<int>& in_arrows(int v) const { return in_.at(v); }

    int find_vertex(const std::string& name) const {
        for (int i = 0; i < num_vertices(); ++i)
            if (vertices_[i] == name) return i;
        return -1;
    }
    int find_arrow(const std::string& name) const {
        for (int i = 0; i < num_arrows(); ++i)
            if (arrows_[i].name == name) return i;
        return -1;
    }

    // Double-quiver structure. Arrows 0..m-1 are Q1, arrows m..2m-1 their reverses.
    bool starred() const { return starred_; }
    int star(int a) const {
        require_starred();
        return involution_.at(a);
    }
    bool is_original(int a) const {
        require_starred();
        return a < num_arrows() / 2;
    }
    int num_original_arrows() const { return starred_ ? num_arrows() / 2 : num_arrows(); }

    // Symplectic pairing on the double: omega(a, a*) = 1, omega(a*, a) = -1.
    int omega(int a, int b) const {
        require_starred();
        if (involution_[a] != b) return 0;
        return is_original(a) ? 1 : -1;
    }

    bool connected() const {
        if (vertices_.empty()) return false;
        std::vector<int> comp(num_vertices(), 0);
        std::vector<int> stack{0};
        comp[0] = 1;
        int seen = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto* lst : {&out_[v], &in_[v]})
                for (int a : *lst) {
                    int w = arrows_[a].src == v ? arrows_[a].dst : arrows_[a].src;
                    if (!comp[w]) { comp[w] = 1; ++seen; stack.push_back(w); }
                }
        }
        return seen == num_vertices();
    }

    void validate() const {
        for (const auto& a : arrows_) {
            check_vertex(a.src);
            check_vertex(a.dst);
        }
        if (!connected()) throw std::invalid_argument("quiver is not connected");
        if (starred_) {
            for (int a = 0; a < num_arrows(); ++a) {
                int b = involution_[a];
                if (involution_[b] != a || src(a) != dst(b) || dst(a) != src(b))
                    throw std::invalid_argument("broken star involution");
            }
        }
    }

    // Adjacency matrix C with C[i][j] = number of arrows i -> j.
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> c(num_vertices(), std::vector<int>(num_vertices(), 0));
        for (const auto& a : arrows_) ++c[a.src][a.dst];
        return c;
    }

    friend Quiver double_quiver(const Quiver& q);

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= num_vertices()) throw std::out_of_range("vertex id out of range");
    }
    void require_starred() const {
        if (!starred_) throw std::logic_error("operation needs a double quiver");
    }

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::string> dual_names_;
    std::vector<std::vector<int>> out_, in_;
    bool starred_ = false;
    std::vector<int> involution_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

inline Quiver double_quiver(const Quiver& q) {
    if (q.starred_) throw std::invalid_argument("double: quiver is already a double");
    Quiver d;
    for (const auto& v : q.vertices_) d.add_vertex(v);
    int m = q.num_arrows();
    for (const auto& a : q.arrows_) d.add_arrow(a.src, a.dst, a.name);
    for (int i = 0; i < m; ++i) {
        const auto& a = q.arrows_[i];
        std::string nm = q.dual_names_[i].empty() ? a.name + "*" : q.dual_names_[i];
        d.add_arrow(a.dst, a.src, nm);
    }
    d.starred_ = true;
    d.involution_.resize(2 * m);
    for (int i = 0; i < m; ++i) {
        d.involution_[i] = i + m;
        d.involution_[i + m] = i;
    }
    return d;
}

inline QuiverPtr make_double(const Quiver& q) { return std::make_shared<const Quiver>(double_quiver(q)); }

// ---------------------------------------------------------------------------
// Classification

enum class Kind { Dynkin, ExtendedDynkin, Other };

struct QuiverClass {
    Kind kind = Kind::Other;
    char type = 0;  // 'A', 'D' or 'E'
    int rank = 0;
    std::optional<int> extending_vertex;

    std::string str() const {
        if (kind == Kind::Other) return "Other";
        std::string s = kind == Kind::Dynkin ? "" : "~";
        return s + type + std::to_string(rank);
    }
    friend bool operator==(const QuiverClass& a, const QuiverClass& b) {
        return a.kind == b.kind && a.type == b.type && a.rank == b.rank && a.extending_vertex == b.extending_vertex;
    }
};

namespace detail {

struct UGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // arrow index order
    std::vector<std::vector<int>> nbr;        // simple neighbour lists (loops/multi handled separately)
};

inline UGraph undirected(const Quiver& q, const std::vector<bool>* keep = nullptr) {
    UGraph g;
    g.n = q.num_vertices();
    g.nbr.assign(g.n, {});
    for (const auto& a : q.arrows()) {
        if (keep && (!(*keep)[a.src] || !(*keep)[a.dst])) continue;
        g.edges.emplace_back(a.src, a.dst);
        if (a.src != a.dst) {
            g.nbr[a.src].push_back(a.dst);
            g.nbr[a.dst].push_back(a.src);
        }
    }
    return g;
}

// Classify an undirected multigraph on the vertex set `alive` (assumed connected).
inline QuiverClass classify_shape(const UGraph& g, const std::vector<bool>& alive) {
    QuiverClass c;
    int n = 0;
    for (bool b : alive) n += b;
    int e = static_cast<int>(g.edges.size());
    int loops = 0;
    std::map<std::pair<int, int>, int> mult;
    for (auto [s, t] : g.edges) {
        if (s == t) ++loops;
        else ++mult[{std::min(s, t), std::max(s, t)}];
    }
    if (n == 1) {
        if (e == 0) { c.kind = Kind::Dynkin; c.type = 'A'; c.rank = 1; }
        else if (e == 1 && loops == 1) { c.kind = Kind::ExtendedDynkin; c.type = 'A'; c.rank = 0; }
        return c;
    }
    if (loops) return c;
    for (auto& [k, m] : mult)
        if (m > 1) {
            if (n == 2 && e == 2) { c.kind = Kind::ExtendedDynkin; c.type = 'A'; c.rank = 1; }
            return c;
        }
    std::vector<int> deg(g.n, 0);
    for (auto [s, t] : g.edges) { ++deg[s]; ++deg[t]; }
    if (e == n) {
        // connected with one cycle; extended Dynkin only if it is the whole cycle
        for (int v = 0; v < g.n; ++v)
            if (alive[v] && deg[v] != 2) return c;
        c.kind = Kind::ExtendedDynkin; c.type = 'A'; c.rank = n - 1;
        return c;
    }
    if (e != n - 1) return c;
    // tree
    std::vector<int> branch_pts;
    int maxdeg = 0;
    for (int v = 0; v < g.n; ++v)
        if (alive[v]) {
            maxdeg = std::max(maxdeg, deg[v]);
            if (deg[v] >= 3) branch_pts.push_back(v);
        }
    if (maxdeg <= 2) { c.kind = Kind::Dynkin; c.type = 'A'; c.rank = n; return c; }
    auto branch_lengths = [&](int center) {
        std::vector<int> lens;
        for (int w : g.nbr[center]) {
            int len = 1, prev = center, cur = w;
            while (deg[cur] == 2) {
                int nxt = g.nbr[cur][0] == prev ? g.nbr[cur][1] : g.nbr[cur][0];
                prev = cur; cur = nxt; ++len;
            }
            if (deg[cur] != 1) return std::vector<int>{};
            lens.push_back(len);
        }
        std::sort(lens.rbegin(), lens.rend());
        return lens;
    };
    if (branch_pts.size() == 1) {
        int center = branch_pts[0];
        auto lens = branch_lengths(center);
        if (deg[center] == 4) {
            if (lens == std::vector<int>{1, 1, 1, 1}) { c.kind = Kind::ExtendedDynkin; c.type = 'D'; c.rank = 4; }
            return c;
        }
        if (deg[center] != 3 || lens.size() != 3) return c;
        int p = lens[0], q2 = lens[1], r = lens[2];
        if (q2 == 1 && r == 1) { c.kind = Kind::Dynkin; c.type = 'D'; c.rank = p + 3; return c; }
        if (r == 1 && q2 == 2 && p <= 4) { c.kind = Kind::Dynkin; c.type = 'E'; c.rank = p + 4; return c; }
        if (p == 2 && q2 == 2 && r == 2) { c.kind = Kind::ExtendedDynkin; c.type = 'E'; c.rank = 6; return c; }
        if (p == 3 && q2 == 3 && r == 1) { c.kind = Kind::ExtendedDynkin; c.type = 'E'; c.rank = 7; return c; }
        if (p == 5 && q2 == 2 && r == 1) { c.kind = Kind::ExtendedDynkin; c.type = 'E'; c.rank = 8; return c; }
        return c;
    }
    if (branch_pts.size() == 2) {
        for (int b : branch_pts) {
            if (deg[b] != 3) return c;
            int leaves = 0;
            for (int w : g.nbr[b]) leaves += deg[w] == 1;
            if (leaves != 2) return c;
        }
        c.kind = Kind::ExtendedDynkin; c.type = 'D'; c.rank = n - 1;
    }
    return c;
}

inline bool alive_connected(const UGraph& g, const std::vector<bool>& alive) {
    int start = -1, cnt = 0;
    for (int v = 0; v < g.n; ++v)
        if (alive[v]) { ++cnt; if (start < 0) start = v; }
    if (cnt == 0) return false;
    std::vector<bool> seen(g.n, false);
    std::vector<int> st{start};
    seen[start] = true;
    int reached = 1;
    while (!st.empty()) {
        int v = st.back(); st.pop_back();
        for (int w : g.nbr[v])
            if (alive[w] && !seen[w]) { seen[w] = true; ++reached; st.push_back(w); }
    }
    return reached == cnt;
}

}  // namespace detail

inline QuiverClass classify(const Quiver& q) {
    if (q.starred()) throw std::invalid_argument("classify: quiver must not be a double");
    if (!q.connected()) throw std::invalid_argument("classify: quiver must be connected");
    std::vector<bool> all(q.num_vertices(), true);
    auto g = detail::undirected(q);
    QuiverClass c = detail::classify_shape(g, all);
    if (c.kind != Kind::ExtendedDynkin) return c;
    if (q.num_vertices() == 1) { c.extending_vertex = 0; return c; }
    for (int v = 0; v < q.num_vertices(); ++v) {
        std::vector<bool> keep(q.num_vertices(), true);
        keep[v] = false;
        auto h = detail::undirected(q, &keep);
        if (!detail::alive_connected(h, keep)) continue;
        QuiverClass d = detail::classify_shape(h, keep);
        if (d.kind == Kind::Dynkin && d.type == c.type && d.rank == std::max(c.rank, 1)) {
            c.extending_vertex = v;
            return c;
        }
    }
    throw std::logic_error("classify: no extending vertex found");
}

// ---------------------------------------------------------------------------
// Extended Dynkin subquivers

struct Embedding {
    std::vector<int> vertex_map;  // sub vertex -> ambient vertex
    std::vector<int> arrow_map;   // sub arrow -> ambient arrow
};

inline Quiver induced_subquiver(const Quiver& q, const std::vector<int>& verts, const std::vector<int>& arrows,
                                Embedding* emb) {
    Quiver s;
    std::map<int, int> vm;
    for (int v : verts) vm[v] = s.add_vertex(q.vertex_name(v));
    for (int a : arrows) s.add_arrow(vm.at(q.src(a)), vm.at(q.dst(a)), q.arrow_name(a));
    if (emb) { emb->vertex_map = verts; emb->arrow_map = arrows; }
    return s;
}

inline std::optional<std::pair<Quiver, Embedding>> find_extended_dynkin_subquiver(const Quiver& q) {
    QuiverClass c = classify(q);
    if (c.kind != Kind::Other) return std::nullopt;
    Embedding emb;
    // loops
    for (int a = 0; a < q.num_arrows(); ++a)
        if (q.src(a) == q.dst(a)) {
            Quiver s = induced_subquiver(q, {q.src(a)}, {a}, &emb);
            return std::make_pair(std::move(s), emb);
        }
    // two arrows between the same pair of vertices
    for (int a = 0; a < q.num_arrows(); ++a)
        for (int b = a + 1; b < q.num_arrows(); ++b) {
            std::pair<int, int> pa{std::min(q.src(a), q.dst(a)), std::max(q.src(a), q.dst(a))};
            std::pair<int, int> pb{std::min(q.src(b), q.dst(b)), std::max(q.src(b), q.dst(b))};
            if (pa == pb) {
                Quiver s = induced_subquiver(q, {pa.first, pa.second}, {a, b}, &emb);
                return std::make_pair(std::move(s), emb);
            }
        }
    // simple cycles: for each arrow in id order, a shortest path between its ends avoiding it
    for (int a = 0; a < q.num_arrows(); ++a) {
        int s0 = q.src(a), t0 = q.dst(a);
        std::vector<int> prev_arrow(q.num_vertices(), -2);
        std::queue<int> bfs;
        bfs.push(t0);
        prev_arrow[t0] = -1;
        while (!bfs.empty() && prev_arrow[s0] == -2) {
            int v = bfs.front(); bfs.pop();
            std::vector<int> inc;
            for (int b : q.out_arrows(v)) inc.push_back(b);
            for (int b : q.in_arrows(v)) inc.push_back(b);
            std::sort(inc.begin(), inc.end());
            for (int b : inc) {
                if (b == a) continue;
                int w = q.src(b) == v ? q.dst(b) : q.src(b);
                if (prev_arrow[w] == -2) { prev_arrow[w] = b; bfs.push(w); }
            }
        }
        if (prev_arrow[s0] == -2) continue;
        std::vector<int> verts, arrs{a};
        int v = s0;
        verts.push_back(v);
        while (v != t0) {
            int b = prev_arrow[v];
            arrs.push_back(b);
            v = q.src(b) == v ? q.dst(b) : q.src(b);
            verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
        std::sort(arrs.begin(), arrs.end());
        Quiver s = induced_subquiver(q, verts, arrs, &emb);
        return std::make_pair(std::move(s), emb);
    }
    // the underlying graph is a tree: look for D~ and E~ shapes
    auto g = detail::undirected(q);
    int n = q.num_vertices();
    std::vector<int> deg(n, 0);
    for (auto [s, t] : g.edges) { ++deg[s]; ++deg[t]; }
    auto arrow_between = [&](int u, int v) {
        for (int b = 0; b < q.num_arrows(); ++b)
            if ((q.src(b) == u && q.dst(b) == v) || (q.src(b) == v && q.dst(b) == u)) return b;
        return -1;
    };
    auto finish = [&](std::vector<int> verts) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        std::vector<int> arrs;
        for (int b = 0; b < q.num_arrows(); ++b)
            if (std::binary_search(verts.begin(), verts.end(), q.src(b)) &&
                std::binary_search(verts.begin(), verts.end(), q.dst(b)))
                arrs.push_back(b);
        Quiver s = induced_subquiver(q, verts, arrs, &emb);
        return std::make_optional(std::make_pair(std::move(s), emb));
    };
    (void)arrow_between;
    for (int v = 0; v < n; ++v)
        if (deg[v] >= 4) {
            std::vector<int> nb = g.nbr[v];
            std::sort(nb.begin(), nb.end());
            return finish({v, nb[0], nb[1], nb[2], nb[3]});
        }
    std::vector<int> bps;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 3) bps.push_back(v);
    auto tree_path = [&](int from, int to) {
        std::vector<int> par(n, -1);
        std::vector<bool> seen(n, false);
        std::queue<int> bfs;
        bfs.push(from);
        seen[from] = true;
        while (!bfs.empty()) {
            int v = bfs.front(); bfs.pop();
            for (int w : g.nbr[v])
                if (!seen[w]) { seen[w] = true; par[w] = v; bfs.push(w); }
        }
        std::vector<int> path;
        for (int v = to; v != -1; v = par[v]) path.push_back(v);
        return path;  // to ... from
    };
    if (bps.size() >= 2) {
        // two nearest branch points in id order; D~ from the path plus two outer neighbours at each end
        int best_u = -1, best_v = -1;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < bps.size(); ++i)
            for (std::size_t j = i + 1; j < bps.size(); ++j) {
                auto p = tree_path(bps[i], bps[j]);
                bool clean = true;
                for (std::size_t k = 1; k + 1 < p.size(); ++k) clean &= deg[p[k]] == 2;
                if (clean && (best_u < 0 || p.size() < best_len)) { best_u = bps[i]; best_v = bps[j]; best_len = p.size(); }
            }
        auto p = tree_path(best_u, best_v);
        std::vector<int> verts(p.begin(), p.end());
        for (int end : {best_u, best_v}) {
            std::vector<int> nb;
            for (int w : g.nbr[end])
                if (std::find(p.begin(), p.end(), w) == p.end()) nb.push_back(w);
            std::sort(nb.begin(), nb.end());
            verts.push_back(nb[0]);
            verts.push_back(nb[1]);
        }
        return finish(verts);
    }
    if (bps.size() == 1) {
        int center = bps[0];
        std::vector<std::vector<int>> branches;
        for (int w : g.nbr[center]) {
            std::vector<int> br{w};
            int prev = center, cur = w;
            while (deg[cur] == 2) {
                int nxt = g.nbr[cur][0] == prev ? g.nbr[cur][1] : g.nbr[cur][0];
                prev = cur; cur = nxt; br.push_back(cur);
            }
            branches.push_back(br);
        }
        std::stable_sort(branches.begin(), branches.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });
        std::size_t p = branches[0].size(), q2 = branches[1].size(), r = branches[2].size();
        std::vector<std::size_t> take;
        if (r >= 2) take = {2, 2, 2};
        else if (q2 >= 3) take = {3, 3, 1};
        else if (p >= 5 && q2 >= 2) take = {5, 2, 1};
        if (!take.empty()) {
            std::vector<int> verts{center};
            for (int k = 0; k < 3; ++k)
                for (std::size_t i = 0; i < take[k]; ++i) verts.push_back(branches[k][i]);
            return finish(verts);
        }
    }
    throw std::logic_error("find_extended_dynkin_subquiver: no subquiver found for a non-Dynkin quiver");
}

// ---------------------------------------------------------------------------
// Forests for partial preprojective algebras

struct Forest {
    std::vector<int> arrows;               // arrows of the double, sorted
    std::map<int, int> root_assignment;    // black vertex -> chosen arrow with that source
};

// Breadth-first from the white set J; each black vertex gets the smallest-id arrow of the
// double that leads into the already reached region.
inline Forest forest_for_white(const Quiver& dq, const std::vector<int>& white) {
    if (!dq.starred()) throw std::invalid_argument("forest_for_white: expects a double quiver");
    if (white.empty()) throw std::invalid_argument("forest_for_white: J must be nonempty");
    int n = dq.num_vertices();
    std::vector<bool> reached(n, false);
    for (int j : white) reached.at(j) = true;
    Forest f;
    while (true) {
        std::vector<std::pair<int, int>> layer;
        for (int v = 0; v < n; ++v) {
            if (reached[v]) continue;
            int best = -1;
            for (int a : dq.out_arrows(v))
                if (reached[dq.dst(a)] && (best < 0 || a < best)) best = a;
            if (best >= 0) layer.emplace_back(v, best);
        }
        if (layer.empty()) break;
        for (auto [v, a] : layer) {
            reached[v] = true;
            f.root_assignment[v] = a;
            f.arrows.push_back(a);
        }
    }
    for (int v = 0; v < n; ++v)
        if (!reached[v]) throw std::invalid_argument("forest_for_white: quiver not connected");
    std::sort(f.arrows.begin(), f.arrows.end());
    return f;
}

// ---------------------------------------------------------------------------
// Catalog

namespace catalog {

inline Quiver affine_a(int n) {
    if (n < 1) throw std::invalid_argument("affine_a: need n >= 1");
    Quiver q;
    for (int i = 0; i < n; ++i) q.add_vertex();
    for (int i = 0; i < n; ++i) q.add_arrow(i, (i + 1) % n, "a" + std::to_string(i));
    return q;
}

// Vertices: 0 = LU, 1 = LD, 2..n-2 internal (left to right), n-1 = RU, n = RD.
// All arrows point rightward.
inline Quiver affine_d(int n) {
    if (n < 4) throw std::invalid_argument("affine_d: need n >= 4");
    Quiver q;
    q.add_vertex("LU");
    q.add_vertex("LD");
    for (int k = 1; k <= n - 3; ++k) q.add_vertex("c" + std::to_string(k));
    q.add_vertex("RU");
    q.add_vertex("RD");
    int first = 2, last = n - 2;
    q.add_arrow(0, first, "a0");
    q.add_arrow(1, first, "a1");
    int id = 2;
    for (int k = first; k < last; ++k) q.add_arrow(k, k + 1, "a" + std::to_string(id++));
    q.add_arrow(last, n - 1, "a" + std::to_string(id++));
    q.add_arrow(last, n, "a" + std::to_string(id++));
    return q;
}

// Center is vertex 0; branch k occupies consecutive ids from the center outward.
// Every arrow points toward the center.
inline Quiver star(const std::vector<int>& lengths) {
    if (lengths.empty()) throw std::invalid_argument("star: need at least one branch");
    Quiver q;
    q.add_vertex("s");
    int id = 0;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        if (lengths[k] < 1) throw std::invalid_argument("star: branch lengths must be positive");
        int prev = 0;
        for (int j = 1; j <= lengths[k]; ++j) {
            int v = q.add_vertex("b" + std::to_string(k + 1) + "_" + std::to_string(j));
            q.add_arrow(v, prev, "a" + std::to_string(id++));
            prev = v;
        }
    }
    return q;
}

inline Quiver affine_e(int n) {
    switch (n) {
        case 6: return star({2, 2, 2});
        case 7: return star({3, 3, 1});
        case 8: return star({5, 2, 1});
        default: throw std::invalid_argument("affine_e: n must be 6, 7 or 8");
    }
}

// One vertex with g loops. The reverse loops get the conventional names y / y_i.
inline Quiver free_loops(int g) {
    if (g < 1) throw std::invalid_argument("free: need g >= 1");
    Quiver q;
    q.add_vertex("0");
    if (g == 1) q.add_arrow(0, 0, "x", "y");
    else
        for (int i = 1; i <= g; ++i) q.add_arrow(0, 0, "x" + std::to_string(i), "y" + std::to_string(i));
    return q;
}

inline Quiver dynkin_a(int n) {
    if (n < 1) throw std::invalid_argument("dynkin_a: need n >= 1");
    Quiver q;
    for (int i = 0; i < n; ++i) q.add_vertex();
    for (int i = 0; i + 1 < n; ++i) q.add_arrow(i, i + 1, "a" + std::to_string(i));
    return q;
}

// affine_d(n) without LU: 0 = LD, internal vertices, then RU, RD.
inline Quiver dynkin_d(int n) {
    if (n < 4) throw std::invalid_argument("dynkin_d: need n >= 4");
    Quiver q;
    q.add_vertex("LD");
    for (int k = 1; k <= n - 3; ++k) q.add_vertex("c" + std::to_string(k));
    q.add_vertex("RU");
    q.add_vertex("RD");
    int first = 1, last = n - 3;
    int id = 0;
    q.add_arrow(0, first, "a" + std::to_string(id++));
    for (int k = first; k < last; ++k) q.add_arrow(k, k + 1, "a" + std::to_string(id++));
    q.add_arrow(last, n - 2, "a" + std::to_string(id++));
    q.add_arrow(last, n - 1, "a" + std::to_string(id++));
    return q;
}

inline Quiver dynkin_e(int n) {
    switch (n) {
        case 6: return star({2, 2, 1});
        case 7: return star({3, 2, 1});
        case 8: return star({4, 2, 1});
        default: throw std::invalid_argument("dynkin_e: n must be 6, 7 or 8");
    }
}

inline Quiver by_name(const std::string& name, const std::vector<int>& params) {
    auto one = [&]() {
        if (params.size() != 1) throw std::invalid_argument(name + ": expects one parameter");
        return params[0];
    };
    if (name == "affine_a") return affine_a(one());
    if (name == "affine_d") return affine_d(one());
    if (name == "affine_e") return affine_e(one());
    if (name == "star") return star(params);
    if (name == "free") return free_loops(one());
    if (name == "dynkin_a") return dynkin_a(one());
    if (name == "dynkin_d") return dynkin_d(one());
    if (name == "dynkin_e") return dynkin_e(one());
    throw std::invalid_argument("unknown catalog name '" + name + "'");
}

}  // namespace catalog

}  // namespace preproj
