#include <catch_amalgamated.hpp>

#include <preproj/quiver.hpp>

#include <numeric>
#include <random>

using namespace preproj;

namespace {

Quiver path_quiver(int n) { return catalog::dynkin_a(n); }

Quiver from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Quiver q;
    for (int i = 0; i < n; ++i) q.add_vertex();
    for (auto [s, t] : edges) q.add_arrow(s, t);
    return q;
}

// Bareiss determinant of a small integer matrix.
long long det(std::vector<std::vector<long long>> m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Tits form oracle: Dynkin iff the symmetrized Cartan matrix is positive definite,
// extended Dynkin iff it is positive semidefinite and singular.
Kind tits_kind(const Quiver& q) {
    int n = q.num_vertices();
    std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    for (const auto& a : q.arrows()) {
        if (a.src == a.dst) c[a.src][a.src] -= 2;
        else { --c[a.src][a.dst]; --c[a.dst][a.src]; }
    }
    bool definite = true, semidefinite = true;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) idx.push_back(i);
        std::vector<std::vector<long long>> s(idx.size(), std::vector<long long>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) s[i][j] = c[idx[i]][idx[j]];
        long long d = det(s);
        if (d <= 0) definite = false;
        if (d < 0) semidefinite = false;
    }
    if (definite) return Kind::Dynkin;
    if (semidefinite) return Kind::ExtendedDynkin;
    return Kind::Other;
}

bool forest_is_acyclic(const Quiver& q, const std::vector<int>& arrows) {
    std::vector<int> parent(q.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int a : arrows) {
        int x = find(q.src(a)), y = find(q.dst(a));
        if (x == y) return false;
        parent[x] = y;
    }
    return true;
}

}  // namespace

TEST_CASE("double of small quivers") {
    Quiver loop;
    loop.add_vertex();
    loop.add_arrow(0, 0, "x");
    Quiver d = double_quiver(loop);
    CHECK(d.num_vertices() == 1);
    REQUIRE(d.num_arrows() == 2);
    CHECK(d.star(0) == 1);
    CHECK(d.src(1) == 0);
    CHECK(d.dst(1) == 0);
    CHECK(d.omega(0, 1) == 1);
    CHECK(d.omega(1, 0) == -1);
    CHECK(d.omega(0, 0) == 0);

    Quiver a3 = double_quiver(catalog::affine_a(3));
    REQUIRE(a3.num_arrows() == 6);
    for (int a = 0; a < 6; ++a) {
        CHECK(a3.star(a3.star(a)) == a);
        CHECK(a3.src(a3.star(a)) == a3.dst(a));
        CHECK(a3.dst(a3.star(a)) == a3.src(a));
    }

    Quiver d2 = double_quiver(path_quiver(2));
    REQUIRE(d2.num_arrows() == 2);
    CHECK(d2.src(1) == 1);
    CHECK(d2.dst(1) == 0);
    CHECK_NOTHROW(d2.validate());
    CHECK_THROWS_AS(double_quiver(d2), std::invalid_argument);
}

TEST_CASE("classify examples") {
    CHECK(classify(path_quiver(3)).str() == "A3");
    CHECK_FALSE(classify(path_quiver(3)).extending_vertex.has_value());
    auto one = classify(catalog::free_loops(1));
    CHECK(one.str() == "~A0");
    CHECK(one.extending_vertex == 0);
    CHECK(classify(catalog::free_loops(2)).kind == Kind::Other);
    CHECK_THROWS(classify(double_quiver(path_quiver(2))));
}

TEST_CASE("classify agrees with every catalog entry") {
    for (int n = 1; n <= 9; ++n) CHECK(classify(catalog::affine_a(n)).str() == "~A" + std::to_string(n - 1));
    for (int n = 4; n <= 9; ++n) CHECK(classify(catalog::affine_d(n)).str() == "~D" + std::to_string(n));
    for (int n : {6, 7, 8}) {
        CHECK(classify(catalog::affine_e(n)).str() == "~E" + std::to_string(n));
        CHECK(classify(catalog::dynkin_e(n)).str() == "E" + std::to_string(n));
    }
    for (int n = 1; n <= 9; ++n) CHECK(classify(catalog::dynkin_a(n)).str() == "A" + std::to_string(n));
    for (int n = 4; n <= 9; ++n) CHECK(classify(catalog::dynkin_d(n)).str() == "D" + std::to_string(n));
    CHECK(classify(catalog::star({1, 1, 1, 1})).str() == "~D4");
    CHECK(classify(catalog::star({2, 2, 2})).str() == "~E6");
    CHECK(classify(catalog::star({1, 1, 1, 1, 1})).kind == Kind::Other);
    CHECK(classify(catalog::star({2, 2, 3})).kind == Kind::Other);
    CHECK_THROWS(catalog::affine_e(9));
    CHECK_THROWS(catalog::by_name("nope", {1}));
}

TEST_CASE("extending vertex leaves a Dynkin diagram") {
    std::vector<Quiver> qs{catalog::affine_a(4), catalog::affine_d(5), catalog::affine_d(4), catalog::affine_e(6),
                           catalog::affine_e(7), catalog::affine_e(8)};
    for (const auto& q : qs) {
        auto c = classify(q);
        REQUIRE(c.extending_vertex.has_value());
        int v0 = *c.extending_vertex;
        // smallest valid id: no smaller vertex works
        for (int v = 0; v <= v0; ++v) {
            std::vector<int> keep, arrows;
            for (int w = 0; w < q.num_vertices(); ++w)
                if (w != v) keep.push_back(w);
            for (int a = 0; a < q.num_arrows(); ++a)
                if (q.src(a) != v && q.dst(a) != v) arrows.push_back(a);
            Quiver s = induced_subquiver(q, keep, arrows, nullptr);
            bool dynkin = s.connected() && classify(s).kind == Kind::Dynkin;
            CHECK(dynkin == (v == v0));
        }
    }
}

TEST_CASE("find_extended_dynkin_subquiver examples") {
    auto two = find_extended_dynkin_subquiver(catalog::free_loops(2));
    REQUIRE(two);
    CHECK(two->first.num_vertices() == 1);
    CHECK(two->first.num_arrows() == 1);

    Quiver a2 = catalog::affine_a(3);
    a2.add_arrow(0, 2, "extra");
    auto cyc = find_extended_dynkin_subquiver(a2);
    REQUIRE(cyc);
    CHECK(classify(cyc->first).kind == Kind::ExtendedDynkin);

    CHECK_FALSE(find_extended_dynkin_subquiver(path_quiver(3)));
    CHECK_FALSE(find_extended_dynkin_subquiver(catalog::affine_e(8)));
}

TEST_CASE("exhaustive: classification matches the Tits form and subquiver search") {
    // All connected multigraphs (loops allowed) with at most 5 vertices and 6 edges,
    // edges taken as a nondecreasing list of vertex pairs.
    int checked = 0;
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
        std::vector<int> pick;
        auto visit = [&]() {
            std::vector<std::pair<int, int>> edges;
            for (int k : pick) edges.push_back(pairs[k]);
            Quiver q = from_edges(n, edges);
            if (!q.connected()) return;
            ++checked;
            auto c = classify(q);
            Kind oracle = tits_kind(q);
            INFO("n=" << n << " edges=" << edges.size() << " class=" << c.str());
            CHECK(c.kind == oracle);
            if (c.kind == Kind::Dynkin) CHECK(c.rank == n);
            if (c.kind == Kind::ExtendedDynkin) CHECK(c.rank == n - 1);
            CHECK(c.extending_vertex.has_value() == (c.kind == Kind::ExtendedDynkin));
            auto sub = find_extended_dynkin_subquiver(q);
            CHECK(sub.has_value() == (c.kind == Kind::Other));
            if (sub) {
                CHECK(classify(sub->first).kind == Kind::ExtendedDynkin);
                const auto& emb = sub->second;
                REQUIRE(static_cast<int>(emb.arrow_map.size()) == sub->first.num_arrows());
                for (int a = 0; a < sub->first.num_arrows(); ++a) {
                    int b = emb.arrow_map[a];
                    CHECK(emb.vertex_map[sub->first.src(a)] == q.src(b));
                    CHECK(emb.vertex_map[sub->first.dst(a)] == q.dst(b));
                }
            }
        };
        auto rec = [&](auto&& self, int from) -> void {
            visit();
            if (pick.size() == 6) return;
            for (int k = from; k < static_cast<int>(pairs.size()); ++k) {
                pick.push_back(k);
                self(self, k);
                pick.pop_back();
            }
        };
        rec(rec, 0);
    }
    CHECK(checked > 10000);
}

TEST_CASE("forest examples") {
    Quiver q = path_quiver(2);
    Quiver d = double_quiver(q);
    auto f = forest_for_white(d, {1});
    CHECK(f.arrows == std::vector<int>{0});
    CHECK(f.root_assignment.at(0) == 0);

    CHECK(forest_for_white(d, {0, 1}).arrows.empty());
    CHECK_THROWS(forest_for_white(d, {}));
    CHECK_THROWS(forest_for_white(q, {0}));

    Quiver s = double_quiver(catalog::star({1, 1}));
    auto g = forest_for_white(s, {0});
    REQUIRE(g.arrows.size() == 2);
    for (int a : g.arrows) {
        CHECK(s.src(a) != 0);
        CHECK(s.dst(a) == 0);
    }
}

TEST_CASE("forest invariants on random quivers") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng() % 7);
        Quiver q;
        for (int i = 0; i < n; ++i) q.add_vertex();
        for (int i = 1; i < n; ++i) {
            int j = static_cast<int>(rng() % i);
            if (rng() & 1) q.add_arrow(i, j);
            else q.add_arrow(j, i);
        }
        int extra = static_cast<int>(rng() % 4);
        for (int k = 0; k < extra; ++k) q.add_arrow(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
        Quiver d = double_quiver(q);
        std::vector<int> white;
        for (int v = 0; v < n; ++v)
            if (rng() % 3 == 0) white.push_back(v);
        if (white.empty()) white.push_back(static_cast<int>(rng() % n));
        auto f = forest_for_white(d, white);
        CHECK(static_cast<int>(f.arrows.size()) == n - static_cast<int>(white.size()));
        CHECK(forest_is_acyclic(d, f.arrows));
        std::vector<int> sources;
        for (int a : f.arrows) sources.push_back(d.src(a));
        std::sort(sources.begin(), sources.end());
        std::vector<int> black;
        for (int v = 0; v < n; ++v)
            if (std::find(white.begin(), white.end(), v) == white.end()) black.push_back(v);
        CHECK(sources == black);
        for (auto [v, a] : f.root_assignment) CHECK(d.src(a) == v);
    }
}

TEST_CASE("quiver validation") {
    Quiver q;
    q.add_vertex();
    q.add_vertex();
    CHECK_THROWS(q.validate());
    q.add_arrow(0, 1, "a");
    CHECK_NOTHROW(q.validate());
    CHECK_THROWS(q.add_arrow(0, 1, "a"));
    CHECK_THROWS(q.add_arrow(0, 5));
}
