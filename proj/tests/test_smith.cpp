#include <catch_amalgamated.hpp>

#include <preproj/smith.hpp>

#include <random>

using namespace preproj;

namespace {

DenseMatrix dense(const std::vector<std::vector<long>>& m) {
    DenseMatrix d;
    for (const auto& r : m) {
        d.emplace_back();
        for (long v : r) d.back().emplace_back(v);
    }
    return d;
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
    std::vector<Integer> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Integer det(DenseMatrix m) {
    int n = static_cast<int>(m.size());
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n == 0 ? Integer(1) : Integer(sign) * m[n - 1][n - 1];
}

// gcd of all k x k minors
Integer minor_gcd(const DenseMatrix& m, int k) {
    int r = static_cast<int>(m.size()), c = static_cast<int>(m[0].size());
    Integer g = 0;
    for (int rm = 0; rm < (1 << r); ++rm) {
        if (__builtin_popcount(rm) != k) continue;
        for (int cm = 0; cm < (1 << c); ++cm) {
            if (__builtin_popcount(cm) != k) continue;
            DenseMatrix s;
            for (int i = 0; i < r; ++i) {
                if (!(rm >> i & 1)) continue;
                s.emplace_back();
                for (int j = 0; j < c; ++j)
                    if (cm >> j & 1) s.back().push_back(m[i][j]);
            }
            g = gcd(g, det(s));
        }
    }
    return g;
}

DenseMatrix random_matrix(std::mt19937& rng, int r, int c, int span) {
    DenseMatrix m(r, std::vector<Integer>(c));
    for (auto& row : m)
        for (auto& x : row) x = Integer(static_cast<long>(rng() % (2 * span + 1)) - span);
    return m;
}

// rank r matrix with a planted structure so that torsion actually shows up
DenseMatrix planted(std::mt19937& rng, int r, int c) {
    DenseMatrix d(r, std::vector<Integer>(c));
    for (int i = 0; i < std::min(r, c); ++i) d[i][i] = Integer(static_cast<long>(rng() % 4 == 0 ? 0 : 1 + rng() % 6));
    DenseMatrix u = identity_matrix(r), v = identity_matrix(c);
    for (int k = 0; k < 12; ++k) {
        int i = static_cast<int>(rng() % r), j = static_cast<int>(rng() % r);
        if (i != j) for (int t = 0; t < r; ++t) u[i][t] += Integer(static_cast<long>(rng() % 3) - 1) * u[j][t];
        i = static_cast<int>(rng() % c), j = static_cast<int>(rng() % c);
        if (i != j) for (int t = 0; t < c; ++t) v[t][i] += Integer(static_cast<long>(rng() % 3) - 1) * v[t][j];
    }
    return matmul(matmul(u, d), v);
}

SparseIntMatrix sparse(const DenseMatrix& m) { return SparseIntMatrix::from_dense(m); }

}  // namespace

TEST_CASE("Smith normal form examples") {
    auto a = smith_dense(dense({{2, 0}, {0, 0}}));
    CHECK(a.rank == 1);
    CHECK(a.diagonal == ints({2}));
    CHECK(smith_dense(dense({{2, 4}, {6, 8}})).diagonal == ints({2, 4}));
    CHECK(smith_dense(identity_matrix(3)).diagonal == ints({1, 1, 1}));
    CHECK(smith_normal_form(sparse(dense({{3, -1}, {0, 3}}))).diagonal == ints({1, 9}));
}

TEST_CASE("quotient structure examples") {
    auto t = quotient_structure(2, dense({{3, -1}, {0, 3}}));
    CHECK(t.free_rank == 0);
    CHECK(t.invariant_factors == ints({9}));
    auto e = quotient_structure(1, DenseMatrix{});
    CHECK(e.free_rank == 1);
    CHECK(e.torsion_free());
    auto f = quotient_structure(2, dense({{2, 0}}));
    CHECK(f.free_rank == 1);
    CHECK(f.invariant_factors == ints({2}));
    CHECK(f.str() == "Z^1 + Z/2");
    CHECK_THROWS(quotient_structure(3, dense({{2, 0}})));
    TorsionSummary big{0, ints({12, 360})};
    auto parts = big.primary_parts();
    CHECK(parts == std::vector<std::pair<Integer, int>>{{2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}});
}

TEST_CASE("saturation examples") {
    CHECK(saturation_gap(2, dense({{2, 0}})) == ints({2}));
    CHECK(saturation_gap(2, dense({{1, 1}})).empty());
    // 2[x y r'] + [r' r'] with the pure r' class quotiented away
    CHECK(saturation_gap(1, dense({{2}})) == ints({2}));
}

TEST_CASE("invariant factors agree with gcds of minors") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
        DenseMatrix m = trial % 2 ? random_matrix(rng, r, c, 4) : planted(rng, r, c);
        auto s = smith_dense(m);
        for (std::size_t k = 0; k + 1 < s.diagonal.size(); ++k) CHECK(divides(s.diagonal[k], s.diagonal[k + 1]));
        Integer prod = 1;
        for (int k = 1; k <= std::min(r, c); ++k) {
            Integer g = minor_gcd(m, k);
            if (k <= s.rank) {
                prod *= s.diagonal[k - 1];
                CHECK(g == prod);
            } else {
                CHECK(g.is_zero());
            }
        }
    }
}

TEST_CASE("transforms satisfy U M V = diag") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        int r = 1 + static_cast<int>(rng() % 7), c = 1 + static_cast<int>(rng() % 7);
        DenseMatrix m = planted(rng, r, c);
        for (bool use_sparse : {false, true}) {
            auto s = use_sparse ? smith_normal_form(sparse(m), true) : smith_dense(m, true);
            REQUIRE(s.U);
            REQUIRE(s.V);
            DenseMatrix d = matmul(matmul(*s.U, m), *s.V);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    Integer want = (i == j && i < s.rank) ? s.diagonal[i] : Integer(0);
                    CHECK(d[i][j] == want);
                }
            CHECK(abs(det(*s.U)).is_one());
            CHECK(abs(det(*s.V)).is_one());
        }
    }
}

TEST_CASE("quotient structure is invariant under row shuffles and unimodular row operations") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int r = 1 + static_cast<int>(rng() % 8), c = 1 + static_cast<int>(rng() % 8);
        DenseMatrix m = planted(rng, r, c);
        auto base = quotient_structure(c, m);
        DenseMatrix s = m;
        std::shuffle(s.begin(), s.end(), rng);
        CHECK(quotient_structure(c, s) == base);
        for (int k = 0; k < 10 && r > 1; ++k) {
            int i = static_cast<int>(rng() % r), j = static_cast<int>(rng() % r);
            if (i == j) continue;
            Integer f(static_cast<long>(rng() % 7) - 3);
            for (int t = 0; t < c; ++t) s[i][t] += f * s[j][t];
        }
        CHECK(quotient_structure(c, s) == base);
    }
}

TEST_CASE("sparse and dense elimination agree, rank mod p agrees") {
    std::mt19937 rng(24);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 5 + static_cast<int>(rng() % 30), c = 5 + static_cast<int>(rng() % 30);
        DenseMatrix m(r, std::vector<Integer>(c));
        for (auto& row : m)
            for (auto& x : row)
                if (rng() % 5 == 0) x = Integer(static_cast<long>(rng() % 7) - 3);
        auto a = smith_dense(m);
        auto b = smith_normal_form(sparse(m));
        CHECK(a.rank == b.rank);
        CHECK(a.diagonal == b.diagonal);
        bool p_divides = false;
        for (const auto& d : a.diagonal) p_divides = p_divides || divides(Integer(1000003), d);
        if (!p_divides) CHECK(rank_mod(sparse(m), 1000003) == a.rank);
    }
}

TEST_CASE("big entries do not overflow") {
    Integer big("1000000000000000000000");
    DenseMatrix m{{big, Integer(0)}, {Integer(0), big * Integer(3)}};
    auto s = smith_dense(m);
    CHECK(s.diagonal == std::vector<Integer>{big, big * Integer(3)});
}

TEST_CASE("order in quotient and lattice membership") {
    auto rel = sparse(dense({{2, 0, 0}, {0, 3, 0}}));
    CHECK(order_in_quotient(rel, SparseRow{{0, Integer(1)}}) == Integer(2));
    CHECK(order_in_quotient(rel, SparseRow{{0, Integer(1)}, {1, Integer(1)}}) == Integer(6));
    CHECK(order_in_quotient(rel, SparseRow{{1, Integer(3)}}) == Integer(1));
    CHECK(order_in_quotient(rel, SparseRow{{2, Integer(1)}}) == Integer(0));

    std::mt19937 rng(25);
    for (int trial = 0; trial < 100; ++trial) {
        int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
        DenseMatrix m = planted(rng, r, c);
        LatticeEchelon lat(sparse(m));
        CHECK(lat.rank() == smith_dense(m).rank);
        // integer combinations are members; membership of v agrees with order 1
        SparseRow comb;
        for (int i = 0; i < r; ++i) {
            Integer f(static_cast<long>(rng() % 5) - 2);
            for (int j = 0; j < c; ++j)
                if (!m[i][j].is_zero()) comb.emplace_back(j, f * m[i][j]);
        }
        CHECK(lat.contains(comb));
        SparseRow v;
        for (int j = 0; j < c; ++j) v.emplace_back(j, Integer(static_cast<long>(rng() % 5) - 2));
        v.erase(std::remove_if(v.begin(), v.end(), [](const auto& e) { return e.second.is_zero(); }), v.end());
        CHECK(lat.contains(v) == (order_in_quotient(sparse(m), v) == Integer(1)));
    }
}
