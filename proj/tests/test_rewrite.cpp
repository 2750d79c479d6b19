#include <catch_amalgamated.hpp>

#include <preproj/homology.hpp>
#include <preproj/series.hpp>
#include <preproj/verify.hpp>

#include <random>

using namespace preproj;

namespace {

using E = Element<Integer>;

// yx -> xy - r' with r' < x < y
RewriteSystem<Integer> xyr_system() {
    auto q = formal_xyr();
    RewriteSystem<Integer> sys(q, MonomialOrder::graded_lex({2, 0, 1}));
    sys.add_rule(E::parse(q, "y x - x y + r'"));
    sys.set_complete_to_degree(8);
    return sys;
}

// Applies rules at random positions until nothing reduces.
E reduce_randomly(const RewriteSystem<Integer>& sys, E x, std::mt19937& rng) {
    const auto& q = sys.quiver();
    for (;;) {
        std::vector<std::tuple<Path, int, int>> hits;
        for (const auto& [p, c] : x.terms())
            for (int r = 0; r < static_cast<int>(sys.rules().size()); ++r) {
                const Path& lm = sys.rules()[r].lm;
                for (int pos = 0; pos + lm.len <= p.len; ++pos)
                    if (std::equal(lm.a.begin(), lm.a.begin() + lm.len, p.a.begin() + pos)) hits.emplace_back(p, r, pos);
            }
        if (hits.empty()) return x;
        auto [p, r, pos] = hits[rng() % hits.size()];
        const auto& rule = sys.rules()[r];
        E u = E::monomial(q, p.sub(*q, 0, pos)), v = E::monomial(q, p.sub(*q, pos + rule.lm.len, p.len - pos - rule.lm.len));
        x = x - x.coeff(p) * (u * rule.element * v);
    }
}

// dim of the degree-d part of the ideal generated by gens, by spanning u g v
int ideal_rank(const QuiverPtr& q, const std::vector<E>& gens, int d) {
    auto cols = all_paths(*q, d);
    std::map<Path, int> index;
    for (const auto& p : cols) index.emplace(p, static_cast<int>(index.size()));
    SparseIntMatrix m(0, static_cast<int>(cols.size()));
    for (const auto& g : gens)
        for (int lu = 0; lu + g.degree() <= d; ++lu)
            for (const auto& u : all_paths(*q, lu))
                for (const auto& v : all_paths(*q, d - lu - g.degree())) {
                    E e = E::monomial(q, u) * g * E::monomial(q, v);
                    SparseRow r;
                    for (const auto& [p, c] : e.terms()) r.emplace_back(index.at(p), c);
                    m.add_row(r);
                }
    return smith_normal_form(m).rank;
}

}  // namespace

TEST_CASE("reduce examples") {
    auto sys = xyr_system();
    const auto& q = sys.quiver();
    CHECK(sys.reduce(E::parse(q, "y x")) == E::parse(q, "x y - r'"));
    CHECK(sys.reduce(E::parse(q, "x y")) == E::parse(q, "x y"));
    E yyx = sys.reduce(E::parse(q, "y y x"));
    CHECK(yyx == E::parse(q, "x y y - r' y - y r'"));
    for (const auto& [p, c] : yyx.terms()) CHECK_FALSE(sys.reducible(p));
    std::mt19937 rng(1);
    for (int k = 0; k < 20; ++k) CHECK(reduce_randomly(sys, E::parse(q, "y y x"), rng) == yyx);
}

TEST_CASE("add_rule rejects non-unit leads") {
    auto q = formal_xyr();
    RewriteSystem<Integer> sys(q, MonomialOrder::by_id(3));
    CHECK_THROWS_AS(sys.add_rule(E::parse(q, "2*y x - x y")), NonUnitLead);
    sys.add_rule(E::parse(q, "-y x + x y"));
    CHECK(sys.rules()[0].element == E::parse(q, "y x - x y"));
    CHECK_THROWS(sys.add_rule(E::parse(q, "y x")));
    CHECK_THROWS(MonomialOrder::graded_lex({0, 0, 1}));
}

TEST_CASE("monomial order is multiplicative") {
    auto q = make_double(catalog::free_loops(2));
    auto order = MonomialOrder::graded_lex({3, 1, 0, 2}, {1, 2, 1, 3});
    std::mt19937 rng(4);
    auto paths3 = all_paths(*q, 3), paths2 = all_paths(*q, 2);
    for (int k = 0; k < 3000; ++k) {
        const Path& a = paths3[rng() % paths3.size()];
        const Path& b = paths3[rng() % paths3.size()];
        const Path& h1 = paths2[rng() % paths2.size()];
        const Path& h2 = paths2[rng() % paths2.size()];
        int c = order.compare(a, b);
        CHECK(order.compare(concat3(h1, a, h2), concat3(h1, b, h2)) == c);
        CHECK(order.compare(b, a) == -c);
    }
}

TEST_CASE("free algebra normal monomials") {
    Quiver q;
    q.add_vertex();
    q.add_arrow(0, 0, "x");
    q.add_arrow(0, 0, "y");
    auto qp = std::make_shared<const Quiver>(q);
    auto sys = complete<Integer>({}, qp, MonomialOrder::by_id(2), 3);
    CHECK(sys.normal_monomials(0, 0, 3).size() == 8);
    CHECK_THROWS_AS(sys.normal_monomials(0, 0, 4), DegreeBeyondCertification);
}

TEST_CASE("E-type Groebner sets match the stored listings") {
    struct Case { std::vector<int> lengths; int D; std::string file; std::size_t n; };
    for (const auto& c : {Case{{2, 2, 2}, 12, "e6.txt", 5}, Case{{3, 3, 1}, 12, "e7.txt", 5},
                          Case{{5, 2, 1}, 14, "e8.txt", 7}}) {
        auto A = star_algebra(c.lengths);
        auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(3), c.D);
        auto got = verify_detail::split_lines(sys.listing(true));
        auto want = verify_detail::read_rule_file(std::string(PREPROJ_DATA_DIR) + "/" + c.file);
        CHECK(want.size() == c.n);
        CHECK(got == want);
        for (const auto& r : sys.rules()) CHECK(r.lc.is_one());
    }
}

TEST_CASE("completed systems: normal counts equal ideal codimension") {
    for (auto lengths : {std::vector<int>{2, 2, 2}, std::vector<int>{3, 3, 1}, std::vector<int>{1, 1, 1, 1}}) {
        auto A = star_algebra(lengths);
        auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(A.quiver->num_arrows()), 6);
        int n = A.quiver->num_arrows();
        for (int d = 0; d <= 6; ++d) {
            long total = 1;
            for (int k = 0; k < d; ++k) total *= n;
            INFO("d=" << d);
            CHECK(static_cast<long>(sys.normal_monomials(0, 0, d).size()) == total - ideal_rank(A.quiver, A.generators, d));
        }
    }
}

TEST_CASE("star algebra dimensions agree with the centre entry of the Hilbert series") {
    // x_k is a loop of length two at the centre, so degree d here is degree 2d in Pi.
    for (auto lengths : {std::vector<int>{2, 2, 2}, std::vector<int>{3, 3, 1}, std::vector<int>{5, 2, 1}}) {
        auto A = star_algebra(lengths);
        auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(3), 12);
        auto h = hilbert_prep(catalog::star(lengths), {}, 24);
        auto counts = sys.normal_counts(12);
        for (int d = 0; d <= 12; ++d) CHECK(Integer(static_cast<long>(counts[d][0][0])) == h[2 * d][0][0]);
    }
}

TEST_CASE("diamond check examples") {
    auto sys = xyr_system();
    CHECK(diamond_check(sys.rules(), 6).confluent);

    auto q = formal_xyr();  // letters x, y, r' stand in for x, y, z here
    std::vector<RewriteRule<Integer>> bad{
        {Path::from_arrows(*q, {0, 0}), Integer(1), E::parse(q, "x x - y")},
        {Path::from_arrows(*q, {0, 0}), Integer(1), E::parse(q, "x x - r'")}};
    auto rep = diamond_check(bad, 4);
    CHECK_FALSE(rep.confluent);
    CHECK(rep.failing_degree == 2);
    CHECK_FALSE(rep.witness.empty());

    auto A = star_algebra({2, 2, 2});
    auto e6 = complete(A.generators, A.quiver, MonomialOrder::by_id(3), 7);
    CHECK(diamond_check(e6.rules(), 7).confluent);

    // the raw generators: z^3 -> 0 and z -> -x - y disagree on z^3
    std::vector<RewriteRule<Integer>> raw{
        {Path::from_arrows(*A.quiver, {2}), Integer(1), A.generators[3]},
        {Path::from_arrows(*A.quiver, {0, 0, 0}), Integer(1), A.generators[0]},
        {Path::from_arrows(*A.quiver, {1, 1, 1}), Integer(1), A.generators[1]},
        {Path::from_arrows(*A.quiver, {2, 2, 2}), Integer(1), A.generators[2]}};
    auto raw_rep = diamond_check(raw, 5);
    CHECK_FALSE(raw_rep.confluent);
    CHECK(raw_rep.failing_degree == 3);
}

TEST_CASE("reduce is idempotent and kills framed generators") {
    auto A = star_algebra({2, 2, 2});
    auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(3), 9);
    const auto& q = A.quiver;
    std::mt19937 rng(8);
    for (const auto& g : A.generators)
        for (int lu = 0; lu + g.degree() <= 9; ++lu)
            for (int lv = 0; lu + lv + g.degree() <= 9 && lv <= 3; ++lv) {
                auto us = all_paths(*q, lu), vs = all_paths(*q, lv);
                for (int s = 0; s < 10; ++s) {
                    E x = E::monomial(q, us[rng() % us.size()]) * g * E::monomial(q, vs[rng() % vs.size()]);
                    CHECK(sys.reduce(x).is_zero());
                }
            }
    for (int k = 0; k < 300; ++k) {
        E x(q);
        for (int t = 0; t < 5; ++t) {
            auto ps = all_paths(*q, static_cast<int>(rng() % 9));
            x += E::monomial(q, ps[rng() % ps.size()], Integer(static_cast<long>(rng() % 9) - 4));
        }
        E r = sys.reduce(x);
        CHECK(sys.reduce(r) == r);
    }
}

TEST_CASE("normal form does not depend on the order of reductions") {
    auto A = star_algebra({2, 2, 2});
    auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(3), 8);
    const auto& q = A.quiver;
    std::mt19937 rng(12);
    for (int k = 0; k < 1000; ++k) {
        E x(q);
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
            auto ps = all_paths(*q, static_cast<int>(rng() % 9));
            x += E::monomial(q, ps[rng() % ps.size()], Integer(static_cast<long>(rng() % 5) - 2));
        }
        CHECK(reduce_randomly(sys, x, rng) == sys.reduce(x));
    }
}

TEST_CASE("forest systems give the monomials avoiding a a* for forest arrows") {
    Quiver q = catalog::affine_d(5);
    auto dq = make_double(q);
    std::vector<int> white{0, 3};
    auto f = forest_for_white(*dq, white);
    auto sys = prep_system<Integer>(dq, white, 6);
    for (int d = 0; d <= 6; ++d)
        for (const auto& p : all_paths(*dq, d)) {
            bool avoids = true;
            for (int i = 0; i + 1 < p.len; ++i)
                for (int a : f.arrows)
                    if (p[i] == a && p[i + 1] == dq->star(a)) avoids = false;
            CHECK(sys.reducible(p) == !avoids);
        }
}
