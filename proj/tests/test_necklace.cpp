#include <catch_amalgamated.hpp>

#include <preproj/necklace.hpp>
#include <preproj/poisson.hpp>

#include <random>

using namespace preproj;

namespace {

using E = Element<Integer>;
using CE = CyclicElement<Integer>;
using T = TensorElement<Integer>;

QuiverPtr one_loop() { return make_double(catalog::free_loops(1)); }

CE cyc(const QuiverPtr& q, const Path& p) { return CE::of(q, canonical_rotation(*q, p)); }

CE unit_class(const QuiverPtr& q, int v) { return CE::of(q, Path::idempotent(v)); }

std::vector<Path> closed_words(const Quiver& q, int d) {
    std::vector<Path> out;
    for (const auto& p : all_paths(q, d))
        if (p.closed() && canonical_rotation(q, p) == p) out.push_back(p);
    return out;
}

std::vector<Path> closed_upto(const Quiver& q, int maxd) {
    std::vector<Path> out;
    for (int d = 1; d <= maxd; ++d)
        for (const auto& p : closed_words(q, d)) out.push_back(p);
    return out;
}

// sum over arrows a of the double of omega(a, a*) [d_a u . d_{a*} v]
CE bracket_oracle(const CE& u, const CE& v) {
    const auto& q = u.quiver();
    CE out(q);
    for (int a = 0; a < q->num_arrows(); ++a) {
        int w = q->omega(a, q->star(a));
        out += Integer(w) * cyclic_project(partial_derivative(a, u) * partial_derivative(q->star(a), v));
    }
    return out;
}

std::optional<Path> random_path(const Quiver& q, std::mt19937& rng, int len, int start) {
    std::vector<int> ids;
    int v = start;
    for (int k = 0; k < len; ++k) {
        std::vector<int> out;
        for (int a = 0; a < q.num_arrows(); ++a)
            if (q.src(a) == v) out.push_back(a);
        if (out.empty()) return std::nullopt;
        int a = out[rng() % out.size()];
        ids.push_back(a);
        v = q.dst(a);
    }
    if (ids.empty()) return Path::idempotent(start);
    return Path::from_arrows(q, ids);
}

E pi_poly(const PoissonContext& ctx, const Poly& f, const std::array<E, 3>& gens) {
    E out(ctx.dq);
    for (const auto& [e, c] : f.terms) {
        std::vector<E> xs;
        for (int k = 0; k < 3; ++k)
            for (int t = 0; t < e[k]; ++t) xs.push_back(gens[k]);
        out += c * pi_product(ctx, xs);
    }
    return out;
}

}  // namespace

TEST_CASE("partial and double derivatives") {
    auto q = one_loop();
    CE xy = CE::parse(q, "[x y]"), xx = CE::parse(q, "[x x]");
    CHECK(partial_derivative(0, xy) == E::parse(q, "y"));
    CHECK(partial_derivative(0, xx) == E::parse(q, "2*x"));
    CHECK(partial_derivative(1, xy) == E::parse(q, "x"));
    CHECK(partial_derivative(1, xx).is_zero());

    Path e = Path::idempotent(0);
    Path x = Path::arrow(*q, 0), y = Path::arrow(*q, 1);
    T want(q);
    want.add(e, y, Integer(1));
    CHECK(double_derivative(0, E::parse(q, "x y")) == want);
    T want2(q);
    want2.add(y, e, Integer(1));
    CHECK(double_derivative(0, E::parse(q, "y x")) == want2);
    T want3(q);
    want3.add(e, x, Integer(1));
    want3.add(x, e, Integer(1));
    CHECK(double_derivative(0, E::parse(q, "x x")) == want3);
}

TEST_CASE("necklace bracket examples") {
    auto q = one_loop();
    CE x = CE::parse(q, "[x]"), y = CE::parse(q, "[y]"), xy = CE::parse(q, "[x y]");
    CHECK(bracket(x, y) == unit_class(q, 0));
    CHECK(bracket(xy, x) == CE::parse(q, "-[x]"));
    CHECK(bracket(x, x).is_zero());
    CHECK(bracket(CE::parse(q, "[x x]"), CE::parse(q, "[y y]")) == CE::parse(q, "4*[x y]"));
}

TEST_CASE("bracket agrees with the derivative formula") {
    std::mt19937 rng(51);
    for (auto base : {catalog::free_loops(2), catalog::affine_a(3), catalog::affine_d(4)}) {
        auto q = make_double(base);
        auto pool = closed_upto(*q, 5);
        for (int k = 0; k < 200; ++k) {
            CE u = CE::of(q, pool[rng() % pool.size()]), v = CE::of(q, pool[rng() % pool.size()]);
            u += Integer(static_cast<long>(rng() % 5) - 2) * CE::of(q, pool[rng() % pool.size()]);
            CHECK(bracket(u, v) == bracket_oracle(u, v));
        }
    }
}

TEST_CASE("cobracket examples") {
    auto q = one_loop();
    CHECK(cobracket(CE::parse(q, "[x y]")).is_zero());
    CHECK(cobracket(CE::parse(q, "[x]")).is_zero());
    // the four (x,y) pairs of x y x y cancel in pairs
    CHECK(cobracket(CE::parse(q, "[x y x y]")).is_zero());

    auto q2 = make_double(catalog::free_loops(2));
    auto path = [&](const std::string& s) { return E::parse(q2, s).terms().front().first; };
    WedgePair<Integer> want(q2);
    want.add(path("x2 y2"), Path::idempotent(0), Integer(1));
    want.add(path("x1 y1"), Path::idempotent(0), Integer(1));
    auto d = cobracket(CE::parse(q2, "[x1 y1 x2 y2]"));
    CHECK(d == want);
    CHECK(bracket_of_wedge(d).is_zero());
}

TEST_CASE("cobracket is the antisymmetrisation of delta_l on closed words") {
    for (auto base : {catalog::free_loops(2), catalog::affine_a(3)}) {
        auto q = make_double(base);
        for (const auto& w : closed_upto(*q, 6)) {
            WedgePair<Integer> want(q);
            auto dl = delta_ell(E::monomial(q, w));
            for (const auto& [k, c] : dl.terms()) want.add(k.first, k.second, c);
            CHECK(cobracket(CE::of(q, w)) == want);
        }
    }
}

TEST_CASE("Loday bracket examples") {
    auto q = one_loop();
    CE x = CE::parse(q, "[x]");
    CHECK(loday_bracket(x, E::parse(q, "y")) == E::idempotent(q, 0));
    CHECK(loday_bracket(x, E::parse(q, "y y")) == E::parse(q, "2*y"));
    CHECK(loday_bracket(x, E::parse(q, "x")).is_zero());
}

TEST_CASE("delta_l examples") {
    auto q = one_loop();
    Path e = Path::idempotent(0);
    T want(q);
    want.add(e, e, Integer(-1));
    CHECK(delta_ell(E::parse(q, "x y")) == want);
    CHECK(delta_ell(E::parse(q, "x")).is_zero());

    // on r every term has a length-zero cyclic word in front:
    // -sum over arrows of a_t (x) a_s + a_s (x) a_t
    for (auto base : {catalog::free_loops(1), catalog::affine_a(3), catalog::star({1, 2})}) {
        auto dq = make_double(base);
        T rwant(dq);
        for (int a = 0; a < base.num_arrows(); ++a) {
            rwant.add(Path::idempotent(base.dst(a)), Path::idempotent(base.src(a)), Integer(-1));
            rwant.add(Path::idempotent(base.src(a)), Path::idempotent(base.dst(a)), Integer(-1));
        }
        CHECK(delta_ell(preprojective_r<Integer>(dq)) == rwant);
    }
}

TEST_CASE("double bracket examples") {
    auto q = one_loop();
    Path e = Path::idempotent(0);
    T want(q);
    want.add(e, e, Integer(1));
    CHECK(double_bracket(E::parse(q, "x"), E::parse(q, "y")) == want);
    CHECK(double_bracket(E::parse(q, "x"), E::parse(q, "x")).is_zero());
}

TEST_CASE("cyclic projection of m applied to the double bracket is the necklace bracket") {
    std::mt19937 rng(52);
    for (auto base : {catalog::free_loops(1), catalog::free_loops(2), catalog::affine_a(3)}) {
        auto q = make_double(base);
        auto pool = closed_upto(*q, 4);
        for (int k = 0; k < 200; ++k) {
            const Path& u = pool[rng() % pool.size()];
            const Path& v = pool[rng() % pool.size()];
            CE lhs = cyclic_project(multiply_tensor(double_bracket(E::monomial(q, u), E::monomial(q, v))));
            CHECK(lhs == bracket(cyc(q, u), cyc(q, v)));
        }
    }
}

TEST_CASE("antisymmetry and Jacobi on all small triples") {
    for (auto base : {catalog::free_loops(1), catalog::free_loops(2)}) {
        auto q = make_double(base);
        int total = base.num_arrows() == 1 ? 7 : 5;
        auto pool = closed_upto(*q, total - 2);
        for (const Path& a : pool)
            for (const Path& b : pool) {
                if (a.len + b.len > total) continue;
                CE u = CE::of(q, a), v = CE::of(q, b);
                CHECK(bracket(u, v) == -bracket(v, u));
                for (const Path& c : pool) {
                    if (a.len + b.len + c.len > total) continue;
                    CE w = CE::of(q, c);
                    CHECK((bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) + bracket(w, bracket(u, v))).is_zero());
                }
            }
    }
    std::mt19937 rng(53);
    for (auto base : {catalog::affine_a(3), catalog::affine_d(4)}) {
        auto q = make_double(base);
        auto pool = closed_upto(*q, 4);
        for (int k = 0; k < 150; ++k) {
            CE u = CE::of(q, pool[rng() % pool.size()]), v = CE::of(q, pool[rng() % pool.size()]),
               w = CE::of(q, pool[rng() % pool.size()]);
            CHECK(bracket(u, v) == -bracket(v, u));
            CHECK((bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) + bracket(w, bracket(u, v))).is_zero());
        }
    }
}

TEST_CASE("Leibniz and BV identities on random samples") {
    std::mt19937 rng(54);
    for (auto base : {catalog::free_loops(2), catalog::affine_a(3), catalog::affine_d(4)}) {
        auto q = make_double(base);
        auto pool = closed_upto(*q, 3);
        int done = 0;
        for (int k = 0; k < 400 && done < 150; ++k) {
            CE u = CE::of(q, pool[rng() % pool.size()]);
            auto b = random_path(*q, rng, static_cast<int>(rng() % 4), static_cast<int>(rng() % q->num_vertices()));
            if (!b) continue;
            auto c = random_path(*q, rng, static_cast<int>(rng() % 4), b->tgt);
            if (!c) continue;
            ++done;
            E B = E::monomial(q, *b), C = E::monomial(q, *c);
            CHECK(loday_bracket(u, B * C) == B * loday_bracket(u, C) + loday_bracket(u, B) * C);
            if (b->len + c->len <= 5) CHECK(delta_ell(B * C) == bv_rhs(B, C));
        }
        CHECK(done > 50);
    }
}

TEST_CASE("bracket after cobracket vanishes") {
    for (auto base : {catalog::free_loops(1), catalog::free_loops(2), catalog::affine_a(3)}) {
        auto q = make_double(base);
        int D = base.num_arrows() == 2 ? 5 : 6;
        for (const auto& w : closed_upto(*q, D)) CHECK(bracket_of_wedge(cobracket(CE::of(q, w))).is_zero());
    }
}

TEST_CASE("Poisson bracket on i0 Pi i0 examples") {
    {
        auto dq = make_double(catalog::affine_a(3));
        auto ctx = poisson_context(dq, 0, 10);
        E X = E::parse(dq, "a0 a1 a2"), Y = E::parse(dq, "a2* a1* a0*"), Z = E::parse(dq, "a0 a0*");
        CHECK(poisson_i0(ctx, X, Z) == to_rational(X));
        CHECK(poisson_i0(ctx, X, Y) == Rational(3) * to_rational(pi_product(ctx, {Z, Z})));
        CHECK(poisson_i0(ctx, X, X).is_zero());
    }
    {
        auto base = catalog::affine_e(6);
        auto dq = make_double(base);
        auto ctx = poisson_context(dq, *classify(base).extending_vertex, 20);
        E p = E::parse(dq, "a1 a0"), ps = E::parse(dq, "a0* a1*"), y = E::parse(dq, "a2* a2");
        E X = p * y * ps, Y = p * y * y * ps, Z = p * y * E::parse(dq, "a0* a0") * y * y * ps;
        CHECK(poisson_i0(ctx, X, Y) == Rational(-2) * to_rational(pi_product(ctx, {Z})) - to_rational(pi_product(ctx, {X, X})));
    }
}

TEST_CASE("Poisson brackets reproduce the presentation tables") {
    struct Case { Quiver q; int D; std::array<std::string, 3> gens; PoissonPresentation P; };
    std::vector<Case> cases{
        {catalog::affine_a(3), 10, {"a0 a1 a2", "a2* a1* a0*", "a0 a0*"}, presentations::affine_a(3)},
        {catalog::affine_d(4), 14, {"a0 a2 a2* a0*", "-a0 a3 a3* a0*", "a0 a2 a2* a3 a3* a0*"}, presentations::affine_d4()},
    };
    for (const auto& c : cases) {
        INFO(c.P.name);
        auto dq = make_double(c.q);
        auto ctx = poisson_context(dq, 0, c.D);
        std::array<E, 3> g{E::parse(dq, c.gens[0]), E::parse(dq, c.gens[1]), E::parse(dq, c.gens[2])};
        CHECK(pi_poly(ctx, c.P.relation, g).is_zero());
        for (int k = 0; k < 3; ++k)
            for (int l = k + 1; l < 3; ++l) CHECK(poisson_i0(ctx, g[k], g[l]) == to_rational(pi_poly(ctx, c.P.generator_bracket(k, l), g)));
    }
}
