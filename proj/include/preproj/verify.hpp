#pragma once
// Acceptance checks shared by the `verify` command and the acceptance test binary.

#include "necklace.hpp"
#include "poisson.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <random>
#include <thread>

namespace preproj {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool gating = true;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string key, title, suite;
    double budget_seconds = 0;
    double seconds = 0;
    bool pass = false;
    std::vector<CheckResult> checks;
};

struct VerifyOptions {
    std::string suite = "full";         // fast | full | deep
    std::vector<std::string> only;      // criterion ids, keys or check names
    std::uint64_t seed = 20240917;
    int jobs = 1;
#ifdef PREPROJ_DATA_DIR
    std::string data_dir = PREPROJ_DATA_DIR;
#else
    std::string data_dir = "data";
#endif
};

namespace verify_detail {

using Rng = std::mt19937_64;

inline std::string table_str(const std::map<int, std::vector<Integer>>& t) {
    std::string s = "{";
    bool first = true;
    for (const auto& [d, fs] : t) {
        for (const auto& f : fs) {
            s += (first ? "" : ", ") + std::to_string(d) + ": Z/" + f.str();
            first = false;
        }
    }
    return s + "}";
}

inline std::map<int, std::vector<Integer>> table(std::initializer_list<std::pair<int, std::vector<long>>> xs) {
    std::map<int, std::vector<Integer>> t;
    for (const auto& [d, fs] : xs)
        for (long f : fs) t[d].push_back(Integer(f));
    return t;
}

inline std::map<int, std::vector<Integer>> torsion_upto(const GradedTorsionReport& rep, int lo, int hi) {
    std::map<int, std::vector<Integer>> t;
    for (const auto& [d, fs] : rep.torsion_table())
        if (d >= lo && d <= hi) t[d] = fs;
    return t;
}

inline bool no_square_torsion(const GradedTorsionReport& rep) {
    for (const auto& p : rep.pieces)
        for (const auto& [prime, e] : p.summary.primary_parts())
            if (e > 1) return false;
    return true;
}

inline CheckResult check(std::string name, bool pass, std::string detail, bool gating = true) {
    return {std::move(name), pass, gating, std::move(detail)};
}

inline std::vector<std::string> read_rule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

// Connected random quiver: a random spanning tree plus `extra` further arrows (loops allowed).
inline Quiver random_quiver(Rng& rng, int n, int extra) {
    Quiver q;
    for (int v = 0; v < n; ++v) q.add_vertex(std::to_string(v));
    int id = 0;
    for (int v = 1; v < n; ++v) {
        int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
        if (rng() & 1) q.add_arrow(u, v, "a" + std::to_string(id++));
        else q.add_arrow(v, u, "a" + std::to_string(id++));
    }
    for (int k = 0; k < extra; ++k) {
        int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        q.add_arrow(u, v, "a" + std::to_string(id++));
    }
    return q;
}

inline std::string quiver_str(const Quiver& q) {
    std::string s = std::to_string(q.num_vertices()) + " vertices, arrows";
    for (int a = 0; a < q.num_arrows(); ++a) s += " " + std::to_string(q.src(a)) + "->" + std::to_string(q.dst(a));
    return s;
}

// Canonical cyclic words of degree d.
inline std::vector<Path> cyclic_words(const Quiver& dq, int d) {
    std::set<Path> out;
    for (int i = 0; i < dq.num_vertices(); ++i)
        for (const Path& p : all_paths(dq, d, i, i)) out.insert(canonical_rotation(dq, p));
    return {out.begin(), out.end()};
}

inline std::optional<Path> random_path(const Quiver& dq, Rng& rng, int len, int start, bool closed) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<int> ids;
        int v = start;
        bool stuck = false;
        for (int k = 0; k < len; ++k) {
            std::vector<int> out;
            for (int a = 0; a < dq.num_arrows(); ++a)
                if (dq.src(a) == v) out.push_back(a);
            if (out.empty()) { stuck = true; break; }
            int a = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
            ids.push_back(a);
            v = dq.dst(a);
        }
        if (stuck || (closed && v != start)) continue;
        if (ids.empty()) return Path::idempotent(start);
        return Path::from_arrows(dq, ids);
    }
    return std::nullopt;
}

// All cyclic words of degree 1..maxd, used to sample closed paths uniformly.
inline std::vector<Path> closed_pool(const Quiver& dq, int maxd) {
    std::vector<Path> pool;
    for (int d = 1; d <= maxd; ++d)
        for (const Path& w : cyclic_words(dq, d)) pool.push_back(w);
    return pool;
}

inline const Path& pick(const std::vector<Path>& pool, Rng& rng) {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

inline int random_vertex(const Quiver& q, Rng& rng) {
    return std::uniform_int_distribution<int>(0, q.num_vertices() - 1)(rng);
}

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> criterion_free2(const VerifyOptions&) {
    std::vector<CheckResult> out;
    auto dq = make_double(catalog::free_loops(2));
    auto sys = prep_system<Integer>(dq, {}, 8);
    auto rep = lambda_from_system(sys, {}, 8);
    auto t6 = torsion_upto(rep, 1, 6);
    out.push_back(check("torsion-1..6", t6 == table({{4, {2}}, {6, {3}}}), table_str(t6)));
    auto r2 = r_power_class(rep, &sys, 2, 1);
    auto r3 = r_power_class(rep, &sys, 3, 1);
    Integer o2 = order_of(r2, rep), o3 = order_of(r3, rep);
    out.push_back(check("order r^(2)", o2 == Integer(2), "order " + o2.str()));
    out.push_back(check("order r^(3)", o3 == Integer(3), "order " + o3.str()));
    out.push_back(check("no p^2 torsion", no_square_torsion(rep), "all invariant factors squarefree to degree 8"));
    auto cyc = lambda_graded(dq, {}, 6, {LambdaMethod::Cyclic});
    bool same = true;
    for (int d = 0; d <= 6; ++d) same = same && cyc.at(d) == rep.at(d);
    out.push_back(check("cyclic-word route agrees", same, "degrees 0..6"));
    auto t8 = rep.torsion_table().count(8) ? rep.torsion_table().at(8) : std::vector<Integer>{};
    auto r4 = r_power_class(rep, &sys, 2, 2);
    Integer o4 = order_of(r4, rep);
    out.push_back(check("degree 8 = <r^(4)> (stretch)", t8 == std::vector<Integer>{Integer(2)} && o4 == Integer(2),
                        "torsion at 8: " + std::to_string(t8.size()) + " summand(s), order r^(4) = " + o4.str(), false));
    return out;
}

inline std::vector<CheckResult> criterion_groebner(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    struct Case { std::vector<int> lengths; int D; std::string file; };
    for (const auto& c : {Case{{2, 2, 2}, 12, "e6.txt"}, Case{{3, 3, 1}, 12, "e7.txt"}, Case{{5, 2, 1}, 14, "e8.txt"}}) {
        auto A = star_algebra(c.lengths);
        auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(A.quiver->num_arrows()), c.D);
        auto got = split_lines(sys.listing(true));
        auto want = read_rule_file(opt.data_dir + "/" + c.file);
        std::string detail = std::to_string(got.size()) + " rules";
        if (got != want) {
            detail += "; expected " + std::to_string(want.size());
            for (std::size_t k = 0; k < std::max(got.size(), want.size()); ++k) {
                std::string g = k < got.size() ? got[k] : "<none>", w = k < want.size() ? want[k] : "<none>";
                if (g != w) { detail += "; first mismatch: '" + g + "' vs '" + w + "'"; break; }
            }
        }
        out.push_back(check(c.file, got == want, detail));
    }
    return out;
}

inline MatrixSeries counts_series(const RewriteSystem<Integer>& sys, int D) {
    auto c = sys.normal_counts(D);
    int n = sys.quiver()->num_vertices();
    MatrixSeries m(n, D);
    for (int d = 0; d <= D; ++d)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[d][i][j] = Integer(static_cast<long>(c[d][i][j]));
    return m;
}

// normal-monomial counts against (1 - tC + t^2 1_{Q0\J})^{-1}
inline CheckResult hilbert_match(const std::string& name, const Quiver& q, const std::vector<int>& white, int D) {
    auto dq = make_double(q);
    try {
        auto sys = prep_system<Integer>(dq, white, D);
        int n = q.num_vertices();
        MatrixSeries hV(n, D), hL(n, D);
        DenseMatrix C = double_adjacency(q);
        if (D >= 1) hV[1] = C;
        std::vector<bool> w(n, false);
        for (int j : white) w[j] = true;
        if (D >= 2)
            for (int i = 0; i < n; ++i)
                if (!w[i]) hL[2][i][i] = 1;
        auto r = ncci_check(hV, hL, counts_series(sys, D), D);
        return check(name, r.holds, r.holds ? "degrees 0.." + std::to_string(D) : "first mismatch at degree " + std::to_string(r.first_failure));
    } catch (const NonUnitLead& e) {
        return check(name, false, std::string("completion failed: ") + e.what());
    }
}

inline std::vector<CheckResult> criterion_hilbert(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const int D = 10;
    out.push_back(hilbert_match("egfla free(2)", catalog::free_loops(2), {}, D));
    out.push_back(hilbert_match("egfla ~A2", catalog::affine_a(3), {}, D));
    out.push_back(hilbert_match("egfla ~D4", catalog::affine_d(4), {}, D));
    out.push_back(hilbert_match("egfla ~E6", catalog::affine_e(6), {}, D));
    Rng rng(opt.seed);
    int made = 0;
    while (made < 3) {
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        Quiver q = random_quiver(rng, n, std::uniform_int_distribution<int>(1, 2)(rng));
        if (classify(q).kind == Kind::Dynkin) continue;
        out.push_back(hilbert_match("egfla random " + quiver_str(q), q, {}, D));
        ++made;
    }
    {
        Quiver e6 = catalog::affine_e(6);
        int i0 = *classify(e6).extending_vertex;
        auto sys = prep_system<Integer>(make_double(e6), {}, 16);
        auto c = sys.normal_counts(16);
        Series got(16);
        for (int d = 0; d <= 16; ++d) got[d] = Integer(static_cast<long>(c[d][i0][i0]));
        Series want = Series(16, {1, 0, 0, 0, -1, 0, 0, 0, 1}) * one_minus_tm_pow(4, 1, 16) * one_minus_tm_pow(6, 1, 16);
        out.push_back(check("ncci ~E6 i0", got == want, "h(i0 Pi i0) = " + got.str()));
    }
    for (const auto& [name, q] : std::vector<std::pair<std::string, Quiver>>{
             {"~A2", catalog::affine_a(3)}, {"~D4", catalog::affine_d(4)}, {"~E6", catalog::affine_e(6)}}) {
        int i0 = *classify(q).extending_vertex;
        auto r = egid_check(q, i0, 12);
        out.push_back(check("egid " + name, r.holds,
                            r.holds ? "degrees 0..12" : "first mismatch at degree " + std::to_string(r.first_failure)));
        auto lit = egid_check(q, i0, 12, true);
        out.push_back(check("egid " + name + " with a_0 = 1 in the t^2 exponent", !lit.holds,
                            lit.holds ? "holds" : "fails from degree " + std::to_string(lit.first_failure) +
                                                      " (off by the factor 1/(1 - t^2))",
                            false));
    }
    return out;
}

// Torsion primes per degree against sum_p hT(Q, p).
inline CheckResult torsion_vs_hT(const std::string& name, const Quiver& q, int D) {
    auto rep = lambda_graded(make_double(q), {}, D);
    QuiverClass cls = classify(q);
    std::string bad;
    for (int d = 1; d <= D; ++d) {
        std::map<long, int> got, want;
        for (const auto& [p, e] : rep.at(d).primary_parts()) got[p.to_int64()] += e;
        for (int p : {2, 3, 5}) {
            long k = hT(cls, p, D)[d].to_int64();
            if (k) want[p] = static_cast<int>(k);
        }
        if (got != want) bad += " degree " + std::to_string(d);
    }
    return check("hT " + name, bad.empty(), bad.empty() ? table_str(rep.torsion_table()) : "mismatch at" + bad);
}

inline CheckResult free_rank_vs_i0(const std::string& name, const Quiver& q, int D) {
    auto dq = make_double(q);
    auto rep = lambda_graded(dq, {}, D);
    int i0 = *classify(q).extending_vertex;
    MatrixSeries h = hilbert_prep(q, {}, D);
    std::string bad;
    for (int d = 1; d <= D; ++d)
        if (Integer(rep.at(d).free_rank) != h[d][i0][i0]) bad += " " + std::to_string(d);
    return check("free rank = h(i0 Pi i0) " + name, bad.empty(), bad.empty() ? "degrees 1.." + std::to_string(D) : "mismatch at" + bad);
}

inline CheckResult split_check(const std::string& name, const Quiver& ext, const Quiver& dyn, int D) {
    auto a = lambda_graded(make_double(ext), {}, D);
    auto b = lambda_graded(make_double(dyn), {}, D);
    bool ok = a.torsion_table() == b.torsion_table();
    for (int d = 1; d <= D; ++d) ok = ok && b.at(d).free_rank == 0;
    return check("split " + name, ok, table_str(a.torsion_table()) + " vs " + table_str(b.torsion_table()));
}

// With every arrow of the catalog orientation pointing rightward, [i_RU (LR)^{m/2}] - [i_LU (RL)^{m/2}]
// spans the 2-torsion in degree m. The sum of the two classes has infinite order.
inline std::vector<CheckResult> dn_generator(int n, int m) {
    Quiver q = catalog::affine_d(n);
    auto dq = make_double(q);
    auto sys = prep_system<Integer>(dq, {}, m);
    auto rep = lambda_from_system(sys, {}, m);
    Element<Integer> R(dq), L(dq);
    for (int a = 0; a < dq->num_original_arrows(); ++a) {
        R += Element<Integer>::arrow(dq, a);
        L += Element<Integer>::arrow(dq, dq->star(a));
    }
    int LU = 0, RU = n - 1;
    Element<Integer> one = Element<Integer>::identity(dq);
    auto right = cyclic_project(Element<Integer>::idempotent(dq, RU) * power(L * R, m / 2, one));
    auto left = cyclic_project(Element<Integer>::idempotent(dq, LU) * power(R * L, m / 2, one));
    HomologyClass diff{m, lambda_coordinates(rep, right - left, m, &sys), "difference"};
    HomologyClass sum{m, lambda_coordinates(rep, right + left, m, &sys), "sum"};
    Integer o = order_of(diff, rep), os = order_of(sum, rep);
    const auto& piece = rep.at(m);
    bool spans = piece.invariant_factors == std::vector<Integer>{Integer(2)} && o == Integer(2);
    std::string name = "~D" + std::to_string(n) + " generator degree " + std::to_string(m);
    return {check(name, spans, "torsion " + piece.str() + ", order " + o.str()),
            check(name + " with + sign", os != Integer(2), "order " + (os.is_zero() ? std::string("infinite") : os.str()), false)};
}

inline std::vector<CheckResult> criterion_affine_torsion(const VerifyOptions&) {
    std::vector<CheckResult> out;
    out.push_back(torsion_vs_hT("~D4", catalog::affine_d(4), 8));
    out.push_back(torsion_vs_hT("~D5", catalog::affine_d(5), 10));
    out.push_back(torsion_vs_hT("~E6", catalog::affine_e(6), 10));
    out.push_back(split_check("~D4 / D4", catalog::affine_d(4), catalog::dynkin_d(4), 8));
    out.push_back(split_check("~E6 / E6", catalog::affine_e(6), catalog::dynkin_e(6), 10));
    out.push_back(free_rank_vs_i0("~D4", catalog::affine_d(4), 8));
    out.push_back(free_rank_vs_i0("~E6", catalog::affine_e(6), 10));
    for (auto [n, m] : std::vector<std::pair<int, int>>{{4, 4}, {5, 4}, {6, 4}, {6, 8}, {8, 12}}) {
        auto v = dn_generator(n, m);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

inline CheckResult dynkin_table(const std::string& name, const Quiver& q, int D,
                                const std::map<int, std::vector<Integer>>& want,
                                const std::vector<std::pair<int, int>>& generators) {
    auto dq = make_double(q);
    auto sys = prep_system<Integer>(dq, {}, D);
    auto rep = lambda_from_system(sys, {}, D);
    auto got = torsion_upto(rep, 1, D);
    bool ok = got == want;
    for (int d = 1; d <= D; ++d) ok = ok && rep.at(d).free_rank == 0;
    std::string detail = table_str(got);
    for (const auto& [p, l] : generators) {
        auto h = r_power_class(rep, &sys, p, l);
        Integer o = order_of(h, rep);
        auto it = want.find(h.degree);
        bool gen = it != want.end() && it->second.size() == 1 && o == it->second[0];
        ok = ok && gen;
        detail += "; " + h.label + " order " + o.str();
    }
    return check(name, ok, detail);
}

inline std::vector<CheckResult> criterion_dynkin(const VerifyOptions&) {
    std::vector<CheckResult> out;
    out.push_back(dynkin_table("A3", catalog::dynkin_a(3), 8, {}, {}));
    out.push_back(dynkin_table("E6", catalog::dynkin_e(6), 12, table({{4, {2}}, {6, {3}}}), {{2, 1}, {3, 1}}));
    out.push_back(dynkin_table("E7", catalog::dynkin_e(7), 16, table({{4, {2}}, {6, {3}}, {8, {2}}, {16, {2}}}),
                               {{2, 1}, {3, 1}, {2, 2}, {2, 3}}));
    return out;
}

// Cyclic words of degree d with no cyclic factor a a* for a in G.
inline long count_avoiding(const Quiver& dq, const std::vector<int>& G, int d) {
    std::vector<bool> inG(dq.num_arrows(), false);
    for (int a : G) inG[a] = true;
    long count = 0;
    for (const Path& w : cyclic_words(dq, d)) {
        bool ok = true;
        for (int k = 0; k < w.len && ok; ++k) {
            int a = w[k], b = w[(k + 1) % w.len];
            if (w.len >= 2 && inG[a] && b == dq.star(a)) ok = false;
        }
        count += ok;
    }
    return count;
}

inline std::vector<CheckResult> criterion_partial(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    Rng rng(opt.seed ^ 0x5bd1e995ull);
    const int D = 8;
    for (int s = 0; s < 5; ++s) {
        int n = std::uniform_int_distribution<int>(2, 4)(rng);
        Quiver q = random_quiver(rng, n, std::uniform_int_distribution<int>(0, 1)(rng));
        std::vector<int> white;
        for (int v = 0; v < n; ++v)
            if (rng() % 3 == 0) white.push_back(v);
        if (white.empty()) white.push_back(random_vertex(q, rng));
        auto dq = make_double(q);
        auto rep = lambda_graded(dq, white, D);
        auto G = forest_for_white(*dq, white).arrows;
        std::string bad;
        for (int d = 0; d <= D; ++d)
            if (!rep.at(d).torsion_free() || rep.at(d).free_rank != count_avoiding(*dq, G, d)) bad += " " + std::to_string(d);
        std::string name = quiver_str(q) + ", J = {";
        for (std::size_t k = 0; k < white.size(); ++k) name += (k ? "," : "") + std::to_string(white[k]);
        name += "}";
        out.push_back(check("free basis " + name, bad.empty(), bad.empty() ? "torsion-free, ranks = avoiding cyclic words" : "mismatch at" + bad));
        out.push_back(hilbert_match("egfla " + name, q, white, D));
    }
    return out;
}

// ---------------------------------------------------------------------------
// necklace properties

inline std::vector<CheckResult> necklace_jacobi(const std::string& name, const QuiverPtr& dq, int total) {
    std::vector<std::vector<Path>> words(total + 1);
    for (int d = 1; d <= total; ++d) words[d] = cyclic_words(*dq, d);
    auto cyc = [&](const Path& p) { return CyclicElement<Integer>::of(dq, p); };
    long pairs = 0, triples = 0, bad_anti = 0, bad_jac = 0;
    for (int d1 = 1; d1 <= total; ++d1)
        for (int d2 = d1; d1 + d2 <= total; ++d2)
            for (const Path& u : words[d1])
                for (const Path& v : words[d2]) {
                    ++pairs;
                    if (bracket(cyc(u), cyc(v)) != -bracket(cyc(v), cyc(u))) ++bad_anti;
                }
    for (int d1 = 1; d1 <= total; ++d1)
        for (int d2 = d1; d1 + 2 * d2 <= total; ++d2)
            for (int d3 = d2; d1 + d2 + d3 <= total; ++d3)
                for (const Path& u : words[d1])
                    for (const Path& v : words[d2]) {
                        if (d1 == d2 && v < u) continue;
                        auto uv = bracket(cyc(u), cyc(v));
                        for (const Path& w : words[d3]) {
                            if (d2 == d3 && w < v) continue;
                            ++triples;
                            auto j = bracket(cyc(u), bracket(cyc(v), cyc(w))) + bracket(cyc(v), bracket(cyc(w), cyc(u))) +
                                     bracket(cyc(w), uv);
                            if (!j.is_zero()) ++bad_jac;
                        }
                    }
    return {check("antisymmetry " + name, bad_anti == 0, std::to_string(pairs) + " pairs, " + std::to_string(bad_anti) + " failures"),
            check("Jacobi " + name, bad_jac == 0, std::to_string(triples) + " triples, " + std::to_string(bad_jac) + " failures")};
}

inline CheckResult necklace_random_jacobi(const std::string& name, const QuiverPtr& dq, Rng& rng, int samples) {
    long bad = 0, done = 0;
    auto pool = closed_pool(*dq, 4);
    for (int s = 0; s < samples; ++s) {
        std::vector<CyclicElement<Integer>> xs;
        for (int k = 0; k < 3; ++k) xs.push_back(CyclicElement<Integer>::of(dq, pick(pool, rng)));
        ++done;
        const auto &u = xs[0], &v = xs[1], &w = xs[2];
        if (bracket(u, v) != -bracket(v, u)) ++bad;
        else if (!(bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) + bracket(w, bracket(u, v))).is_zero()) ++bad;
    }
    return check("antisymmetry + Jacobi " + name, bad == 0 && done > 0, std::to_string(done) + " random triples, " + std::to_string(bad) + " failures");
}

inline std::vector<CheckResult> necklace_leibniz_bv(const std::string& name, const QuiverPtr& dq, Rng& rng, int samples) {
    long bad_leib = 0, bad_bv = 0, printed_plus_fail = 0, done = 0;
    auto pool = closed_pool(*dq, 3);
    for (int s = 0; s < samples; ++s) {
        std::optional<Path> u = pick(pool, rng);
        int lb = std::uniform_int_distribution<int>(0, 3)(rng);
        int lc = std::uniform_int_distribution<int>(0, 3)(rng);
        auto b = random_path(*dq, rng, lb, random_vertex(*dq, rng), false);
        if (!u || !b) continue;
        auto c = random_path(*dq, rng, lc, b->tgt, false);
        if (!c) continue;
        ++done;
        auto U = CyclicElement<Integer>::of(dq, *u);
        auto B = Element<Integer>::monomial(dq, *b), Cc = Element<Integer>::monomial(dq, *c);
        if (loday_bracket(U, B * Cc) != B * loday_bracket(U, Cc) + loday_bracket(U, B) * Cc) ++bad_leib;
        // BV on monomial pairs of degree <= 5
        if (b->len + c->len <= 5) {
            auto lhs = delta_ell(B * Cc);
            auto rhs = bv_rhs(B, Cc);
            if (lhs != rhs) ++bad_bv;
            TensorElement<Integer> printed = rhs;
            const auto db = double_bracket(B, Cc);
            for (const auto& [k, v] : db.terms())
                if (k.first.closed()) printed.add(canonical_rotation(*dq, k.first), k.second, Integer(2) * v);
            if (lhs != printed) ++printed_plus_fail;
        }
    }
    return {check("Leibniz " + name, bad_leib == 0 && done > 0, std::to_string(done) + " samples, " + std::to_string(bad_leib) + " failures"),
            check("BV " + name, bad_bv == 0 && done > 0,
                  std::to_string(bad_bv) + " failures; with +(pr (x) 1){{a,b}} instead: " + std::to_string(printed_plus_fail) + " failures")};
}

inline CheckResult necklace_involutive(const std::string& name, const QuiverPtr& dq, int D) {
    long n = 0, bad = 0;
    for (int d = 1; d <= D; ++d)
        for (const Path& w : cyclic_words(*dq, d)) {
            ++n;
            if (!bracket_of_wedge(cobracket(CyclicElement<Integer>::of(dq, w))).is_zero()) ++bad;
        }
    return check("br . delta = 0 " + name, bad == 0, std::to_string(n) + " words, " + std::to_string(bad) + " failures");
}

// Coordinates of a cyclic element in the cyclic-word basis of a piece.
inline SparseRow word_coords(const LambdaPiece& piece, const CyclicElement<Integer>& c) {
    SparseRow r;
    for (const auto& [p, v] : c.terms()) r.emplace_back(piece.index.at(p), v);
    return r;
}

// [Pr] is a Lie ideal; {[i r^m], v} vanishes in Lambda; delta[i r^m] vanishes in Lambda_+ (x) Lambda_+.
inline std::vector<CheckResult> necklace_ideal(const std::string& name, const QuiverPtr& dq, int D, int vmax) {
    std::vector<CheckResult> out;
    auto pieces = lambda_pieces_cyclic(dq, {}, D);
    std::vector<LatticeEchelon> lat;
    for (const auto& p : pieces) lat.emplace_back(p.relations);
    auto element_of_row = [&](const LambdaPiece& piece, const SparseRow& row) {
        std::unordered_map<Path, Integer, PathHash> m;
        for (const auto& [k, v] : row) m.emplace(piece.basis[k], v);
        return CyclicElement<Integer>::from_canonical_map(dq, m);
    };
    long n = 0, bad = 0;
    for (int du = 2; du <= D; ++du)
        for (const auto& row : pieces[du].relations.data()) {
            auto u = element_of_row(pieces[du], row);
            for (int dv = 1; du + dv - 2 <= D; ++dv)
                for (const Path& w : pieces[dv].basis) {
                    auto b = bracket(u, CyclicElement<Integer>::of(dq, w));
                    int d = du + dv - 2;
                    ++n;
                    if (!b.is_zero() && !lat[d].contains(word_coords(pieces[d], b))) ++bad;
                }
        }
    out.push_back(check("Lie ideal [Pr] " + name, bad == 0, std::to_string(n) + " brackets, " + std::to_string(bad) + " outside"));

    long kn = 0, kbad = 0, cobad = 0;
    auto rel = preprojective_relation<Integer>(dq);
    Element<Integer> one = Element<Integer>::identity(dq);
    for (std::size_t i = 0; i < rel.size(); ++i)
        for (int m = 1; m <= 3; ++m) {
            if (2 * m > D) continue;
            auto u = cyclic_project(power(rel[i], m, one));
            for (int dv = 1; dv <= vmax && 2 * m + dv - 2 <= D; ++dv)
                for (const Path& w : pieces[dv].basis) {
                    auto b = bracket(u, CyclicElement<Integer>::of(dq, w));
                    int d = 2 * m + dv - 2;
                    ++kn;
                    if (!b.is_zero() && !lat[d].contains(word_coords(pieces[d], b))) ++kbad;
                }
            // delta(u) as an antisymmetric tensor in Lambda_+ (x) Lambda_+
            std::map<std::pair<int, int>, SparseRow> parts;
            const auto cob = cobracket(u);
            for (const auto& [k, c] : cob.terms()) {
                int d1 = k.first.len, d2 = k.second.len;
                if (d1 == 0 || d2 == 0) continue;
                auto put = [&](const Path& x, const Path& y, const Integer& v) {
                    int e1 = x.len, e2 = y.len;
                    int cols2 = static_cast<int>(pieces[e2].basis.size());
                    parts[{e1, e2}].emplace_back(pieces[e1].index.at(x) * cols2 + pieces[e2].index.at(y), v);
                };
                if (d1 < d2) put(k.first, k.second, c);
                else if (d1 > d2) put(k.second, k.first, -c);
                else {
                    put(k.first, k.second, c);
                    put(k.second, k.first, -c);
                }
            }
            for (auto& [dd, vec] : parts) {
                auto [e1, e2] = dd;
                int n1 = static_cast<int>(pieces[e1].basis.size()), n2 = static_cast<int>(pieces[e2].basis.size());
                LatticeEchelon K(n1 * n2);
                for (const auto& r : pieces[e1].relations.data())
                    for (int j = 0; j < n2; ++j) {
                        SparseRow g;
                        for (const auto& [k1, v] : r) g.emplace_back(k1 * n2 + j, v);
                        K.add(g);
                    }
                for (const auto& r : pieces[e2].relations.data())
                    for (int i1 = 0; i1 < n1; ++i1) {
                        SparseRow g;
                        for (const auto& [k2, v] : r) g.emplace_back(i1 * n2 + k2, v);
                        K.add(g);
                    }
                if (!K.contains(vec)) ++cobad;
            }
        }
    out.push_back(check("bracket kernel [i r^m] " + name, kbad == 0, std::to_string(kn) + " brackets, " + std::to_string(kbad) + " nonzero in Lambda"));
    out.push_back(check("cobracket kernel [i r^m] " + name, cobad == 0, std::to_string(cobad) + " nonzero components in Lambda_+ (x) Lambda_+"));
    return out;
}

inline std::vector<CheckResult> criterion_necklace(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    auto append = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
    auto f1 = make_double(catalog::free_loops(1));
    auto f2 = make_double(catalog::free_loops(2));
    auto a2 = make_double(catalog::affine_a(3));
    auto d4 = make_double(catalog::affine_d(4));
    append(necklace_jacobi("free(1)", f1, 8));
    append(necklace_jacobi("free(2)", f2, 8));
    Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    out.push_back(necklace_random_jacobi("~A2", a2, rng, 200));
    out.push_back(necklace_random_jacobi("~D4", d4, rng, 200));
    for (const auto& [name, q] : std::vector<std::pair<std::string, QuiverPtr>>{{"free(1)", f1}, {"free(2)", f2}, {"~A2", a2}, {"~D4", d4}})
        append(necklace_leibniz_bv(name, q, rng, 300));
    out.push_back(necklace_involutive("free(1)", f1, 6));
    out.push_back(necklace_involutive("free(2)", f2, 6));
    append(necklace_ideal("free(1)", f1, 8, 4));
    append(necklace_ideal("free(2)", f2, 6, 4));
    append(necklace_ideal("~A2", a2, 8, 4));
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> criterion_poisson(const VerifyOptions&) {
    std::vector<CheckResult> out;
    auto eq = [](const Element<Rational>& a, const Element<Rational>& b) { return (a - b).is_zero(); };
    {
        auto dq = make_double(catalog::affine_a(3));
        auto ctx = poisson_context(dq, 0, 10);
        auto E = [&](const std::string& s) { return Element<Integer>::parse(dq, s); };
        auto X = E("a0 a1 a2"), Y = E("a2* a1* a0*"), Z = E("a0 a0*");
        auto P = [&](std::vector<Element<Integer>> v) { return to_rational(pi_product(ctx, v)); };
        out.push_back(check("~A2 relation XY = Z^3", eq(P({X, Y}), P({Z, Z, Z})), ""));
        out.push_back(check("~A2 {X,Z} = X", eq(poisson_i0(ctx, X, Z), P({X})), poisson_i0(ctx, X, Z).str()));
        out.push_back(check("~A2 {X,Y} = 3Z^2", eq(poisson_i0(ctx, X, Y), Rational(3) * P({Z, Z})), poisson_i0(ctx, X, Y).str()));
        out.push_back(check("~A2 {Y,Z} = -Y", eq(poisson_i0(ctx, Y, Z), Rational(-1) * P({Y})),
                            "the second printed '{X,Y} = -Y' holds as {Y,Z} = -Y"));
    }
    {
        auto dq = make_double(catalog::affine_d(4));
        auto ctx = poisson_context(dq, 0, 14);
        auto E = [&](const std::string& s) { return Element<Integer>::parse(dq, s); };
        auto X = E("a0 a2 a2* a0*"), Y = E("-a0 a3 a3* a0*"), Z = E("a0 a2 a2* a3 a3* a0*");
        auto P = [&](std::vector<Element<Integer>> v) { return to_rational(pi_product(ctx, v)); };
        out.push_back(check("~D4 relation Z^2 + XY^2 - X^2Y = 0", (P({Z, Z}) + P({X, Y, Y}) - P({X, X, Y})).is_zero(), ""));
        out.push_back(check("~D4 {X,Y} = 2Z", eq(poisson_i0(ctx, X, Y), Rational(2) * P({Z})), ""));
        out.push_back(check("~D4 {Y,Z} = Y^2 - 2XY", eq(poisson_i0(ctx, Y, Z), P({Y, Y}) - Rational(2) * P({X, Y})), ""));
        out.push_back(check("~D4 {X,Z} = X^2 - 2XY", eq(poisson_i0(ctx, X, Z), P({X, X}) - Rational(2) * P({X, Y})),
                            "printed sign 2XY - X^2 violates {X, F} = 0 given F and {X,Y} = 2Z"));
        PoissonPresentation printed = presentations::affine_d4();
        printed.brackets[1] = Poly{{{1, 1, 0}, 2}, {{2, 0, 0}, -1}};
        Poly bad = printed.bracket(Poly::var(0), printed.relation);
        out.push_back(check("~D4 printed {X,Z} inconsistent with its relation", !bad.is_zero(), "{X, F} = " + bad.str(), false));
    }
    {
        auto dq = make_double(catalog::affine_e(6));
        int i0 = *classify(catalog::affine_e(6)).extending_vertex;
        auto ctx = poisson_context(dq, i0, 26);
        auto E = [&](const std::string& s) { return Element<Integer>::parse(dq, s); };
        auto p = E("a1 a0"), ps = E("a0* a1*"), x = E("a0* a0"), y = E("a2* a2");
        Element<Integer> one = Element<Integer>::identity(dq);
        auto M = [&](std::vector<Element<Integer>> v) {
            Element<Integer> a = one;
            for (auto& e : v) a = a * e;
            return a;
        };
        auto X = M({p, y, ps}), Y = M({p, y, y, ps}), Z = M({p, y, x, y, y, ps});
        auto P = [&](std::vector<Element<Integer>> v) { return to_rational(pi_product(ctx, v)); };
        out.push_back(check("~E6 relation Z^2 + Y^3 + ZX^2 = 0", (P({Z, Z}) + P({Y, Y, Y}) + P({Z, X, X})).is_zero(), ""));
        out.push_back(check("~E6 {X,Y} = -2Z - X^2", eq(poisson_i0(ctx, X, Y), Rational(-2) * P({Z}) - P({X, X})), ""));
        out.push_back(check("~E6 {X,Z} = 3Y^2", eq(poisson_i0(ctx, X, Z), Rational(3) * P({Y, Y})), ""));
        out.push_back(check("~E6 {Y,Z} = -2XZ", eq(poisson_i0(ctx, Y, Z), Rational(-2) * P({X, Z})), ""));
    }
    return out;
}

inline std::vector<CheckResult> criterion_hp0(const VerifyOptions&) {
    std::vector<CheckResult> out;
    auto P = presentations::affine_e6();
    auto f2 = hp0_poisson(P, 2, 24);
    auto want = e6_hp0_f2_expected(24);
    std::string d2;
    for (int d = 0; d <= 24; ++d)
        if (f2[d]) d2 += std::to_string(d) + ":" + std::to_string(f2[d]) + " ";
    out.push_back(check("~E6 p=2 to degree 24", f2 == want, d2));
    auto q = hp0_poisson(P, 0, 72);
    std::vector<int> degs;
    int total = 0;
    for (int d = 0; d <= 72; ++d) {
        total += q[d];
        for (int k = 0; k < q[d]; ++k) degs.push_back(d);
    }
    std::string dq;
    for (int d : degs) dq += std::to_string(d) + " ";
    out.push_back(check("~E6 over Q: 6 classes in degrees 0 6 8 12 14 20", degs == std::vector<int>{0, 6, 8, 12, 14, 20}, dq));
    auto ab = presentations::abelian(P);
    auto dims = hp0_poisson(ab, 0, 24);
    bool whole = true;
    for (int d = 0; d <= 24; ++d) whole = whole && dims[d] == static_cast<int>(P.basis(d).size());
    out.push_back(check("abelian bracket gives the whole algebra", whole, ""));
    return out;
}

inline std::vector<CheckResult> criterion_wab(const VerifyOptions&) {
    std::vector<CheckResult> out;
    auto q = formal_xyr();
    auto x = Element<Integer>::arrow(q, 0), y = Element<Integer>::arrow(q, 1), r = Element<Integer>::arrow(q, 2);
    std::string detail;
    bool ok = true;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            auto w = w_ab(a, b, x, y, r);
            std::map<Path, int> cols;
            SparseRow row;
            for (const auto& [p, c] : w.terms()) {
                if (xyr_bidegree(p) != std::make_pair(a, b)) continue;
                bool pure_r = true;
                for (int k = 0; k < p.len; ++k) pure_r = pure_r && p[k] == 2;
                if (pure_r) continue;
                int col = static_cast<int>(cols.size());
                cols.emplace(p, col);
                row.emplace_back(col, c);
            }
            SparseIntMatrix m(0, static_cast<int>(cols.size()));
            m.add_row(row);
            auto gap = saturation_gap(static_cast<int>(cols.size()), m);
            std::vector<Integer> want;
            if (a == b && a >= 2) want = {Integer(a == 3 ? 3 : 2)};
            bool good = gap == want;
            ok = ok && good;
            if (!gap.empty() || !good) {
                detail += "(" + std::to_string(a) + "," + std::to_string(b) + "): [";
                for (std::size_t k = 0; k < gap.size(); ++k) detail += (k ? "," : "") + gap[k].str();
                detail += "] ";
            }
        }
    out.push_back(check("W_{a,b} saturation 1 <= a,b <= 4", ok, detail + "others saturated"));
    return out;
}

inline std::vector<CheckResult> criterion_deep(const VerifyOptions&) {
    std::vector<CheckResult> out;
    out.push_back(dynkin_table("E8", catalog::dynkin_e(8), 28,
                               table({{4, {2}}, {6, {3}}, {8, {2}}, {10, {5}}, {16, {2}}, {18, {3}}, {28, {2}}}),
                               {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}));
    {
        // [i_s x^4 y x^4 y x^3 y], x and y the length-two cycles toward the longest and second-longest branches
        Quiver e8 = catalog::dynkin_e(8);
        auto dq = make_double(e8);
        auto sys = prep_system<Integer>(dq, {}, 28);
        auto rep = lambda_from_system(sys, {}, 28);
        int bx = -1, by = -1;
        for (int a = 0; a < dq->num_original_arrows(); ++a) {
            if (dq->dst(a) != 0) continue;
            if (bx < 0) bx = a;
            else if (by < 0) by = a;
        }
        std::vector<int> word;
        auto push = [&](int a, int times) {
            for (int k = 0; k < times; ++k) {
                word.push_back(dq->star(a));
                word.push_back(a);
            }
        };
        for (int t : {4, -1, 4, -1, 3, -1}) {
            if (t < 0) push(by, 1);
            else push(bx, t);
        }
        auto cls = CyclicElement<Integer>::of(dq, Path::from_arrows(*dq, word));
        HomologyClass h{28, lambda_coordinates(rep, cls, 28, &sys), "E8 degree 28"};
        Integer o = order_of(h, rep);
        out.push_back(check("E8 degree-28 generator", o == Integer(2), "order " + o.str()));
    }
    out.push_back(torsion_vs_hT("~E8", catalog::affine_e(8), 28));
    out.push_back(torsion_vs_hT("~E7", catalog::affine_e(7), 18));
    return out;
}

struct CriterionSpec {
    int id;
    std::string key, title, suite;
    double budget_seconds;
    std::function<std::vector<CheckResult>(const VerifyOptions&)> run;
};

}  // namespace verify_detail

inline std::vector<verify_detail::CriterionSpec> acceptance_criteria() {
    using namespace verify_detail;
    return {
        {1, "free2", "torsion of Lambda for two loop pairs", "fast", 120, criterion_free2},
        {2, "groebner", "E-type Groebner sets", "fast", 180, criterion_groebner},
        {3, "hilbert", "Hilbert series identities", "fast", 120, criterion_hilbert},
        {4, "affine", "extended Dynkin torsion tables", "fast", 300, criterion_affine_torsion},
        {5, "dynkin", "Dynkin torsion tables", "fast", 600, criterion_dynkin},
        {6, "partial", "partial preprojective freeness", "fast", 120, criterion_partial},
        {7, "necklace", "necklace Lie bialgebra properties", "fast", 180, criterion_necklace},
        {8, "poisson", "Poisson presentations of i0 Pi i0", "fast", 300, criterion_poisson},
        {9, "hp0", "HP0 at a bad prime", "fast", 120, criterion_hp0},
        {10, "wab", "W_{a,b} lattice saturation", "fast", 60, criterion_wab},
        {11, "deep", "E8 degree 28 and ~E8 torsion", "deep", 0, criterion_deep},
    };
}

inline bool suite_includes(const std::string& suite, const std::string& crit_suite) {
    if (suite == "deep") return true;
    if (suite == "full") return crit_suite != "deep";
    return crit_suite == "fast";
}

inline std::vector<CriterionResult> run_verify(const VerifyOptions& opt) {
    using namespace verify_detail;
    std::vector<CriterionSpec> selected;
    for (const auto& c : acceptance_criteria()) {
        bool take;
        if (opt.only.empty()) {
            take = suite_includes(opt.suite, c.suite);
        } else {
            take = false;
            for (const auto& o : opt.only)
                take = take || o == c.key || o == std::to_string(c.id);
            // a check-family name such as "egid" selects the criterion containing it
            if (!take)
                for (const auto& o : opt.only)
                    take = take || (c.key == "hilbert" && (o == "egid" || o == "egfla" || o == "ncci"));
        }
        if (take) selected.push_back(c);
    }
    std::vector<CriterionResult> results(selected.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < selected.size(); k = next++) {
            const auto& c = selected[k];
            CriterionResult r;
            r.id = c.id;
            r.key = c.key;
            r.title = c.title;
            r.suite = c.suite;
            r.budget_seconds = c.budget_seconds;
            auto t0 = std::chrono::steady_clock::now();
            try {
                r.checks = c.run(opt);
            } catch (const std::exception& e) {
                r.checks.push_back(check("exception", false, e.what()));
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            // family filter inside a criterion
            for (const auto& o : opt.only)
                if (o == "egid" || o == "egfla" || o == "ncci") {
                    std::vector<CheckResult> kept;
                    for (auto& ch : r.checks)
                        if (ch.name.rfind(o, 0) == 0) kept.push_back(ch);
                    r.checks = kept;
                }
            r.pass = true;
            for (const auto& ch : r.checks)
                if (ch.gating && !ch.pass) r.pass = false;
            if (c.budget_seconds > 0 && r.seconds > c.budget_seconds) {
                r.pass = false;
                r.checks.push_back(check("budget", false, "exceeded " + std::to_string(c.budget_seconds) + " s"));
            }
            results[k] = std::move(r);
        }
    };
    int jobs = std::max(1, opt.jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace preproj
