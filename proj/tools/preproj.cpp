// preproj: command-line front end.
//
//   preproj hilbert  --catalog affine_a 3 --degree 8
//   preproj hh0      --catalog free 2 --degree 6 --show-generators
//   preproj groebner --star 2 2 2 --degree 12 --expect e6.txt
//   preproj necklace --catalog free 2 --bracket "[x1 y1]" "[x1 x1 y1]"
//   preproj hp0      --presentation affine_e6 --ring Zmod:2 --degree 24
//   preproj verify   --suite full --jobs 4
//
// Exit codes: 0 success, 1 computation or verification failure, 2 usage error.

#include <preproj.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace preproj;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int degree = 12;
    std::string ring = "Z";
    std::string format = "text";
    int jobs = 1;
    std::uint64_t seed = 20240917;
    std::vector<std::string> catalog;
    std::string file;
    std::vector<std::string> white;
};

struct Ring {
    enum Kind { Z, Q, Zmod } kind = Z;
    long modulus = 0;
};

Ring parse_ring(const std::string& s) {
    if (s == "Z") return {Ring::Z, 0};
    if (s == "Q") return {Ring::Q, 0};
    if (s.rfind("Zmod:", 0) == 0) {
        long m = 0;
        try {
            m = std::stol(s.substr(5));
        } catch (const std::exception&) {
            throw UsageError("bad modulus in --ring " + s);
        }
        if (!is_prime(m)) throw UsageError("--ring Zmod:m needs a prime m");
        return {Ring::Zmod, m};
    }
    throw UsageError("--ring must be Z, Q or Zmod:m");
}

QuiverFile quiver_source(const RunConfig& cfg) {
    QuiverFile f;
    if (!cfg.file.empty() && !cfg.catalog.empty()) throw UsageError("give either --file or --catalog, not both");
    if (!cfg.file.empty()) {
        try {
            f = load_quiver(cfg.file);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (!cfg.catalog.empty()) {
        std::vector<int> params;
        for (std::size_t k = 1; k < cfg.catalog.size(); ++k) {
            try {
                params.push_back(std::stoi(cfg.catalog[k]));
            } catch (const std::exception&) {
                throw UsageError("catalog parameters must be integers");
            }
        }
        try {
            f.quiver = catalog::by_name(cfg.catalog[0], params);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else {
        throw UsageError("a quiver is required (--catalog NAME PARAMS... or --file q.json)");
    }
    for (const auto& w : cfg.white) {
        int v = f.quiver.find_vertex(w);
        if (v < 0) throw UsageError("--white: unknown vertex '" + w + "'");
        f.white.push_back(v);
    }
    std::sort(f.white.begin(), f.white.end());
    f.white.erase(std::unique(f.white.begin(), f.white.end()), f.white.end());
    return f;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_hilbert(const RunConfig& cfg, bool full_matrix, const std::vector<int>& entry) {
    QuiverFile f = quiver_source(cfg);
    const Quiver& q = f.quiver;
    int D = cfg.degree, n = q.num_vertices();
    MatrixSeries h(n, D);
    std::string note;
    try {
        h = hilbert_prep(q, f.white, D);
    } catch (const FormulaDomainError&) {
        // Dynkin with J empty: count normal monomials directly
        auto sys = prep_system<Integer>(make_double(q), f.white, D);
        auto c = sys.normal_counts(D);
        for (int d = 0; d <= D; ++d)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) h[d][i][j] = Integer(static_cast<long>(c[d][i][j]));
        note = "finite-dimensional: counted normal monomials";
    }
    std::optional<std::pair<int, int>> cell;
    if (entry.size() == 2) {
        if (entry[0] < 0 || entry[0] >= n || entry[1] < 0 || entry[1] >= n) throw UsageError("--entry out of range");
        cell = std::make_pair(entry[0], entry[1]);
    } else if (!full_matrix) {
        QuiverClass cls = classify(q);
        if (n == 1) cell = std::make_pair(0, 0);
        else if (cls.kind == Kind::ExtendedDynkin && f.white.empty())
            cell = std::make_pair(*cls.extending_vertex, *cls.extending_vertex);
    }
    if (cell) {
        Series s(D);
        for (int d = 0; d <= D; ++d) s[d] = h[d][cell->first][cell->second];
        if (cfg.format == "json") {
            emit_json({{"entry", {cell->first, cell->second}}, {"coefficients", series_to_json(s)}});
        } else if (cfg.format == "csv") {
            std::cout << series_csv(s);
        } else {
            std::cout << "h(e" << cell->first << " Pi e" << cell->second << "): " << s.str() << "\n";
            if (!note.empty()) std::cout << "(" << note << ")\n";
        }
        return 0;
    }
    if (cfg.format == "json") {
        emit_json({{"vertices", n}, {"coefficients", matrix_series_to_json(h, D)}});
    } else if (cfg.format == "csv") {
        std::cout << matrix_series_csv(h, n, D);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Series s(D);
                for (int d = 0; d <= D; ++d) s[d] = h[d][i][j];
                std::cout << "h(e" << i << " Pi e" << j << "): " << s.str() << "\n";
            }
        if (!note.empty()) std::cout << "(" << note << ")\n";
    }
    return 0;
}

// Candidate generators r^(p^l) in degree d = 2 p^l, with their orders.
std::vector<std::string> torsion_generators(const GradedTorsionReport& rep, const RewriteSystem<Integer>* sys, int d,
                                            bool& provenance_ok) {
    std::vector<std::string> out;
    const auto& s = rep.at(d);
    if (d % 2) return out;
    for (const auto& [p, e] : s.primary_parts()) {
        long pp = p.to_int64();
        int m = d / 2, l = 0;
        while (m % pp == 0) {
            m /= static_cast<int>(pp);
            ++l;
        }
        if (m != 1 || l == 0) {
            out.push_back("(no r^(p^l) in degree " + std::to_string(d) + " for p = " + p.str() + ")");
            continue;
        }
        auto h = r_power_class(rep, sys, static_cast<int>(pp), l);
        Integer o = order_of(h, rep);
        if (o != p) provenance_ok = false;
        out.push_back(h.label + " of order " + (o.is_zero() ? std::string("infinity") : o.str()));
    }
    return out;
}

int cmd_hh0(const RunConfig& cfg, bool show_generators, const std::string& method_name) {
    QuiverFile f = quiver_source(cfg);
    auto dq = make_double(f.quiver);
    int D = cfg.degree;
    Ring ring = parse_ring(cfg.ring);
    if (ring.kind != Ring::Z) {
        std::vector<int> dims = ring.kind == Ring::Q
                                    ? lambda_field_dims(dq, f.white, D, Rational(0))
                                    : lambda_field_dims(dq, f.white, D, Zmod(0, ring.modulus));
        if (cfg.format == "json") {
            json j = json::array();
            for (int d = 0; d <= D; ++d) j.push_back({{"degree", d}, {"dimension", dims[d]}});
            emit_json({{"ring", cfg.ring}, {"degrees", j}});
        } else if (cfg.format == "csv") {
            std::cout << "degree,dimension\n";
            for (int d = 0; d <= D; ++d) std::cout << d << "," << dims[d] << "\n";
        } else {
            for (int d = 0; d <= D; ++d) std::cout << "degree " << d << ": dim " << dims[d] << "\n";
        }
        return 0;
    }
    LambdaMethod method = LambdaMethod::Auto;
    if (method_name == "rewrite") method = LambdaMethod::Rewrite;
    else if (method_name == "cyclic") method = LambdaMethod::Cyclic;
    else if (method_name != "auto") throw UsageError("--method must be auto, rewrite or cyclic");

    std::optional<RewriteSystem<Integer>> sys;
    GradedTorsionReport rep;
    if (method != LambdaMethod::Cyclic) {
        try {
            sys.emplace(prep_system<Integer>(dq, f.white, D));
            rep = lambda_from_system(*sys, f.white, D);
        } catch (const NonUnitLead& e) {
            if (method == LambdaMethod::Rewrite) {
                std::cerr << "completion failed: " << e.what() << "\n";
                return 1;
            }
            std::cerr << "note: " << e.what() << "; using cyclic words\n";
            sys.reset();
            rep = lambda_graded(dq, f.white, D, {LambdaMethod::Cyclic});
        }
    } else {
        rep = lambda_graded(dq, f.white, D, {LambdaMethod::Cyclic});
    }
    bool provenance_ok = true;
    json records = json::array();
    if (cfg.format == "csv") std::cout << "degree,free_rank,torsion\n";
    for (int d = 0; d <= D; ++d) {
        const auto& s = rep.at(d);
        std::vector<std::string> gens;
        if (show_generators && !s.torsion_free()) gens = torsion_generators(rep, sys ? &*sys : nullptr, d, provenance_ok);
        if (cfg.format == "json") {
            records.push_back(degree_report(d, s, show_generators ? &gens : nullptr));
        } else if (cfg.format == "csv") {
            std::string t;
            for (const auto& x : s.invariant_factors) t += (t.empty() ? "" : " ") + x.str();
            std::cout << d << "," << s.free_rank << "," << t << "\n";
        } else {
            std::cout << "degree " << d << ": " << s.str() << "\n";
            for (const auto& g : gens) std::cout << "    " << g << "\n";
        }
    }
    if (cfg.format == "json") emit_json(records);
    else if (cfg.format == "text") std::cout << "(" << rep.provenance << ")\n";
    if (show_generators && !provenance_ok) {
        std::cerr << "some torsion is not generated by the expected r^(p^l)\n";
        return 1;
    }
    return 0;
}

std::string resolve_data_file(const std::string& name) {
    if (std::filesystem::exists(name)) return name;
    std::string alt = std::string(PREPROJ_DATA_DIR) + "/" + name;
    if (std::filesystem::exists(alt)) return alt;
    throw UsageError("cannot find " + name);
}

int cmd_groebner(const RunConfig& cfg, const std::vector<int>& star, const std::string& expect) {
    if (parse_ring(cfg.ring).kind != Ring::Z) throw UsageError("groebner works over Z");
    std::string listing;
    if (!star.empty()) {
        StarAlgebra A = star_algebra(star);
        auto sys = complete(A.generators, A.quiver, MonomialOrder::by_id(A.quiver->num_arrows()), cfg.degree);
        listing = sys.listing(true);
    } else {
        QuiverFile f = quiver_source(cfg);
        auto dq = make_double(f.quiver);
        try {
            listing = prep_system<Integer>(dq, f.white, cfg.degree).listing(false);
        } catch (const NonUnitLead& e) {
            std::cerr << "completion failed: " << e.what()
                      << "\n(hh0 falls back to the cyclic-word presentation in this case)\n";
            return 1;
        }
    }
    std::vector<std::string> got;
    {
        std::istringstream in(listing);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) got.push_back(line);
    }
    bool match = true;
    std::vector<std::string> want;
    if (!expect.empty()) {
        want = verify_detail::read_rule_file(resolve_data_file(expect));
        match = got == want;
    }
    if (cfg.format == "json") {
        json j{{"rules", got}};
        if (!expect.empty()) j["match"] = match;
        emit_json(j);
    } else {
        for (const auto& l : got) std::cout << l << "\n";
        if (!expect.empty()) {
            std::cout << (match ? "match" : "MISMATCH") << "\n";
            if (!match) {
                for (const auto& l : want)
                    if (std::find(got.begin(), got.end(), l) == got.end()) std::cout << "- " << l << "\n";
                for (const auto& l : got)
                    if (std::find(want.begin(), want.end(), l) == want.end()) std::cout << "+ " << l << "\n";
            }
        }
    }
    return match ? 0 : 1;
}

int cmd_necklace(const RunConfig& cfg, const std::vector<std::string>& br, const std::string& cobr,
                 const std::vector<std::string>& derivative, const std::vector<std::string>& loday) {
    QuiverFile f = quiver_source(cfg);
    auto dq = make_double(f.quiver);
    auto cyc = [&](const std::string& s) {
        try {
            return CyclicElement<Integer>::parse(dq, s);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    };
    std::string op, result;
    if (br.size() == 2) {
        op = "bracket";
        result = bracket(cyc(br[0]), cyc(br[1])).str();
    } else if (!cobr.empty()) {
        op = "cobracket";
        result = cobracket(cyc(cobr)).str();
    } else if (derivative.size() == 2) {
        op = "derivative";
        int a = dq->find_arrow(derivative[0]);
        if (a < 0) throw UsageError("unknown arrow '" + derivative[0] + "'");
        result = partial_derivative(a, cyc(derivative[1])).str();
    } else if (loday.size() == 2) {
        op = "loday";
        Element<Integer> x;
        try {
            x = Element<Integer>::parse(dq, loday[1]);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        result = loday_bracket(cyc(loday[0]), x).str();
    } else {
        throw UsageError("necklace needs one of --bracket U V, --cobracket U, --derivative A U, --loday U X");
    }
    if (cfg.format == "json") emit_json({{"operation", op}, {"result", result}});
    else std::cout << result << "\n";
    return 0;
}

int cmd_hp0(const RunConfig& cfg, const std::string& name, bool abelian) {
    PoissonPresentation P;
    try {
        P = presentations::by_name(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (abelian) P = presentations::abelian(P);
    Ring ring = parse_ring(cfg.ring);
    if (ring.kind == Ring::Z) throw UsageError("hp0 needs a field: --ring Q or --ring Zmod:p");
    auto dims = hp0_poisson(P, ring.modulus, cfg.degree);
    int total = 0;
    for (int x : dims) total += x;
    if (cfg.format == "json") {
        json j = json::array();
        for (int d = 0; d <= cfg.degree; ++d)
            if (dims[d]) j.push_back({{"degree", d}, {"dimension", dims[d]}});
        emit_json({{"presentation", P.name}, {"ring", cfg.ring}, {"degrees", j}, {"total", total}});
    } else if (cfg.format == "csv") {
        std::cout << "degree,dimension\n";
        for (int d = 0; d <= cfg.degree; ++d) std::cout << d << "," << dims[d] << "\n";
    } else {
        std::cout << P.name << ", F = " << P.relation.str() << "\n";
        for (int d = 0; d <= cfg.degree; ++d)
            if (dims[d]) std::cout << "degree " << d << ": dim " << dims[d] << "\n";
        std::cout << "total through degree " << cfg.degree << ": " << total << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::vector<std::string>& only) {
    if (suite != "fast" && suite != "full" && suite != "deep") throw UsageError("--suite must be fast, full or deep");
    VerifyOptions opt;
    opt.suite = suite;
    opt.only = only;
    opt.seed = cfg.seed;
    opt.jobs = cfg.jobs;
    auto results = run_verify(opt);
    if (results.empty()) throw UsageError("no criterion matches --only");
    bool all = true;
    json j = json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        if (cfg.format == "json") {
            json checks = json::array();
            for (const auto& c : r.checks)
                checks.push_back({{"name", c.name}, {"pass", c.pass}, {"gating", c.gating}, {"detail", c.detail}});
            j.push_back({{"id", r.id}, {"key", r.key}, {"title", r.title}, {"pass", r.pass},
                         {"seconds", r.seconds}, {"checks", checks}});
        } else {
            std::printf("%s %2d %-9s %-40s %8.2fs\n", r.pass ? "PASS" : "FAIL", r.id, r.key.c_str(), r.title.c_str(),
                        r.seconds);
            for (const auto& c : r.checks)
                if (!c.pass || !c.gating)
                    std::printf("       %s%s: %s\n", c.gating ? "failed " : "info ", c.name.c_str(), c.detail.c_str());
        }
    }
    if (cfg.format == "json") emit_json({{"suite", suite}, {"seed", cfg.seed}, {"pass", all}, {"criteria", j}});
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preprojective algebras and their zeroth Hochschild homology over Z"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--degree,-d", cfg.degree, "degree bound")->check(CLI::NonNegativeNumber);
    app.add_option("--ring", cfg.ring, "Z, Q or Zmod:m");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for randomized samples");
    app.add_option("--catalog", cfg.catalog, "catalog quiver: NAME PARAMS...")->expected(1, 8);
    app.add_option("--file", cfg.file, "quiver json file");
    app.add_option("--white", cfg.white, "white vertices (by id)")->expected(1, -1);

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert series of the preprojective algebra");
    bool full_matrix = false;
    std::vector<int> entry;
    hilbert->add_flag("--matrix", full_matrix, "print every (i,j) entry");
    hilbert->add_option("--entry", entry, "print a single entry i j")->expected(2);

    auto* hh0 = app.add_subcommand("hh0", "graded structure of Lambda = HH_0 of the preprojective algebra");
    bool show_generators = false;
    std::string method = "auto";
    hh0->add_flag("--show-generators", show_generators, "name torsion generators r^(p^l)");
    hh0->add_option("--method", method, "auto, rewrite or cyclic");

    auto* groebner = app.add_subcommand("groebner", "complete a presentation and list the rules");
    std::vector<int> star;
    std::string expect;
    groebner->add_option("--star", star, "branch lengths of a star presentation")->expected(1, -1);
    groebner->add_option("--expect", expect, "expected rule file");

    auto* necklace = app.add_subcommand("necklace", "necklace bracket, cobracket and derivatives");
    std::vector<std::string> br, derivative, loday;
    std::string cobr;
    // cyclic words are written "[x y]", which CLI11 would otherwise read as a list
    necklace->add_option("--bracket", br, "U V")->expected(2)->allow_extra_args(false);
    necklace->add_option("--cobracket", cobr, "U");
    necklace->add_option("--derivative", derivative, "ARROW U")->expected(2)->allow_extra_args(false);
    necklace->add_option("--loday", loday, "U X")->expected(2)->allow_extra_args(false);

    auto* hp0 = app.add_subcommand("hp0", "Poisson homology HP_0 of a graded presentation");
    std::string presentation = "affine_e6";
    bool abelian = false;
    hp0->add_option("--presentation", presentation, "affine_a2, affine_d4, affine_e6, affine_e7 or affine_e8");
    hp0->add_flag("--abelian", abelian, "use the zero bracket");

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    std::string suite = "full";
    std::vector<std::string> only;
    verify->add_option("--suite", suite, "fast, full or deep");
    verify->add_option("--only", only, "criterion number, key or check family")->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*hilbert) return cmd_hilbert(cfg, full_matrix, entry);
        if (*hh0) return cmd_hh0(cfg, show_generators, method);
        if (*groebner) return cmd_groebner(cfg, star, expect);
        if (*necklace) return cmd_necklace(cfg, br, cobr, derivative, loday);
        if (*hp0) return cmd_hp0(cfg, presentation, abelian);
        if (*verify) return cmd_verify(cfg, suite, only);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
