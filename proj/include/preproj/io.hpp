#pragma once
// JSON quiver files and report emission (JSON / CSV / text).
//
// Quiver file:  { "vertices": [ids], "arrows": [{"id", "src", "dst"}], "white": [ids] }
// Ids may be integers or strings. Integer arrow ids k become arrow names "a<k>".

#include "homology.hpp"
#include "series.hpp"

#include <fstream>

#include <json.hpp>

namespace preproj {

using json = nlohmann::json;

struct QuiverFile {
    Quiver quiver;
    std::vector<int> white;
};

namespace io_detail {

inline std::string id_string(const json& v, const char* what) {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw std::invalid_argument(std::string("quiver json: ") + what + " ids must be integers or strings");
}

inline json id_value(const std::string& s) {
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::stoll(s);
    return s;
}

}  // namespace io_detail

inline QuiverFile quiver_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
        throw std::invalid_argument("quiver json: need \"vertices\" and \"arrows\"");
    QuiverFile f;
    for (const auto& v : j.at("vertices")) f.quiver.add_vertex(io_detail::id_string(v, "vertex"));
    auto vertex = [&](const json& v) {
        int k = f.quiver.find_vertex(io_detail::id_string(v, "vertex"));
        if (k < 0) throw std::invalid_argument("quiver json: unknown vertex " + v.dump());
        return k;
    };
    for (const auto& a : j.at("arrows")) {
        if (!a.contains("src") || !a.contains("dst")) throw std::invalid_argument("quiver json: arrow needs src and dst");
        std::string name;
        if (a.contains("id")) {
            name = io_detail::id_string(a.at("id"), "arrow");
            if (a.at("id").is_number_integer()) name = "a" + name;
        }
        f.quiver.add_arrow(vertex(a.at("src")), vertex(a.at("dst")), name);
    }
    if (j.contains("white"))
        for (const auto& w : j.at("white")) f.white.push_back(vertex(w));
    std::sort(f.white.begin(), f.white.end());
    f.white.erase(std::unique(f.white.begin(), f.white.end()), f.white.end());
    return f;
}

inline QuiverFile load_quiver(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return quiver_from_json(j);
}

inline json quiver_to_json(const Quiver& q, const std::vector<int>& white = {}) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < q.num_vertices(); ++v) j["vertices"].push_back(io_detail::id_value(q.vertex_name(v)));
    j["arrows"] = json::array();
    for (int a = 0; a < q.num_arrows(); ++a)
        j["arrows"].push_back({{"id", q.arrow_name(a)},
                               {"src", io_detail::id_value(q.vertex_name(q.src(a)))},
                               {"dst", io_detail::id_value(q.vertex_name(q.dst(a)))}});
    if (!white.empty()) {
        j["white"] = json::array();
        for (int w : white) j["white"].push_back(io_detail::id_value(q.vertex_name(w)));
    }
    return j;
}

// One record per degree: { "degree", "free_rank", "torsion": ["2", ...], "generators"? }
inline json degree_report(int degree, const TorsionSummary& s, const std::vector<std::string>* generators = nullptr) {
    json j{{"degree", degree}, {"free_rank", s.free_rank}, {"torsion", json::array()}};
    for (const auto& f : s.invariant_factors) j["torsion"].push_back(f.str());
    if (generators) j["generators"] = *generators;
    return j;
}

inline TorsionSummary summary_from_json(const json& j) {
    TorsionSummary s;
    s.free_rank = j.at("free_rank").get<int>();
    for (const auto& f : j.at("torsion")) s.invariant_factors.push_back(Integer(f.get<std::string>()));
    return s;
}

inline json series_to_json(const Series& s) {
    json j = json::array();
    for (int k = 0; k <= s.trunc(); ++k) j.push_back(s[k].str());
    return j;
}

inline std::string series_csv(const Series& s) {
    std::string out = "degree,coefficient\n";
    for (int k = 0; k <= s.trunc(); ++k) out += std::to_string(k) + "," + s[k].str() + "\n";
    return out;
}

inline json matrix_series_to_json(const MatrixSeries& m, int D) {
    json j = json::array();
    for (int d = 0; d <= D; ++d) {
        json rows = json::array();
        for (const auto& row : m[d]) {
            json r = json::array();
            for (const auto& x : row) r.push_back(x.str());
            rows.push_back(r);
        }
        j.push_back(rows);
    }
    return j;
}

inline std::string matrix_series_csv(const MatrixSeries& m, int n, int D) {
    std::string out = "degree,i,j,coefficient\n";
    for (int d = 0; d <= D; ++d)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out += std::to_string(d) + "," + std::to_string(i) + "," + std::to_string(j) + "," + m[d][i][j].str() + "\n";
    return out;
}

}  // namespace preproj
