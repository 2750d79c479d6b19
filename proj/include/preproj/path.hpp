#pragma once
// Path monomials in a quiver. Fixed-capacity, trivially copyable.

#include "quiver.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace preproj {

inline constexpr int kMaxPathLength = 60;

struct Path {
    std::uint8_t len = 0;
    std::uint8_t src = 0;
    std::uint8_t tgt = 0;
    std::uint8_t pad = 0;
    std::array<std::uint8_t, kMaxPathLength> a{};

    static Path idempotent(int v) {
        Path p;
        p.src = p.tgt = static_cast<std::uint8_t>(v);
        return p;
    }
    static Path arrow(const Quiver& q, int id) {
        Path p;
        p.len = 1;
        p.src = static_cast<std::uint8_t>(q.src(id));
        p.tgt = static_cast<std::uint8_t>(q.dst(id));
        p.a[0] = static_cast<std::uint8_t>(id);
        return p;
    }
    static Path from_arrows(const Quiver& q, const std::vector<int>& ids) {
        if (ids.empty()) throw std::invalid_argument("Path::from_arrows: empty list needs a vertex");
        if (ids.size() > kMaxPathLength) throw std::length_error("path too long");
        Path p = arrow(q, ids[0]);
        for (std::size_t k = 1; k < ids.size(); ++k) {
            if (q.src(ids[k]) != p.tgt) throw std::invalid_argument("Path::from_arrows: arrows do not compose");
            p.a[p.len++] = static_cast<std::uint8_t>(ids[k]);
            p.tgt = static_cast<std::uint8_t>(q.dst(ids[k]));
        }
        return p;
    }

    int degree() const { return len; }
    bool closed() const { return src == tgt; }
    int operator[](int i) const { return a[i]; }
    std::string_view view() const { return {reinterpret_cast<const char*>(a.data()), len}; }

    // Subpath [from, from+n). Endpoints are recovered from the quiver.
    Path sub(const Quiver& q, int from, int n) const {
        if (n == 0) return idempotent(from < len ? q.src(a[from]) : tgt);
        Path p;
        p.len = static_cast<std::uint8_t>(n);
        std::memcpy(p.a.data(), a.data() + from, n);
        p.src = static_cast<std::uint8_t>(q.src(a[from]));
        p.tgt = static_cast<std::uint8_t>(q.dst(a[from + n - 1]));
        return p;
    }

    friend bool operator==(const Path& x, const Path& y) {
        if (x.len != y.len) return false;
        if (x.len == 0) return x.src == y.src;
        return std::memcmp(x.a.data(), y.a.data(), x.len) == 0;
    }
    friend bool operator!=(const Path& x, const Path& y) { return !(x == y); }
    // Degree first, then arrow ids lexicographically; idempotents by vertex.
    friend bool operator<(const Path& x, const Path& y) {
        if (x.len != y.len) return x.len < y.len;
        if (x.len == 0) return x.src < y.src;
        return std::memcmp(x.a.data(), y.a.data(), x.len) < 0;
    }
    friend bool operator>(const Path& x, const Path& y) { return y < x; }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull ^ (static_cast<std::uint64_t>(len) << 8 | (len ? 0 : src));
        for (int i = 0; i < len; ++i) {
            h ^= a[i];
            h *= 1099511628211ull;
        }
        h ^= h >> 29;
        return static_cast<std::size_t>(h);
    }
};

struct PathHash {
    std::size_t operator()(const Path& p) const { return p.hash(); }
};

inline bool composable(const Path& x, const Path& y) { return x.tgt == y.src; }

// Concatenation; caller checks composability.
inline Path concat(const Path& x, const Path& y) {
    if (x.len + y.len > kMaxPathLength) throw std::length_error("path exceeds maximal length");
    if (x.len == 0) return y;
    if (y.len == 0) return x;
    Path p = x;
    std::memcpy(p.a.data() + x.len, y.a.data(), y.len);
    p.len = static_cast<std::uint8_t>(x.len + y.len);
    p.tgt = y.tgt;
    return p;
}

inline Path concat3(const Path& x, const Path& y, const Path& z) { return concat(concat(x, y), z); }

inline std::string render_path(const Quiver& q, const Path& p) {
    if (p.len == 0) return "e_" + q.vertex_name(p.src);
    std::string s;
    for (int i = 0; i < p.len; ++i) {
        if (i) s += ' ';
        s += q.arrow_name(p.a[i]);
    }
    return s;
}

// Compact power notation for one-vertex quivers with single-letter names: "yx^2y".
inline std::string render_compact(const Quiver& q, const Path& p) {
    if (p.len == 0) return "1";
    std::string s;
    int i = 0;
    while (i < p.len) {
        int j = i;
        while (j < p.len && p.a[j] == p.a[i]) ++j;
        s += q.arrow_name(p.a[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

inline Path parse_path(const Quiver& q, const std::vector<std::string>& tokens) {
    if (tokens.size() == 1 && tokens[0].rfind("e_", 0) == 0) {
        int v = q.find_vertex(tokens[0].substr(2));
        if (v < 0) throw std::invalid_argument("unknown vertex in '" + tokens[0] + "'");
        return Path::idempotent(v);
    }
    std::vector<int> ids;
    for (const auto& t : tokens) {
        int id = q.find_arrow(t);
        if (id < 0) throw std::invalid_argument("unknown arrow '" + t + "'");
        ids.push_back(id);
    }
    return Path::from_arrows(q, ids);
}

// All paths of length d from i (or every vertex when i < 0), in lexicographic order.
inline std::vector<Path> all_paths(const Quiver& q, int d, int i = -1, int j = -1) {
    std::vector<Path> out;
    std::vector<Path> cur;
    for (int v = 0; v < q.num_vertices(); ++v)
        if (i < 0 || v == i) cur.push_back(Path::idempotent(v));
    for (int k = 0; k < d; ++k) {
        std::vector<Path> nxt;
        for (const auto& p : cur)
            for (int a = 0; a < q.num_arrows(); ++a)
                if (q.src(a) == p.tgt) nxt.push_back(concat(p, Path::arrow(q, a)));
        cur.swap(nxt);
    }
    for (auto& p : cur)
        if (j < 0 || p.tgt == j) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace preproj

template <>
struct std::hash<preproj::Path> {
    std::size_t operator()(const preproj::Path& p) const { return p.hash(); }
};
