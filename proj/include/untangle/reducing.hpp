#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "untangle/combinatorial_map.hpp"
#include "untangle/io.hpp"
#include "untangle/util.hpp"

namespace untangle {

enum class Color : char { Red = 0, Blue = 1 };

inline Color other(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }

/// A turn of a walk at an interior vertex: number of triangles left of
/// the length-2 subwalk (normalized to [-3,3] when possible, else the
/// positive representative), tagged with the color of the triangle to
/// the left of the incoming dart.
struct Turn {
    int value = 0;
    Color tag = Color::Red;

    bool operator==(const Turn& o) const { return value == o.value && tag == o.tag; }
};

inline bool is_bad_turn(const Turn& t) {
    if (t.value == 0 || t.value == 1 || t.value == -1) return true;
    if ((t.value == 2 || t.value == -2) && t.tag == Color::Red) return true;
    return false;
}

/// Triangulation with bipartite dual and all vertex degrees >= 8; the
/// discrete analog of a hyperbolic metric.  Immutable after validation.
class ReducingTriangulation {
public:
    ReducingTriangulation(CombinatorialMap map, std::vector<Color> colors,
                          std::map<std::string, std::vector<Dart>> canonical = {})
        : map_(std::move(map)), colors_(std::move(colors)), canonical_(std::move(canonical)) {
        validate();
    }

    const CombinatorialMap& map() const { return map_; }
    Color face_color(int f) const { return colors_[f]; }
    Color left_color(Dart d) const { return colors_[map_.left_face(d)]; }
    int genus() const { return genus_; }

    const std::map<std::string, std::vector<Dart>>& canonical_loops() const {
        return canonical_;
    }
    /// Forward dart of a single-edge canonical loop.
    Dart canonical_dart(const std::string& name) const {
        auto it = canonical_.find(name);
        if (it == canonical_.end() || it->second.size() != 1)
            throw InternalError("no single-edge canonical loop named " + name);
        return it->second[0];
    }

    Turn turn(Dart e_in, Dart e_out) const {
        return Turn{map_.turn_value(e_in, e_out), left_color(e_in)};
    }
    int turn_value(Dart e_in, Dart e_out) const { return map_.turn_value(e_in, e_out); }
    Dart dart_by_turn(Dart e_in, int t) const { return map_.dart_by_turn(e_in, t); }

    std::map<int, std::string> color_strings() const {
        std::map<int, std::string> out;
        for (int f = 0; f < map_.face_count(); ++f)
            out[f] = colors_[f] == Color::Red ? "red" : "blue";
        return out;
    }

private:
    void validate() {
        if (static_cast<int>(colors_.size()) != map_.face_count())
            throw NotATriangulation("color table size mismatch");
        if (map_.boundary_count() != 0)
            throw NotATriangulation("reducing triangulations are closed surfaces");
        for (int f = 0; f < map_.face_count(); ++f)
            if (map_.face_size(f) != 3)
                throw NotATriangulation("face " + std::to_string(f) + " is not a triangle");
        for (int d = 0; d < map_.dart_count(); ++d)
            if (colors_[map_.left_face(d)] == colors_[map_.right_face(d)])
                throw DualNotBipartite("adjacent faces share a color at dart " +
                                       std::to_string(d));
        for (int v = 0; v < map_.vertex_count(); ++v)
            if (map_.degree(v) < 8)
                throw DegreeBelowEight("vertex " + std::to_string(v) + " has degree " +
                                       std::to_string(map_.degree(v)));
        auto [g, b] = map_.genus_and_boundary();
        if (b != 0) throw NotATriangulation("boundary in reducing triangulation");
        genus_ = g;
    }

    CombinatorialMap map_;
    std::vector<Color> colors_;
    std::map<std::string, std::vector<Dart>> canonical_;
    int genus_ = 0;
};

/// 2-color the dual by BFS; throws DualNotBipartite on odd cycles.
inline std::vector<Color> two_color_faces(const CombinatorialMap& m) {
    std::vector<int> color(m.face_count(), -1);
    for (int f0 = 0; f0 < m.face_count(); ++f0) {
        if (color[f0] >= 0) continue;
        color[f0] = 0;
        std::vector<int> stack{f0};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (Dart d : m.face_cycle(f)) {
                int g = m.right_face(d);
                if (color[g] < 0) {
                    color[g] = 1 - color[f];
                    stack.push_back(g);
                } else if (color[g] == color[f]) {
                    throw DualNotBipartite("dual graph has an odd cycle");
                }
            }
        }
    }
    std::vector<Color> out(m.face_count());
    for (int f = 0; f < m.face_count(); ++f)
        out[f] = color[f] == 0 ? Color::Red : Color::Blue;
    return out;
}

inline ReducingTriangulation validate_reducing(CombinatorialMap map,
                                               std::vector<Color> colors) {
    return ReducingTriangulation(std::move(map), std::move(colors));
}

inline ReducingTriangulation reducing_from_mapfile(const MapFile& mf) {
    std::vector<Color> colors;
    if (!mf.colors.empty()) {
        colors.assign(mf.map.face_count(), Color::Red);
        if (static_cast<int>(mf.colors.size()) != mf.map.face_count())
            throw ParseError("triangulation file must color every face");
        for (auto& [f, c] : mf.colors) colors[f] = c == "red" ? Color::Red : Color::Blue;
    } else {
        colors = two_color_faces(mf.map);
    }
    return ReducingTriangulation(mf.map, std::move(colors), mf.canonical_loops);
}

// ── Construction from the canonical polygonal schema ─────────────────
//
// The 4g-gon with boundary word a1 b1 a1' b1' ... is triangulated by
// diagonals only, so the quotient has a single vertex of degree
// 12g - 6.  The diagonals are chosen so that the unique 2-coloring of
// the dual tree of the polygon triangulation assigns opposite colors
// to the two copies of every schema edge, which makes the glued dual
// bipartite:
//   * an ear is cut at every corner c_{4t+1},
//   * the remaining 3g-gon is triangulated with every corner incident
//     to an even number of diagonals (possible exactly when the size
//     is divisible by 3, which it is).

namespace detail {

/// Triangulate polygon `p` (corner ids, |p| = 3k) so every corner has
/// even diagonal degree.  Appends corner triples in ccw order.
inline void all_even_triangulation(const std::vector<int>& p,
                                   std::vector<std::array<int, 3>>& out) {
    int m = static_cast<int>(p.size());
    if (m % 3 != 0 || m < 3) throw InternalError("all_even_triangulation needs |p| = 3k");
    if (m == 3) {
        out.push_back({p[0], p[1], p[2]});
        return;
    }
    out.push_back({p[0], p[1], p[2]});
    out.push_back({p[0], p[2], p[4]});
    out.push_back({p[2], p[3], p[4]});
    // invariant: m - w == 2 (mod 3), so the loop body never wraps
    int w = 4;
    while (m - w > 2) {
        out.push_back({p[0], p[w], p[w + 1]});
        out.push_back({p[w + 1], p[w + 3], p[0]});
        out.push_back({p[w + 1], p[w + 2], p[w + 3]});
        w += 3;
    }
    if (m - w != 2) throw InternalError("all_even_triangulation got out of step");
    out.push_back({p[0], p[w], p[w + 1]});
}

}  // namespace detail

/// Build a reducing triangulation of the closed orientable genus-g
/// surface (g >= 2) whose 1-skeleton contains a canonical system of
/// loops a1 b1 ... ag bg, each as a single marked edge.
inline ReducingTriangulation build_reducing(int g) {
    if (g < 2) throw GenusTooSmall("reducing triangulations require genus >= 2");
    int n = 4 * g;
    // edge labels: 0..2g-1 schema loops (a_t = 2t, b_t = 2t+1), then diagonals
    int next_label = 2 * g;
    std::map<std::pair<int, int>, int> diag_label;  // corner pair -> label

    std::vector<std::array<int, 3>> tris;
    for (int t = 0; t < g; ++t)
        tris.push_back({4 * t, 4 * t + 1, 4 * t + 2});
    std::vector<int> inner;
    for (int t = 0; t < g; ++t) {
        inner.push_back(4 * t);
        inner.push_back(4 * t + 2);
        inner.push_back(4 * t + 3);
    }
    detail::all_even_triangulation(inner, tris);

    auto ccw_side_label = [&](int i) -> int {
        int t = i / 4, r = i % 4;
        int a = 2 * t, b = 2 * t + 1;
        switch (r) {
            case 0: return a;   // a_t forward
            case 1: return b;   // b_t forward
            case 2: return ~a;  // a_t reversed
            default: return ~b; // b_t reversed
        }
    };
    auto side_label = [&](int x, int y) -> int {
        // polygon boundary side from corner x to corner y (consecutive)?
        if ((x + 1) % n == y) return ccw_side_label(x);
        if ((y + 1) % n == x) return ~ccw_side_label(y);
        return INT32_MIN;  // not a boundary side
    };

    std::vector<std::vector<int>> faces;
    for (auto& tr : tris) {
        std::vector<int> f;
        for (int i = 0; i < 3; ++i) {
            int x = tr[i], y = tr[(i + 1) % 3];
            int s = side_label(x, y);
            if (s != INT32_MIN) {
                f.push_back(s);
                continue;
            }
            auto key = std::minmax(x, y);
            auto it = diag_label.find({key.first, key.second});
            int lab;
            if (it == diag_label.end()) {
                lab = next_label++;
                diag_label[{key.first, key.second}] = lab;
            } else {
                lab = it->second;
            }
            // diagonal min->max is the forward orientation
            f.push_back(x < y ? lab : ~lab);
        }
        faces.push_back(std::move(f));
    }

    CombinatorialMap m = CombinatorialMap::from_faces(faces);
    if (m.vertex_count() != 1)
        throw InternalError("canonical schema quotient should have one vertex");
    auto [gr, b] = m.genus_and_boundary();
    if (gr != g || b != 0) throw InternalError("build_reducing produced the wrong surface");

    std::vector<Color> colors = two_color_faces(m);
    std::map<std::string, std::vector<Dart>> canonical;
    for (int t = 0; t < g; ++t) {
        canonical["a" + std::to_string(t + 1)] = {2 * (2 * t)};
        canonical["b" + std::to_string(t + 1)] = {2 * (2 * t + 1)};
    }
    return ReducingTriangulation(std::move(m), std::move(colors), std::move(canonical));
}

}  // namespace untangle
