#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "untangle/drawing.hpp"

namespace untangle {

// Text formats.  Lines; `#` starts a comment; blank lines ignored.
//
//   surface-map v1
//   vertex 0: 0 2 5 ...        counterclockwise rotation list
//   twin implicit              twin(d) = d ^ 1 (only pairing supported)
//   boundary 2                 face 2 is a boundary component
//   color 0: red               triangulation face colors (optional)
//   canonical a1: 4            marked loop edges, by one forward dart each
//
// Faces are numbered by the order of their smallest dart, which makes
// face references stable under reserialization.
//
//   drawing v1
//   gvertex 0 -> 3
//   gedge 0 1: 4 7 9
//   gedge 2 2: @5              empty walk sitting at host vertex 5

struct MapFile {
    CombinatorialMap map;
    std::map<std::string, std::vector<Dart>> canonical_loops;  // name -> forward darts
    std::map<int, std::string> colors;                         // face -> "red"/"blue"
};

namespace iodetail {

struct LineReader {
    explicit LineReader(std::istream& in) : in_(in) {}
    /// next meaningful line; false at EOF
    bool next(std::string& line, int& lineno) {
        while (std::getline(in_, raw_)) {
            ++lineno_;
            auto hash = raw_.find('#');
            std::string s = hash == std::string::npos ? raw_ : raw_.substr(0, hash);
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            auto e = s.find_last_not_of(" \t\r");
            line = s.substr(b, e - b + 1);
            lineno = lineno_;
            return true;
        }
        return false;
    }

private:
    std::istream& in_;
    std::string raw_;
    int lineno_ = 0;
};

[[noreturn]] inline void fail(int lineno, const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

inline long long parse_int(const std::string& tok, int lineno) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (...) {
        fail(lineno, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) fail(lineno, "trailing characters in integer '" + tok + "'");
    return v;
}

}  // namespace iodetail

inline MapFile parse_map(std::istream& in) {
    iodetail::LineReader rd(in);
    std::string line;
    int ln = 0;
    if (!rd.next(line, ln) || line != "surface-map v1")
        iodetail::fail(ln, "expected header 'surface-map v1'");
    std::map<int, std::vector<Dart>> rot;
    std::vector<int> boundary;
    std::map<int, std::string> colors;
    std::map<std::string, std::vector<Dart>> canon;
    while (rd.next(line, ln)) {
        std::istringstream ss(line);
        std::string kw;
        ss >> kw;
        if (kw == "vertex") {
            std::string idtok;
            ss >> idtok;
            if (!idtok.empty() && idtok.back() == ':') idtok.pop_back();
            int v = static_cast<int>(iodetail::parse_int(idtok, ln));
            if (rot.count(v)) iodetail::fail(ln, "duplicate vertex " + std::to_string(v));
            std::string rest;
            std::getline(ss, rest);
            if (!rest.empty() && rest[0] == ':') rest = rest.substr(1);
            std::istringstream ds(rest);
            std::string tok;
            std::vector<Dart> darts;
            while (ds >> tok) darts.push_back(static_cast<Dart>(iodetail::parse_int(tok, ln)));
            if (darts.empty()) iodetail::fail(ln, "vertex with no darts");
            rot[v] = darts;
        } else if (kw == "twin") {
            std::string mode;
            ss >> mode;
            if (mode != "implicit")
                iodetail::fail(ln, "only 'twin implicit' (twin(d)=d^1) is supported");
        } else if (kw == "boundary") {
            std::string tok;
            ss >> tok;
            boundary.push_back(static_cast<int>(iodetail::parse_int(tok, ln)));
        } else if (kw == "color") {
            std::string ftok, c;
            ss >> ftok;
            if (!ftok.empty() && ftok.back() == ':') ftok.pop_back();
            ss >> c;
            if (c != "red" && c != "blue") iodetail::fail(ln, "color must be red or blue");
            colors[static_cast<int>(iodetail::parse_int(ftok, ln))] = c;
        } else if (kw == "canonical") {
            std::string name;
            ss >> name;
            if (!name.empty() && name.back() == ':') name.pop_back();
            std::string tok;
            std::vector<Dart> darts;
            while (ss >> tok) darts.push_back(static_cast<Dart>(iodetail::parse_int(tok, ln)));
            if (name.empty() || darts.empty()) iodetail::fail(ln, "malformed canonical mark");
            canon[name] = darts;
        } else {
            iodetail::fail(ln, "unknown keyword '" + kw + "'");
        }
    }
    if (rot.empty()) throw ParseError("map file has no vertices");
    int maxv = rot.rbegin()->first;
    std::vector<std::vector<Dart>> rotations(maxv + 1);
    for (auto& [v, darts] : rot) {
        if (v < 0) throw ParseError("negative vertex id");
        rotations[v] = std::move(darts);
    }
    for (int v = 0; v <= maxv; ++v)
        if (rotations[v].empty())
            throw ParseError("vertex " + std::to_string(v) + " missing from map file");
    MapFile out;
    out.map = CombinatorialMap::from_rotations(rotations);
    for (int f : boundary) {
        if (f < 0 || f >= out.map.face_count())
            throw ParseError("boundary face out of range: " + std::to_string(f));
        out.map.mark_boundary(f);
    }
    out.colors = std::move(colors);
    out.canonical_loops = std::move(canon);
    for (auto& [name, darts] : out.canonical_loops)
        for (Dart d : darts)
            if (d < 0 || d >= out.map.dart_count())
                throw ParseError("canonical mark dart out of range in " + name);
    return out;
}

inline MapFile parse_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map file: " + path);
    return parse_map(in);
}

inline void serialize_map(std::ostream& out, const CombinatorialMap& m,
                          const std::map<int, std::string>* colors = nullptr,
                          const std::map<std::string, std::vector<Dart>>* canonical = nullptr) {
    out << "surface-map v1\n";
    auto rot = m.rotations();
    for (size_t v = 0; v < rot.size(); ++v) {
        out << "vertex " << v << ":";
        for (Dart d : rot[v]) out << ' ' << d;
        out << '\n';
    }
    out << "twin implicit\n";
    for (int f = 0; f < m.face_count(); ++f)
        if (m.is_boundary_face(f)) out << "boundary " << f << '\n';
    if (colors)
        for (auto& [f, c] : *colors) out << "color " << f << ": " << c << '\n';
    if (canonical)
        for (auto& [name, darts] : *canonical) {
            out << "canonical " << name << ":";
            for (Dart d : darts) out << ' ' << d;
            out << '\n';
        }
}

inline Drawing parse_drawing(std::istream& in, const CombinatorialMap& host) {
    iodetail::LineReader rd(in);
    std::string line;
    int ln = 0;
    if (!rd.next(line, ln) || line != "drawing v1")
        iodetail::fail(ln, "expected header 'drawing v1'");
    std::map<int, int> vimg;
    struct E {
        int u, v;
        std::vector<Dart> walk;
        int at = -1;  // for empty walks
    };
    std::vector<E> edges;
    while (rd.next(line, ln)) {
        std::istringstream ss(line);
        std::string kw;
        ss >> kw;
        if (kw == "gvertex") {
            std::string utok, arrow, htok;
            ss >> utok >> arrow >> htok;
            if (arrow != "->") iodetail::fail(ln, "expected 'gvertex u -> h'");
            int u = static_cast<int>(iodetail::parse_int(utok, ln));
            vimg[u] = static_cast<int>(iodetail::parse_int(htok, ln));
        } else if (kw == "gedge") {
            std::string utok, vtok;
            ss >> utok >> vtok;
            if (!vtok.empty() && vtok.back() == ':') vtok.pop_back();
            E e;
            e.u = static_cast<int>(iodetail::parse_int(utok, ln));
            e.v = static_cast<int>(iodetail::parse_int(vtok, ln));
            std::string tok;
            while (ss >> tok) {
                if (tok[0] == '@') {
                    e.at = static_cast<int>(iodetail::parse_int(tok.substr(1), ln));
                } else {
                    e.walk.push_back(static_cast<Dart>(iodetail::parse_int(tok, ln)));
                }
            }
            edges.push_back(std::move(e));
        } else {
            iodetail::fail(ln, "unknown keyword '" + kw + "'");
        }
    }
    Drawing d;
    d.host = &host;
    int nv = 0;
    for (auto& [u, h] : vimg) nv = std::max(nv, u + 1);
    for (auto& e : edges) nv = std::max({nv, e.u + 1, e.v + 1});
    d.graph.vertex_count = nv;
    d.vertex_image.assign(nv, -1);
    for (auto& [u, h] : vimg) {
        if (u < 0) throw ParseError("negative gvertex id");
        d.vertex_image[u] = h;
    }
    for (auto& e : edges) {
        d.graph.edges.push_back({e.u, e.v});
        d.edge_walks.push_back(e.walk);
    }
    // infer missing vertex images from incident walks where possible
    for (int e = 0; e < d.graph.edge_count(); ++e) {
        auto [u, v] = d.graph.edges[e];
        const auto& w = d.edge_walks[e];
        if (!w.empty()) {
            if (d.vertex_image[u] < 0) d.vertex_image[u] = host.source(w.front());
            if (d.vertex_image[v] < 0) d.vertex_image[v] = host.head(w.back());
        } else if (edges[e].at >= 0) {
            if (d.vertex_image[u] < 0) d.vertex_image[u] = edges[e].at;
            if (d.vertex_image[v] < 0) d.vertex_image[v] = edges[e].at;
        }
    }
    for (int v = 0; v < nv; ++v)
        if (d.vertex_image[v] < 0)
            throw ParseError("gvertex " + std::to_string(v) + " has no host image");
    d.validate();
    return d;
}

inline Drawing parse_drawing_file(const std::string& path, const CombinatorialMap& host) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open drawing file: " + path);
    return parse_drawing(in, host);
}

inline void serialize_drawing(std::ostream& out, const Drawing& d) {
    out << "drawing v1\n";
    for (int v = 0; v < d.graph.vertex_count; ++v)
        out << "gvertex " << v << " -> " << d.vertex_image[v] << '\n';
    for (int e = 0; e < d.graph.edge_count(); ++e) {
        auto [u, v] = d.graph.edges[e];
        out << "gedge " << u << ' ' << v << ':';
        if (d.edge_walks[e].empty()) {
            out << " @" << d.vertex_image[u];
        } else {
            for (Dart x : d.edge_walks[e]) out << ' ' << x;
        }
        out << '\n';
    }
}

}  // namespace untangle
