#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "untangle/combinatorial_map.hpp"
#include "untangle/util.hpp"

namespace untangle {

/// Abstract multigraph; loops and parallel edges allowed.  May be
/// disconnected.
struct AbstractGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }

    std::vector<std::vector<int>> incidence() const {
        std::vector<std::vector<int>> inc(vertex_count);
        for (int e = 0; e < edge_count(); ++e) {
            inc[edges[e].first].push_back(e);
            if (edges[e].second != edges[e].first) inc[edges[e].second].push_back(e);
        }
        return inc;
    }

    std::vector<int> component_of() const {
        std::vector<int> comp(vertex_count, -1);
        auto inc = incidence();
        int c = 0;
        for (int s = 0; s < vertex_count; ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = c;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int e : inc[u]) {
                    int w = edges[e].first == u ? edges[e].second : edges[e].first;
                    if (comp[w] < 0) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
                }
            }
            ++c;
        }
        return comp;
    }
};

/// A drawing of an abstract graph G in a host map H: vertices to host
/// vertices, edges to walks of host darts (possibly empty).
struct Drawing {
    const CombinatorialMap* host = nullptr;
    AbstractGraph graph;
    std::vector<int> vertex_image;               // G-vertex -> host vertex
    std::vector<std::vector<Dart>> edge_walks;   // G-edge -> darts, head-to-tail

    int size() const {
        int s = graph.edge_count();
        for (const auto& w : edge_walks) s += static_cast<int>(w.size());
        return s;
    }

    void validate() const {
        if (!host) throw MalformedDrawing("drawing has no host");
        if (static_cast<int>(vertex_image.size()) != graph.vertex_count)
            throw MalformedDrawing("vertex image count mismatch");
        if (static_cast<int>(edge_walks.size()) != graph.edge_count())
            throw MalformedDrawing("edge walk count mismatch");
        for (int v = 0; v < graph.vertex_count; ++v)
            if (vertex_image[v] < 0 || vertex_image[v] >= host->vertex_count())
                throw MalformedDrawing("vertex image out of range");
        for (int e = 0; e < graph.edge_count(); ++e) {
            auto [u, v] = graph.edges[e];
            const auto& w = edge_walks[e];
            int at = vertex_image[u];
            for (Dart d : w) {
                if (d < 0 || d >= host->dart_count())
                    throw MalformedDrawing("walk dart out of range");
                if (host->source(d) != at)
                    throw MalformedDrawing("walk darts not head-to-tail");
                at = host->head(d);
            }
            if (at != vertex_image[v])
                throw MalformedDrawing("walk does not end at the image of its endpoint");
        }
    }
};

// ── Map surgeries ────────────────────────────────────────────────────
//
// Surgeries return a fresh map plus a dart relabeling; -1 marks deleted
// darts.  Dart pairing (twin = id^1) is preserved.

struct MapRewrite {
    CombinatorialMap map;
    std::vector<Dart> dart_map;  // old dart -> new dart, or -1
};

namespace detail {

/// Rebuild a CombinatorialMap from a mutable sigma array where some
/// darts are dead, compacting ids in twin pairs.
inline MapRewrite compact(const std::vector<Dart>& sigma, const std::vector<char>& alive,
                          bool require_connected) {
    int n = static_cast<int>(sigma.size());
    std::vector<Dart> dart_map(n, -1);
    int next = 0;
    for (int d = 0; d < n; d += 2) {
        if (!alive[d] != !alive[d + 1])
            throw InternalError("dart pair half-deleted");
        if (alive[d]) {
            dart_map[d] = next;
            dart_map[d + 1] = next + 1;
            next += 2;
        }
    }
    if (next == 0) throw InternalError("surgery deleted the whole map");
    // group new darts into sigma cycles = vertices
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Dart>> rotations;
    for (int d = 0; d < n; ++d) {
        if (!alive[d] || seen[d]) continue;
        rotations.emplace_back();
        Dart x = d;
        do {
            seen[x] = 1;
            rotations.back().push_back(dart_map[x]);
            x = sigma[x];
        } while (x != d);
    }
    MapRewrite out;
    out.dart_map = std::move(dart_map);
    // rotations currently reference new ids but are grouped by orbit;
    // from_rotations wants lists indexed by vertex in input order.
    out.map = CombinatorialMap::from_rotations(rotations, require_connected);
    return out;
}

}  // namespace detail

/// Contract a set of edges that must form a forest (checked).  Each
/// edge id e owns darts 2e, 2e+1.
inline MapRewrite contract_edges(const CombinatorialMap& m, const std::vector<int>& edge_ids,
                                 bool require_connected = true) {
    // forest check via union-find on vertices
    std::vector<int> uf(m.vertex_count());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    int n = m.dart_count();
    std::vector<Dart> sigma(n), sigma_inv(n);
    for (int d = 0; d < n; ++d) sigma[d] = m.next_ccw(d);
    for (int d = 0; d < n; ++d) sigma_inv[sigma[d]] = d;
    std::vector<char> alive(n, 1);

    auto remove_dart = [&](Dart d) {
        // unlink d from its rotation cycle
        Dart p = sigma_inv[d], s = sigma[d];
        if (p == d) {
            // lone dart at its vertex; cycle disappears
        } else {
            sigma[p] = s;
            sigma_inv[s] = p;
        }
        alive[d] = 0;
    };

    for (int e : edge_ids) {
        Dart d = 2 * e, t = 2 * e + 1;
        if (!alive[d]) throw NotASpanningForest("edge contracted twice");
        int u = find(m.source(d)), v = find(m.head(d));
        if (u == v) throw NotASpanningForest("contraction set contains a cycle");
        uf[u] = v;
        // merge rotations: after sigma^{-1}(d) comes sigma(t); after
        // sigma^{-1}(t) comes sigma(d); then drop d and t.
        Dart pd = sigma_inv[d], sd = sigma[d];
        Dart pt = sigma_inv[t], st = sigma[t];
        bool lone_d = (sd == d), lone_t = (st == t);
        if (lone_d && lone_t)
            throw NotASpanningForest("contracting the only edge of a two-vertex map");
        if (lone_d) {
            // u had only dart d: v's rotation just loses t
            remove_dart(t);
            alive[d] = 0;
        } else if (lone_t) {
            remove_dart(d);
            alive[t] = 0;
        } else {
            sigma[pd] = st;
            sigma_inv[st] = pd;
            sigma[pt] = sd;
            sigma_inv[sd] = pt;
            alive[d] = alive[t] = 0;
        }
    }
    return detail::compact(sigma, alive, require_connected);
}

/// Delete a set of edges.  Caller is responsible for rerouting any
/// walks that used them.
inline MapRewrite delete_edges(const CombinatorialMap& m, const std::vector<int>& edge_ids,
                               bool require_connected = true) {
    int n = m.dart_count();
    std::vector<Dart> sigma(n), sigma_inv(n);
    for (int d = 0; d < n; ++d) sigma[d] = m.next_ccw(d);
    for (int d = 0; d < n; ++d) sigma_inv[sigma[d]] = d;
    std::vector<char> alive(n, 1);
    for (int e : edge_ids) {
        for (Dart d : {2 * e, 2 * e + 1}) {
            if (!alive[d]) throw InternalError("edge deleted twice");
            Dart p = sigma_inv[d], s = sigma[d];
            if (p == d) {
                // vertex would become isolated
                throw InternalError("deleting the last edge at a vertex");
            }
            sigma[p] = s;
            sigma_inv[s] = p;
            alive[d] = 0;
        }
    }
    return detail::compact(sigma, alive, require_connected);
}

// ── Monogon / bigon simplification ───────────────────────────────────

struct SimplifyResult {
    CombinatorialMap map;
    /// old dart -> replacement walk in the NEW map (empty for deleted
    /// contractible loops).
    std::vector<std::vector<Dart>> substitution;
};

/// Iteratively remove monogon edges and merge bigon edge pairs.
/// Intended for one-vertex maps after spanning-tree contraction, but
/// valid on any map whose monogons/bigons are genuinely removable.
inline SimplifyResult remove_monogons_and_bigons(const CombinatorialMap& input) {
    CombinatorialMap cur = input;
    // substitution from ORIGINAL darts to current darts
    std::vector<std::vector<Dart>> subst(input.dart_count());
    for (int d = 0; d < input.dart_count(); ++d) subst[d] = {d};

    auto apply_rewrite = [&](const std::vector<Dart>& dart_map,
                             const std::vector<std::vector<Dart>>& local_subst) {
        for (auto& w : subst) {
            std::vector<Dart> nw;
            for (Dart d : w) {
                if (dart_map[d] >= 0) {
                    nw.push_back(dart_map[d]);
                } else {
                    for (Dart r : local_subst[d]) nw.push_back(r);
                }
            }
            w = std::move(nw);
        }
    };

    for (;;) {
        int target_edge = -1;
        std::vector<std::vector<Dart>> local(cur.dart_count());
        bool found = false;
        // monogons first
        for (int f = 0; f < cur.face_count() && !found; ++f) {
            if (cur.face_size(f) != 1) continue;
            Dart x = cur.face_cycle(f)[0];
            if (cur.left_face(x) == cur.right_face(x))
                throw InternalError("edge bounded by the same face on both sides");
            target_edge = x / 2;
            local[x] = {};
            local[twin(x)] = {};
            found = true;
        }
        if (!found) {
            for (int f = 0; f < cur.face_count() && !found; ++f) {
                if (cur.face_size(f) != 2) continue;
                Dart x = cur.face_cycle(f)[0];
                Dart y = cur.face_cycle(f)[1];
                // a size-2 face bounded by one edge twice is not a
                // bigon in the paper's sense (requires a degree-1
                // vertex); leave it alone
                if (x / 2 == y / 2) continue;
                // boundary word x.y is contractible: y ~ reverse of x
                target_edge = y / 2;
                local[y] = {twin(x)};
                local[twin(y)] = {x};
                found = true;
            }
        }
        if (!found) break;
        MapRewrite rw = delete_edges(cur, {target_edge});
        // local substitutions are in pre-rewrite ids; translate
        std::vector<std::vector<Dart>> translated(cur.dart_count());
        for (int d = 0; d < cur.dart_count(); ++d) {
            if (rw.dart_map[d] >= 0) {
                translated[d] = {rw.dart_map[d]};
            } else {
                for (Dart r : local[d]) {
                    if (rw.dart_map[r] < 0) throw InternalError("substitution chain broken");
                    translated[d].push_back(rw.dart_map[r]);
                }
            }
        }
        apply_rewrite(std::vector<Dart>(cur.dart_count(), -1), translated);
        cur = rw.map;
    }
    return SimplifyResult{std::move(cur), std::move(subst)};
}

// ── Spanning trees and contraction of drawings ───────────────────────

/// DFS spanning forest of G; returns (parent vertex, parent edge, order)
/// with parent edge -1 at roots.  Deterministic: edges scanned in id
/// order.
struct DfsForest {
    std::vector<int> parent_vertex;  // -1 at roots
    std::vector<int> parent_edge;    // -1 at roots
    std::vector<int> preorder;       // vertices in visit order
    std::vector<char> in_tree;       // per edge
};

inline DfsForest dfs_forest(const AbstractGraph& g) {
    DfsForest f;
    f.parent_vertex.assign(g.vertex_count, -1);
    f.parent_edge.assign(g.vertex_count, -1);
    f.in_tree.assign(g.edge_count(), 0);
    std::vector<char> visited(g.vertex_count, 0);
    auto inc = g.incidence();
    for (int root = 0; root < g.vertex_count; ++root) {
        if (visited[root]) continue;
        std::vector<std::pair<int, size_t>> stack;
        visited[root] = 1;
        f.preorder.push_back(root);
        stack.push_back({root, 0});
        while (!stack.empty()) {
            auto& [u, i] = stack.back();
            if (i >= inc[u].size()) {
                stack.pop_back();
                continue;
            }
            int e = inc[u][i++];
            int w = g.edges[e].first == u ? g.edges[e].second : g.edges[e].first;
            if (!visited[w]) {
                visited[w] = 1;
                f.parent_vertex[w] = u;
                f.parent_edge[w] = e;
                f.in_tree[e] = 1;
                f.preorder.push_back(w);
                stack.push_back({w, 0});
            }
        }
    }
    return f;
}

/// Contract a spanning forest of G inside the drawing: every component
/// collapses to its root vertex (kept), tree edges become empty loops,
/// and every other edge is rerouted through the tree paths so the
/// homotopy class of the drawing is unchanged.  The abstract graph
/// keeps its vertex set; all vertices of a component map to the image
/// of the component root.
inline Drawing contract_spanning_forest(const Drawing& d, const DfsForest& forest) {
    d.validate();
    int nv = d.graph.vertex_count;
    // walk from root to v, per vertex (concatenated darts in host)
    std::vector<std::vector<Dart>> path(nv);
    for (int v : forest.preorder) {
        int pe = forest.parent_edge[v];
        if (pe < 0) {
            path[v] = {};
            continue;
        }
        int pu = forest.parent_vertex[v];
        path[v] = path[pu];
        const auto& w = d.edge_walks[pe];
        if (d.graph.edges[pe].first == pu) {
            for (Dart x : w) path[v].push_back(x);
        } else {
            for (auto it = w.rbegin(); it != w.rend(); ++it) path[v].push_back(twin(*it));
        }
    }
    std::vector<int> root_of(nv, -1);
    for (int v : forest.preorder)
        root_of[v] = forest.parent_vertex[v] < 0 ? v : root_of[forest.parent_vertex[v]];

    Drawing out;
    out.host = d.host;
    out.graph = d.graph;
    out.vertex_image.assign(nv, -1);
    for (int v = 0; v < nv; ++v) out.vertex_image[v] = d.vertex_image[root_of[v]];
    out.edge_walks.assign(d.graph.edge_count(), {});
    for (int e = 0; e < d.graph.edge_count(); ++e) {
        if (forest.in_tree[e]) continue;  // contracted: empty walk at root image
        auto [u, v] = d.graph.edges[e];
        std::vector<Dart> w;
        for (auto it = path[u].rbegin(); it != path[u].rend(); ++it) w.push_back(twin(*it));
        for (Dart x : d.edge_walks[e]) w.push_back(x);
        for (Dart x : path[v]) w.push_back(x);
        out.edge_walks[e] = std::move(w);
    }
    // vertices now all sit at component-root images; edges of the tree
    // are drawn as empty walks there
    for (int v = 0; v < nv; ++v) out.vertex_image[v] = d.vertex_image[root_of[v]];
    out.validate();
    return out;
}

/// Contract a spanning tree/forest of the HOST inside the drawing:
/// returns the rewritten host plus the transported drawing.
inline std::pair<CombinatorialMap, Drawing> contract_host_forest(const Drawing& d,
                                                                 const std::vector<int>& host_edges) {
    d.validate();
    MapRewrite rw = contract_edges(*d.host, host_edges);
    // vertex relabeling: track where each old vertex went via any alive dart
    std::vector<int> vmap(d.host->vertex_count(), -1);
    // contracted vertices merge; find representative by following tree
    // edges.  Build merged component ids via union-find over host edges.
    std::vector<int> uf(d.host->vertex_count());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (int e : host_edges) uf[find(d.host->source(2 * e))] = find(d.host->head(2 * e));
    for (int old_d = 0; old_d < d.host->dart_count(); ++old_d) {
        if (rw.dart_map[old_d] >= 0)
            vmap[find(d.host->source(old_d))] = rw.map.source(rw.dart_map[old_d]);
    }
    std::vector<char> in_set(d.host->edge_count(), 0);
    for (int e : host_edges) in_set[e] = 1;
    Drawing out;
    out.host = nullptr;  // caller wires the stored map
    out.graph = d.graph;
    out.vertex_image.resize(d.graph.vertex_count);
    for (int v = 0; v < d.graph.vertex_count; ++v) {
        int hv = find(d.vertex_image[v]);
        if (vmap[hv] < 0) throw InternalError("contracted vertex lost");
        out.vertex_image[v] = vmap[hv];
    }
    out.edge_walks.assign(d.graph.edge_count(), {});
    for (int e = 0; e < d.graph.edge_count(); ++e) {
        for (Dart x : d.edge_walks[e]) {
            if (in_set[x / 2]) continue;  // contracted darts vanish
            out.edge_walks[e].push_back(rw.dart_map[x]);
        }
    }
    return {std::move(rw.map), std::move(out)};
}

}  // namespace untangle
