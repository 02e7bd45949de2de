#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "untangle/util.hpp"

namespace untangle {

using Dart = int;  // dense ids 0..2E-1, twin(d) = d ^ 1

inline Dart twin(Dart d) { return d ^ 1; }

/// Combinatorial map of a graph cellularly embedded on an orientable
/// surface.  `sigma` is the next dart counterclockwise around the
/// source vertex.  Faces are the orbits of d -> sigma^{-1}(twin(d)),
/// i.e. each face lies to the left of every dart on its boundary
/// cycle.  Faces may be marked as boundary components (holes).
class CombinatorialMap {
public:
    CombinatorialMap() = default;

    /// `rotations`: one counterclockwise dart list per vertex.  Twins
    /// are implicit: twin(d) = d ^ 1.  The lists must partition
    /// 0..2E-1.
    static CombinatorialMap from_rotations(const std::vector<std::vector<Dart>>& rotations,
                                           bool require_connected = true) {
        CombinatorialMap m;
        int dart_count = 0;
        for (const auto& r : rotations) dart_count += static_cast<int>(r.size());
        if (dart_count % 2 != 0)
            throw NonInvolutiveTwin("odd number of darts; twin pairing impossible");
        m.sigma_.assign(dart_count, -1);
        m.vertex_of_.assign(dart_count, -1);
        std::vector<char> seen(dart_count, 0);
        for (int v = 0; v < static_cast<int>(rotations.size()); ++v) {
            const auto& r = rotations[v];
            if (r.empty()) throw ParseError("vertex " + std::to_string(v) + " has no darts");
            for (size_t i = 0; i < r.size(); ++i) {
                Dart d = r[i];
                if (d < 0 || d >= dart_count)
                    throw ParseError("dart id out of range: " + std::to_string(d));
                if (seen[d]) throw ParseError("dart repeated in rotations: " + std::to_string(d));
                seen[d] = 1;
                m.sigma_[d] = r[(i + 1) % r.size()];
                m.vertex_of_[d] = v;
            }
        }
        for (int d = 0; d < dart_count; ++d)
            if (!seen[d]) throw ParseError("dart missing from rotations: " + std::to_string(d));
        m.finish(require_connected);
        return m;
    }

    /// Build from faces given as cyclic lists of signed edge labels
    /// (+e = edge e traversed forward, encoded e >= 0 as label,
    /// reverse as ~e).  Every edge label must appear exactly twice,
    /// once per sign.  Faces are traversed with the face to the left.
    /// Returns the map; out_dart, when non-null, receives the dart of
    /// each (face, position).
    static CombinatorialMap from_faces(const std::vector<std::vector<int>>& faces,
                                       std::vector<std::vector<Dart>>* out_dart = nullptr,
                                       bool require_connected = true) {
        // Dart 2e = forward occurrence of edge e, 2e+1 = reverse.
        int max_label = -1;
        for (const auto& f : faces)
            for (int s : f) max_label = std::max(max_label, s >= 0 ? s : ~s);
        int edge_count = max_label + 1;
        int dart_count = 2 * edge_count;
        std::vector<int> occurrences(dart_count, 0);
        std::vector<Dart> fnext(dart_count, -1);  // L(d): next dart along the face (face left)
        if (out_dart) out_dart->assign(faces.size(), {});
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            const auto& f = faces[fi];
            if (f.empty()) throw ParseError("empty face");
            std::vector<Dart> ds(f.size());
            for (size_t i = 0; i < f.size(); ++i) {
                int s = f[i];
                Dart d = s >= 0 ? 2 * s : 2 * (~s) + 1;
                occurrences[d]++;
                ds[i] = d;
            }
            for (size_t i = 0; i < f.size(); ++i) fnext[ds[i]] = ds[(i + 1) % f.size()];
            if (out_dart) (*out_dart)[fi] = ds;
        }
        for (int d = 0; d < dart_count; ++d)
            if (occurrences[d] != 1)
                throw ParseError("edge side " + std::to_string(d) +
                                 " used " + std::to_string(occurrences[d]) +
                                 " times (need exactly one occurrence per orientation)");
        // L(d) = sigma^{-1}(twin(d))  =>  sigma(x) = twin(L^{-1}(x)).
        std::vector<Dart> fprev(dart_count, -1);
        for (int d = 0; d < dart_count; ++d) fprev[fnext[d]] = d;
        CombinatorialMap m;
        m.sigma_.assign(dart_count, -1);
        for (int d = 0; d < dart_count; ++d) m.sigma_[d] = twin(fprev[d]);
        m.derive_vertices();
        m.finish(require_connected);
        return m;
    }

    // ── Raw structure ────────────────────────────────────────────

    int dart_count() const { return static_cast<int>(sigma_.size()); }
    int edge_count() const { return dart_count() / 2; }
    int vertex_count() const { return static_cast<int>(vertex_rep_.size()); }
    int face_count() const { return static_cast<int>(face_rep_.size()); }

    Dart next_ccw(Dart d) const { return sigma_[d]; }
    Dart prev_ccw(Dart d) const { return sigma_inv_[d]; }
    int source(Dart d) const { return vertex_of_[d]; }
    int head(Dart d) const { return vertex_of_[twin(d)]; }

    /// Next dart along the face to the left of d.
    Dart face_next(Dart d) const { return sigma_inv_[twin(d)]; }
    Dart face_prev(Dart d) const { return twin(sigma_[d]); }

    /// Face to the left of d.
    int left_face(Dart d) const { return face_of_[d]; }
    int right_face(Dart d) const { return face_of_[twin(d)]; }

    int degree(int v) const { return static_cast<int>(star_[v].size()); }
    /// Outgoing darts of v in clockwise order; star(v)[idx(d)] = d.
    const std::vector<Dart>& star(int v) const { return star_[v]; }
    /// Position of d in the clockwise numbering around source(d).
    int idx(Dart d) const { return idx_[d]; }

    int face_size(int f) const { return static_cast<int>(face_cycle_[f].size()); }
    /// Boundary cycle of face f, with the face to the left of each dart.
    const std::vector<Dart>& face_cycle(int f) const { return face_cycle_[f]; }

    Dart vertex_rep(int v) const { return vertex_rep_[v]; }

    bool is_boundary_face(int f) const { return boundary_face_[f]; }
    void mark_boundary(int f, bool flag = true) { boundary_face_[f] = flag; }
    int boundary_count() const {
        int b = 0;
        for (char c : boundary_face_) b += c;
        return b;
    }

    // ── Derived topology ─────────────────────────────────────────

    int euler_characteristic() const {
        return vertex_count() - edge_count() + face_count();
    }

    /// (genus, boundary count).  A face marked as boundary is a hole:
    /// capping it restores the closed surface, so V - E + F = 2 - 2g
    /// with every face counted, and the surface itself has Euler
    /// characteristic 2 - 2g - b.
    std::pair<int, int> genus_and_boundary() const {
        int b = boundary_count();
        int chi = euler_characteristic();
        int twog = 2 - chi;
        if (twog < 0 || twog % 2 != 0)
            throw EulerMismatch("Euler characteristic " + std::to_string(chi) +
                                " is not that of a closed orientable surface");
        return {twog / 2, b};
    }

    bool all_faces_triangles() const {
        for (int f = 0; f < face_count(); ++f)
            if (face_size(f) != 3) return false;
        return true;
    }

    // ── Turn arithmetic (valid on any map; the reduced-walk theory
    //    additionally requires a reducing triangulation) ───────────

    /// Number of face corners to the left of the length-2 walk
    /// (e_in, e_out), in [0, deg).
    int left_corners(Dart e_in, Dart e_out) const {
        int v = head(e_in);
        if (source(e_out) != v)
            throw NotIncident("turn endpoints not incident");
        int deg = degree(v);
        int k = idx_[e_out] - idx_[twin(e_in)];
        k %= deg;
        if (k < 0) k += deg;
        return k;
    }

    /// Normalized turn value: in [-3,3] when possible, else the
    /// positive representative.
    int turn_value(Dart e_in, Dart e_out) const {
        int v = head(e_in);
        int deg = degree(v);
        int k = left_corners(e_in, e_out);
        if (k <= 3) return k;
        if (deg - k <= 3) return k - deg;
        return k;
    }

    /// Inverse of turn in its second argument: the outgoing dart
    /// realizing `turns` corners to the left (negative = to the right).
    Dart dart_by_turn(Dart e_in, int turns) const {
        int v = head(e_in);
        int deg = degree(v);
        int pos = idx_[twin(e_in)] + turns;
        pos %= deg;
        if (pos < 0) pos += deg;
        return star_[v][pos];
    }

    /// Inverse of turn in its first argument: the incoming dart e_in
    /// with `turns` corners left of (e_in, e_out).
    Dart dart_by_turn_rev(Dart e_out, int turns) const {
        return twin(sigma_pow(e_out, turns));
    }

    /// sigma applied k times (k may be negative); sigma lowers the
    /// clockwise index by one.
    Dart sigma_pow(Dart d, int k) const {
        int v = source(d);
        int deg = degree(v);
        int pos = idx_[d] - k;
        pos %= deg;
        if (pos < 0) pos += deg;
        return star_[v][pos];
    }

    // ── Serialization hooks (see io.hpp) ─────────────────────────

    std::vector<std::vector<Dart>> rotations() const {
        std::vector<std::vector<Dart>> out(vertex_count());
        for (int v = 0; v < vertex_count(); ++v) {
            Dart d0 = vertex_rep_[v];
            Dart d = d0;
            do {
                out[v].push_back(d);
                d = sigma_[d];
            } while (d != d0);
        }
        return out;
    }

    bool connected() const { return connected_; }

private:
    void derive_vertices() {
        int n = dart_count();
        vertex_of_.assign(n, -1);
        int v = 0;
        for (int d = 0; d < n; ++d) {
            if (vertex_of_[d] >= 0) continue;
            Dart x = d;
            do {
                vertex_of_[x] = v;
                x = sigma_[x];
            } while (x != d);
            ++v;
        }
    }

    void finish(bool require_connected) {
        int n = dart_count();
        if (n == 0) throw ParseError("empty map");
        // sigma must be a permutation
        {
            std::vector<char> hit(n, 0);
            for (int d = 0; d < n; ++d) {
                Dart s = sigma_[d];
                if (s < 0 || s >= n || hit[s])
                    throw ParseError("sigma is not a permutation");
                hit[s] = 1;
            }
        }
        sigma_inv_.assign(n, -1);
        for (int d = 0; d < n; ++d) sigma_inv_[sigma_[d]] = d;

        // vertices: orbit reps, clockwise star arrays, idx
        int nv = 0;
        for (int d = 0; d < n; ++d) nv = std::max(nv, vertex_of_[d] + 1);
        vertex_rep_.assign(nv, -1);
        star_.assign(nv, {});
        idx_.assign(n, -1);
        for (int d = 0; d < n; ++d)
            if (vertex_rep_[vertex_of_[d]] < 0) vertex_rep_[vertex_of_[d]] = d;
        for (int v = 0; v < nv; ++v) {
            Dart d0 = vertex_rep_[v];
            Dart d = d0;
            do {
                idx_[d] = static_cast<int>(star_[v].size());
                star_[v].push_back(d);
                d = sigma_inv_[d];  // clockwise
            } while (d != d0);
        }
        for (int d = 0; d < n; ++d)
            if (vertex_of_[d] != vertex_of_[sigma_[d]])
                throw ParseError("sigma orbit spans two vertices");

        // faces: orbits of face_next, face on the left
        face_of_.assign(n, -1);
        face_rep_.clear();
        face_cycle_.clear();
        for (int d = 0; d < n; ++d) {
            if (face_of_[d] >= 0) continue;
            int f = static_cast<int>(face_rep_.size());
            face_rep_.push_back(d);
            face_cycle_.emplace_back();
            Dart x = d;
            do {
                face_of_[x] = f;
                face_cycle_[f].push_back(x);
                x = face_next(x);
            } while (x != d);
        }
        boundary_face_.assign(face_count(), 0);

        // connectivity under <sigma, twin>
        connected_ = true;
        {
            std::vector<char> vis(n, 0);
            std::vector<Dart> stack{0};
            vis[0] = 1;
            int cnt = 0;
            while (!stack.empty()) {
                Dart d = stack.back();
                stack.pop_back();
                ++cnt;
                for (Dart e : {sigma_[d], twin(d)}) {
                    if (!vis[e]) {
                        vis[e] = 1;
                        stack.push_back(e);
                    }
                }
            }
            connected_ = (cnt == n);
        }
        if (require_connected && !connected_)
            throw DisconnectedMap("host map must be connected");
        genus_and_boundary();  // throws EulerMismatch on inconsistency
    }

    std::vector<Dart> sigma_;
    std::vector<Dart> sigma_inv_;
    std::vector<int> vertex_of_;
    std::vector<Dart> vertex_rep_;
    std::vector<std::vector<Dart>> star_;
    std::vector<int> idx_;
    std::vector<int> face_of_;
    std::vector<Dart> face_rep_;
    std::vector<std::vector<Dart>> face_cycle_;
    std::vector<char> boundary_face_;
    bool connected_ = false;
};

}  // namespace untangle
