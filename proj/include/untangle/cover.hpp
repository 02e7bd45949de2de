#pragma once

#include <map>
#include <vector>

#include "untangle/combinatorial_map.hpp"
#include "untangle/util.hpp"

namespace untangle {

struct LiftedVertex {
    int base_vertex = -1;
    int sheet_id = -1;  // cover vertex id; equal ids <=> equal lifts
    friend bool operator==(const LiftedVertex& a, const LiftedVertex& b) {
        return a.base_vertex == b.base_vertex && a.sheet_id == b.sheet_id;
    }
    friend bool operator!=(const LiftedVertex& a, const LiftedVertex& b) { return !(a == b); }
};

/// Lazily developed universal cover of a cellular map, grown by gluing
/// face copies along lifted walks.  Faces marked as boundary in the
/// base are never developed (surfaces with boundary lift correctly).
///
/// This is the test oracle: independent of the reduced-walk machinery,
/// deliberately simple, not performance-tuned.
///
/// Scope: the lazy gluing identifies lifts through face developments
/// and never merges vertices after the fact.  That is sound when no
/// proper contiguous arc of a face boundary is null-homotopic (true
/// for triangulations with the Gauss-Bonnet property, polygonal
/// schemas of genus >= 1, spheres made of monogons/bigons) and for
/// maps whose faces are all boundary (free-group covers).  All oracle
/// call sites in this project stay inside that scope.
class UniversalCover {
public:
    explicit UniversalCover(const CombinatorialMap& base, std::size_t face_budget = 500000)
        : base_(&base), face_budget_(face_budget) {}

    const CombinatorialMap& base() const { return *base_; }

    /// Canonical lift of a base vertex (memoized; sheet determinism).
    int root(int base_vertex) {
        auto it = roots_.find(base_vertex);
        if (it != roots_.end()) return it->second;
        int cv = new_vertex(base_vertex);
        roots_[base_vertex] = cv;
        return cv;
    }

    int base_vertex_of(int cv) const { return verts_[cv].base; }

    LiftedVertex lifted(int cv) const { return LiftedVertex{verts_[cv].base, cv}; }

    /// Lift a walk starting at cover vertex `cv`; returns the endpoint.
    int lift_walk(int cv, const std::vector<Dart>& walk) {
        for (Dart d : walk) cv = step(cv, d);
        return cv;
    }

    /// Cover dart over base dart d at cover vertex cv (develops as
    /// needed); returns its head cover vertex via step().
    int step(int cv, Dart d) {
        if (base_->source(d) != verts_[cv].base)
            throw NotIncident("walk dart does not start at the lift's base vertex");
        int cd = ensure_dart(cv, d);
        return dart_head_[cd];
    }

    int ensure_dart(int cv, Dart d);

    /// Fixed-endpoint homotopy: both walks must share endpoints in the
    /// base; compares lift endpoints from the canonical root.
    bool homotopic(const std::vector<Dart>& w1, const std::vector<Dart>& w2, int base_start) {
        int s = root(base_start);
        return lift_walk(s, w1) == lift_walk(s, w2);
    }

    bool contractible_loop(const std::vector<Dart>& closed_walk) {
        if (closed_walk.empty()) return true;
        int s = root(base_->source(closed_walk.front()));
        return lift_walk(s, closed_walk) == s;
    }

    // ── Introspection for tests ───────────────────────────────────

    int cover_face_count() const { return static_cast<int>(faces_.size()); }
    int cover_dart_count() const { return static_cast<int>(dart_base_.size()); }
    int cover_vertex_count() const { return static_cast<int>(verts_.size()); }
    Dart dart_base(int cd) const { return dart_base_[cd]; }
    int dart_src(int cd) const { return dart_src_[cd]; }
    int dart_head(int cd) const { return dart_head_[cd]; }
    static int ctwin(int cd) { return cd ^ 1; }
    /// -1 undeveloped, -2 blocked by boundary, else cover face id.
    int left_face(int cd) const { return dart_lface_[cd]; }
    const std::vector<int>& face_darts(int cf) const { return faces_[cf]; }
    int base_face(int cf) const { return base_->left_face(dart_base_[faces_[cf][0]]); }

    /// Develops and returns the face left of cover dart cd.
    int develop_left(int cd);

    int seed_face(int cv, Dart anchor);

private:
    struct CVert {
        int base;
        std::map<Dart, int> out;  // base dart -> cover dart
    };

    int new_vertex(int base_v) {
        verts_.push_back(CVert{base_v, {}});
        return static_cast<int>(verts_.size()) - 1;
    }

    /// Allocate the cover dart pair over (d, twin(d)) with given
    /// endpoint cover vertices, registering both sides.
    int new_pair(int cv_src, Dart d, int cv_head) {
        int cd = static_cast<int>(dart_base_.size());
        dart_base_.push_back(d);
        dart_src_.push_back(cv_src);
        dart_head_.push_back(cv_head);
        dart_lface_.push_back(initial_face_mark(d));
        dart_base_.push_back(twin(d));
        dart_src_.push_back(cv_head);
        dart_head_.push_back(cv_src);
        dart_lface_.push_back(initial_face_mark(twin(d)));
        verts_[cv_src].out.emplace(d, cd);
        verts_[cv_head].out.emplace(twin(d), cd + 1);
        return cd;
    }

    int initial_face_mark(Dart d) const {
        return base_->is_boundary_face(base_->left_face(d)) ? -2 : -1;
    }

    int find_dart(int cv, Dart d) const {
        auto it = verts_[cv].out.find(d);
        return it == verts_[cv].out.end() ? -1 : it->second;
    }

    const CombinatorialMap* base_;
    std::size_t face_budget_;
    std::vector<CVert> verts_;
    std::vector<Dart> dart_base_;
    std::vector<int> dart_src_, dart_head_, dart_lface_;
    std::vector<std::vector<int>> faces_;  // cover face -> cover dart cycle
    std::map<int, int> roots_;
};

inline int UniversalCover::develop_left(int cd0) {
    if (dart_lface_[cd0] == -2)
        throw InternalError("attempt to develop across a boundary face");
    if (dart_lface_[cd0] >= 0) return dart_lface_[cd0];
    if (faces_.size() >= face_budget_)
        throw ExplorationBudgetExceeded("universal cover face budget exhausted");

    const CombinatorialMap& B = *base_;
    // base boundary cycle starting at base(cd0)
    std::vector<Dart> cycle{dart_base_[cd0]};
    for (Dart x = B.face_next(cycle[0]); x != cycle[0]; x = B.face_next(x)) cycle.push_back(x);
    int m = static_cast<int>(cycle.size());

    std::vector<int> cds(m, -1);
    cds[0] = cd0;
    // forward scan
    int i_f = 1;
    {
        int at = dart_head_[cd0];
        while (i_f < m) {
            int found = find_dart(at, cycle[i_f]);
            if (found < 0) break;
            cds[i_f] = found;
            at = dart_head_[found];
            ++i_f;
        }
        if (i_f == m && at != dart_src_[cd0])
            throw InternalError("cover face fails to close");
    }
    // backward scan
    int j_b = m - 1;
    {
        int at = dart_src_[cd0];  // head of position m-1
        while (j_b >= i_f) {
            int found = find_dart(at, twin(cycle[j_b]));
            if (found < 0) break;
            cds[j_b] = ctwin(found);
            at = dart_src_[cds[j_b]];
            --j_b;
        }
    }
    // fresh middle: positions i_f..j_b
    for (int i = i_f; i <= j_b; ++i) {
        int src = dart_head_[cds[i - 1]];
        int head;
        if (i == j_b) {
            head = (i + 1 < m) ? dart_src_[cds[i + 1]] : dart_src_[cd0];
        } else {
            head = new_vertex(B.head(cycle[i]));
        }
        cds[i] = new_pair(src, cycle[i], head);
    }
    // consistency + face assignment
    for (int i = 0; i < m; ++i) {
        int nxt = cds[(i + 1) % m];
        if (dart_head_[cds[i]] != dart_src_[nxt])
            throw InternalError("cover face corners inconsistent");
        if (dart_base_[cds[i]] != cycle[i]) throw InternalError("cover face base mismatch");
    }
    int f = static_cast<int>(faces_.size());
    faces_.push_back(cds);
    for (int cdi : cds) {
        if (dart_lface_[cdi] >= 0) throw InternalError("cover dart already in a face");
        dart_lface_[cdi] = f;
    }
    return f;
}

inline int UniversalCover::seed_face(int cv, Dart anchor) {
    // Develop a face copy from nothing: the corner at the source of
    // `anchor` is cv, all other corners are fresh.  Only used to seed
    // an as-yet dartless cover vertex; the closure back to cv is
    // forced by the face being a disk.
    const CombinatorialMap& B = *base_;
    if (faces_.size() >= face_budget_)
        throw ExplorationBudgetExceeded("universal cover face budget exhausted");
    std::vector<Dart> cycle{anchor};
    for (Dart x = B.face_next(anchor); x != anchor; x = B.face_next(x)) cycle.push_back(x);
    int m = static_cast<int>(cycle.size());
    std::vector<int> cds(m, -1);
    int at = cv;
    for (int i = 0; i < m; ++i) {
        int head = (i + 1 == m) ? cv : new_vertex(B.head(cycle[i]));
        cds[i] = new_pair(at, cycle[i], head);
        at = head;
    }
    int f = static_cast<int>(faces_.size());
    faces_.push_back(cds);
    for (int cdi : cds) {
        if (dart_lface_[cdi] != -1) throw InternalError("seed face dart already claimed");
        dart_lface_[cdi] = f;
    }
    return cds[0];
}

inline int UniversalCover::ensure_dart(int cv, Dart d) {
    const CombinatorialMap& B = *base_;
    int existing = find_dart(cv, d);
    if (existing >= 0) return existing;
    if (verts_[cv].out.empty()) {
        // dartless root: seed with a face copy touching it
        if (!B.is_boundary_face(B.left_face(d))) return seed_face(cv, d);
        if (!B.is_boundary_face(B.left_face(twin(d)))) {
            // seed the right-face copy: its boundary contains twin(d),
            // whose head corner must be cv; anchor at the dart after it
            Dart after = B.face_next(twin(d));
            int cd_after = seed_face(cv, after);
            int cd = find_dart(cv, d);
            if (cd < 0) {
                (void)cd_after;
                throw InternalError("right-face seeding missed its dart");
            }
            return cd;
        }
        // both sides are boundary: the edge is free; a fresh endpoint
        // is correct (no face ever glues across it)
        return new_pair(cv, d, new_vertex(B.head(d)));
    }
    // rotate from the registered dart closest to d
    int v = verts_[cv].base;
    int deg = B.degree(v);
    int target = B.idx(d);
    int best = -1, best_ccw = 0, best_dist = deg + 1;
    for (auto& [bd, cdi] : verts_[cv].out) {
        int i = B.idx(bd);
        int ccw = (i - target) % deg;  // ccw steps from bd to d (sigma lowers idx)
        if (ccw < 0) ccw += deg;
        int cw = (deg - ccw) % deg;
        int dist = std::min(ccw, cw);
        if (dist < best_dist) {
            best_dist = dist;
            best = cdi;
            best_ccw = ccw;
        }
    }
    // Prefer a direction that does not cross boundary wedges; a blind
    // allocation is only correct when no development can go around.
    for (int attempt = 0; attempt < 2; ++attempt) {
        bool go_ccw = (attempt == 0) ? (best_ccw <= deg - best_ccw) : !(best_ccw <= deg - best_ccw);
        int steps = go_ccw ? best_ccw : deg - best_ccw;
        if (steps == 0) continue;
        int cur = best;
        bool blocked = false;
        for (int step = 0; step < steps; ++step) {
            Dart bcur = dart_base_[cur];
            Dart next_base = go_ccw ? B.next_ccw(bcur) : B.prev_ccw(bcur);
            int found = find_dart(cv, next_base);
            if (found >= 0) {
                cur = found;
                continue;
            }
            int wedge_dart = go_ccw ? cur : ctwin(cur);
            if (dart_lface_[wedge_dart] == -2) {
                blocked = true;
                break;
            }
            develop_left(wedge_dart);
            cur = find_dart(cv, next_base);
            if (cur < 0) throw InternalError("development failed to materialize spoke");
        }
        if (!blocked) {
            if (dart_base_[cur] != d) throw InternalError("rotation walk missed its target");
            return cur;
        }
    }
    // both rotation directions cross boundary wedges: d lies in a
    // sector reachable only through itself
    return new_pair(cv, d, new_vertex(B.head(d)));
}

}  // namespace untangle
