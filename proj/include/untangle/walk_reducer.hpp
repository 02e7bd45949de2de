#pragma once

#include <array>
#include <optional>
#include <vector>

#include "untangle/walks.hpp"

namespace untangle {

/// Linear-time walk reduction on the compressed turn sequence.  The
/// sequence is a doubly-linked list of elementary subwalks; every move
/// touches a bounded number of nodes and the scan backtracks at most
/// six nodes after a rewrite.
class CompressedReducer {
public:
    using Kind = ElementarySubwalk::Kind;

    explicit CompressedReducer(const ReducingTriangulation& T, ReduceStats* stats = nullptr)
        : T_(&T), stats_(stats) {}

    /// Load a walk given as darts (any length).
    void load_darts(const std::vector<Dart>& w) {
        nodes_.clear();
        head_ = tail_ = -1;
        length_ = static_cast<long long>(w.size());
        lone_dart_ = -1;
        left_unknown_ = false;
        if (w.size() == 1) lone_dart_ = w[0];
        if (w.size() >= 2)
            for (const auto& s : compress(*T_, w)) push_back_node(s);
    }

    /// Load an already-compressed suffix window (used by Extend).
    void load_window(const std::vector<ElementarySubwalk>& seq, bool left_is_walk_start) {
        nodes_.clear();
        head_ = tail_ = -1;
        lone_dart_ = -1;
        length_ = 0;
        for (const auto& s : seq) push_back_node(s);
        if (head_ >= 0) {
            length_ = 1;
            for (int n = head_; n >= 0; n = nodes_[n].next)
                length_ += nodes_[n].turn_count();
        }
        left_unknown_ = !left_is_walk_start;
    }

    /// Append one dart at the tail.
    void append_dart(Dart e) {
        if (length_ == 0) {
            lone_dart_ = e;
            length_ = 1;
            return;
        }
        if (length_ == 1) {
            Dart d0 = lone_dart_;
            lone_dart_ = -1;
            length_ = 2;
            push_back_node(make_single(d0, e));
            coalesce_at(tail_);
            return;
        }
        Dart last = nodes_[tail_].sub.last;
        push_back_node(make_single(last, e));
        coalesce_at(tail_);
        ++length_;
    }

    void reduce() {
        long long budget = 4 * length_ + 64;  // phi <= 4 |W|, with slack
        int cursor = head_;
        long long moves = 0;
        while (cursor >= 0) {
            int leftmost = -1;
            if (try_move_at(cursor, leftmost)) {
                if (++moves > budget) throw InternalError("reduction failed to terminate");
                cursor = leftmost;
                continue;
            }
            cursor = nodes_[cursor].next;
        }
    }

    long long length() const { return length_; }

    std::vector<Dart> darts() const {
        if (length_ == 0) return {};
        if (length_ == 1) return {lone_dart_};
        return uncompress(*T_, sequence());
    }

    CompressedTurnSequence sequence() const {
        CompressedTurnSequence out;
        for (int n = head_; n >= 0; n = nodes_[n].next) out.push_back(to_subwalk(n));
        return out;
    }

    Dart lone_dart() const { return lone_dart_; }

private:
    struct Node {
        ElementarySubwalk sub;
        int prev = -1, next = -1;
        bool alive = true;
        int turn_count() const { return sub.turn_count(); }
    };

    ElementarySubwalk to_subwalk(int n) const { return nodes_[n].sub; }

    ElementarySubwalk make_single(Dart a, Dart b) const {
        ElementarySubwalk s;
        s.kind = Kind::Single;
        s.value = T_->turn_value(a, b);
        s.first = a;
        s.last = b;
        return s;
    }

    int push_back_node(const ElementarySubwalk& s) {
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{s, tail_, -1, true});
        if (tail_ >= 0)
            nodes_[tail_].next = id;
        else
            head_ = id;
        tail_ = id;
        return id;
    }

    int insert_after(int pos, const ElementarySubwalk& s) {
        int id = static_cast<int>(nodes_.size());
        Node n{s, pos, pos >= 0 ? nodes_[pos].next : head_, true};
        nodes_.push_back(n);
        if (n.prev >= 0)
            nodes_[n.prev].next = id;
        else
            head_ = id;
        if (n.next >= 0)
            nodes_[n.next].prev = id;
        else
            tail_ = id;
        return id;
    }

    void unlink(int id) {
        Node& n = nodes_[id];
        n.alive = false;
        if (n.prev >= 0)
            nodes_[n.prev].next = n.next;
        else
            head_ = n.next;
        if (n.next >= 0)
            nodes_[n.next].prev = n.prev;
        else
            tail_ = n.prev;
    }

    // shed the last dart of node id; returns the newly exposed last
    // dart (the dart before the shed one), or -1 if the node vanished
    // and no dart is exposed here (caller uses the previous node).
    Dart shed_last(int id) {
        Node& n = nodes_[id];
        if (n.sub.kind == Kind::Single) {
            Dart exposed = n.sub.first;
            unlink(id);
            return exposed;
        }
        int step = n.sub.kind == Kind::Run3 ? 3 : -3;
        Dart exposed = T_->map().dart_by_turn_rev(n.sub.last, step);
        if (n.sub.k == 1) {
            require(exposed == n.sub.first, "run endpoints inconsistent");
            unlink(id);
            return exposed;
        }
        n.sub.k -= 1;
        n.sub.last = exposed;
        return exposed;
    }

    Dart shed_first(int id) {
        Node& n = nodes_[id];
        if (n.sub.kind == Kind::Single) {
            Dart exposed = n.sub.last;
            unlink(id);
            return exposed;
        }
        int step = n.sub.kind == Kind::Run3 ? 3 : -3;
        Dart exposed = T_->dart_by_turn(n.sub.first, step);
        if (n.sub.k == 1) {
            require(exposed == n.sub.last, "run endpoints inconsistent");
            unlink(id);
            return exposed;
        }
        n.sub.k -= 1;
        n.sub.first = exposed;
        return exposed;
    }

    /// Restore maximality around node id: +-3 singles become runs,
    /// adjacent equal-kind runs merge.
    void coalesce_at(int id) {
        if (id < 0 || !nodes_[id].alive) return;
        Node& n = nodes_[id];
        if (n.sub.kind == Kind::Single && (n.sub.value == 3 || n.sub.value == -3)) {
            n.sub.kind = n.sub.value == 3 ? Kind::Run3 : Kind::RunNeg3;
            n.sub.k = 1;
            n.sub.value = 0;
        }
        if (n.sub.kind == Kind::Single) return;
        // merge with next while same kind
        while (n.next >= 0 && nodes_[n.next].sub.kind == n.sub.kind) {
            Node& m = nodes_[n.next];
            require(n.sub.last == m.sub.first, "adjacent runs must overlap");
            n.sub.k += m.sub.k;
            n.sub.last = m.sub.last;
            unlink(n.next);
        }
        while (n.prev >= 0 && nodes_[n.prev].sub.kind == n.sub.kind) {
            Node& m = nodes_[n.prev];
            require(m.sub.last == n.sub.first, "adjacent runs must overlap");
            n.sub.k += m.sub.k;
            n.sub.first = m.sub.first;
            unlink(n.prev);
        }
    }

    Color tag_of_single(int id) const {
        return T_->left_color(nodes_[id].sub.first);
    }

    // ── Move matching ─────────────────────────────────────────────

    bool try_move_at(int c, int& resume) {
        const Node& n = nodes_[c];
        if (n.sub.kind != Kind::Single) return false;
        int v = n.sub.value;
        if (v == 0) return apply_move({c}, false, MoveKind::Spur, resume);
        if (v == 1) return apply_move({c}, false, MoveKind::Spike, resume);
        if (v == -1) return apply_move({c}, true, MoveKind::Spike, resume);
        if (v == 2 || v == -2) {
            bool mirror = v < 0;
            Kind runkind = mirror ? Kind::RunNeg3 : Kind::Run3;
            // bracket with c as the left 2
            int nx = n.next;
            if (nx >= 0 && nodes_[nx].sub.kind == Kind::Single && nodes_[nx].sub.value == v)
                return apply_move({c, nx}, mirror, MoveKind::Bracket, resume);
            if (nx >= 0 && nodes_[nx].sub.kind == runkind) {
                int nnx = nodes_[nx].next;
                if (nnx >= 0 && nodes_[nnx].sub.kind == Kind::Single &&
                    nodes_[nnx].sub.value == v)
                    return apply_move({c, nx, nnx}, mirror, MoveKind::Bracket, resume);
            }
            // flip with c as the 2_r
            if (tag_of_single(c) != Color::Red) return false;
            std::vector<int> match{c};
            int left_run = n.prev >= 0 && nodes_[n.prev].sub.kind == runkind ? n.prev : -1;
            int right_run = nx >= 0 && nodes_[nx].sub.kind == runkind ? nx : -1;
            int ctxl = left_run >= 0 ? nodes_[left_run].prev : n.prev;
            int ctxr = right_run >= 0 ? nodes_[right_run].next : nx;
            if (!flip_ctx_ok(ctxl, mirror)) return false;
            if (!flip_ctx_ok(ctxr, mirror)) return false;
            if (left_run >= 0) match.insert(match.begin(), left_run);
            if (right_run >= 0) match.push_back(right_run);
            return apply_move(match, mirror, MoveKind::Flip, resume);
        }
        return false;
    }

    bool flip_ctx_ok(int ctx, bool mirror) const {
        if (ctx < 0) {
            if (left_unknown_)
                throw InternalError("flip needs context beyond the reduction window");
            return true;  // E
        }
        const Node& n = nodes_[ctx];
        int v;
        if (n.sub.kind == Kind::Run3)
            v = 3;
        else if (n.sub.kind == Kind::RunNeg3)
            v = -3;
        else
            v = n.sub.value;
        if (!mirror) return v < -1 || v > 3;
        return v < -3 || v > 1;
    }

    enum class MoveKind { Spur, Spike, Bracket, Flip };

    /// Replacement node descriptions for a move on matched darts
    /// d0..dN.  All boundaries are O(1) closed forms.
    std::vector<ElementarySubwalk> replacement_nodes(const std::vector<int>& match,
                                                     bool mirror, MoveKind mk,
                                                     Dart& out_first, Dart& out_last) {
        const CombinatorialMap& m = T_->map();
        int s = mirror ? -1 : 1;
        auto sig = [&](Dart d) { return mirror ? m.prev_ccw(d) : m.next_ccw(d); };
        auto sig_inv = [&](Dart d) { return mirror ? m.next_ccw(d) : m.prev_ccw(d); };
        Dart d0 = nodes_[match.front()].sub.first;
        Dart dN = nodes_[match.back()].sub.last;
        std::vector<ElementarySubwalk> out;
        switch (mk) {
            case MoveKind::Spur:
                out_first = out_last = -1;
                return {};
            case MoveKind::Spike: {
                out_first = out_last = sig(d0);
                require(m.head(out_first) == m.head(dN), "spike endpoint mismatch");
                return {};
            }
            case MoveKind::Bracket: {
                int k = match.size() == 3 ? nodes_[match[1]].sub.k : 0;
                ElementarySubwalk r;
                r.kind = mirror ? Kind::Run3 : Kind::RunNeg3;
                r.k = k + 1;
                r.first = sig(d0);
                r.last = twin(sig_inv(twin(dN)));
                require(m.head(r.last) == m.head(dN), "bracket endpoint mismatch");
                out_first = r.first;
                out_last = r.last;
                return {r};
            }
            case MoveKind::Flip: {
                // match = [run_k?] [single 2_r] [run_l?]
                int k = 0, l = 0;
                Dart dk;  // dart entering the 2_r vertex
                if (nodes_[match.front()].sub.kind != Kind::Single) {
                    k = nodes_[match.front()].sub.k;
                    dk = nodes_[match.front()].sub.last;
                } else {
                    dk = d0;
                }
                if (nodes_[match.back()].sub.kind != Kind::Single)
                    l = nodes_[match.back()].sub.k;
                Dart q0 = sig(d0);
                Dart qlast = twin(sig_inv(twin(dN)));
                int my = 4 - (k == 0) - (l == 0);
                Dart r1 = k >= 1 ? twin(sig_inv(twin(sig(dk)))) : q0;
                Dart r2 = T_->dart_by_turn(r1, -s * my);
                Kind runkind = mirror ? Kind::Run3 : Kind::RunNeg3;
                if (k >= 1) {
                    ElementarySubwalk t;
                    t.kind = Kind::Single;
                    t.first = q0;
                    t.last = T_->dart_by_turn(q0, -s * 2);
                    t.value = -s * 2;
                    out.push_back(t);
                    if (k >= 2) {
                        ElementarySubwalk r;
                        r.kind = runkind;
                        r.k = k - 1;
                        r.first = t.last;
                        r.last = r1;
                        out.push_back(r);
                    } else {
                        require(t.last == r1, "flip left seam mismatch");
                    }
                }
                {
                    ElementarySubwalk t;
                    t.kind = Kind::Single;
                    t.first = r1;
                    t.last = r2;
                    t.value = T_->turn_value(r1, r2);
                    out.push_back(t);
                }
                if (l >= 1) {
                    Dart s1 = m.dart_by_turn_rev(qlast, -s * 2);
                    if (l >= 2) {
                        ElementarySubwalk r;
                        r.kind = runkind;
                        r.k = l - 1;
                        r.first = r2;
                        r.last = s1;
                        out.push_back(r);
                    } else {
                        require(r2 == s1, "flip right seam mismatch");
                    }
                    ElementarySubwalk t;
                    t.kind = Kind::Single;
                    t.first = s1;
                    t.last = qlast;
                    t.value = -s * 2;
                    out.push_back(t);
                } else {
                    require(r2 == qlast, "flip trailing seam mismatch");
                }
                require(m.head(qlast) == m.head(dN), "flip endpoint mismatch");
                out_first = q0;
                out_last = qlast;
                return out;
            }
        }
        throw InternalError("unreachable");
    }

    bool apply_move(const std::vector<int>& match, bool mirror, MoveKind mk, int& resume) {
        // capture backtrack anchors before mutating
        std::array<int, 8> anchors{};
        anchors.fill(-1);
        {
            int p = nodes_[match.front()].prev;
            for (int i = 0; i < 8 && p >= 0; ++i, p = nodes_[p].prev) anchors[i] = p;
        }
        long long matched_darts = 1;
        for (int id : match) matched_darts += nodes_[id].turn_count();

        Dart rep_first, rep_last;
        auto reps = replacement_nodes(match, mirror, mk, rep_first, rep_last);
        if (stats_) {
            switch (mk) {
                case MoveKind::Spur: stats_->spur_moves++; break;
                case MoveKind::Spike: stats_->spike_moves++; break;
                case MoveKind::Bracket: stats_->bracket_moves++; break;
                case MoveKind::Flip: stats_->flip_moves++; break;
            }
        }

        int before = nodes_[match.front()].prev;
        int after = nodes_[match.back()].next;
        for (int id : match) unlink(id);

        long long rep_darts = 0;
        if (mk == MoveKind::Spike) rep_darts = 1;
        for (const auto& r : reps) rep_darts += r.turn_count();
        if (!reps.empty()) ++rep_darts;
        // matched_darts includes both junction darts d0 and dN, which
        // are also removed; the two junction turns are rebuilt below.
        length_ += rep_darts - matched_darts;

        Dart exposed_left = -1, exposed_right = -1;
        int left_anchor = -1;  // node after which we insert
        if (before >= 0) {
            exposed_left = shed_last(before);
            left_anchor = nodes_[before].alive ? before : nodes_[before].prev;
        }
        if (after >= 0) {
            exposed_right = shed_first(after);
        }

        // Build the full inserted chain: junction single + replacement
        // nodes + junction single.
        std::vector<ElementarySubwalk> chain;
        Dart chain_first = rep_first;
        Dart chain_last = rep_last;
        if (reps.empty() && mk == MoveKind::Spur) {
            chain_first = chain_last = -1;
        }
        if (exposed_left >= 0 && chain_first >= 0)
            chain.push_back(make_single(exposed_left, chain_first));
        for (const auto& r : reps) chain.push_back(r);
        if (mk == MoveKind::Spike && chain.empty() && exposed_left < 0 && exposed_right < 0) {
            // whole walk replaced by one dart
            lone_dart_ = rep_first;
        }
        if (exposed_right >= 0) {
            Dart from = chain_last >= 0 ? chain_last : exposed_left;
            if (from >= 0) chain.push_back(make_single(from, exposed_right));
        }
        if (chain.empty() && exposed_left >= 0 && exposed_right < 0 && chain_first >= 0) {
            // replacement was a single dart at the walk end: junction
            // single already added above; nothing else
        }

        int at = left_anchor;
        std::vector<int> inserted;
        for (const auto& cnode : chain) {
            at = insert_after(at, cnode);
            inserted.push_back(at);
        }
        // spur at the very start/end can leave a leading/trailing lone
        // dart situation when the whole structure empties
        if (head_ < 0) {
            // walk now has <= 1 darts
            if (length_ == 1) {
                if (chain_first >= 0)
                    lone_dart_ = chain_first;
                else if (exposed_left >= 0)
                    lone_dart_ = exposed_left;
                else if (exposed_right >= 0)
                    lone_dart_ = exposed_right;
                else
                    throw InternalError("lost track of a single-dart walk");
            }
        }
        for (int id : inserted) coalesce_at(id);
        if (left_anchor >= 0) coalesce_at(nodes_[left_anchor].alive ? left_anchor : -1);

        // resume scanning from the farthest surviving anchor
        resume = head_;
        for (int i = 7; i >= 0; --i) {
            if (anchors[i] >= 0 && nodes_[anchors[i]].alive) {
                resume = anchors[i];
                break;
            }
        }
        return true;
    }

    const ReducingTriangulation* T_;
    ReduceStats* stats_;
    std::vector<Node> nodes_;
    int head_ = -1, tail_ = -1;
    long long length_ = 0;
    Dart lone_dart_ = -1;
    bool left_unknown_ = false;
};

/// Compute the reduced walk homotopic to `w` with fixed endpoints, in
/// time linear in |w| (Proposition: walk reduction).
inline std::vector<Dart> reduce_walk(const ReducingTriangulation& T, const std::vector<Dart>& w,
                                     ReduceStats* stats = nullptr) {
    CompressedReducer red(T, stats);
    red.load_darts(w);
    red.reduce();
    return red.darts();
}

// ── Closed walks ─────────────────────────────────────────────────────

struct ClosedReduction {
    std::vector<Dart> walk;       // reduced closed walk (cyclic)
    std::vector<Dart> transport;  // walk of the tracked basepoint, old -> new
    ReduceStats stats;
};

namespace walkdetail {

struct CyclicMatch {
    int start;   // dart index of d0
    int count;   // number of matched darts (may equal n: full wrap)
    bool mirror;
    bool spur;
    bool final_move = false;
};

inline std::optional<CyclicMatch> find_move_closed(const ReducingTriangulation& T,
                                                   const std::vector<Dart>& w) {
    int n = static_cast<int>(w.size());
    std::vector<Turn> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = T.turn(w[(i + n - 1) % n], w[i]);
    auto val = [&](int i) { return ts[((i % n) + n) % n].value; };
    auto tag = [&](int i) { return ts[((i % n) + n) % n].tag; };
    // spur / spike first
    for (int i = 0; i < n; ++i) {
        if (val(i) == 0 && n >= 2) return CyclicMatch{(i + n - 1) % n, 2, false, true};
        if (val(i) == 1 && n >= 2) return CyclicMatch{(i + n - 1) % n, 2, false, false};
        if (val(i) == -1 && n >= 2) return CyclicMatch{(i + n - 1) % n, 2, true, false};
    }
    // brackets (choose a non-wrapping side)
    for (int sgn : {1, -1}) {
        for (int i = 0; i < n; ++i) {
            if (val(i) != 2 * sgn) continue;
            int j = i + 1, k = 0;
            while (k < n && val(j) == 3 * sgn) ++j, ++k;
            if (k >= n) throw InternalError("cyclic 2 3^* walk cannot exist");
            if (val(j) != 2 * sgn) continue;
            int darts = k + 3;
            if (darts <= n) return CyclicMatch{(i + n - 1) % n, darts, sgn < 0, false};
        }
    }
    // flips (the context positions may coincide: heart case)
    for (int sgn : {1, -1}) {
        for (int i = 0; i < n; ++i) {
            if (val(i) != 2 * sgn || tag(i) != Color::Red) continue;
            int a = i - 1, steps = 0;
            while (steps < n && val(a) == 3 * sgn) --a, ++steps;
            int b = i + 1;
            steps = 0;
            while (steps < n && val(b) == 3 * sgn) ++b, ++steps;
            auto ctx_ok = [&](int idx) {
                int v = val(idx);
                if (sgn > 0) return v < -1 || v > 3;
                return v < -3 || v > 1;
            };
            int am = ((a % n) + n) % n, bm = ((b % n) + n) % n;
            if (!ctx_ok(am) || !ctx_ok(bm)) continue;
            int darts = ((bm - am) % n + n) % n;
            if (darts == 0) darts = n;  // heart: contexts coincide
            return CyclicMatch{am, darts, sgn < 0, false};
        }
    }
    // final move: all 3_r or all -3_b
    bool all3r = true, allm3b = true;
    for (int i = 0; i < n; ++i) {
        all3r &= (val(i) == 3 && tag(i) == Color::Red);
        allm3b &= (val(i) == -3 && tag(i) == Color::Blue);
    }
    if (all3r) return CyclicMatch{0, n, false, false, true};
    if (allm3b) return CyclicMatch{0, n, true, false, true};
    return std::nullopt;
}

}  // namespace walkdetail

/// Reduce a closed walk up to free homotopy (Proposition: closed-walk
/// reduction).  Throws ContractibleInput when the reduction collapses.
/// The returned `transport` is the walk performed by a basepoint that
/// starts at the source of w[0] and rides along during the homotopy;
/// the reduced walk starts at its endpoint.
inline ClosedReduction reduce_closed_walk(const ReducingTriangulation& T,
                                          std::vector<Dart> w, ReduceStats* stats = nullptr) {
    if (w.empty()) throw EmptyWalk("closed walk must have length >= 1");
    ClosedReduction out;
    auto& st = out.stats;
    auto& transport = out.transport;

    // Phase 1: cut at the basepoint and reduce as an open walk.
    w = reduce_walk(T, w, &st);
    long long guard = 0;

    // Phase 2: cyclic moves at and around the junction.
    while (!w.empty()) {
        auto mt = walkdetail::find_move_closed(T, w);
        if (!mt) break;
        if (++guard > 12 * static_cast<long long>(w.size()) + 64)
            throw InternalError("closed reduction failed to terminate");
        int n = static_cast<int>(w.size());
        if (mt->final_move) {
            const CombinatorialMap& m = T.map();
            std::vector<Dart> nw(n);
            for (int i = 0; i < n; ++i) {
                Dart di = w[i];
                Dart into_xi = mt->mirror ? twin(m.next_ccw(twin(m.prev_ccw(di))))
                                          : twin(m.face_next(m.next_ccw(di)));
                nw[i] = into_xi;
            }
            // transport the basepoint across the strip and start at x0
            transport.push_back(mt->mirror ? m.prev_ccw(w[0]) : m.next_ccw(w[0]));
            std::rotate(nw.begin(), nw.begin() + 1, nw.end());
            w = std::move(nw);
            st.final_moves++;
            require(is_reduced_closed(T, w), "final move must produce a reduced walk");
            break;
        }
        // rotate so the match starts at index 0; track the basepoint,
        // which sits at the source of w[0] == the start of the match
        // after sliding it backwards along the walk
        int s = mt->start;
        for (int i = 0; i < s; ++i) transport.push_back(w[i]);
        std::rotate(w.begin(), w.begin() + s, w.end());
        std::vector<Dart> seg(w.begin(), w.begin() + mt->count);
        std::vector<Dart> rep;
        if (!mt->spur) rep = walkdetail::replacement_darts(T, seg, mt->mirror);
        if (mt->spur)
            st.spur_moves++;
        else if (seg.size() == 2)
            st.spike_moves++;
        else if (rep.size() < seg.size())
            st.bracket_moves++;
        else
            st.flip_moves++;
        std::vector<Dart> nw = rep;
        nw.insert(nw.end(), w.begin() + mt->count, w.end());
        if (nw.empty()) throw ContractibleInput("closed walk is contractible");
        w = std::move(nw);
    }
    if (w.empty()) throw ContractibleInput("closed walk is contractible");
    // canonical rotation: reduced closed walks are unique as cyclic
    // sequences, so fix the lexicographically smallest rotation and
    // slide the basepoint accordingly
    {
        int n = static_cast<int>(w.size());
        int best = 0;
        for (int r = 1; r < n; ++r) {
            for (int i = 0; i < n; ++i) {
                Dart a = w[(r + i) % n], b = w[(best + i) % n];
                if (a != b) {
                    if (a < b) best = r;
                    break;
                }
            }
        }
        for (int i = 0; i < best; ++i) transport.push_back(w[i]);
        std::rotate(w.begin(), w.begin() + best, w.end());
    }
    if (stats) {
        stats->spur_moves += st.spur_moves;
        stats->spike_moves += st.spike_moves;
        stats->bracket_moves += st.bracket_moves;
        stats->flip_moves += st.flip_moves;
        stats->final_moves += st.final_moves;
    }
    out.walk = std::move(w);
    return out;
}

}  // namespace untangle
