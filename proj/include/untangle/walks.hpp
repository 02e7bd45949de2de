#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "untangle/reducing.hpp"
#include "untangle/util.hpp"

namespace untangle {

// ── Turn sequences and reducedness ───────────────────────────────────

inline std::vector<Turn> turn_sequence(const ReducingTriangulation& T,
                                       const std::vector<Dart>& walk) {
    std::vector<Turn> out;
    for (size_t i = 1; i < walk.size(); ++i) out.push_back(T.turn(walk[i - 1], walk[i]));
    return out;
}

inline std::vector<Turn> closed_turn_sequence(const ReducingTriangulation& T,
                                              const std::vector<Dart>& walk) {
    if (walk.empty()) throw EmptyWalk("closed walk must have length >= 1");
    std::vector<Turn> out;
    for (size_t i = 0; i < walk.size(); ++i)
        out.push_back(T.turn(walk[(i + walk.size() - 1) % walk.size()], walk[i]));
    return out;
}

inline bool is_reduced(const ReducingTriangulation& T, const std::vector<Dart>& walk) {
    for (size_t i = 1; i < walk.size(); ++i)
        if (is_bad_turn(T.turn(walk[i - 1], walk[i]))) return false;
    return true;
}

inline bool is_reduced_closed(const ReducingTriangulation& T, const std::vector<Dart>& walk) {
    auto ts = closed_turn_sequence(T, walk);
    bool all_3r = true, all_m3b = true;
    for (const Turn& t : ts) {
        if (is_bad_turn(t)) return false;
        all_3r &= (t.value == 3 && t.tag == Color::Red);
        all_m3b &= (t.value == -3 && t.tag == Color::Blue);
    }
    return !all_3r && !all_m3b;
}

/// phi(W) = 3 |W| + #bad turns; strictly decreases at every open-walk
/// move and at every closed-walk move except the heart-case flip.
inline long long phi(const ReducingTriangulation& T, const std::vector<Dart>& walk) {
    long long p = 3ll * static_cast<long long>(walk.size());
    for (size_t i = 1; i < walk.size(); ++i)
        if (is_bad_turn(T.turn(walk[i - 1], walk[i]))) ++p;
    return p;
}

inline long long phi_closed(const ReducingTriangulation& T, const std::vector<Dart>& walk) {
    long long p = 3ll * static_cast<long long>(walk.size());
    if (!walk.empty())
        for (const Turn& t : closed_turn_sequence(T, walk))
            if (is_bad_turn(t)) ++p;
    return p;
}

// ── Compressed turn sequences ────────────────────────────────────────

struct ElementarySubwalk {
    enum class Kind : char { Run3, RunNeg3, Single };
    Kind kind = Kind::Single;
    int k = 0;      // run length (number of turns), runs only
    int value = 0;  // normalized turn value, singles only
    Dart first = -1;
    Dart last = -1;

    int turn_count() const { return kind == Kind::Single ? 1 : k; }
    int dart_count() const { return turn_count() + 1; }
};

using CompressedTurnSequence = std::vector<ElementarySubwalk>;

/// Maximal-run compression of the turn sequence; walks of length 0/1
/// cannot be encoded (handled separately by callers, as in the paper).
inline CompressedTurnSequence compress(const ReducingTriangulation& T,
                                       const std::vector<Dart>& walk) {
    if (walk.size() < 2) throw EmptyWalk("compress needs a walk of length >= 2");
    CompressedTurnSequence seq;
    size_t i = 1;
    while (i < walk.size()) {
        int v = T.turn_value(walk[i - 1], walk[i]);
        if (v == 3 || v == -3) {
            ElementarySubwalk s;
            s.kind = v == 3 ? ElementarySubwalk::Kind::Run3 : ElementarySubwalk::Kind::RunNeg3;
            s.first = walk[i - 1];
            s.k = 1;
            size_t j = i + 1;
            while (j < walk.size() && T.turn_value(walk[j - 1], walk[j]) == v) {
                ++s.k;
                ++j;
            }
            s.last = walk[j - 1];
            seq.push_back(s);
            i = j;
        } else {
            ElementarySubwalk s;
            s.kind = ElementarySubwalk::Kind::Single;
            s.value = v;
            s.first = walk[i - 1];
            s.last = walk[i];
            seq.push_back(s);
            ++i;
        }
    }
    return seq;
}

inline std::vector<Dart> uncompress(const ReducingTriangulation& T,
                                    const CompressedTurnSequence& seq) {
    std::vector<Dart> walk;
    for (size_t n = 0; n < seq.size(); ++n) {
        const auto& s = seq[n];
        if (n > 0 && walk.back() != s.first)
            throw OverlapViolation("consecutive subwalks must overlap in one dart");
        Dart d = s.first;
        if (n == 0) walk.push_back(d);
        if (s.kind == ElementarySubwalk::Kind::Single) {
            walk.push_back(s.last);
            if (T.turn_value(s.first, s.last) != s.value)
                throw OverlapViolation("single subwalk turn mismatch");
        } else {
            int step = s.kind == ElementarySubwalk::Kind::Run3 ? 3 : -3;
            if (s.k < 1) throw OverlapViolation("empty run");
            for (int i = 0; i < s.k; ++i) {
                d = T.dart_by_turn(d, step);
                walk.push_back(d);
            }
            if (d != s.last) throw OverlapViolation("run subwalk endpoint mismatch");
        }
    }
    return walk;
}

// ── Reduction moves: replacement construction ────────────────────────
//
// Every move replaces a matched subwalk (d_0 .. d_N) by the
// complementary boundary path of the strip of triangles it leaves on
// one side.  Matched interior turn patterns and their replacements
// (left-handed versions; mirrors swap signs and orientation):
//
//   spur     0                  ->  (empty)
//   spike    1                  ->  single dart, 1 triangle strip
//   bracket  2 3^k 2            ->  (-3)^{k+1}
//   flip     a 3^k 2_r 3^l b    ->  -2 (-3)^{k-1} -(4-[k=0]-[l=0]) (-3)^{l-1} -2
//                                   (the -2s and the middle merge away
//                                    when k or l is 0)

namespace walkdetail {

/// Interior turn values of the replacement path for a left flip.
inline std::vector<int> flip_replacement_turns(int k, int l) {
    std::vector<int> m;
    if (k >= 1) {
        m.push_back(-2);
        for (int i = 0; i < k - 1; ++i) m.push_back(-3);
    }
    m.push_back(-(4 - (k == 0) - (l == 0)));
    if (l >= 1) {
        for (int i = 0; i < l - 1; ++i) m.push_back(-3);
        m.push_back(-2);
    }
    return m;
}

/// Expand a replacement path dart-by-dart: first dart q0, then one
/// dart per interior turn value.
inline std::vector<Dart> expand_replacement(const ReducingTriangulation& T, Dart q0,
                                            const std::vector<int>& turns) {
    std::vector<Dart> out{q0};
    for (int t : turns) out.push_back(T.dart_by_turn(out.back(), t));
    return out;
}

/// Replacement darts for a move matched on (seg[0] .. seg[N]) with
/// interior turns `pattern` (values as in the table above).  `mirror`
/// flips the handedness.
struct Replacement {
    std::vector<Dart> darts;
};

inline std::vector<Dart> replacement_darts(const ReducingTriangulation& T,
                                           const std::vector<Dart>& seg, bool mirror) {
    const CombinatorialMap& m = T.map();
    auto sig = [&](Dart d) { return mirror ? m.prev_ccw(d) : m.next_ccw(d); };
    int N = static_cast<int>(seg.size()) - 1;
    if (N == 0) {
        // spur handled by caller (empty replacement)
        throw InternalError("replacement_darts on a single dart");
    }
    // classify the pattern from the interior turns
    std::vector<int> tv;
    for (int i = 1; i <= N; ++i) tv.push_back(T.turn_value(seg[i - 1], seg[i]));
    int s = mirror ? -1 : 1;
    if (N == 1 && tv[0] == s * 1) {
        // spike
        return {sig(seg[0])};
    }
    if (N >= 2 && tv.front() == s * 2 && tv.back() == s * 2) {
        // bracket 2 3^k 2
        for (int i = 1; i + 1 < N; ++i) require(tv[i] == s * 3, "bracket run mismatch");
        int k = N - 2;
        std::vector<int> rep(k + 1, -s * 3);
        auto out = walkdetail::expand_replacement(T, sig(seg[0]), rep);
        require(m.head(out.back()) == m.head(seg.back()), "bracket endpoint mismatch");
        return out;
    }
    // flip 3^k 2_r 3^l
    int pos = -1;
    for (int i = 0; i < N; ++i)
        if (tv[i] == s * 2) pos = i;
    require(pos >= 0, "flip pattern: no 2-turn");
    int k = pos, l = N - 1 - pos;
    for (int i = 0; i < N; ++i)
        if (i != pos) require(tv[i] == s * 3, "flip run mismatch");
    auto rep = flip_replacement_turns(k, l);
    if (mirror)
        for (int& t : rep) t = -t;
    auto out = walkdetail::expand_replacement(T, sig(seg[0]), rep);
    require(m.head(out.back()) == m.head(seg.back()), "flip endpoint mismatch");
    require(out.size() == seg.size(), "flip must preserve length");
    return out;
}

}  // namespace walkdetail

// ── Reference reducer (dart-level; the oracle implementation) ────────

namespace walkdetail {

/// Find one applicable move in the open walk: returns [i, j] dart index
/// range (inclusive) and whether it is mirrored; or nullopt if reduced.
struct Match {
    int i, j;
    bool mirror;
    bool spur;
};

inline std::optional<Match> find_move_open(const ReducingTriangulation& T,
                                           const std::vector<Dart>& w) {
    int n = static_cast<int>(w.size());
    std::vector<Turn> ts;
    for (int i = 1; i < n; ++i) ts.push_back(T.turn(w[i - 1], w[i]));
    auto val = [&](int i) { return ts[i].value; };  // turn between darts i and i+1
    int m = static_cast<int>(ts.size());
    for (int i = 0; i < m; ++i) {
        if (val(i) == 0) return Match{i, i + 1, false, true};
        if (val(i) == 1) return Match{i, i + 1, false, false};
        if (val(i) == -1) return Match{i, i + 1, true, false};
    }
    // brackets
    for (int sgn : {1, -1}) {
        for (int i = 0; i < m; ++i) {
            if (val(i) != 2 * sgn) continue;
            int j = i + 1;
            while (j < m && val(j) == 3 * sgn) ++j;
            if (j < m && val(j) == 2 * sgn) return Match{i, j + 1, sgn < 0, false};
        }
    }
    // flips
    for (int sgn : {1, -1}) {
        for (int i = 0; i < m; ++i) {
            if (val(i) != 2 * sgn || ts[i].tag != Color::Red) continue;
            // scan left over 3s to the context
            int a = i - 1;
            while (a >= 0 && val(a) == 3 * sgn) --a;
            int b = i + 1;
            while (b < m && val(b) == 3 * sgn) ++b;
            auto ctx_ok = [&](int idx) {
                if (idx < 0 || idx >= m) return true;  // E
                int v = val(idx);
                if (sgn > 0) return v < -1 || v > 3;
                return v < -3 || v > 1;
            };
            if (ctx_ok(a) && ctx_ok(b))
                // matched darts: from dart a+1 .. dart b (turns a+1..b-1)
                return Match{a + 1, b, sgn < 0, false};
        }
    }
    return std::nullopt;
}

}  // namespace walkdetail

/// Reference implementation of Proposition "reduce a walk": scans for
/// any applicable move and applies it until none remains.  Quadratic;
/// used as the oracle for the production reducer.
inline std::vector<Dart> reduce_walk_naive(const ReducingTriangulation& T,
                                           std::vector<Dart> w, ReduceStats* stats = nullptr) {
    for (;;) {
        auto mt = walkdetail::find_move_open(T, w);
        if (!mt) break;
        std::vector<Dart> seg(w.begin() + mt->i, w.begin() + mt->j + 1);
        std::vector<Dart> rep;
        if (!mt->spur) rep = walkdetail::replacement_darts(T, seg, mt->mirror);
        if (stats) {
            int len = static_cast<int>(seg.size());
            if (mt->spur) {
                stats->spur_moves++;
            } else if (len == 2) {
                stats->spike_moves++;
            } else if (static_cast<int>(rep.size()) < len) {
                stats->bracket_moves++;
            } else {
                stats->flip_moves++;
            }
        }
        std::vector<Dart> nw(w.begin(), w.begin() + mt->i);
        nw.insert(nw.end(), rep.begin(), rep.end());
        nw.insert(nw.end(), w.begin() + mt->j + 1, w.end());
        w = std::move(nw);
    }
    return w;
}

}  // namespace untangle
