#pragma once

#include <map>
#include <vector>

#include "untangle/walk_reducer.hpp"

namespace untangle {

struct HomotopyKey {
    int node = 0;
    int tree = -1;

    friend bool operator==(const HomotopyKey& a, const HomotopyKey& b) {
        return a.node == b.node && a.tree == b.tree;
    }
    friend bool operator!=(const HomotopyKey& a, const HomotopyKey& b) { return !(a == b); }
    friend bool operator<(const HomotopyKey& a, const HomotopyKey& b) {
        return a.node != b.node ? a.node < b.node : a.tree < b.tree;
    }
};

/// Canonical keys for path-homotopy classes of walks from a fixed root
/// vertex in a reducing triangulation: a trie of the elementary
/// subwalks of the unique reduced representatives.  Two walks from the
/// root are homotopic iff their keys are equal.
///
/// The root is a virtual subwalk whose only dart lies outside the
/// triangulation and points at the root vertex; the turn onto each
/// first dart is treated as an out-of-range symbol, so the first trie
/// level is keyed by the first dart itself.
class CompressedHomotopyTree {
public:
    CompressedHomotopyTree(const ReducingTriangulation& T, int root_vertex)
        : T_(&T), root_vertex_(root_vertex), id_(next_id_++) {
        TNode root;
        root.parent = -1;
        root.depth = 0;
        root.endpoint = root_vertex;
        nodes_.push_back(std::move(root));
    }

    int root_vertex() const { return root_vertex_; }
    int tree_id() const { return id_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }

    HomotopyKey trivial_key() const { return HomotopyKey{0, id_}; }

    int endpoint(HomotopyKey k) const {
        check_key(k);
        return nodes_[k.node].endpoint;
    }

    bool is_trivial(HomotopyKey k) const {
        check_key(k);
        return k.node == 0;
    }

    /// Key of [W . e] from the key of W; the stored compressed
    /// sequences differ in at most 49 trailing subwalks.
    HomotopyKey extend(HomotopyKey k, Dart e) {
        check_key(k);
        ++extend_count;
        if (T_->map().source(e) != nodes_[k.node].endpoint)
            throw NotIncident("extend: dart does not start at the walk endpoint");

        // collect the suffix window (top-down), at most kWindow nodes
        std::vector<int> window;
        {
            int at = k.node;
            while (at != 0 && static_cast<int>(window.size()) < kWindow) {
                window.push_back(at);
                at = nodes_[at].parent;
            }
            std::reverse(window.begin(), window.end());
        }
        bool full = window.empty() || nodes_[window.front()].parent == 0;

        // materialize as a scratch walk; the first-dart level carries
        // one dart, deeper nodes are genuine subwalks
        CompressedReducer red(*T_, nullptr);
        std::vector<ElementarySubwalk> seq;
        Dart lead = -1;  // walk prefix of length 1 (first-dart level)
        for (int n : window) {
            if (nodes_[n].parent == 0) {
                lead = nodes_[n].sub.first;
                continue;
            }
            seq.push_back(nodes_[n].sub);
        }
        if (seq.empty()) {
            red.load_darts(lead >= 0 ? std::vector<Dart>{lead} : std::vector<Dart>{});
        } else {
            red.load_window(seq, full);
        }
        red.append_dart(e);
        red.reduce();

        // re-thread the result under the common prefix
        int above = window.empty() ? 0 : nodes_[window.front()].parent;
        auto result = red.sequence();
        std::vector<ElementarySubwalk> new_nodes;
        if (red.length() == 1) {
            ElementarySubwalk lv;
            lv.kind = ElementarySubwalk::Kind::Single;
            lv.value = kLeadSymbol;
            lv.first = lv.last = red.lone_dart();
            new_nodes.push_back(lv);
        } else if (red.length() >= 2) {
            ElementarySubwalk lv;
            lv.kind = ElementarySubwalk::Kind::Single;
            lv.value = kLeadSymbol;
            lv.first = lv.last = result.front().first;
            new_nodes.push_back(lv);
            for (auto& s : result) new_nodes.push_back(s);
        }
        if (!full) {
            // the window begins mid-walk: its leading overlap dart must
            // survive (guaranteed by the suffix-stability bound)
            require(!new_nodes.empty(), "window reduction erased the shared prefix");
            require(new_nodes[0].first == nodes_[window.front()].sub.first,
                    "window reduction moved the shared overlap dart");
            if (new_nodes.size() == 1) {
                // the window collapsed onto its overlap dart: the new
                // walk is exactly the prefix above the window
                int above_node = nodes_[window.front()].parent;
                require(nodes_[above_node].sub.last == new_nodes[0].first,
                        "window collapse endpoint mismatch");
                max_suffix_rewrite = std::max(max_suffix_rewrite, static_cast<int>(window.size()));
                return HomotopyKey{above_node, id_};
            }
        }

        // compare against the old window path to find the fork point
        size_t lcp = 0;
        {
            std::vector<const ElementarySubwalk*> old_nodes;
            for (int n : window) old_nodes.push_back(&nodes_[n].sub);
            size_t skip = full ? 0 : 1;  // new_nodes[0] re-describes the lead level
            // when the window is partial, old_nodes[0] is a genuine
            // subwalk and new_nodes[0] is the synthetic lead: align by
            // dropping the synthetic lead entry
            std::vector<const ElementarySubwalk*> fresh;
            for (size_t i = skip; i < new_nodes.size(); ++i) fresh.push_back(&new_nodes[i]);
            while (lcp < old_nodes.size() && lcp < fresh.size() &&
                   same_sub(*old_nodes[lcp], *fresh[lcp]))
                ++lcp;
            int old_suffix = static_cast<int>(old_nodes.size() - lcp);
            int new_suffix = static_cast<int>(fresh.size() - lcp);
            max_suffix_rewrite = std::max(max_suffix_rewrite, std::max(old_suffix, new_suffix));
            // thread the fresh tail below the fork
            int at = lcp == 0 ? above : window[lcp - 1];
            for (size_t i = lcp; i < fresh.size(); ++i) at = child(at, *fresh[i]);
            return HomotopyKey{at, id_};
        }
    }

    /// Compressed turn sequence of the reduced representative (empty
    /// for walks of length <= 1; use reduced_walk_darts for those).
    CompressedTurnSequence reduced_walk(HomotopyKey k) const {
        check_key(k);
        CompressedTurnSequence seq;
        std::vector<int> path;
        for (int at = k.node; at != 0; at = nodes_[at].parent) path.push_back(at);
        std::reverse(path.begin(), path.end());
        for (int n : path)
            if (nodes_[n].parent != 0) seq.push_back(nodes_[n].sub);
        return seq;
    }

    std::vector<Dart> reduced_walk_darts(HomotopyKey k) const {
        check_key(k);
        if (k.node == 0) return {};
        auto seq = reduced_walk(k);
        if (seq.empty()) {
            // length-1 walk: the lead level holds the dart
            return {nodes_[k.node].sub.first};
        }
        return uncompress(*T_, seq);
    }

    /// Group items by key identity in linear time using a scratch mark
    /// per node (restored afterwards).
    template <typename Item, typename KeyFn>
    std::vector<std::vector<Item>> partition(const std::vector<Item>& items, KeyFn key_of) {
        std::vector<std::vector<Item>> groups;
        std::vector<int> touched;
        for (const Item& it : items) {
            HomotopyKey k = key_of(it);
            check_key(k);
            TNode& n = nodes_[k.node];
            if (n.scratch < 0) {
                n.scratch = static_cast<int>(groups.size());
                groups.emplace_back();
                touched.push_back(k.node);
            }
            groups[n.scratch].push_back(it);
        }
        for (int n : touched) nodes_[n].scratch = -1;
        return groups;
    }

    // instrumentation
    std::uint64_t extend_count = 0;
    std::uint64_t dict_ops = 0;
    int max_suffix_rewrite = 0;

    /// Audit: children of every node have pairwise distinct turn
    /// sequences (automatic with the dictionary, but verified).
    bool audit_no_duplicate_siblings() const {
        for (const TNode& n : nodes_) {
            std::map<std::uint64_t, int> seen;
            for (auto& [key, child] : n.children)
                if (++seen[key] > 1) return false;
        }
        return true;
    }

private:
    static constexpr int kWindow = 64;
    static constexpr int kLeadSymbol = 1 << 20;  // out-of-range turn symbol

    struct TNode {
        ElementarySubwalk sub;
        int parent = -1;
        int depth = 0;
        int endpoint = -1;
        std::map<std::uint64_t, int> children;
        int scratch = -1;
    };

    void check_key(HomotopyKey k) const {
        if (k.tree != id_ || k.node < 0 || k.node >= static_cast<int>(nodes_.size()))
            throw ForeignKey("homotopy key belongs to a different tree");
    }

    static bool same_sub(const ElementarySubwalk& a, const ElementarySubwalk& b) {
        return a.kind == b.kind && a.k == b.k && a.value == b.value && a.first == b.first &&
               a.last == b.last;
    }

    std::uint64_t encode(const ElementarySubwalk& s, bool at_root) const {
        std::uint64_t kindbits;
        std::uint64_t payload;
        if (s.value == kLeadSymbol) {
            kindbits = 3;
            payload = static_cast<std::uint64_t>(s.first);
        } else if (s.kind == ElementarySubwalk::Kind::Run3) {
            kindbits = 0;
            payload = static_cast<std::uint64_t>(s.k);
        } else if (s.kind == ElementarySubwalk::Kind::RunNeg3) {
            kindbits = 1;
            payload = static_cast<std::uint64_t>(s.k);
        } else {
            kindbits = 2;
            payload = static_cast<std::uint64_t>(s.value + (1 << 21));
        }
        (void)at_root;
        return (kindbits << 60) | payload;
    }

    int child(int at, const ElementarySubwalk& s) {
        ++dict_ops;
        std::uint64_t key = encode(s, at == 0);
        auto it = nodes_[at].children.find(key);
        if (it != nodes_[at].children.end()) {
            // same turn sequence from the same attachment: must be the
            // identical subwalk
            require(same_sub(nodes_[it->second].sub, s), "sibling collision");
            return it->second;
        }
        TNode n;
        n.sub = s;
        n.parent = at;
        n.depth = nodes_[at].depth + 1;
        n.endpoint = T_->map().head(s.last);
        int idn = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(n));
        nodes_[at].children.emplace(key, idn);
        return idn;
    }

    const ReducingTriangulation* T_;
    int root_vertex_;
    int id_;
    std::vector<TNode> nodes_;
    inline static int next_id_ = 0;
};

}  // namespace untangle
