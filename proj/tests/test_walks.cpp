#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "untangle/cover.hpp"
#include "untangle/walk_reducer.hpp"
#include "untangle/walks.hpp"
#include "walk_testutil.hpp"

using namespace untangle;
using testutil::insert_detour;
using testutil::insert_spur;
using testutil::random_walk;
using testutil::reverse_walk;

TEST_CASE("turn sequence basics") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    std::vector<Dart> spur = {0, 1};
    auto ts = turn_sequence(T, spur);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].value == 0);
    // triangle boundary, face on the left: three 1-turns
    Dart d = 0;
    std::vector<Dart> tri = {d, m.face_next(d), m.face_next(m.face_next(d))};
    for (const Turn& t : closed_turn_sequence(T, tri)) CHECK(t.value == 1);
    // componentwise cross-check against turn()
    Rng rng(7);
    auto w = random_walk(T, rng, 40);
    auto seq = turn_sequence(T, w);
    REQUIRE(seq.size() == w.size() - 1);
    for (size_t i = 1; i < w.size(); ++i)
        CHECK(seq[i - 1].value == T.turn_value(w[i - 1], w[i]));
}

TEST_CASE("is_reduced basics") {
    auto T = build_reducing(2);
    CHECK(is_reduced(T, {}));
    CHECK(is_reduced(T, {4}));
    CHECK_FALSE(is_reduced(T, {0, 1}));
}

TEST_CASE("compress round-trips on random walks") {
    auto T = build_reducing(2);
    Rng rng(99);
    for (int it = 0; it < 1000; ++it) {
        auto w = random_walk(T, rng, 2 + rng.below_int(60));
        auto seq = compress(T, w);
        CHECK(uncompress(T, seq) == w);
        for (size_t i = 1; i < seq.size(); ++i)
            if (seq[i].kind != ElementarySubwalk::Kind::Single)
                CHECK(seq[i].kind != seq[i - 1].kind);
    }
    // a pure 3^k run compresses to one subwalk
    std::vector<Dart> run{0};
    for (int i = 0; i < 7; ++i) run.push_back(T.dart_by_turn(run.back(), 3));
    auto seq = compress(T, run);
    REQUIRE(seq.size() == 1);
    CHECK(seq[0].kind == ElementarySubwalk::Kind::Run3);
    CHECK(seq[0].k == 7);
    // malformed sequences are rejected
    auto bad = seq;
    bad.push_back(bad[0]);
    bad.back().first = twin(bad.back().first);
    CHECK_THROWS_AS(uncompress(T, bad), OverlapViolation);
}

TEST_CASE("spur reduces to the empty walk") {
    auto T = build_reducing(2);
    CHECK(reduce_walk(T, {0, 1}).empty());
    CHECK(reduce_walk_naive(T, {0, 1}).empty());
}

TEST_CASE("spike shortens two triangle sides to one") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    Dart d = 2;
    std::vector<Dart> w = {d, m.face_next(d)};
    REQUIRE(T.turn_value(w[0], w[1]) == 1);
    auto r = reduce_walk(T, w);
    REQUIRE(r.size() == 1);
    CHECK(m.source(r[0]) == m.source(d));
    CHECK(m.head(r[0]) == m.head(w[1]));
    CHECK(reduce_walk_naive(T, w) == r);
}

TEST_CASE("compressed and naive reducers agree on random walks") {
    for (int g : {2, 3}) {
        auto T = build_reducing(g);
        Rng rng(1000 + g);
        for (int it = 0; it < 1500; ++it) {
            auto w = random_walk(T, rng, rng.below_int(50));
            auto a = reduce_walk(T, w);
            auto b = reduce_walk_naive(T, w);
            REQUIRE(a == b);
            CHECK(is_reduced(T, a));
        }
    }
}

TEST_CASE("reduction is homotopic and unique under perturbation") {
    auto T = build_reducing(2);
    UniversalCover cov(T.map());
    Rng rng(555);
    for (int it = 0; it < 300; ++it) {
        auto w = random_walk(T, rng, 1 + rng.below_int(30));
        auto w2 = w;
        int k = 1 + rng.below_int(6);
        for (int i = 0; i < k; ++i) {
            if (rng.coin())
                insert_spur(T, rng, w2);
            else
                insert_detour(T, rng, w2);
        }
        auto r1 = reduce_walk(T, w);
        auto r2 = reduce_walk(T, w2);
        REQUIRE(r1 == r2);
        int s = T.map().source(w[0]);
        CHECK(cov.homotopic(w, w2, s));
        CHECK(cov.homotopic(w, r1, s));
    }
}

TEST_CASE("reversal stability") {
    auto T = build_reducing(2);
    Rng rng(314);
    for (int it = 0; it < 300; ++it) {
        auto w = random_walk(T, rng, rng.below_int(40));
        auto a = reduce_walk(T, reverse_walk(w));
        auto b = reverse_walk(reduce_walk(T, w));
        REQUIRE(a == b);
    }
}

TEST_CASE("move count respects the phi bound") {
    auto T = build_reducing(3);
    Rng rng(777);
    for (int it = 0; it < 400; ++it) {
        auto w = random_walk(T, rng, rng.below_int(60));
        ReduceStats st;
        reduce_walk(T, w, &st);
        CHECK(st.total_moves() <= static_cast<std::uint64_t>(phi(T, w)));
    }
}

TEST_CASE("subwalk closure: contiguous subwalks of reduced output are reduced") {
    auto T = build_reducing(2);
    Rng rng(2024);
    for (int it = 0; it < 200; ++it) {
        auto w = random_walk(T, rng, 10 + rng.below_int(40));
        auto r = reduce_walk(T, w);
        if (r.size() < 3) continue;
        size_t i = rng.below(r.size() - 1);
        size_t j = i + 1 + rng.below(r.size() - i - 1);
        std::vector<Dart> sub(r.begin() + i, r.begin() + j);
        CHECK(is_reduced(T, sub));
    }
}

TEST_CASE("closed reduction: triangle boundary is contractible") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    std::vector<Dart> tri = {0, m.face_next(0), m.face_next(m.face_next(0))};
    CHECK_THROWS_AS(reduce_closed_walk(T, tri), ContractibleInput);
}

TEST_CASE("closed reduction: canonical loop is stable and idempotent") {
    for (int g : {2, 3}) {
        auto T = build_reducing(g);
        Dart a1 = T.canonical_dart("a1");
        auto red = reduce_closed_walk(T, {a1});
        CHECK(is_reduced_closed(T, red.walk));
        auto again = reduce_closed_walk(T, red.walk);
        CHECK(again.walk == red.walk);
        CHECK(again.transport.empty());
    }
}

TEST_CASE("closed reduction: free homotopy invariance under rotation and conjugation") {
    auto T = build_reducing(2);
    Rng rng(31337);
    int tested = 0;
    for (int it = 0; it < 400 && tested < 60; ++it) {
        auto w = random_walk(T, rng, 3 + rng.below_int(18));
        std::vector<Dart> canon;
        try {
            canon = reduce_closed_walk(T, w).walk;
        } catch (const ContractibleInput&) {
            continue;
        }
        ++tested;
        CHECK(is_reduced_closed(T, canon));
        for (size_t r = 1; r < w.size(); ++r) {
            std::vector<Dart> rot = w;
            std::rotate(rot.begin(), rot.begin() + r, rot.end());
            auto red = reduce_closed_walk(T, rot).walk;
            REQUIRE(red == canon);
        }
        auto pre = random_walk(T, rng, rng.below_int(6));
        std::vector<Dart> v = reverse_walk(pre);
        v.insert(v.end(), w.begin(), w.end());
        v.insert(v.end(), pre.begin(), pre.end());
        auto red = reduce_closed_walk(T, v).walk;
        REQUIRE(red == canon);
    }
    CHECK(tested >= 20);
}

TEST_CASE("closed reduction transport connects old and new basepoints") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    UniversalCover cov(m);
    Rng rng(40);
    int tested = 0;
    for (int it = 0; it < 300 && tested < 40; ++it) {
        auto w = random_walk(T, rng, 2 + rng.below_int(14));
        ClosedReduction red;
        try {
            red = reduce_closed_walk(T, w);
        } catch (const ContractibleInput&) {
            continue;
        }
        ++tested;
        // W^-1 . C . W homotopic with fixed endpoints to the output
        std::vector<Dart> lhs = reverse_walk(red.transport);
        lhs.insert(lhs.end(), w.begin(), w.end());
        lhs.insert(lhs.end(), red.transport.begin(), red.transport.end());
        int s = m.source(red.walk.front());
        CHECK(cov.homotopic(lhs, red.walk, s));
    }
    CHECK(tested >= 15);
}

TEST_CASE("all-3r closed walks trigger the final move") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    bool found = false;
    for (Dart d = 0; d < m.dart_count() && !found; ++d) {
        std::vector<Dart> w{d};
        for (int i = 0; i < 64; ++i) {
            Dart nx = T.dart_by_turn(w.back(), 3);
            if (nx == d) break;
            w.push_back(nx);
        }
        if (T.dart_by_turn(w.back(), 3) != d) continue;
        bool all3r = true;
        for (const Turn& t : closed_turn_sequence(T, w))
            all3r &= (t.value == 3 && t.tag == Color::Red);
        if (!all3r) continue;
        found = true;
        CHECK_FALSE(is_reduced_closed(T, w));
        auto red = reduce_closed_walk(T, w);
        CHECK(is_reduced_closed(T, red.walk));
        CHECK(red.walk.size() == w.size());
        CHECK(red.stats.final_moves == 1);
    }
    CHECK(found);
}

TEST_CASE("heart-case closed walks terminate within the extra move") {
    // search short closed walks whose cyclic turn pattern matches
    // 4 3^k 2_r 3^l (or a value >= 4 at the shared context)
    auto T = build_reducing(2);
    Rng rng(909);
    int found = 0;
    for (int it = 0; it < 60000 && found < 5; ++it) {
        auto w = random_walk(T, rng, 2 + rng.below_int(4));
        auto ts = closed_turn_sequence(T, w);
        int n_big = 0, n_2r = 0, n_3 = 0;
        for (const Turn& t : ts) {
            if (t.value >= 4 || t.value <= -4)
                ++n_big;
            else if (t.value == 2 && t.tag == Color::Red)
                ++n_2r;
            else if (t.value == 3)
                ++n_3;
        }
        if (n_big != 1 || n_2r != 1 ||
            n_big + n_2r + n_3 != static_cast<int>(ts.size()))
            continue;
        ++found;
        ReduceStats st;
        auto red = reduce_closed_walk(T, w, &st);
        CHECK(is_reduced_closed(T, red.walk));
        CHECK(st.total_moves() <= static_cast<std::uint64_t>(phi_closed(T, w)) + 1);
    }
    CHECK(found >= 1);
}

TEST_CASE("closed move count respects phi + 1") {
    auto T = build_reducing(2);
    Rng rng(11);
    for (int it = 0; it < 400; ++it) {
        auto w = random_walk(T, rng, 1 + rng.below_int(40));
        try {
            ReduceStats st;
            reduce_closed_walk(T, w, &st);
            CHECK(st.total_moves() <= static_cast<std::uint64_t>(phi_closed(T, w)) + 1);
        } catch (const ContractibleInput&) {
        }
    }
}
