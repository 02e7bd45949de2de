#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "untangle/io.hpp"
#include "untangle/reducing.hpp"

using namespace untangle;

namespace {

/// Planar wheel: center vertex of degree 8, rim r0..r7, 8 triangles
/// plus the outer octagon face.  Edge labels: spoke i = i (center->ri),
/// rim i = 8+i (ri -> r(i+1)).
CombinatorialMap wheel8() {
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 8; ++i) {
        int j = (i + 1) % 8;
        faces.push_back({i, 8 + i, ~j});  // center->ri, ri->rj, rj->center
    }
    std::vector<int> outer;
    for (int i = 7; i >= 0; --i) outer.push_back(~(8 + i));  // clockwise rim
    faces.push_back(outer);
    return CombinatorialMap::from_faces(faces);
}

}  // namespace

TEST_CASE("hand-drawn degree-8 star pins the turn sign convention") {
    auto m = wheel8();
    // center vertex = source of spoke darts
    int center = m.source(2 * 0);
    REQUIRE(m.degree(center) == 8);
    // arrive at the center along spoke 0 reversed, leave along spoke 3:
    // rotating counterclockwise from the outgoing spoke 3 to the
    // reversed entry spoke leaves 5 wedges on the left, so the
    // normalized turn is -3 (3 triangles to the right).
    Dart e_in = twin(2 * 0);  // r0 -> center
    Dart e_out = 2 * 3;       // center -> r3
    CHECK(m.left_corners(e_in, e_out) == 5);
    CHECK(m.turn_value(e_in, e_out) == -3);
    // leaving along spoke 5 keeps 3 wedges on the left instead
    CHECK(m.left_corners(e_in, 2 * 5) == 3);
    CHECK(m.turn_value(e_in, 2 * 5) == 3);
}

TEST_CASE("turn basics on the wheel") {
    auto m = wheel8();
    int center = m.source(0);
    for (int i = 0; i < 8; ++i) {
        Dart e_in = twin(2 * i);
        CHECK(m.turn_value(e_in, twin(e_in)) == 0);       // spur
        CHECK(m.dart_by_turn(e_in, 0) == twin(e_in));     // inverse at 0
        for (int k = -3; k <= 4; ++k) {
            Dart out = m.dart_by_turn(e_in, k);
            int left = m.left_corners(e_in, out);
            CHECK(left == ((k % 8) + 8) % 8);
        }
    }
    // composing 1-turn steps walks once around the vertex star
    Dart x = 2 * 0;
    Dart cur = x;
    for (int step = 0; step < m.degree(center); ++step)
        cur = m.dart_by_turn(twin(cur), 1);
    CHECK(cur == x);
}

TEST_CASE("build_reducing(2) has the forced profile") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    CHECK(m.vertex_count() == 1);
    CHECK(m.edge_count() == 9);
    CHECK(m.face_count() == 6);
    CHECK(m.euler_characteristic() == -2);
    CHECK(3 * m.face_count() == 2 * m.edge_count());
    CHECK(m.degree(0) == 18);
    CHECK(T.genus() == 2);
    CHECK(T.canonical_loops().size() == 4);
}

TEST_CASE("build_reducing validates for g = 3, 4, 5, 7") {
    for (int g : {3, 4, 5, 7}) {
        auto T = build_reducing(g);
        CHECK(T.genus() == g);
        CHECK(T.map().euler_characteristic() == 2 - 2 * g);
        CHECK(static_cast<int>(T.canonical_loops().size()) == 2 * g);
        // size O(g): the degree-8 bound forces F <= 16(g-1)
        CHECK(T.map().face_count() <= 16 * (g - 1));
    }
}

TEST_CASE("build_reducing rejects g < 2") {
    CHECK_THROWS_AS(build_reducing(1), GenusTooSmall);
    CHECK_THROWS_AS(build_reducing(0), GenusTooSmall);
}

TEST_CASE("one-vertex torus triangulation is rejected for degree") {
    // two triangles x y ~z / z ~x ~y: every vertex has degree 6
    auto m = CombinatorialMap::from_faces({{0, 1, ~2}, {2, ~0, ~1}});
    REQUIRE(m.vertex_count() == 1);
    REQUIRE(m.genus_and_boundary().first == 1);
    CHECK_THROWS_AS(ReducingTriangulation(m, two_color_faces(m)), DegreeBelowEight);
}

TEST_CASE("subdividing a triangle breaks dual bipartiteness") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    // reconstruct face lists with labels, splitting face 0 around a new vertex
    std::vector<std::vector<int>> faces;
    int nlab = m.edge_count();
    auto lab = [](Dart d) { return d % 2 == 0 ? d / 2 : ~(d / 2); };
    const auto& f0 = m.face_cycle(0);
    int alpha = nlab, beta = nlab + 1, gamma = nlab + 2;
    faces.push_back({lab(f0[0]), beta, ~alpha});
    faces.push_back({lab(f0[1]), gamma, ~beta});
    faces.push_back({lab(f0[2]), alpha, ~gamma});
    for (int f = 1; f < m.face_count(); ++f) {
        std::vector<int> fl;
        for (Dart d : m.face_cycle(f)) fl.push_back(lab(d));
        faces.push_back(fl);
    }
    auto m2 = CombinatorialMap::from_faces(faces);
    CHECK(m2.genus_and_boundary().first == 2);
    CHECK_THROWS_AS(two_color_faces(m2), DualNotBipartite);
}

TEST_CASE("color flip across 2- and 4-turns, preserved across 3-turns") {
    auto T = build_reducing(2);
    const auto& m = T.map();
    for (Dart e_in = 0; e_in < m.dart_count(); ++e_in) {
        for (int k : {2, 3, 4}) {
            Dart e_out = m.dart_by_turn(e_in, k);
            Color in_color = T.left_color(e_in);
            Color out_color = T.left_color(e_out);
            if (k == 3) {
                CHECK(in_color == out_color);
            } else {
                CHECK(in_color != out_color);
            }
        }
    }
}

TEST_CASE("positive representative is chosen for middle turns") {
    auto T = build_reducing(2);  // single vertex of degree 18
    const auto& m = T.map();
    Dart e_in = 0;
    for (int left = 4; left <= 14; ++left) {
        Dart out = m.dart_by_turn(e_in, left);
        CHECK(m.turn_value(e_in, out) == left);  // both sides >= 4: positive
    }
    CHECK(m.turn_value(e_in, m.dart_by_turn(e_in, 15)) == -3);
    CHECK(m.turn_value(e_in, m.dart_by_turn(e_in, 3)) == 3);
}

TEST_CASE("triangulation file round-trip with colors and marks") {
    auto T = build_reducing(2);
    std::ostringstream out;
    auto colors = T.color_strings();
    serialize_map(out, T.map(), &colors, &T.canonical_loops());
    std::istringstream in(out.str());
    MapFile mf = parse_map(in);
    auto T2 = reducing_from_mapfile(mf);
    CHECK(T2.genus() == 2);
    std::ostringstream out2;
    auto colors2 = T2.color_strings();
    serialize_map(out2, T2.map(), &colors2, &T2.canonical_loops());
    CHECK(out.str() == out2.str());
}

TEST_CASE("turn round-trips through dart_by_turn") {
    auto T = build_reducing(3);
    const auto& m = T.map();
    for (Dart e = 0; e < m.dart_count(); ++e) {
        CHECK(m.dart_by_turn(e, 0) == twin(e));
        for (int k = -3; k <= 3; ++k) {
            CHECK(m.turn_value(e, m.dart_by_turn(e, k)) == k);
        }
    }
}
