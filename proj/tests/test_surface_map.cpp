#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "untangle/cover.hpp"
#include "untangle/drawing.hpp"
#include "untangle/io.hpp"

using namespace untangle;

TEST_CASE("single loop on the sphere") {
    auto m = testutil::sphere_loop();
    CHECK(m.vertex_count() == 1);
    CHECK(m.edge_count() == 1);
    CHECK(m.face_count() == 2);
    auto [g, b] = m.genus_and_boundary();
    CHECK(g == 0);
    CHECK(b == 0);
}

TEST_CASE("one-vertex torus map") {
    auto m = testutil::torus_one_vertex();
    CHECK(m.face_count() == 1);
    auto [g, b] = m.genus_and_boundary();
    CHECK(g == 1);
    CHECK(b == 0);

    SECTION("marking the face as boundary gives an annulus-with-handle count") {
        m.mark_boundary(0);
        auto [g2, b2] = m.genus_and_boundary();
        CHECK(g2 == 1);
        CHECK(b2 == 1);
    }
}

TEST_CASE("4g-gon schema for g=2") {
    auto m = testutil::schema_4g(2);
    CHECK(m.vertex_count() == 1);
    CHECK(m.edge_count() == 4);
    CHECK(m.face_count() == 1);
    auto [g, b] = m.genus_and_boundary();
    CHECK(g == 2);
    CHECK(b == 0);
}

TEST_CASE("twin is a fixed-point-free involution") {
    auto m = testutil::schema_4g(3);
    for (Dart d = 0; d < m.dart_count(); ++d) {
        CHECK(twin(twin(d)) == d);
        CHECK(twin(d) != d);
    }
}

TEST_CASE("face orbits are consistent with sigma") {
    auto m = testutil::square_with_diagonal();
    CHECK(m.vertex_count() == 4);
    CHECK(m.edge_count() == 5);
    CHECK(m.face_count() == 3);
    auto [g, b] = m.genus_and_boundary();
    CHECK(g == 0);
    // every dart sees its face on the left and the neighbor on the right
    for (Dart d = 0; d < m.dart_count(); ++d) {
        CHECK(m.left_face(d) == m.left_face(m.face_next(d)));
        CHECK(m.left_face(d) != m.right_face(d));
    }
}

TEST_CASE("build_map rejects broken inputs") {
    CHECK_THROWS_AS(CombinatorialMap::from_rotations({{0, 1}, {2}}), NonInvolutiveTwin);
    CHECK_THROWS_AS(CombinatorialMap::from_rotations({{0, 0}}), ParseError);
    // two separate loops at two vertices: disconnected
    CHECK_THROWS_AS(CombinatorialMap::from_rotations({{0, 1}, {2, 3}}), DisconnectedMap);
}

TEST_CASE("map file round-trip") {
    auto m = testutil::schema_4g(2);
    std::ostringstream out;
    serialize_map(out, m);
    std::istringstream in(out.str());
    MapFile mf = parse_map(in);
    std::ostringstream out2;
    serialize_map(out2, mf.map);
    CHECK(out.str() == out2.str());
    CHECK(mf.map.genus_and_boundary() == m.genus_and_boundary());
}

TEST_CASE("drawing file round-trip") {
    auto host = testutil::torus_one_vertex();
    Drawing d;
    d.host = &host;
    d.graph.vertex_count = 2;
    d.graph.edges = {{0, 1}, {1, 1}, {0, 0}};
    d.vertex_image = {0, 0};
    d.edge_walks = {{0, 2}, {}, {1, 3}};
    d.validate();
    CHECK(d.size() == 3 + 4);

    std::ostringstream out;
    serialize_drawing(out, d);
    std::istringstream in(out.str());
    Drawing d2 = parse_drawing(in, host);
    std::ostringstream out2;
    serialize_drawing(out2, d2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("contracting a path graph's tree collapses walks") {
    auto host = testutil::square_with_diagonal();
    // G: path of 2 edges drawn along host edges AB, BC
    Drawing d;
    d.host = &host;
    d.graph.vertex_count = 3;
    d.graph.edges = {{0, 1}, {1, 2}};
    d.vertex_image = {host.source(0), host.head(0), host.head(2)};
    d.edge_walks = {{0}, {2}};
    d.validate();

    auto forest = dfs_forest(d.graph);
    Drawing c = contract_spanning_forest(d, forest);
    for (int e = 0; e < c.graph.edge_count(); ++e) CHECK(c.edge_walks[e].empty());
    for (int v = 0; v < 3; ++v) CHECK(c.vertex_image[v] == c.vertex_image[0]);
}

TEST_CASE("host tree contraction keeps drawings homotopic") {
    // torus with the meridian subdivided: vertices u, w; edge a = u->w
    // (darts 0/1), loop y at u (2/3), edge b = w->u (4/5)
    auto host = CombinatorialMap::from_rotations({{0, 2, 5, 3}, {4, 1}});
    REQUIRE(host.genus_and_boundary() == std::pair<int, int>{1, 0});
    Drawing d;
    d.host = &host;
    d.graph.vertex_count = 1;
    d.graph.edges = {{0, 0}, {0, 0}};
    d.vertex_image = {host.source(0)};
    d.edge_walks = {{0, 4}, {2, 0, 4, 3}};  // x and y.x.y^-1, homotopic on the torus
    d.validate();

    auto [newmap, nd] = contract_host_forest(d, {0});  // contract tree edge a
    nd.host = &newmap;
    nd.validate();
    CHECK(newmap.vertex_count() == 1);
    CHECK(newmap.edge_count() == 2);

    UniversalCover cov_old(host);
    UniversalCover cov_new(newmap);
    CHECK_FALSE(cov_old.contractible_loop(d.edge_walks[0]));
    CHECK_FALSE(cov_new.contractible_loop(nd.edge_walks[0]));
    CHECK(cov_old.homotopic(d.edge_walks[0], d.edge_walks[1], 0));
    CHECK(cov_new.homotopic(nd.edge_walks[0], nd.edge_walks[1], nd.vertex_image[0]));
}

TEST_CASE("monogon removal and bigon merge") {
    // one vertex; loop 0 contractible (monogon), loops 1 and 2 parallel
    // (bigon), drawn as the boundary structure of a sphere
    auto m = CombinatorialMap::from_faces({
        {0},              // monogon of edge 0
        {~0, 1, ~2},      // face between: other side of 0, edge1, reverse edge2
        {2, ~1},          // bigon between edges 1 and 2
    });
    auto [g0, b0] = m.genus_and_boundary();
    CHECK(g0 == 0);
    auto res = remove_monogons_and_bigons(m);
    CHECK(res.map.edge_count() == 1);
    for (int f = 0; f < res.map.face_count(); ++f) CHECK(res.map.face_size(f) >= 1);
    // the monogon edge vanished from substitutions
    CHECK(res.substitution[0].empty());
    CHECK(res.substitution[1].empty());
    // the bigon pair merged: edge 2's darts map to edge 1's (or vice versa)
    CHECK(res.substitution[4].size() == 1);
}

TEST_CASE("Euler characteristic is preserved by simplification") {
    auto m = testutil::schema_4g(2);
    auto res = remove_monogons_and_bigons(m);
    CHECK(res.map.euler_characteristic() == m.euler_characteristic());
}
