#pragma once

#include <vector>

#include "untangle/combinatorial_map.hpp"
#include "untangle/reducing.hpp"

namespace testutil {

using untangle::CombinatorialMap;
using untangle::Dart;

/// Sphere: one vertex, one loop, two monogon faces.
inline CombinatorialMap sphere_loop() {
    return CombinatorialMap::from_rotations({{0, 1}});
}

/// Torus: one vertex, two interleaved loops, one square face.
inline CombinatorialMap torus_one_vertex() {
    return CombinatorialMap::from_rotations({{0, 2, 1, 3}});
}

/// One-vertex 4g-gon canonical schema: loops a1 b1 ... ag bg, one face
/// reading a1 b1 a1' b1' ...; edge a_t has forward dart 4t, b_t has 4t+2.
inline CombinatorialMap schema_4g(int g) {
    std::vector<int> word;
    for (int t = 0; t < g; ++t) {
        int a = 2 * t, b = 2 * t + 1;
        word.push_back(a);
        word.push_back(b);
        word.push_back(~a);
        word.push_back(~b);
    }
    return CombinatorialMap::from_faces({word});
}

/// Planar square with one diagonal: 2 triangles + outer square face.
/// Vertices A=0, B=1, C=2, D=3; edges AB=0, BC=1, CD=2, DA=3, BD=4.
inline CombinatorialMap square_with_diagonal() {
    // faces with the face to the left (ccw interior triangles; the
    // outer face is traversed clockwise around the square)
    return CombinatorialMap::from_faces({
        {0, 4, 3},        // A->B, B->D, D->A
        {1, 2, ~4},       // B->C, C->D, D->B
        {~3, ~2, ~1, ~0}  // outer: A->D, D->C, C->B, B->A
    });
}

}  // namespace testutil
