#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chipfire/graph.hpp"

namespace chipfire {

// Named graph families. Platonic solids use zero-padded labels "v00", "v01",
// ... so that canonical (lexicographic) order matches construction order.

GraphPtr tetrahedron();   // K4
GraphPtr cube();          // Q3, 3-regular on 8 vertices
GraphPtr octahedron();    // K_{2,2,2}
GraphPtr dodecahedron();  // generalized Petersen graph GP(10,2)
GraphPtr icosahedron();   // pentagonal antiprism capped at both ends
GraphPtr complete_graph(int n);

/// Chain of cycles. Cycle n (1-based) has vertices z_n_0 .. z_n_{m-1}
/// joined in a cycle (a 2-cycle is one pair of multiplicity 2), and a
/// single bridge joins z_n_0 to z_{n+1}_{m_{n+1}-1}.
GraphPtr chain_of_cycles(const std::vector<int>& lengths);

/// Parses "tetrahedron", "cube", "octahedron", "dodecahedron",
/// "icosahedron", "complete:N" or "chain:m1,m2,...".
GraphPtr generate_family(std::string_view spec);

}  // namespace chipfire
