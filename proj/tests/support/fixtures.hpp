#pragma once

#include "chipfire/chipfire.hpp"

namespace chipfire::testing {

/// The four-person example graph: Alice-Elise doubled, Bob and Charlie
/// single edges.
inline GraphPtr example_graph() {
  return build_graph({"Alice", "Bob", "Charlie", "Elise"},
                     {{"Alice", "Bob", 1},
                      {"Alice", "Charlie", 1},
                      {"Alice", "Elise", 2},
                      {"Bob", "Charlie", 1},
                      {"Charlie", "Elise", 1}});
}

inline Divisor example_divisor(const GraphPtr& g) {
  return make_divisor(g, {{"Alice", 2}, {"Bob", -3}, {"Charlie", 4}, {"Elise", -1}});
}

inline Divisor chips(const GraphPtr& g, std::initializer_list<Chip> values) {
  ChipVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (Chip c : values) v(i++) = c;
  return {g, v};
}

inline GraphPtr k2(int multiplicity = 1) { return build_graph({"u", "v"}, {{"u", "v", multiplicity}}); }

inline GraphPtr triangle() { return build_graph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}}); }

}  // namespace chipfire::testing
