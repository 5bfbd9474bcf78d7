#include "chipfire/families.hpp"

#include <charconv>
#include <cstdio>
#include <utility>

namespace chipfire {
namespace {

std::string label(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "v%02d", i);
  return buf;
}

GraphPtr from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::string> vertices;
  for (int i = 0; i < n; ++i) vertices.push_back(label(i));
  std::vector<EdgeSpec> edges;
  for (auto [a, b] : pairs) edges.push_back({label(a), label(b), 1});
  return build_graph(vertices, edges);
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidParameter,
                "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

GraphPtr complete_graph(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "complete graph needs n >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return from_pairs(n, pairs);
}

GraphPtr tetrahedron() { return complete_graph(4); }

GraphPtr cube() {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 8; ++i)
    for (int bit = 1; bit < 8; bit <<= 1)
      if ((i & bit) == 0) pairs.emplace_back(i, i | bit);
  return from_pairs(8, pairs);
}

GraphPtr octahedron() {
  // antipodal pairs {0,1}, {2,3}, {4,5} are the only non-edges
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (i / 2 != j / 2) pairs.emplace_back(i, j);
  return from_pairs(6, pairs);
}

GraphPtr dodecahedron() {
  // outer 10-cycle on 0..9, spokes i -- 10+i, inner star i -- i+2 on 10..19
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 10; ++i) {
    pairs.emplace_back(i, (i + 1) % 10);
    pairs.emplace_back(i, 10 + i);
    pairs.emplace_back(10 + i, 10 + (i + 2) % 10);
  }
  return from_pairs(20, pairs);
}

GraphPtr icosahedron() {
  // apex 0, upper ring 1..5, lower ring 6..10, apex 11
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i) {
    const int up = 1 + i;
    const int up_next = 1 + (i + 1) % 5;
    const int low = 6 + i;
    const int low_next = 6 + (i + 1) % 5;
    pairs.emplace_back(0, up);
    pairs.emplace_back(up, up_next);
    pairs.emplace_back(up, low);
    pairs.emplace_back(up, low_next);
    pairs.emplace_back(low, low_next);
    pairs.emplace_back(low, 11);
  }
  return from_pairs(12, pairs);
}

GraphPtr chain_of_cycles(const std::vector<int>& lengths) {
  if (lengths.empty()) throw Error(ErrorCode::InvalidParameter, "chain needs at least one cycle");
  auto z = [](std::size_t n, int j) { return "z_" + std::to_string(n + 1) + "_" + std::to_string(j); };
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  for (std::size_t n = 0; n < lengths.size(); ++n) {
    const int m = lengths[n];
    if (m < 2) {
      throw Error(ErrorCode::InvalidParameter,
                  "cycle length " + std::to_string(m) + " is below 2");
    }
    for (int j = 0; j < m; ++j) vertices.push_back(z(n, j));
    if (m == 2) {
      edges.push_back({z(n, 0), z(n, 1), 2});
    } else {
      for (int j = 0; j < m; ++j) edges.push_back({z(n, j), z(n, (j + 1) % m), 1});
    }
    if (n > 0) edges.push_back({z(n - 1, 0), z(n, m - 1), 1});
  }
  return build_graph(vertices, edges);
}

GraphPtr generate_family(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto name = spec.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (name == "tetrahedron") return tetrahedron();
  if (name == "cube") return cube();
  if (name == "octahedron") return octahedron();
  if (name == "dodecahedron") return dodecahedron();
  if (name == "icosahedron") return icosahedron();
  if (name == "complete") return complete_graph(parse_int(arg, "vertex count"));
  if (name == "chain") {
    std::vector<int> lengths;
    std::size_t start = 0;
    while (start <= arg.size()) {
      const auto comma = arg.find(',', start);
      const auto piece = arg.substr(start, comma == std::string_view::npos ? arg.size() - start : comma - start);
      lengths.push_back(parse_int(piece, "cycle length"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return chain_of_cycles(lengths);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown graph family '" + std::string(spec) + "'");
}

}  // namespace chipfire
