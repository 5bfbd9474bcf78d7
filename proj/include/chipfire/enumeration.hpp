#pragma once

#include <cstddef>
#include <iterator>

#include "chipfire/divisor.hpp"

namespace chipfire {

/// Streams every effective divisor of a fixed degree, C(d+n-1, n-1) in all,
/// in canonical order: lexicographically descending on the chip vector, so
/// the first is d on the first vertex and the last is d on the last vertex.
class EffectiveDivisors {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ChipVector;
    using difference_type = std::ptrdiff_t;
    using reference = const ChipVector&;
    using pointer = const ChipVector*;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

   private:
    friend class EffectiveDivisors;
    explicit iterator(ChipVector start) : current_(std::move(start)), done_(false) {}
    ChipVector current_;
    bool done_ = true;
  };

  EffectiveDivisors(GraphPtr graph, long degree) : graph_(std::move(graph)), degree_(degree) {}

  iterator begin() const;
  iterator end() const { return {}; }
  std::size_t size(std::size_t limit = static_cast<std::size_t>(-2)) const;
  const GraphPtr& graph_ptr() const noexcept { return graph_; }

 private:
  GraphPtr graph_;
  long degree_;
};

inline EffectiveDivisors enumerate_effective(GraphPtr graph, long degree) {
  return {std::move(graph), degree};
}

/// Advances a composition to its successor in descending lexicographic
/// order. Returns false after the last one.
bool next_composition(ChipVector& chips);

}  // namespace chipfire
