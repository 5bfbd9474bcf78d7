#include "chipfire/enumeration.hpp"

namespace chipfire {

bool next_composition(ChipVector& chips) {
  const Index n = chips.size();
  Index i = n - 2;
  while (i >= 0 && chips(i) == 0) --i;
  if (i < 0) return false;
  const Chip tail = chips(n - 1);
  chips(i) -= 1;
  chips(n - 1) = 0;
  chips(i + 1) = tail + 1;
  return true;
}

EffectiveDivisors::iterator& EffectiveDivisors::iterator::operator++() {
  if (!done_ && !next_composition(current_)) done_ = true;
  return *this;
}

EffectiveDivisors::iterator EffectiveDivisors::begin() const {
  if (degree_ < 0) return {};
  ChipVector start = ChipVector::Zero(graph_->num_vertices());
  start(0) = degree_;
  return iterator(std::move(start));
}

std::size_t EffectiveDivisors::size(std::size_t limit) const {
  if (degree_ < 0) return 0;
  return stars_and_bars(degree_, graph_->num_vertices(), limit);
}

}  // namespace chipfire
