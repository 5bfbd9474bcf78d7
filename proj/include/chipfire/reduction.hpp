#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chipfire/orientation.hpp"

namespace chipfire {

inline constexpr std::size_t kDefaultLoopCeiling = 10'000'000;

struct DharOutcome {
  VertexSet firing_set;      // unburnt vertices; empty iff superstable
  Orientation orientation;   // burn directions; pairs inside firing_set stay unoriented
  std::vector<std::string> burn_order;  // q first
};

/// Burning algorithm. Scans unburnt vertices in canonical order and burns
/// the first one whose burning edges outnumber its chips, then rescans.
/// Throws NegativeConfiguration.
DharOutcome dhar_burning(const Configuration& c);

struct Reduction {
  Divisor divisor;
  FiringScript script;  // apply_script(input, script) == divisor
};

/// Moves all debt onto q: afterwards every v != q is nonnegative.
Reduction concentrate_debt(const Divisor& d, std::string_view q);

/// The unique q-reduced divisor equivalent to d.
Reduction q_reduce(const Divisor& d, std::string_view q,
                   std::size_t loop_ceiling = kDefaultLoopCeiling);

bool is_q_reduced(const Divisor& d, std::string_view q);

struct EwdStep {
  enum class Phase { Concentrate, Dhar };
  Phase phase;
  std::size_t iteration;
  VertexSet fired;     // empty on the final Dhar pass
  Chip times = 0;      // how often `fired` was fired in this step
  ChipVector chips;    // divisor after the step
};

struct EwdResult {
  bool winnable;
  std::optional<Divisor> q_reduced;
  std::optional<Orientation> orientation;
  std::vector<EwdStep> log;
};

/// Winnability through q-reduction. The optimized mode answers deg < 0 and
/// deg >= genus without reducing, leaving q_reduced and orientation empty.
/// An empty q selects the canonically least vertex.
EwdResult ewd(const Divisor& d, std::string_view q = {}, bool optimized = false);

/// Winnability only, without logging or allocation of intermediate objects.
bool is_winnable(const Divisor& d, bool optimized = true);

}  // namespace chipfire
