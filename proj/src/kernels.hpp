#pragma once

// Allocation-light in-place routines shared by reduction, rank and gonality.

#include <cstddef>
#include <functional>
#include <vector>

#include "chipfire/graph.hpp"

namespace chipfire::detail {

struct Workspace {
  std::vector<char> unburnt;
  std::vector<Chip> burning;
  std::vector<Index> stack;
  std::vector<int> dist;
};

/// Marks the maximal legal firing set (the vertices the fire never reaches)
/// in ws.unburnt. Returns whether it is nonempty. Chips off q must be >= 0.
bool burn(const Multigraph& g, const ChipVector& chips, Index q, Workspace& ws);

/// Called after each step with the fired set, its repetition count and the
/// new chips.
using StepSink = std::function<void(const std::vector<char>& fired, Chip times, const ChipVector& chips)>;

/// Clears all debt off q by firing BFS balls around q, farthest shell first.
void concentrate(const Multigraph& g, ChipVector& chips, Index q, ChipVector* script, Workspace& ws,
                 const StepSink* sink = nullptr);

/// Fires maximal legal sets until none is left. Returns the number of
/// firing steps. Throws LoopCeiling past `ceiling` steps.
std::size_t fire_until_superstable(const Multigraph& g, ChipVector& chips, Index q, ChipVector* script,
                                   std::size_t ceiling, Workspace& ws, const StepSink* sink = nullptr);

/// concentrate + fire_until_superstable.
void reduce(const Multigraph& g, ChipVector& chips, Index q, ChipVector* script, std::size_t ceiling,
            Workspace& ws);

/// Winnability without shortcuts beyond deg < 0 and deg >= genus.
bool winnable(const Multigraph& g, ChipVector chips, Index q, Workspace& ws);

}  // namespace chipfire::detail
