#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace chipfire {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Chip counts and firing counts. Debts can grow large during debt
/// concentration, hence 64 bits.
using Chip = std::int64_t;
using ChipVector = Vector<Chip>;

}  // namespace chipfire
