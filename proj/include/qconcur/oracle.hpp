#pragma once

#include <cstdint>

#include "qconcur/states.hpp"
#include "qconcur/tensor.hpp"
#include "qconcur/types.hpp"

namespace qconcur::oracle {

/// Exact two-qubit concurrence, max(0, l1 - l2 - l3 - l4) over the square
/// roots of the eigenvalues of rho (sy(x)sy) rho* (sy(x)sy).
double wootters(const DensityMatrix& rho);

/// Running-minimum upper estimate of the mixed-state concurrence.
struct EnsembleEstimate {
  double value = 0.0;
  int num_trials = 0;
  std::uint64_t seed = 0;
};

/// Samples pure-state decompositions of rho (random isometries applied to
/// the eigen-square-root, refined by random pairwise rotations of the best
/// decomposition found) and returns the smallest average pure-state
/// concurrence seen. Non-increasing in `trials` for a fixed seed.
EnsembleEstimate convex_roof_estimate(const DensityMatrix& rho, int trials,
                                      std::uint64_t seed);

/// Unoptimized direct evaluation of the minor-sum concurrence: a plain
/// quadruple loop over all ordered index pairs for every bipartition.
/// Reference for pure_concurrence_cd.
double minor_sum_concurrence(const PureState& psi);

}  // namespace qconcur::oracle
