#pragma once

#include <cstdint>

#include "mca/matrix.hpp"

namespace mca {

struct KMeansResult {
  std::vector<int> labels;  // one per point (column)
  Matrix centers;           // dim-by-k
  double inertia = 0.0;     // sum of squared distances to assigned centers
  std::size_t iterations = 0;
};

/// Lloyd iterations with k-means++ seeding, fully deterministic for a given
/// seed (hand-rolled uniform draws, no std::distribution). points is dim-by-n
/// with one point per column. Iteration cap 300; converged when no center
/// moves more than `tol` (2-norm).
KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations = 300, double tol = 1e-9);

}  // namespace mca
