#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mca/matrix.hpp"

namespace mca::testing {

/// Seeded uniform fill, column-major order, entries in [lo, hi).
Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -1.0,
                     double hi = 1.0);

Vector random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

/// The hand-computed 2x2 fixture [[2,0],[0,1]].
Matrix fixture_x();

struct Blobs {
  Matrix x;  // p-by-n, columns are points
  std::vector<int> labels;
};

/// 60 points in the plane around (0,0) and (6,6), sigma 0.5, fixed seed,
/// shifted so every coordinate is positive.
Blobs two_blobs();

/// 60 points in R^3 around (0,0,0), (8,0,0), (0,8,0), sigma 0.5, fixed seed,
/// shifted positive. Rank 3, so two components exist.
Blobs three_blobs();

/// Deterministic corpus of seeded random matrices, p in [3,30], n in [4,50],
/// entries uniform in [-1,1), filtered to instances that pass
/// check_assumptions with at least one computable beta.
std::vector<Matrix> acceptance_corpus(std::size_t count = 200);

/// Write x as a rows-are-points CSV (one line per column of x).
void write_points_csv(const std::string& path, const Matrix& x);

}  // namespace mca::testing
