#include "mca/kmeans.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "mca/errors.hpp"
#include "mca/kernels.hpp"

namespace mca {

namespace {

// mt19937_64 output mapped to [0,1) by hand; std::uniform_real_distribution is
// not guaranteed identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

Matrix seed_centers(const Matrix& points, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = points.cols();
  const std::size_t dim = points.rows();
  Matrix centers(dim, k);
  std::vector<std::size_t> chosen;
  chosen.push_back(uniform_index(rng, n));
  Vector dist_sq(n);
  while (chosen.size() < k) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c : chosen) best = std::min(best, sq_distance(points.col(j), points.col(c)));
      dist_sq[j] = best;
      total += best;
    }
    std::size_t pick;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t j = 0; j < n; ++j) {
        acc += dist_sq[j];
        if (acc >= target) {
          pick = j;
          break;
        }
      }
    } else {
      pick = uniform_index(rng, n);  // all residual mass zero: coincident points
    }
    chosen.push_back(pick);
  }
  for (std::size_t c = 0; c < k; ++c) {
    auto src = points.col(chosen[c]);
    std::copy(src.begin(), src.end(), centers.col(c).begin());
  }
  return centers;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations, double tol) {
  const std::size_t n = points.cols();
  const std::size_t dim = points.rows();
  if (k < 1) raise(errc::invalid_argument, "kmeans: k must be >= 1");
  if (k > n) raise(errc::invalid_argument, "kmeans: k exceeds the number of points");
  if (dim == 0) raise(errc::invalid_argument, "kmeans: zero-dimensional points");

  std::mt19937_64 rng(seed);
  KMeansResult result;
  result.centers = seed_centers(points, k, rng);
  result.labels.assign(n, 0);

  Matrix next(dim, k);
  std::vector<std::size_t> counts(k);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;

    // Assign: nearest center, ties to the lowest index.
    for (std::size_t j = 0; j < n; ++j) {
      double best = std::numeric_limits<double>::infinity();
      int best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sq_distance(points.col(j), result.centers.col(c));
        if (d < best) {
          best = d;
          best_c = static_cast<int>(c);
        }
      }
      result.labels[j] = best_c;
    }

    // Update.
    next = Matrix(dim, k);
    std::fill(counts.begin(), counts.end(), std::size_t{0});
    for (std::size_t j = 0; j < n; ++j) {
      kernels::axpy(1.0, points.col(j), next.col(static_cast<std::size_t>(result.labels[j])));
      ++counts[static_cast<std::size_t>(result.labels[j])];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        kernels::scal(1.0 / static_cast<double>(counts[c]), next.col(c));
      } else {
        // Empty cluster: restart it at the point farthest from its center.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double d = sq_distance(
              points.col(j), result.centers.col(static_cast<std::size_t>(result.labels[j])));
          if (d > far_d) {
            far_d = d;
            far = j;
          }
        }
        auto src = points.col(far);
        std::copy(src.begin(), src.end(), next.col(c).begin());
      }
    }

    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      max_shift = std::max(max_shift, std::sqrt(sq_distance(next.col(c), result.centers.col(c))));
    result.centers = next;
    if (max_shift <= tol) break;
  }

  // Final assignment against the final centers, plus the objective.
  result.inertia = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = sq_distance(points.col(j), result.centers.col(c));
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    result.labels[j] = best_c;
    result.inertia += best;
  }
  return result;
}

}  // namespace mca
