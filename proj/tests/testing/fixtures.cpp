#include "testing/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mca/csv.hpp"
#include "mca/mca.hpp"

namespace mca::testing {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Blobs make_blobs(const std::vector<Vector>& centers, std::size_t per_cluster, double sigma,
                 std::uint64_t seed) {
  const std::size_t p = centers.front().size();
  const std::size_t n = centers.size() * per_cluster;
  std::mt19937_64 rng(seed);
  Blobs blobs;
  blobs.x = Matrix(p, n);
  blobs.labels.reserve(n);
  std::size_t col = 0;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (std::size_t t = 0; t < per_cluster; ++t, ++col) {
      for (std::size_t i = 0; i < p; ++i)
        blobs.x(i, col) = centers[c][i] + sigma * standard_normal(rng);
      blobs.labels.push_back(static_cast<int>(c));
    }
  }
  double lowest = blobs.x(0, 0);
  for (std::size_t i = 0; i < blobs.x.size(); ++i) lowest = std::min(lowest, blobs.x.data()[i]);
  if (lowest < 0.1) {
    const double shift = 0.1 - lowest;
    for (std::size_t i = 0; i < blobs.x.size(); ++i) blobs.x.data()[i] += shift;
  }
  return blobs;
}

}  // namespace

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo,
                     double hi) {
  std::mt19937_64 rng(seed);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = lo + (hi - lo) * uniform01(rng);
  return m;
}

Vector random_vector(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  Vector v(n);
  for (double& e : v) e = lo + (hi - lo) * uniform01(rng);
  return v;
}

Matrix fixture_x() {
  Matrix x(2, 2);
  x(0, 0) = 2.0;
  x(1, 1) = 1.0;
  return x;
}

Blobs two_blobs() { return make_blobs({{0.0, 0.0}, {6.0, 6.0}}, 30, 0.5, 20240613); }

Blobs three_blobs() {
  return make_blobs({{0.0, 0.0, 0.0}, {8.0, 0.0, 0.0}, {0.0, 8.0, 0.0}}, 20, 0.5, 20240614);
}

std::vector<Matrix> acceptance_corpus(std::size_t count) {
  std::vector<Matrix> corpus;
  corpus.reserve(count);
  for (std::uint64_t seed = 1; corpus.size() < count; ++seed) {
    if (seed > 50 * count) throw std::runtime_error("corpus generation stalled");
    std::mt19937_64 rng(seed);
    const std::size_t p = 3 + static_cast<std::size_t>(rng() % 28);  // [3,30]
    const std::size_t n = 4 + static_cast<std::size_t>(rng() % 47);  // [4,50]
    Matrix x(p, n);
    for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = -1.0 + 2.0 * uniform01(rng);
    const AssumptionReport report = check_assumptions(x);
    if (report.passed && report.beta_count >= 1) corpus.push_back(std::move(x));
  }
  return corpus;
}

void write_points_csv(const std::string& path, const Matrix& x) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (i) out << ',';
      out << format_full_precision(x(i, j));
    }
    out << '\n';
  }
}

}  // namespace mca::testing
