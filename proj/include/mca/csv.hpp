#pragma once

#include <optional>
#include <string>

#include "mca/matrix.hpp"

namespace mca {

enum class Orientation { rows_are_points, cols_are_points };

struct DatasetSpec {
  std::string path;
  char delimiter = ',';
  Orientation orientation = Orientation::rows_are_points;
  std::optional<std::size_t> label_column;  // 0-based column in the file
  bool header = false;
};

/// Parsed dataset in the internal convention: x is p-by-n with data points in
/// columns. With rows_are_points the file is transposed on ingestion; the
/// label column, when present, is carried alongside as strings.
struct Dataset {
  Matrix x;
  std::vector<std::string> labels;  // one per point when label_column is set
};

/// Strict numeric CSV reader. Throws Error(errc::parse_error) with 1-based
/// row/column positions for malformed numbers, ragged rows, non-finite values
/// or an empty file.
Dataset load_dataset(const DatasetSpec& spec);

/// One row per component: a leading "component_i" label field followed by the
/// n values at full precision.
void write_embedding_csv(const std::string& path, const Matrix& embedding);

/// Shortest decimal string that round-trips to the same double.
std::string format_full_precision(double v);

}  // namespace mca
