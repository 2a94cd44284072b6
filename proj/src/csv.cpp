#include "mca/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mca/errors.hpp"

namespace mca {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

[[noreturn]] void parse_fail(std::size_t row, std::size_t col, const std::string& what) {
  raise(errc::parse_error,
        "row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + what);
}

double parse_number(const std::string& raw, std::size_t row, std::size_t col) {
  const std::string field = trim(raw);
  if (field.empty()) parse_fail(row, col, "empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size())
    parse_fail(row, col, "not a number: '" + field + "'");
  if (errno == ERANGE || !std::isfinite(v))
    parse_fail(row, col, "value is not finite: '" + field + "'");
  return v;
}

}  // namespace

Dataset load_dataset(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) raise(errc::parse_error, "cannot open file: " + spec.path);
  if (spec.label_column && spec.orientation != Orientation::rows_are_points)
    raise(errc::invalid_flag, "label column requires rows-are-points orientation");

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  bool skipped_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;  // blank lines (incl. trailing newline) are ignored
    if (spec.header && !skipped_header) {
      skipped_header = true;
      continue;
    }
    const auto fields = split(line, spec.delimiter);
    if (width == 0) {
      width = fields.size();
      if (spec.label_column && *spec.label_column >= width)
        raise(errc::parse_error, "label column " + std::to_string(*spec.label_column) +
                                     " out of range for " + std::to_string(width) + " columns");
      if (spec.label_column && width < 2)
        raise(errc::parse_error, "no numeric columns besides the label column");
    } else if (fields.size() != width) {
      parse_fail(lineno, fields.size(), "expected " + std::to_string(width) + " fields, got " +
                                            std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (spec.label_column && c == *spec.label_column) {
        labels.push_back(trim(fields[c]));
        continue;
      }
      row.push_back(parse_number(fields[c], lineno, c + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) raise(errc::parse_error, "no data rows in " + spec.path);

  const std::size_t file_rows = rows.size();
  const std::size_t file_cols = rows.front().size();
  Dataset ds;
  if (spec.orientation == Orientation::rows_are_points) {
    ds.x = Matrix(file_cols, file_rows);  // transpose: points become columns
    for (std::size_t r = 0; r < file_rows; ++r)
      for (std::size_t c = 0; c < file_cols; ++c) ds.x(c, r) = rows[r][c];
  } else {
    ds.x = Matrix(file_rows, file_cols);
    for (std::size_t r = 0; r < file_rows; ++r)
      for (std::size_t c = 0; c < file_cols; ++c) ds.x(r, c) = rows[r][c];
  }
  ds.labels = std::move(labels);
  return ds;
}

std::string format_full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 15; prec <= 16; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

void write_embedding_csv(const std::string& path, const Matrix& embedding) {
  std::ofstream out(path);
  if (!out) raise(errc::invalid_argument, "cannot open for writing: " + path);
  for (std::size_t i = 0; i < embedding.rows(); ++i) {
    out << "component_" << (i + 1);
    for (std::size_t j = 0; j < embedding.cols(); ++j)
      out << ',' << format_full_precision(embedding(i, j));
    out << '\n';
  }
  if (!out) raise(errc::invalid_argument, "write failed: " + path);
}

}  // namespace mca
