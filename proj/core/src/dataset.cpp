#include "lgp/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lgp {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_value(const std::string& raw, std::int64_t line_no, std::size_t col) {
  const std::string field = trim(raw);
  const char* begin = field.data();
  const char* end = begin + field.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    std::ostringstream msg;
    msg << "csv: line " << line_no << ", column " << (col + 1)
        << ": cannot parse '" << field << "' as a number";
    throw DataError(msg.str());
  }
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "csv: line " << line_no << ", column " << (col + 1)
        << ": non-finite value '" << field << "'";
    throw DataError(msg.str());
  }
  return value;
}

}  // namespace

std::vector<std::string> stream_csv(
    const std::string& path,
    const std::function<void(std::int64_t, std::span<const double>)>& row_fn) {
  std::ifstream in(path);
  if (!in) throw IoError("csv: cannot open '" + path + "'");

  std::string line;
  std::int64_t line_no = 0;

  // Header row.
  if (!std::getline(in, line)) throw DataError("csv: '" + path + "' is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_line(line);
  for (auto& name : header) name = trim(name);
  if (header.empty()) throw DataError("csv: header row has no columns");

  std::vector<double> values(header.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << "csv: line " << line_no << ": expected " << header.size()
          << " columns, found " << fields.size();
      throw DataError(msg.str());
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      values[c] = parse_value(fields[c], line_no, c);
    }
    row_fn(line_no, values);
  }
  return header;
}

Dataset load_csv(const std::string& path) {
  std::vector<double> flat;
  std::int64_t rows = 0;
  std::size_t cols = 0;
  const std::vector<std::string> header =
      stream_csv(path, [&](std::int64_t, std::span<const double> row) {
        cols = row.size();
        flat.insert(flat.end(), row.begin(), row.end());
        ++rows;
      });
  if (header.size() < 2) {
    throw DataError("csv: need at least one input column and one target column");
  }
  if (rows == 0) throw DataError("csv: '" + path + "' has no data rows");

  const int d = static_cast<int>(cols) - 1;
  Dataset ds;
  ds.inputs.resize(rows, d);
  ds.targets.resize(rows);
  for (std::int64_t i = 0; i < rows; ++i) {
    for (int k = 0; k < d; ++k) ds.inputs(i, k) = flat[static_cast<std::size_t>(i) * cols + k];
    ds.targets[i] = flat[static_cast<std::size_t>(i) * cols + cols - 1];
  }
  ds.input_names.assign(header.begin(), header.end() - 1);
  ds.target_name = header.back();
  return ds;
}

Eigen::MatrixXd load_points_csv(const std::string& path, int dim) {
  std::vector<double> flat;
  std::int64_t rows = 0;
  std::size_t cols = 0;
  stream_csv(path, [&](std::int64_t line_no, std::span<const double> row) {
    if (row.size() != static_cast<std::size_t>(dim) &&
        row.size() != static_cast<std::size_t>(dim) + 1) {
      std::ostringstream msg;
      msg << "csv: line " << line_no << ": expected " << dim << " (or " << dim + 1
          << ") columns for " << dim << "-dimensional points, found " << row.size();
      throw DataError(msg.str());
    }
    cols = row.size();
    flat.insert(flat.end(), row.begin(), row.begin() + dim);
    ++rows;
  });
  if (rows == 0) throw DataError("csv: '" + path + "' has no data rows");
  (void)cols;
  Eigen::MatrixXd points(rows, dim);
  for (std::int64_t i = 0; i < rows; ++i) {
    for (int k = 0; k < dim; ++k) {
      points(i, k) = flat[static_cast<std::size_t>(i) * dim + k];
    }
  }
  return points;
}

double center_targets(Dataset& dataset) {
  if (dataset.size() < 1) throw DataError("center: empty dataset");
  const double mean = dataset.targets.mean();
  dataset.targets.array() -= mean;
  return mean;
}

}  // namespace lgp
