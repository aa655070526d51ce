#include "surropt/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "surropt/errors.hpp"

namespace surropt {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Split split_from_string(const std::string& tag) {
  if (tag == "train") return Split::Train;
  if (tag == "val") return Split::Val;
  if (tag == "test") return Split::Test;
  throw ParseError("unknown split tag '" + tag + "'");
}

std::string to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Val:
      return "val";
    case Split::Test:
      return "test";
  }
  return "?";
}

std::vector<int> Dataset::indices_of(Split split) const {
  std::vector<int> idx;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits[i] == split) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

int Dataset::count(Split split) const {
  int c = 0;
  for (const auto s : splits) c += s == split;
  return c;
}

void Dataset::validate() const {
  if (inputs.rows() != targets.rows() ||
      static_cast<std::size_t>(inputs.rows()) != splits.size()) {
    throw ShapeError("Dataset: inputs, targets and splits disagree on rows");
  }
  if (!inputs.allFinite() || !targets.allFinite()) {
    throw NumericError("Dataset: non-finite entry");
  }
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("dataset CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  if (header.size() < 3 || header.back() != "split") {
    throw ParseError("dataset CSV: header must be x1..xn,y1..ym,split");
  }
  int n = 0, m = 0;
  for (std::size_t i = 0; i + 1 < header.size(); ++i) {
    const std::string expected_x = "x" + std::to_string(n + 1);
    const std::string expected_y = "y" + std::to_string(m + 1);
    if (m == 0 && header[i] == expected_x) {
      ++n;
    } else if (header[i] == expected_y) {
      ++m;
    } else {
      throw ParseError("dataset CSV: unexpected header column '" + header[i] +
                       "' (expected " + (m == 0 ? expected_x + " or " : "") +
                       expected_y + ")");
    }
  }
  if (n == 0 || m == 0) {
    throw ParseError("dataset CSV: header needs at least one x and one y column");
  }

  std::vector<std::vector<double>> numeric_rows;
  std::vector<Split> splits;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != static_cast<std::size_t>(n + m + 1)) {
      throw ParseError("dataset CSV line " + std::to_string(line_no) +
                       ": expected " + std::to_string(n + m + 1) +
                       " columns, got " + std::to_string(cells.size()));
    }
    std::vector<double> values(n + m);
    for (int c = 0; c < n + m; ++c) {
      const std::string& cell = cells[c];
      const auto res =
          std::from_chars(cell.data(), cell.data() + cell.size(), values[c]);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw ParseError("dataset CSV line " + std::to_string(line_no) +
                         ": bad number '" + cell + "'");
      }
    }
    try {
      splits.push_back(split_from_string(cells.back()));
    } catch (const ParseError& e) {
      throw ParseError("dataset CSV line " + std::to_string(line_no) + ": " +
                       e.what());
    }
    numeric_rows.push_back(std::move(values));
  }

  Dataset data;
  data.inputs.resize(numeric_rows.size(), n);
  data.targets.resize(numeric_rows.size(), m);
  data.splits = std::move(splits);
  for (std::size_t r = 0; r < numeric_rows.size(); ++r) {
    for (int c = 0; c < n; ++c) data.inputs(r, c) = numeric_rows[r][c];
    for (int c = 0; c < m; ++c) data.targets(r, c) = numeric_rows[r][n + c];
  }
  data.validate();
  return data;
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
  data.validate();
  const int n = data.input_dim();
  const int m = data.output_dim();
  for (int c = 0; c < n; ++c) out << 'x' << (c + 1) << ',';
  for (int c = 0; c < m; ++c) out << 'y' << (c + 1) << ',';
  out << "split\n";
  for (int r = 0; r < data.rows(); ++r) {
    for (int c = 0; c < n; ++c) out << format_double(data.inputs(r, c)) << ',';
    for (int c = 0; c < m; ++c) out << format_double(data.targets(r, c)) << ',';
    out << to_string(data.splits[r]) << '\n';
  }
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path);
  try {
    return read_dataset_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_dataset(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dataset file: " + path);
  write_dataset_csv(data, out);
  if (!out) throw IoError("failed writing dataset file: " + path);
}

}  // namespace surropt
