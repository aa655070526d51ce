#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "surropt/types.hpp"

namespace surropt {

enum class Split { Train, Val, Test };

Split split_from_string(const std::string& tag);
std::string to_string(Split split);

/// Row-aligned inputs (N x n), targets (N x m) and split tags.
struct Dataset {
  Matrix inputs;
  Matrix targets;
  std::vector<Split> splits;

  int rows() const { return static_cast<int>(inputs.rows()); }
  int input_dim() const { return static_cast<int>(inputs.cols()); }
  int output_dim() const { return static_cast<int>(targets.cols()); }

  std::vector<int> indices_of(Split split) const;
  int count(Split split) const;

  /// Throws on ragged shapes or non-finite entries.
  void validate() const;
};

/// CSV with header x1..xn,y1..ym,split; numbers are written with shortest
/// round-trip formatting so write-then-read is lossless.
Dataset read_dataset_csv(std::istream& in);
void write_dataset_csv(const Dataset& data, std::ostream& out);

Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& data, const std::string& path);

}  // namespace surropt
