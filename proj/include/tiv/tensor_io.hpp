#pragma once

// Tensor files: {"m":2,"n":2,"entries":{"T[1,1,1]":"1/2", ...}}.
// Without "entries" the file describes a symbolic tensor; with it, missing
// entries are zero.

#include "tiv/pencil.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace tiv {

struct TensorFile {
  int m = 0;
  int n = 0;
  std::optional<RationalTensor> values;

  bool symbolic() const { return !values; }
  friend bool operator==(const TensorFile&, const TensorFile&) = default;
};

/// Throws std::invalid_argument on malformed JSON, bad keys, out-of-range indices or bad rationals.
TensorFile parse_tensor_json(std::string_view text);
TensorFile load_tensor_file(const std::filesystem::path& path);

/// Normalized form: every entry present, in T-variable order, as a lowest-terms rational string.
std::string to_json(const TensorFile& file);
void save_tensor_file(const std::filesystem::path& path, const TensorFile& file);

}  // namespace tiv
