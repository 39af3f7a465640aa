#pragma once

#include <filesystem>

#include "orthocp/tensor.hpp"

namespace orthocp {

// OTNS binary tensor format: magic "OTNS", u32 order d, d x u64 dims, then
// little-endian f64 entries in column-major order. Orders above 8 are
// rejected.

void write_otns(const std::filesystem::path& path, const DenseTensor& a);
DenseTensor read_otns(const std::filesystem::path& path);

void write_matrix_otns(const std::filesystem::path& path,
                       const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_otns(const std::filesystem::path& path);

/// JSON import for small tensors: nested arrays, outermost level = mode 0.
DenseTensor tensor_from_json_text(const std::string& text);

/// Reads .otns (binary) or .json (nested arrays) by extension.
DenseTensor read_tensor_file(const std::filesystem::path& path);

}  // namespace orthocp
