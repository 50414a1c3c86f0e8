#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lvf/dataset.hpp"

namespace lvf {

// IDX binary format (big-endian headers, unsigned-byte payload):
//   images: magic 0x00000803, count, rows, cols, then count*rows*cols bytes
//   labels: magic 0x00000801, count, then count bytes
// Pixels are scaled by 1/255 into [0,1] and flattened row-major.

Dataset parse_idx_images(std::span<const uint8_t> bytes);
std::vector<int> parse_idx_labels(std::span<const uint8_t> bytes);

/// Inverse of parse_idx_images for values that are exact multiples of 1/255.
/// Values are clamped to [0,1] and rounded to the nearest byte.
std::vector<uint8_t> write_idx_images(const Dataset& ds, std::size_t rows, std::size_t cols);
std::vector<uint8_t> write_idx_labels(const std::vector<int>& labels);

Dataset load_idx_images_file(const std::string& path);
std::vector<int> load_idx_labels_file(const std::string& path);
void save_idx_file(const std::string& path, std::span<const uint8_t> bytes);

}  // namespace lvf
