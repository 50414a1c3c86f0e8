#pragma once

#include <string>

#include "lvf/model.hpp"

namespace lvf {

// Checkpoint layout (version 1):
//   "LVF1"                      4-byte magic
//   version                     1 byte
//   flags                       1 byte (bit0 = bias-free)
//   encoder layer count         little-endian uint32
//   decoder layer count         little-endian uint32
//   per layer (encoder then decoder):
//     in dim, out dim, activation id   3 x little-endian uint32
//   per layer (encoder then decoder):
//     weights row-major, then bias     little-endian float64

void save_model(const AutoencoderModel& m, const std::string& path);
AutoencoderModel load_model(const std::string& path);

}  // namespace lvf
