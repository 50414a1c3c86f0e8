#include "lvf/idx.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace lvf {

namespace {

constexpr uint32_t kImagesMagic = 2051;
constexpr uint32_t kLabelsMagic = 2049;

uint32_t read_be32(std::span<const uint8_t> bytes, std::size_t offset) {
    if (offset + 4 > bytes.size()) throw std::runtime_error("idx: truncated header");
    return (uint32_t(bytes[offset]) << 24) | (uint32_t(bytes[offset + 1]) << 16) |
           (uint32_t(bytes[offset + 2]) << 8) | uint32_t(bytes[offset + 3]);
}

void push_be32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(uint8_t(v >> 24));
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

}  // namespace

Dataset parse_idx_images(std::span<const uint8_t> bytes) {
    const uint32_t magic = read_be32(bytes, 0);
    if (magic != kImagesMagic)
        throw std::runtime_error("idx: wrong magic " + std::to_string(magic) + " for image file");
    const uint32_t count = read_be32(bytes, 4);
    const uint32_t rows = read_be32(bytes, 8);
    const uint32_t cols = read_be32(bytes, 12);
    const uint64_t pixels = uint64_t(count) * rows * cols;
    if (rows == 0 || cols == 0 || pixels > (uint64_t(1) << 34))
        throw std::runtime_error("idx: implausible image dimensions");
    if (bytes.size() != 16 + pixels) throw std::runtime_error("idx: truncated image payload");

    Dataset ds;
    ds.input_dim = std::size_t(rows) * cols;
    ds.items = Matrix(count, ds.input_dim);
    ds.name = "idx";
    for (std::size_t i = 0; i < pixels; ++i)
        ds.items.data()[i] = double(bytes[16 + i]) / 255.0;
    return ds;
}

std::vector<int> parse_idx_labels(std::span<const uint8_t> bytes) {
    const uint32_t magic = read_be32(bytes, 0);
    if (magic != kLabelsMagic)
        throw std::runtime_error("idx: wrong magic " + std::to_string(magic) + " for label file");
    const uint32_t count = read_be32(bytes, 4);
    if (bytes.size() != 8 + std::size_t(count)) throw std::runtime_error("idx: truncated label payload");
    std::vector<int> labels(count);
    for (uint32_t i = 0; i < count; ++i) labels[i] = int(bytes[8 + i]);
    return labels;
}

std::vector<uint8_t> write_idx_images(const Dataset& ds, std::size_t rows, std::size_t cols) {
    if (rows * cols != ds.input_dim)
        throw std::invalid_argument("write_idx_images: rows*cols != input_dim");
    std::vector<uint8_t> out;
    out.reserve(16 + ds.items.size());
    push_be32(out, kImagesMagic);
    push_be32(out, uint32_t(ds.size()));
    push_be32(out, uint32_t(rows));
    push_be32(out, uint32_t(cols));
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        const double v = std::min(1.0, std::max(0.0, ds.items.data()[i]));
        out.push_back(uint8_t(std::lround(v * 255.0)));
    }
    return out;
}

std::vector<uint8_t> write_idx_labels(const std::vector<int>& labels) {
    std::vector<uint8_t> out;
    out.reserve(8 + labels.size());
    push_be32(out, kLabelsMagic);
    push_be32(out, uint32_t(labels.size()));
    for (int label : labels) {
        if (label < 0 || label > 255) throw std::invalid_argument("write_idx_labels: label out of byte range");
        out.push_back(uint8_t(label));
    }
    return out;
}

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

Dataset load_idx_images_file(const std::string& path) {
    auto bytes = read_file(path);
    Dataset ds = parse_idx_images(bytes);
    ds.name = path;
    return ds;
}

std::vector<int> load_idx_labels_file(const std::string& path) {
    return parse_idx_labels(read_file(path));
}

void save_idx_file(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), long(bytes.size()));
}

}  // namespace lvf
