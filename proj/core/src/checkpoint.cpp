#include "lvf/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lvf {

namespace {

constexpr char kMagic[4] = {'L', 'V', 'F', '1'};
constexpr uint8_t kVersion = 1;
constexpr std::size_t kMaxLayerDim = 1u << 24;

void write_u32(std::ostream& out, uint32_t v) {
    const uint8_t bytes[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

uint32_t read_u32(std::istream& in) {
    uint8_t bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    if (!in) throw std::runtime_error("checkpoint: truncated header");
    return uint32_t(bytes[0]) | (uint32_t(bytes[1]) << 8) | (uint32_t(bytes[2]) << 16) |
           (uint32_t(bytes[3]) << 24);
}

void write_f64(std::ostream& out, const double* values, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        uint64_t bits;
        std::memcpy(&bits, &values[i], 8);
        uint8_t bytes[8];
        for (int b = 0; b < 8; ++b) bytes[b] = uint8_t(bits >> (8 * b));
        out.write(reinterpret_cast<const char*>(bytes), 8);
    }
}

void read_f64(std::istream& in, double* values, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        uint8_t bytes[8];
        in.read(reinterpret_cast<char*>(bytes), 8);
        if (!in) throw std::runtime_error("checkpoint: truncated parameters");
        uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= uint64_t(bytes[b]) << (8 * b);
        std::memcpy(&values[i], &bits, 8);
    }
}

}  // namespace

void save_model(const AutoencoderModel& m, const std::string& path) {
    m.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("checkpoint: cannot write " + path);
    out.write(kMagic, 4);
    out.put(char(kVersion));
    out.put(char(m.bias_free ? 1 : 0));
    write_u32(out, uint32_t(m.encoder.size()));
    write_u32(out, uint32_t(m.decoder.size()));
    for (const auto* half : {&m.encoder, &m.decoder}) {
        for (const auto& layer : *half) {
            write_u32(out, uint32_t(layer.spec.in_dim));
            write_u32(out, uint32_t(layer.spec.out_dim));
            write_u32(out, uint32_t(layer.spec.activation));
        }
    }
    for (const auto* half : {&m.encoder, &m.decoder}) {
        for (const auto& layer : *half) {
            write_f64(out, layer.weights.data(), layer.weights.size());
            write_f64(out, layer.bias.data(), layer.bias.dim());
        }
    }
    if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

AutoencoderModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const int version = in.get();
    if (version != kVersion)
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
    const int flags = in.get();
    if (flags < 0) throw std::runtime_error("checkpoint: truncated header");

    AutoencoderModel m;
    m.bias_free = (flags & 1) != 0;
    const uint32_t n_enc = read_u32(in);
    const uint32_t n_dec = read_u32(in);
    if (n_enc == 0 || n_dec == 0 || n_enc > 64 || n_dec > 64)
        throw std::runtime_error("checkpoint: implausible layer counts");
    auto read_specs = [&](uint32_t count) {
        std::vector<Layer> layers(count);
        for (auto& layer : layers) {
            layer.spec.in_dim = read_u32(in);
            layer.spec.out_dim = read_u32(in);
            const uint32_t act = read_u32(in);
            if (layer.spec.in_dim == 0 || layer.spec.out_dim == 0 ||
                layer.spec.in_dim > kMaxLayerDim || layer.spec.out_dim > kMaxLayerDim)
                throw std::runtime_error("checkpoint: dimension out of range");
            if (act > uint32_t(Activation::sigmoid))
                throw std::runtime_error("checkpoint: unknown activation id " + std::to_string(act));
            layer.spec.activation = Activation(act);
        }
        return layers;
    };
    m.encoder = read_specs(n_enc);
    m.decoder = read_specs(n_dec);
    for (auto* half : {&m.encoder, &m.decoder}) {
        for (auto& layer : *half) {
            layer.weights = Matrix(layer.spec.out_dim, layer.spec.in_dim);
            layer.bias = Vector(layer.spec.out_dim);
            read_f64(in, layer.weights.data(), layer.weights.size());
            read_f64(in, layer.bias.data(), layer.bias.dim());
        }
    }
    m.bottleneck_k = m.encoder.back().spec.out_dim;
    m.validate();
    return m;
}

}  // namespace lvf
