#include "lvf/model.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "lvf/linalg.hpp"

namespace lvf {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::linear: return "linear";
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
    }
    return "?";
}

Activation activation_from_name(const std::string& name) {
    if (name == "linear") return Activation::linear;
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    if (name == "sigmoid") return Activation::sigmoid;
    throw std::invalid_argument("unknown activation: " + name);
}

double apply_activation(Activation a, double pre) {
    switch (a) {
        case Activation::linear: return pre;
        case Activation::relu: return pre > 0.0 ? pre : 0.0;
        case Activation::tanh: return std::tanh(pre);
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-pre));
    }
    return pre;
}

double activation_derivative(Activation a, double pre) {
    switch (a) {
        case Activation::linear: return 1.0;
        case Activation::relu: return pre > 0.0 ? 1.0 : 0.0;
        case Activation::tanh: {
            const double t = std::tanh(pre);
            return 1.0 - t * t;
        }
        case Activation::sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-pre));
            return s * (1.0 - s);
        }
    }
    return 1.0;
}

std::size_t AutoencoderModel::parameter_count() const {
    std::size_t n = 0;
    for (const auto* half : {&encoder, &decoder})
        for (const auto& layer : *half) n += layer.weights.size() + layer.bias.dim();
    return n;
}

void AutoencoderModel::validate() const {
    if (encoder.empty() || decoder.empty()) throw std::invalid_argument("model: empty encoder or decoder");
    auto check_chain = [](const std::vector<Layer>& layers, const char* what) {
        for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
            if (layers[i].spec.out_dim != layers[i + 1].spec.in_dim)
                throw std::invalid_argument(std::string("model: broken dimension chain in ") + what);
        }
        for (const auto& layer : layers) {
            if (layer.weights.rows() != layer.spec.out_dim || layer.weights.cols() != layer.spec.in_dim ||
                layer.bias.dim() != layer.spec.out_dim)
                throw std::invalid_argument(std::string("model: parameter shape mismatch in ") + what);
            layer.weights.validate();
            layer.bias.validate();
        }
    };
    check_chain(encoder, "encoder");
    check_chain(decoder, "decoder");
    if (encoder.back().spec.out_dim != bottleneck_k || decoder.front().spec.in_dim != bottleneck_k)
        throw std::invalid_argument("model: bottleneck does not match encoder/decoder boundary");
    if (encoder.front().spec.in_dim != decoder.back().spec.out_dim)
        throw std::invalid_argument("model: input and output dims differ");
}

AutoencoderModel init_model(const std::vector<LayerSpec>& encoder_specs,
                            const std::vector<LayerSpec>& decoder_specs, uint64_t seed,
                            bool bias_free) {
    AutoencoderModel m;
    m.bias_free = bias_free;
    m.bottleneck_k = encoder_specs.back().out_dim;
    Rng rng(seed);
    auto build = [&](const std::vector<LayerSpec>& specs) {
        std::vector<Layer> layers;
        layers.reserve(specs.size());
        for (const auto& spec : specs) {
            if (spec.in_dim < 1 || spec.out_dim < 1) throw std::invalid_argument("init: zero layer dim");
            Layer layer;
            layer.spec = spec;
            const double variance = (spec.activation == Activation::relu ? 2.0 : 1.0) /
                                    static_cast<double>(spec.in_dim);
            const double stddev = std::sqrt(variance);
            layer.weights = Matrix(spec.out_dim, spec.in_dim);
            for (std::size_t i = 0; i < layer.weights.size(); ++i)
                layer.weights.data()[i] = stddev * rng.gaussian();
            layer.bias = Vector(spec.out_dim);
            layers.push_back(std::move(layer));
        }
        return layers;
    };
    m.encoder = build(encoder_specs);
    m.decoder = build(decoder_specs);
    m.validate();
    return m;
}

AutoencoderModel init_autoencoder(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                                  std::size_t bottleneck_k, uint64_t seed, bool bias_free,
                                  Activation hidden_act) {
    std::vector<LayerSpec> enc, dec;
    std::size_t d = input_dim;
    for (std::size_t h : hidden) {
        enc.push_back({d, h, hidden_act});
        d = h;
    }
    enc.push_back({d, bottleneck_k, Activation::linear});
    d = bottleneck_k;
    for (auto it = hidden.rbegin(); it != hidden.rend(); ++it) {
        dec.push_back({d, *it, hidden_act});
        d = *it;
    }
    dec.push_back({d, input_dim, Activation::linear});
    return init_model(enc, dec, seed, bias_free);
}

namespace {

Vector layer_forward(const Layer& layer, const Vector& x) {
    Vector pre = matvec(layer.weights, x);
    for (std::size_t i = 0; i < pre.dim(); ++i)
        pre[i] = apply_activation(layer.spec.activation, pre[i] + layer.bias[i]);
    return pre;
}

Matrix layer_forward_batch(const Layer& layer, const Matrix& x) {
    Matrix pre = matmul_nt(x, layer.weights);
    for (std::size_t r = 0; r < pre.rows(); ++r)
        for (std::size_t c = 0; c < pre.cols(); ++c)
            pre(r, c) = apply_activation(layer.spec.activation, pre(r, c) + layer.bias[c]);
    return pre;
}

}  // namespace

Vector encode(const AutoencoderModel& m, const Vector& x) {
    if (x.dim() != m.input_dim()) throw std::invalid_argument("encode: dimension mismatch");
    Vector h = x;
    for (const auto& layer : m.encoder) h = layer_forward(layer, h);
    return h;
}

Vector decode(const AutoencoderModel& m, const Vector& z) {
    if (z.dim() != m.bottleneck_k) throw std::invalid_argument("decode: dimension mismatch");
    Vector h = z;
    for (const auto& layer : m.decoder) h = layer_forward(layer, h);
    return h;
}

Vector forward(const AutoencoderModel& m, const Vector& x) { return decode(m, encode(m, x)); }

Matrix encode_batch(const AutoencoderModel& m, const Matrix& x) {
    if (x.cols() != m.input_dim()) throw std::invalid_argument("encode_batch: dimension mismatch");
    Matrix h = x;
    for (const auto& layer : m.encoder) h = layer_forward_batch(layer, h);
    return h;
}

Matrix decode_batch(const AutoencoderModel& m, const Matrix& z) {
    if (z.cols() != m.bottleneck_k) throw std::invalid_argument("decode_batch: dimension mismatch");
    Matrix h = z;
    for (const auto& layer : m.decoder) h = layer_forward_batch(layer, h);
    return h;
}

Matrix forward_batch(const AutoencoderModel& m, const Matrix& x) {
    return decode_batch(m, encode_batch(m, x));
}

double variance_ratio(const AutoencoderModel& m, std::size_t n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("variance_ratio: n must be >= 2");
    const std::size_t dim = m.input_dim();
    Matrix inputs = rng.gaussian_matrix(n, dim);
    Matrix outputs = forward_batch(m, inputs);
    auto pooled_std = [](const Matrix& v) {
        double mean = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) mean += v.data()[i];
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double d = v.data()[i] - mean;
            var += d * d;
        }
        return std::sqrt(var / static_cast<double>(v.size() - 1));
    };
    return pooled_std(outputs) / pooled_std(inputs);
}

namespace {

double layer_product(const std::vector<Layer>& layers, Rng& rng) {
    double product = 1.0;
    for (const auto& layer : layers) product *= spectral_norm(layer.weights, rng);
    return product;
}

}  // namespace

double spectral_product_bound(const AutoencoderModel& m) {
    Rng rng(0x5eed5eedULL);
    return layer_product(m.encoder, rng) * layer_product(m.decoder, rng);
}

double decoder_lipschitz_bound(const AutoencoderModel& m) {
    Rng rng(0x5eed5eedULL);
    return layer_product(m.decoder, rng);
}

uint64_t model_hash(const AutoencoderModel& m) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* p, std::size_t bytes) {
        const auto* b = static_cast<const uint8_t*>(p);
        for (std::size_t i = 0; i < bytes; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto* half : {&m.encoder, &m.decoder}) {
        for (const auto& layer : *half) {
            uint32_t dims[3] = {uint32_t(layer.spec.in_dim), uint32_t(layer.spec.out_dim),
                                uint32_t(layer.spec.activation)};
            mix(dims, sizeof dims);
            mix(layer.weights.data(), layer.weights.size() * sizeof(double));
            mix(layer.bias.data(), layer.bias.dim() * sizeof(double));
        }
    }
    return h;
}

}  // namespace lvf
