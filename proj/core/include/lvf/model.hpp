#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lvf/matrix.hpp"
#include "lvf/rng.hpp"

namespace lvf {

enum class Activation : uint8_t { linear = 0, relu = 1, tanh = 2, sigmoid = 3 };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);
double apply_activation(Activation a, double pre);
double activation_derivative(Activation a, double pre);

struct LayerSpec {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    Activation activation = Activation::linear;
};

struct Layer {
    LayerSpec spec;
    Matrix weights;  // out_dim x in_dim
    Vector bias;     // out_dim
};

/// Dense encoder/decoder pair. Encoder output dim equals the bottleneck k
/// equals decoder input dim; adjacent layer dims chain.
struct AutoencoderModel {
    std::vector<Layer> encoder;
    std::vector<Layer> decoder;
    std::size_t bottleneck_k = 0;
    bool bias_free = false;

    std::size_t input_dim() const { return encoder.front().spec.in_dim; }
    std::size_t parameter_count() const;
    void validate() const;
};

/// Fan-scaled gaussian init: variance 2/fan_in for relu layers, 1/fan_in
/// otherwise; biases zero. Deterministic under seed.
AutoencoderModel init_model(const std::vector<LayerSpec>& encoder_specs,
                            const std::vector<LayerSpec>& decoder_specs, uint64_t seed,
                            bool bias_free = false);

/// Convenience: symmetric relu architecture input -> hidden... -> k -> ... -> input,
/// linear output layers on both halves.
AutoencoderModel init_autoencoder(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                                  std::size_t bottleneck_k, uint64_t seed, bool bias_free = false,
                                  Activation hidden_act = Activation::relu);

Vector encode(const AutoencoderModel& m, const Vector& x);
Vector decode(const AutoencoderModel& m, const Vector& z);
Vector forward(const AutoencoderModel& m, const Vector& x);

/// One sample per row.
Matrix encode_batch(const AutoencoderModel& m, const Matrix& x);
Matrix decode_batch(const AutoencoderModel& m, const Matrix& z);
Matrix forward_batch(const AutoencoderModel& m, const Matrix& x);

/// Pooled output std over pooled input std for n gaussian probes; < 1 means
/// the freshly initialized map shrinks its inputs.
double variance_ratio(const AutoencoderModel& m, std::size_t n, Rng& rng);

/// Product of per-layer spectral norms across encoder then decoder; an upper
/// bound on the input-output Jacobian norm for 1-Lipschitz activations.
double spectral_product_bound(const AutoencoderModel& m);
/// Same product restricted to the decoder, the Lipschitz bound used by the
/// prototype/coverage decomposition.
double decoder_lipschitz_bound(const AutoencoderModel& m);

/// FNV-1a over the parameter bytes; used by manifests and the fixture cache.
uint64_t model_hash(const AutoencoderModel& m);

}  // namespace lvf
