#include "lvf/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lvf {

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw std::invalid_argument("train: learning rate must be > 0");
    if (epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
    if (batch_size < 1) throw std::invalid_argument("train: batch size must be >= 1");
    if (denoise_std < 0.0) throw std::invalid_argument("train: denoise std must be >= 0");
}

namespace {

struct LayerCache {
    Matrix input;  // batch x in_dim
    Matrix pre;    // batch x out_dim, pre-activation
};

Matrix cached_forward(const std::vector<Layer>& layers, Matrix h, std::vector<LayerCache>& caches) {
    for (const auto& layer : layers) {
        LayerCache cache;
        cache.input = h;
        Matrix pre = matmul_nt(h, layer.weights);
        for (std::size_t r = 0; r < pre.rows(); ++r)
            for (std::size_t c = 0; c < pre.cols(); ++c) pre(r, c) += layer.bias[c];
        cache.pre = pre;
        h = Matrix(pre.rows(), pre.cols());
        for (std::size_t i = 0; i < pre.size(); ++i)
            h.data()[i] = apply_activation(layer.spec.activation, pre.data()[i]);
        caches.push_back(std::move(cache));
    }
    return h;
}

// delta enters as dLoss/dOutput of the layer stack; returns dLoss/dInput and
// fills per-layer gradients back-to-front.
Matrix backward_through(const std::vector<Layer>& layers, const std::vector<LayerCache>& caches,
                        Matrix delta, std::vector<LayerGrads>& grads, bool bias_free) {
    for (std::size_t li = layers.size(); li-- > 0;) {
        const Layer& layer = layers[li];
        const LayerCache& cache = caches[li];
        // delta ⊙ activation'(pre)
        for (std::size_t i = 0; i < delta.size(); ++i)
            delta.data()[i] *= activation_derivative(layer.spec.activation, cache.pre.data()[i]);
        LayerGrads g;
        g.dw = matmul_tn(delta, cache.input);
        g.db = Vector(layer.spec.out_dim);
        if (!bias_free) {
            for (std::size_t r = 0; r < delta.rows(); ++r)
                for (std::size_t c = 0; c < delta.cols(); ++c) g.db[c] += delta(r, c);
        }
        grads[li] = std::move(g);
        if (li > 0) delta = matmul(delta, layer.weights);
    }
    return delta;
}

}  // namespace

std::pair<double, Gradients> loss_and_grads(const AutoencoderModel& m, const Matrix& batch,
                                            double denoise_std, Rng& rng) {
    if (batch.cols() != m.input_dim()) throw std::invalid_argument("loss_and_grads: dimension mismatch");
    Matrix corrupted = batch;
    if (denoise_std > 0.0) {
        for (std::size_t i = 0; i < corrupted.size(); ++i)
            corrupted.data()[i] += denoise_std * rng.gaussian();
    }

    std::vector<LayerCache> enc_caches, dec_caches;
    enc_caches.reserve(m.encoder.size());
    dec_caches.reserve(m.decoder.size());
    Matrix latent = cached_forward(m.encoder, corrupted, enc_caches);
    Matrix output = cached_forward(m.decoder, latent, dec_caches);
    if (!output.all_finite()) throw std::runtime_error("loss_and_grads: non-finite forward pass");

    const double scale = 1.0 / static_cast<double>(batch.size());
    double mse = 0.0;
    Matrix delta(output.rows(), output.cols());
    for (std::size_t i = 0; i < output.size(); ++i) {
        const double err = output.data()[i] - batch.data()[i];
        mse += err * err;
        delta.data()[i] = 2.0 * err * scale;
    }
    mse *= scale;

    Gradients grads;
    grads.encoder.resize(m.encoder.size());
    grads.decoder.resize(m.decoder.size());
    Matrix dlatent = backward_through(m.decoder, dec_caches, std::move(delta), grads.decoder, m.bias_free);
    backward_through(m.encoder, enc_caches, std::move(dlatent), grads.encoder, m.bias_free);
    return {mse, std::move(grads)};
}

double evaluate_mse(const AutoencoderModel& m, const Matrix& data) {
    Matrix output = forward_batch(m, data);
    double mse = 0.0;
    for (std::size_t i = 0; i < output.size(); ++i) {
        const double err = output.data()[i] - data.data()[i];
        mse += err * err;
    }
    return mse / static_cast<double>(data.size());
}

AdamState AdamState::like(const AutoencoderModel& model) {
    AdamState s;
    auto zeros = [](const std::vector<Layer>& layers) {
        std::vector<LayerGrads> g(layers.size());
        for (std::size_t i = 0; i < layers.size(); ++i) {
            g[i].dw = Matrix(layers[i].weights.rows(), layers[i].weights.cols());
            g[i].db = Vector(layers[i].bias.dim());
        }
        return g;
    };
    s.m_enc = zeros(model.encoder);
    s.v_enc = zeros(model.encoder);
    s.m_dec = zeros(model.decoder);
    s.v_dec = zeros(model.decoder);
    return s;
}

namespace {

void adam_update_array(double* param, const double* grad, double* m1, double* m2, std::size_t n,
                       double lr, double beta1, double beta2, double eps, double bias1, double bias2,
                       double decay) {
    for (std::size_t i = 0; i < n; ++i) {
        m1[i] = beta1 * m1[i] + (1.0 - beta1) * grad[i];
        m2[i] = beta2 * m2[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double mhat = m1[i] / bias1;
        const double vhat = m2[i] / bias2;
        param[i] -= lr * mhat / (std::sqrt(vhat) + eps);
        if (decay > 0.0) param[i] -= lr * decay * param[i];
    }
}

}  // namespace

void adam_step(AutoencoderModel& m, const Gradients& grads, const TrainConfig& config,
               AdamState& state, double lr_override) {
    const double lr = lr_override > 0.0 ? lr_override : config.learning_rate;
    state.step += 1;
    const double bias1 = 1.0 - std::pow(config.adam_beta1, double(state.step));
    const double bias2 = 1.0 - std::pow(config.adam_beta2, double(state.step));
    auto update_half = [&](std::vector<Layer>& layers, const std::vector<LayerGrads>& g,
                           std::vector<LayerGrads>& m1, std::vector<LayerGrads>& m2) {
        for (std::size_t i = 0; i < layers.size(); ++i) {
            adam_update_array(layers[i].weights.data(), g[i].dw.data(), m1[i].dw.data(),
                              m2[i].dw.data(), layers[i].weights.size(), lr, config.adam_beta1,
                              config.adam_beta2, config.adam_eps, bias1, bias2, config.weight_decay);
            // Biases are excluded from decay.
            adam_update_array(layers[i].bias.data(), g[i].db.data(), m1[i].db.data(),
                              m2[i].db.data(), layers[i].bias.dim(), lr, config.adam_beta1,
                              config.adam_beta2, config.adam_eps, bias1, bias2, 0.0);
        }
    };
    update_half(m.encoder, grads.encoder, state.m_enc, state.v_enc);
    update_half(m.decoder, grads.decoder, state.m_dec, state.v_dec);
}

std::pair<AutoencoderModel, TrainReport> train(AutoencoderModel m, const Split& data,
                                               const TrainConfig& config) {
    config.validate();
    if (data.train.items.cols() != m.input_dim())
        throw std::invalid_argument("train: dataset dimension does not match model");

    TrainReport report;
    auto wants_checkpoint = [&](std::size_t epoch) {
        for (std::size_t e : config.checkpoint_epochs)
            if (e == epoch) return true;
        return false;
    };
    if (wants_checkpoint(0)) report.checkpoints.emplace_back(0, m);

    Rng rng(config.seed);
    AdamState state = AdamState::like(m);
    const std::size_t n = data.train.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        double lr = config.learning_rate;
        if (config.schedule == LrSchedule::linear) {
            lr = config.learning_rate *
                 (1.0 - static_cast<double>(epoch - 1) / static_cast<double>(config.epochs));
        }
        rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += config.batch_size) {
            const std::size_t count = std::min(config.batch_size, n - start);
            Matrix batch(count, m.input_dim());
            for (std::size_t r = 0; r < count; ++r)
                for (std::size_t c = 0; c < m.input_dim(); ++c)
                    batch(r, c) = data.train.items(order[start + r], c);
            auto [mse, grads] = loss_and_grads(m, batch, config.denoise_std, rng);
            if (!std::isfinite(mse))
                throw std::runtime_error("train: loss diverged at epoch " + std::to_string(epoch));
            adam_step(m, grads, config, state, lr);
        }
        report.train_mse.push_back(evaluate_mse(m, data.train.items));
        report.test_mse.push_back(evaluate_mse(m, data.test.items));
        if (wants_checkpoint(epoch)) report.checkpoints.emplace_back(epoch, m);
    }
    return {std::move(m), std::move(report)};
}

}  // namespace lvf
