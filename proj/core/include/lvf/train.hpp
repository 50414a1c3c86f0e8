#pragma once

#include <utility>
#include <vector>

#include "lvf/dataset.hpp"
#include "lvf/model.hpp"

namespace lvf {

enum class LrSchedule : uint8_t { constant = 0, linear = 1 };

struct TrainConfig {
    double learning_rate = 5e-4;
    double weight_decay = 1e-4;
    std::size_t epochs = 1;
    std::size_t batch_size = 32;
    double denoise_std = 0.0;
    uint64_t seed = 0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    LrSchedule schedule = LrSchedule::constant;
    /// Epoch numbers (0 = initial state) whose model snapshots are retained.
    std::vector<std::size_t> checkpoint_epochs;

    void validate() const;
};

struct LayerGrads {
    Matrix dw;
    Vector db;
};

struct Gradients {
    std::vector<LayerGrads> encoder;
    std::vector<LayerGrads> decoder;
};

struct TrainReport {
    std::vector<double> train_mse;  // one entry per epoch
    std::vector<double> test_mse;
    std::vector<std::pair<std::size_t, AutoencoderModel>> checkpoints;
};

/// Per-coordinate mean squared reconstruction error of clean targets from
/// (optionally noise-corrupted) inputs, plus exact reverse-mode gradients.
/// Weight decay is the optimizer's job and is not part of this loss.
std::pair<double, Gradients> loss_and_grads(const AutoencoderModel& m, const Matrix& batch,
                                            double denoise_std, Rng& rng);

/// Clean-input evaluation MSE (no noise, no gradients).
double evaluate_mse(const AutoencoderModel& m, const Matrix& data);

struct AdamState {
    std::vector<LayerGrads> m_enc, v_enc, m_dec, v_dec;
    std::size_t step = 0;

    static AdamState like(const AutoencoderModel& model);
};

/// Bias-corrected Adam update plus decoupled weight decay on weights only.
void adam_step(AutoencoderModel& m, const Gradients& grads, const TrainConfig& config,
               AdamState& state, double lr_override = -1.0);

/// Shuffled mini-batch training; deterministic under config.seed.
std::pair<AutoencoderModel, TrainReport> train(AutoencoderModel m, const Split& data,
                                               const TrainConfig& config);

}  // namespace lvf
