#pragma once

#include "ugd/classifier.hpp"
#include "ugd/driver.hpp"
#include "ugd/noise.hpp"

namespace ugd {

// The paper-synthetic benchmark: a four-block SBM with mixed feature and
// structure noise, plus denoising hyperparameters tuned on it. Used by
// `bench --preset paper-synthetic` and by the acceptance suite.

inline SbmParams paper_synthetic_sbm(std::uint64_t seed = 42) {
    SbmParams p;
    p.n = 400;
    p.k = 4;
    p.p_in = 0.05;
    p.p_out = 0.005;
    p.center_separation = 1.0;
    p.dim = 64;
    p.feature_noise_std = 0.25;
    p.seed = seed;
    return p;
}

inline NoiseSpec paper_synthetic_noise() {
    NoiseSpec spec;
    spec.feature_ratio = 0.5;
    spec.feature_mode = FeatureNoiseMode::gaussian_replace;
    spec.structure_ratio = 0.1;
    spec.structure_mode = StructureNoiseMode::cross_class;
    return spec;
}

inline DenoiseConfig paper_synthetic_denoise() {
    DenoiseConfig cfg;
    // keep everything on the first pass (features are still noisy), then one
    // pruning round on reconstructed features
    cfg.theta_schedule.warmup_theta = -1.0;
    cfg.theta_schedule.main_theta = 0.60;
    cfg.theta_schedule.warmup_iters = 1;
    cfg.fd.beta = 0.0;
    cfg.fd.gamma = 1e-3;
    cfg.fd.lr = 1e-3;
    cfg.fd.epochs_per_step = 100;
    cfg.epsilon = 2;
    cfg.max_iters = 2;
    return cfg;
}

} // namespace ugd
