#pragma once

#include <cmath>

#include "speechbelt/error.hpp"

namespace speechbelt {

// Knobs for the ingest half of the pipeline. Defaults correspond to the
// device's nominal 8 Hz stream, 6 s windows with 25 % overlap, a 30 s
// warm-up discard, and a 0.05-3.0 Hz smoothing band that leaves the
// 0.13-0.66 Hz breathing band untouched.
struct PipelineConfig {
    double target_rate = 8.0;        // Hz
    double window_s = 6.0;           // seconds
    double overlap_fraction = 0.25;  // in [0, 1)
    double warmup_discard_s = 30.0;  // seconds
    double band_low = 0.05;          // Hz
    double band_high = 3.0;          // Hz

    int window_samples() const {
        return static_cast<int>(std::llround(window_s * target_rate));
    }

    int hop_samples() const {
        int win = window_samples();
        int overlap = static_cast<int>(std::llround(overlap_fraction * win));
        return win - overlap;
    }

    double hop_s() const { return hop_samples() / target_rate; }

    void validate() const {
        if (!(target_rate > 0.0))
            raise(ErrorCode::InvalidConfig, "target_rate must be positive");
        if (!(band_low > 0.0 && band_low < band_high && band_high < target_rate / 2.0))
            raise(ErrorCode::InvalidConfig, "need 0 < band_low < band_high < target_rate/2");
        if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
            raise(ErrorCode::InvalidConfig, "overlap_fraction must be in [0, 1)");
        if (window_samples() < 8)
            raise(ErrorCode::InvalidConfig, "window_s x target_rate must be at least 8 samples");
        if (std::abs(window_s * target_rate - window_samples()) > 1e-9)
            raise(ErrorCode::InvalidConfig, "window_s x target_rate must be an integer sample count");
        if (hop_samples() < 1)
            raise(ErrorCode::InvalidConfig, "window hop must be at least one sample");
        if (warmup_discard_s < 0.0)
            raise(ErrorCode::InvalidConfig, "warmup_discard_s must be non-negative");
    }
};

} // namespace speechbelt
