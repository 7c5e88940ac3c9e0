#pragma once

#include <span>
#include <vector>

#include "speechbelt/config.hpp"
#include "speechbelt/types.hpp"

namespace speechbelt {

// Resample a jittered record stream onto the exact cfg.target_rate grid
// t = 0, 1/rate, 2/rate, ... by linear interpolation. Grid points outside
// [first timestamp, last timestamp] are dropped rather than extrapolated.
// Returns one series per channel present, in canonical channel order.
std::vector<ChannelSeries> regularize(std::span<const SensorRecord> records,
                                      const PipelineConfig& cfg);

// Zero-phase band-pass smoothing (cfg.band_low .. cfg.band_high). A
// second-order band-pass biquad is applied forward and backward over a
// reflection-padded copy of the series, so the output has no phase shift
// and smooth(reverse(x)) == reverse(smooth(x)) exactly.
ChannelSeries smooth(const ChannelSeries& series, const PipelineConfig& cfg);

// Drop the first cfg.warmup_discard_s seconds (breathing stabilization).
ChannelSeries discard_warmup(const ChannelSeries& series, const PipelineConfig& cfg);

// Cut aligned overlapping windows of cfg.window_s seconds at hop
// cfg.window_s * (1 - cfg.overlap_fraction). Only complete windows are
// emitted; a trailing partial window is dropped, never zero-padded.
std::vector<WindowSegment> segment(std::span<const ChannelSeries> channels,
                                   const PipelineConfig& cfg);

// Band-pass biquad coefficients for the configured band, normalized so the
// recurrence is y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2] - a1 y[n-1] - a2 y[n-2].
struct BiquadCoefficients {
    double b0, b1, b2, a1, a2;
};

BiquadCoefficients design_band_pass(double low_hz, double high_hz, double rate_hz);

} // namespace speechbelt
