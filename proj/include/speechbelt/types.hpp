#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace speechbelt {

// Channel order is fixed everywhere: pressure first, then the three
// acceleration axes. Feature layouts and window slices follow this order.
enum class ChannelId : int {
    Pressure = 0,
    AccelX = 1,
    AccelY = 2,
    AccelZ = 3,
};

inline constexpr std::array<ChannelId, 4> kAllChannels = {
    ChannelId::Pressure, ChannelId::AccelX, ChannelId::AccelY, ChannelId::AccelZ};

const char* channel_name(ChannelId id);

enum class Label : int {
    NoSpeech = 0,
    Speech = 1,
};

enum class FeatureSet {
    PressureOnly,
    AccelOnly,
    Combined,
};

const char* feature_set_name(FeatureSet fs);

// One raw device sample. Timestamps are seconds relative to recording start.
// Pressure and the acceleration triple are each optional, but whichever is
// present must be present in every record of a recording.
struct SensorRecord {
    double timestamp = 0.0;
    std::optional<double> pressure;                 // hPa
    std::optional<std::array<double, 3>> accel;     // g per axis
};

// Uniform-rate samples for one channel. Sample i sits at i / sample_rate
// seconds relative to the series' own origin.
struct ChannelSeries {
    ChannelId channel_id = ChannelId::Pressure;
    double sample_rate = 0.0;   // Hz
    std::vector<double> samples;

    double duration_s() const {
        return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// One windowed slice across channels. Slices are index-aligned with
// `channels` and all have the same sample count.
struct WindowSegment {
    double start_time = 0.0;    // seconds, relative to the segmented series
    double duration = 0.0;      // seconds
    std::vector<ChannelId> channels;
    std::vector<std::vector<double>> slices;
};

} // namespace speechbelt
