#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speechbelt/duration.hpp"
#include "speechbelt/types.hpp"

namespace speechbelt {

// Nominal device sample rate the generator mimics.
inline constexpr double kDeviceRateHz = 8.0;

// Parameters of one synthetic recording. Breathing is a slow sinusoid on
// top of an absolute-pressure offset and linear drift; speech multiplies
// the carrier amplitude and adds an amplitude-modulated 1-3 Hz burst
// component. Acceleration is a scaled derivative of the deterministic
// pressure motion with independent per-axis noise.
struct SynthProfile {
    double breathing_rate = 0.3;      // Hz, inside [0.13, 0.66]
    double breathing_amp = 0.5;       // hPa
    double speech_burst_rate = 1.8;   // Hz, inside [1.0, 3.0]
    double speech_amp_factor = 2.5;   // >= 1
    double noise_std = 0.05;          // hPa
    double drift_rate = 0.002;        // hPa/s
    double accel_coupling = 0.02;     // g per hPa
    std::uint64_t seed = 0;

    void validate() const;
};

struct SynthRecording {
    std::vector<SensorRecord> records;
    AnnotationTrack truth;
    SynthProfile profile;
    std::string name;  // set by gen_corpus, e.g. "subject01_speech"
};

// Per-subject parameter ranges for gen_corpus. Breathing rate and
// amplitude are spread evenly across subjects (so no two subjects share
// them); the rest are drawn uniformly per subject.
struct ProfileRanges {
    double breathing_rate_min = 0.18;
    double breathing_rate_max = 0.50;
    double breathing_amp_min = 0.4;
    double breathing_amp_max = 0.8;
    double speech_burst_rate_min = 1.4;
    double speech_burst_rate_max = 2.4;
    double speech_amp_factor_min = 2.2;
    double speech_amp_factor_max = 3.0;
    double noise_std_min = 0.03;
    double noise_std_max = 0.06;
    double drift_min = -0.004;
    double drift_max = 0.004;
    double accel_coupling_min = 0.015;
    double accel_coupling_max = 0.03;
};

// Breathing-only recording with an empty truth track. Timestamps are
// jittered +-10 ms around the 8 Hz grid so regularize always has work to do.
SynthRecording gen_breathing(double duration_s, const SynthProfile& profile);

// Breathing everywhere plus speech bursts inside the given intervals.
// With an empty track this is sample-identical to gen_breathing.
SynthRecording gen_session(double duration_s, const AnnotationTrack& speech_intervals,
                           const SynthProfile& profile);

// One 90 s no-speech and one 90 s all-speech recording per subject.
std::vector<SynthRecording> gen_corpus(int n_subjects, const ProfileRanges& ranges,
                                       std::uint64_t seed, double duration_s = 90.0);

} // namespace speechbelt
