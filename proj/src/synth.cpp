#include "speechbelt/synth.hpp"

#include <cmath>
#include <cstdio>

#include "speechbelt/error.hpp"
#include "speechbelt/features.hpp"
#include "speechbelt/rng.hpp"

namespace speechbelt {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kPressureOffsetHpa = 1013.25;
constexpr double kJitterS = 0.010;

// Relative gain of the shared motion signal on the three axes.
constexpr double kAxisGain[3] = {1.0, 0.6, 0.3};

struct BurstPhases {
    double carrier;
    double burst;
    double envelope;
};

BurstPhases burst_phases(std::uint64_t seed, std::size_t interval_index) {
    Rng rng(derive_seed(seed, "synth-burst", interval_index));
    return {rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
}

} // namespace

void SynthProfile::validate() const {
    if (!(breathing_rate >= kPeakBandLowHz && breathing_rate <= kPeakBandHighHz))
        raise(ErrorCode::InvalidConfig, "breathing_rate must lie in the breathing band");
    if (!(speech_burst_rate >= 1.0 && speech_burst_rate <= 3.0))
        raise(ErrorCode::InvalidConfig, "speech_burst_rate must lie in [1, 3] Hz");
    if (!(speech_amp_factor >= 1.0))
        raise(ErrorCode::InvalidConfig, "speech_amp_factor must be >= 1");
    if (!(noise_std >= 0.0))
        raise(ErrorCode::InvalidConfig, "noise_std must be non-negative");
    if (!(breathing_amp > 0.0))
        raise(ErrorCode::InvalidConfig, "breathing_amp must be positive");
}

SynthRecording gen_breathing(double duration_s, const SynthProfile& profile) {
    return gen_session(duration_s, AnnotationTrack{}, profile);
}

SynthRecording gen_session(double duration_s, const AnnotationTrack& speech_intervals,
                           const SynthProfile& profile) {
    profile.validate();
    if (duration_s < 12.0)
        raise(ErrorCode::DurationTooShort, "synthetic recordings need at least 12 s");
    speech_intervals.validate();
    for (const auto& iv : speech_intervals.intervals)
        if (iv.start < 0.0 || iv.end > duration_s)
            raise(ErrorCode::IntervalOutOfRange,
                  "speech interval exceeds the recording extent");

    // Independent per-purpose streams so the sample noise is identical
    // whether or not speech intervals are present.
    Rng jitter_rng(derive_seed(profile.seed, "synth-jitter"));
    Rng pressure_noise(derive_seed(profile.seed, "synth-noise-p"));
    Rng accel_noise[3] = {Rng(derive_seed(profile.seed, "synth-noise-ax")),
                          Rng(derive_seed(profile.seed, "synth-noise-ay")),
                          Rng(derive_seed(profile.seed, "synth-noise-az"))};

    std::vector<BurstPhases> phases;
    phases.reserve(speech_intervals.intervals.size());
    for (std::size_t j = 0; j < speech_intervals.intervals.size(); ++j)
        phases.push_back(burst_phases(profile.seed, j));

    const auto n = static_cast<std::size_t>(std::llround(duration_s * kDeviceRateHz));
    const double omega_b = kTwoPi * profile.breathing_rate;
    const double omega_s = kTwoPi * profile.speech_burst_rate;
    const double f_env = profile.speech_burst_rate / 4.0;
    const double omega_e = kTwoPi * f_env;
    const double accel_noise_std = profile.accel_coupling * profile.noise_std * kTwoPi;

    SynthRecording rec;
    rec.profile = profile;
    rec.truth = speech_intervals;
    rec.records.reserve(n);

    std::size_t iv_cursor = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double t = static_cast<double>(k) / kDeviceRateHz;
        double jitter = jitter_rng.uniform(-kJitterS, kJitterS);
        // The first sample anchors the recording at 0 and the last never
        // jitters backward, so the resampled grid always spans the full
        // n-sample extent regardless of seed.
        if (k + 1 == n) jitter = std::abs(jitter);
        if (k > 0) t += jitter;

        while (iv_cursor < speech_intervals.intervals.size() &&
               t >= speech_intervals.intervals[iv_cursor].end)
            ++iv_cursor;
        const bool speaking = iv_cursor < speech_intervals.intervals.size() &&
                              t >= speech_intervals.intervals[iv_cursor].start;

        double pressure;   // deterministic motion, hPa
        double d_pressure; // its time derivative, hPa/s
        if (speaking) {
            const BurstPhases& ph = phases[iv_cursor];
            const double amp = profile.breathing_amp * profile.speech_amp_factor;
            const double env = 0.5 * (1.0 + std::sin(omega_e * t + ph.envelope));
            const double d_env = 0.5 * omega_e * std::cos(omega_e * t + ph.envelope);
            const double burst = std::sin(omega_s * t + ph.burst);
            const double d_burst = omega_s * std::cos(omega_s * t + ph.burst);
            pressure = amp * std::sin(omega_b * t + ph.carrier) + amp * env * burst;
            d_pressure = amp * omega_b * std::cos(omega_b * t + ph.carrier) +
                         amp * (d_env * burst + env * d_burst);
        } else {
            pressure = profile.breathing_amp * std::sin(omega_b * t);
            d_pressure = profile.breathing_amp * omega_b * std::cos(omega_b * t);
        }
        pressure += kPressureOffsetHpa + profile.drift_rate * t;
        d_pressure += profile.drift_rate;

        SensorRecord sample;
        sample.timestamp = t;
        sample.pressure = pressure + pressure_noise.normal(0.0, profile.noise_std);
        std::array<double, 3> accel{};
        for (int a = 0; a < 3; ++a)
            accel[a] = kAxisGain[a] * profile.accel_coupling * d_pressure +
                       accel_noise[a].normal(0.0, accel_noise_std);
        sample.accel = accel;
        rec.records.push_back(sample);
    }
    return rec;
}

std::vector<SynthRecording> gen_corpus(int n_subjects, const ProfileRanges& ranges,
                                       std::uint64_t seed, double duration_s) {
    if (n_subjects < 1)
        raise(ErrorCode::InvalidConfig, "gen_corpus needs at least one subject");

    std::vector<SynthRecording> corpus;
    corpus.reserve(2 * static_cast<std::size_t>(n_subjects));
    for (int i = 0; i < n_subjects; ++i) {
        // Evenly spread rates/amplitudes keep subjects distinct; the
        // remaining parameters are drawn from the subject's own stream.
        const double frac = (static_cast<double>(i) + 0.5) / static_cast<double>(n_subjects);
        Rng rng(derive_seed(seed, "synth-subject", static_cast<std::uint64_t>(i)));

        SynthProfile profile;
        profile.breathing_rate =
            ranges.breathing_rate_min + frac * (ranges.breathing_rate_max - ranges.breathing_rate_min);
        profile.breathing_amp =
            ranges.breathing_amp_min + frac * (ranges.breathing_amp_max - ranges.breathing_amp_min);
        profile.speech_burst_rate =
            rng.uniform(ranges.speech_burst_rate_min, ranges.speech_burst_rate_max);
        profile.speech_amp_factor =
            rng.uniform(ranges.speech_amp_factor_min, ranges.speech_amp_factor_max);
        profile.noise_std = rng.uniform(ranges.noise_std_min, ranges.noise_std_max);
        profile.drift_rate = rng.uniform(ranges.drift_min, ranges.drift_max);
        profile.accel_coupling = rng.uniform(ranges.accel_coupling_min, ranges.accel_coupling_max);

        char name[32];
        std::snprintf(name, sizeof name, "subject%02d", i + 1);

        profile.seed = derive_seed(seed, "synth-recording", static_cast<std::uint64_t>(2 * i));
        SynthRecording no_speech = gen_breathing(duration_s, profile);
        no_speech.name = std::string(name) + "_nospeech";
        corpus.push_back(std::move(no_speech));

        profile.seed = derive_seed(seed, "synth-recording", static_cast<std::uint64_t>(2 * i + 1));
        AnnotationTrack full;
        full.intervals.push_back({0.0, duration_s});
        SynthRecording speech = gen_session(duration_s, full, profile);
        speech.name = std::string(name) + "_speech";
        corpus.push_back(std::move(speech));
    }
    return corpus;
}

} // namespace speechbelt
