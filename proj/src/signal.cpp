#include "speechbelt/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speechbelt/error.hpp"

namespace speechbelt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kFilterOrder = 2;

double interpolate(const std::vector<double>& times, const std::vector<double>& values, double t) {
    // times is strictly increasing and t lies within [times.front(), times.back()].
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(times.begin(), it));
    if (i > 0) --i;
    if (i + 1 >= times.size()) i = times.size() - 2;
    // Exact node hits return the stored value so that resampling an
    // already-uniform series is the identity.
    if (t == times[i]) return values[i];
    if (t == times[i + 1]) return values[i + 1];
    const double alpha = (t - times[i]) / (times[i + 1] - times[i]);
    return values[i] + alpha * (values[i + 1] - values[i]);
}

// Whole-point symmetric extension: index -1 maps to 1, index n maps to n-2.
std::size_t reflect_index(long long i, std::size_t n) {
    if (n == 1) return 0;
    const long long period = 2 * static_cast<long long>(n) - 2;
    long long j = i % period;
    if (j < 0) j += period;
    if (j >= static_cast<long long>(n)) j = period - j;
    return static_cast<std::size_t>(j);
}

void run_biquad(const BiquadCoefficients& c, std::vector<double>& x) {
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    for (double& v : x) {
        const double y = c.b0 * v + c.b1 * x1 + c.b2 * x2 - c.a1 * y1 - c.a2 * y2;
        x2 = x1;
        x1 = v;
        y2 = y1;
        y1 = y;
        v = y;
    }
}

double max_pole_radius(const BiquadCoefficients& c) {
    const double disc = c.a1 * c.a1 - 4.0 * c.a2;
    if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        return std::max(std::abs((-c.a1 + r) / 2.0), std::abs((-c.a1 - r) / 2.0));
    }
    return std::sqrt(std::abs(c.a2));
}

// Samples until the slowest pole's envelope falls below 1e-4.
std::size_t window_of_influence(const BiquadCoefficients& c) {
    const double rho = max_pole_radius(c);
    if (rho <= 0.0 || rho >= 1.0) return 64;
    return static_cast<std::size_t>(std::ceil(std::log(1e-4) / std::log(rho)));
}

// Forward-backward pass over a reflection-padded copy, trimmed back to the
// original extent. Zero initial state at both pad ends; the pad absorbs
// the start-up transients.
std::vector<double> filtfilt(const BiquadCoefficients& c, const std::vector<double>& x,
                             std::size_t pad) {
    const std::size_t n = x.size();
    std::vector<double> work(n + 2 * pad);
    for (std::size_t i = 0; i < work.size(); ++i)
        work[i] = x[reflect_index(static_cast<long long>(i) - static_cast<long long>(pad), n)];

    run_biquad(c, work);
    std::reverse(work.begin(), work.end());
    run_biquad(c, work);
    std::reverse(work.begin(), work.end());

    return {work.begin() + static_cast<long long>(pad),
            work.begin() + static_cast<long long>(pad + n)};
}

} // namespace

BiquadCoefficients design_band_pass(double low_hz, double high_hz, double rate_hz) {
    // Bilinear transform of the first-order analog band-pass prototype
    // H(s) = BW*s / (s^2 + BW*s + w0^2), with pre-warped edges.
    const double wl = std::tan(kPi * low_hz / rate_hz);
    const double wh = std::tan(kPi * high_hz / rate_hz);
    const double w0sq = wl * wh;
    const double bw = wh - wl;
    const double a0 = 1.0 + bw + w0sq;
    return BiquadCoefficients{
        bw / a0,
        0.0,
        -bw / a0,
        (2.0 * w0sq - 2.0) / a0,
        (1.0 - bw + w0sq) / a0,
    };
}

std::vector<ChannelSeries> regularize(std::span<const SensorRecord> records,
                                      const PipelineConfig& cfg) {
    cfg.validate();
    if (records.size() < 2)
        raise(ErrorCode::TooFewSamples, "regularize needs at least 2 records");

    const bool has_pressure = records.front().pressure.has_value();
    const bool has_accel = records.front().accel.has_value();

    std::vector<double> times;
    times.reserve(records.size());
    std::vector<double> pressure;
    std::array<std::vector<double>, 3> accel;

    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& rec : records) {
        if (!(rec.timestamp > prev))
            raise(ErrorCode::NonMonotonicTimestamps,
                  "timestamps must be strictly increasing (at t=" +
                      std::to_string(rec.timestamp) + ")");
        prev = rec.timestamp;
        if (rec.pressure.has_value() != has_pressure || rec.accel.has_value() != has_accel)
            raise(ErrorCode::MixedChannelPresence,
                  "every record must carry the same channel set");
        times.push_back(rec.timestamp);
        if (has_pressure) pressure.push_back(*rec.pressure);
        if (has_accel)
            for (int a = 0; a < 3; ++a) accel[a].push_back((*rec.accel)[a]);
    }
    if (!has_pressure && !has_accel)
        raise(ErrorCode::MixedChannelPresence, "records carry no channels at all");

    const double rate = cfg.target_rate;
    const auto k_min = static_cast<long long>(std::ceil(times.front() * rate - 1e-9));
    const auto k_max = static_cast<long long>(std::floor(times.back() * rate + 1e-9));
    if (k_max < k_min)
        raise(ErrorCode::TooFewSamples, "recording spans no grid points at the target rate");

    auto resample = [&](const std::vector<double>& values) {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(k_max - k_min + 1));
        for (long long k = k_min; k <= k_max; ++k)
            out.push_back(interpolate(times, values, static_cast<double>(k) / rate));
        return out;
    };

    std::vector<ChannelSeries> channels;
    if (has_pressure)
        channels.push_back({ChannelId::Pressure, rate, resample(pressure)});
    if (has_accel) {
        channels.push_back({ChannelId::AccelX, rate, resample(accel[0])});
        channels.push_back({ChannelId::AccelY, rate, resample(accel[1])});
        channels.push_back({ChannelId::AccelZ, rate, resample(accel[2])});
    }
    return channels;
}

ChannelSeries smooth(const ChannelSeries& series, const PipelineConfig& cfg) {
    cfg.validate();
    if (series.samples.size() <= 6 * kFilterOrder)
        raise(ErrorCode::SeriesTooShort,
              "smooth needs more than " + std::to_string(6 * kFilterOrder) + " samples");

    const BiquadCoefficients coeffs =
        design_band_pass(cfg.band_low, cfg.band_high, series.sample_rate);
    const std::size_t pad = 3 * window_of_influence(coeffs);

    // Averaging the two pad orientations makes time-reversal symmetry hold
    // bitwise, not just up to the residual edge transient.
    std::vector<double> fwd = filtfilt(coeffs, series.samples, pad);

    std::vector<double> rev_in(series.samples.rbegin(), series.samples.rend());
    std::vector<double> rev = filtfilt(coeffs, rev_in, pad);
    std::reverse(rev.begin(), rev.end());

    ChannelSeries out;
    out.channel_id = series.channel_id;
    out.sample_rate = series.sample_rate;
    out.samples.resize(fwd.size());
    for (std::size_t i = 0; i < fwd.size(); ++i)
        out.samples[i] = 0.5 * (fwd[i] + rev[i]);
    return out;
}

ChannelSeries discard_warmup(const ChannelSeries& series, const PipelineConfig& cfg) {
    cfg.validate();
    const auto n_drop =
        static_cast<std::size_t>(std::llround(cfg.warmup_discard_s * series.sample_rate));
    if (series.samples.size() <= n_drop)
        raise(ErrorCode::SeriesTooShort,
              "series shorter than the warm-up discard of " +
                  std::to_string(cfg.warmup_discard_s) + " s");

    ChannelSeries out;
    out.channel_id = series.channel_id;
    out.sample_rate = series.sample_rate;
    out.samples.assign(series.samples.begin() + static_cast<long long>(n_drop),
                       series.samples.end());
    return out;
}

std::vector<WindowSegment> segment(std::span<const ChannelSeries> channels,
                                   const PipelineConfig& cfg) {
    cfg.validate();
    if (channels.empty())
        raise(ErrorCode::EmptyInput, "segment needs at least one channel");

    const double rate = channels.front().sample_rate;
    const std::size_t length = channels.front().samples.size();
    for (const auto& ch : channels) {
        if (ch.sample_rate != rate)
            raise(ErrorCode::RateMismatchAcrossChannels, "channels disagree on sample rate");
        if (ch.samples.size() != length)
            raise(ErrorCode::RateMismatchAcrossChannels, "channels disagree on length");
    }

    const auto win_n = static_cast<std::size_t>(cfg.window_samples());
    const auto hop_n = static_cast<std::size_t>(cfg.hop_samples());
    if (length < win_n)
        raise(ErrorCode::SeriesShorterThanWindow,
              "series of " + std::to_string(length) + " samples is shorter than one window");

    // Canonical channel order inside every window.
    std::vector<std::size_t> order(channels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return channels[a].channel_id < channels[b].channel_id;
    });

    const std::size_t count = (length - win_n) / hop_n + 1;
    std::vector<WindowSegment> windows;
    windows.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t start = w * hop_n;
        WindowSegment seg;
        seg.start_time = static_cast<double>(start) / rate;
        seg.duration = cfg.window_s;
        seg.channels.reserve(channels.size());
        seg.slices.reserve(channels.size());
        for (std::size_t idx : order) {
            const auto& src = channels[idx].samples;
            seg.channels.push_back(channels[idx].channel_id);
            seg.slices.emplace_back(src.begin() + static_cast<long long>(start),
                                    src.begin() + static_cast<long long>(start + win_n));
        }
        windows.push_back(std::move(seg));
    }
    return windows;
}

} // namespace speechbelt
