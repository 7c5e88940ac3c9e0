#include "speechbelt/features.hpp"

#include <algorithm>
#include <cmath>

#include "speechbelt/dft.hpp"
#include "speechbelt/error.hpp"

namespace speechbelt {

namespace {

// Shared six-number summary used for both time samples and spectrum
// magnitudes. std uses the n-1 denominator; skewness and kurtosis are the
// moment-based g1 and excess g2. A constant input yields skew = kurt = 0.
TimeStats six_stats(std::span<const double> values) {
    TimeStats out;
    const std::size_t n = values.size();

    out.max = values[0];
    out.min = values[0];
    double sum = 0.0;
    for (double v : values) {
        out.max = std::max(out.max, v);
        out.min = std::min(out.min, v);
        sum += v;
    }
    out.mean = sum / static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0, ss = 0.0;
    for (double v : values) {
        const double d = v - out.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        ss += d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    out.std = std::sqrt(ss / static_cast<double>(n - 1));

    if (m2 > 0.0) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.kurtosis = m4 / (m2 * m2) - 3.0;
    } else {
        out.skewness = 0.0;
        out.kurtosis = 0.0;
    }
    return out;
}

const char* const kStatNames[kFeaturesPerChannel] = {
    "max", "min", "mean", "std", "skewness", "kurtosis",
    "f_max", "f_min", "f_mean", "f_std", "f_skewness", "f_kurtosis",
    "peak_frequency", "average_frequency",
};

} // namespace

TimeStats time_stats(std::span<const double> samples) {
    if (samples.size() < 2)
        raise(ErrorCode::TooFewSamples, "time_stats needs at least 2 samples");
    return six_stats(samples);
}

MagnitudeSpectrum spectrum(std::span<const double> samples, double rate) {
    const std::size_t n = samples.size();
    if (n < 8)
        raise(ErrorCode::TooFewSamples, "spectrum needs at least 8 samples");

    const auto coeffs = fourier_transform(samples);
    MagnitudeSpectrum spec;
    spec.resolution = rate / static_cast<double>(n);
    const std::size_t n_bins = n / 2 + 1;
    spec.bin_frequencies.reserve(n_bins);
    spec.magnitudes.reserve(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        spec.bin_frequencies.push_back(static_cast<double>(k) * spec.resolution);
        spec.magnitudes.push_back(std::abs(coeffs[k]));
    }
    return spec;
}

FreqStats freq_stats(const MagnitudeSpectrum& spec) {
    if (spec.magnitudes.size() < 3)
        raise(ErrorCode::EmptySpectrum, "need at least 2 non-DC bins");

    const std::span<const double> mags(spec.magnitudes.data() + 1, spec.magnitudes.size() - 1);
    const TimeStats six = six_stats(mags);

    FreqStats out;
    out.max = six.max;
    out.min = six.min;
    out.mean = six.mean;
    out.std = six.std;
    out.skewness = six.skewness;
    out.kurtosis = six.kurtosis;

    // Peak frequency: strongest in-band bin that is also a strict local
    // maximum of the full spectrum. A monotone spectrum edge therefore
    // never produces a peak, and out-of-band peaks report 0. The relative
    // floor keeps transform rounding noise (~1e-15 of the dominant bin)
    // from ever counting as a peak.
    const double floor_mag = 1e-9 * six.max;
    double best_mag = 0.0;
    double best_freq = 0.0;
    for (std::size_t k = 1; k + 1 < spec.magnitudes.size(); ++k) {
        const double f = spec.bin_frequencies[k];
        if (f < kPeakBandLowHz || f > kPeakBandHighHz) continue;
        const double m = spec.magnitudes[k];
        if (m <= floor_mag) continue;
        if (!(m > spec.magnitudes[k - 1] && m > spec.magnitudes[k + 1])) continue;
        if (m > best_mag) {
            best_mag = m;
            best_freq = f;
        }
    }
    out.peak_frequency = best_freq;

    double weighted = 0.0, total = 0.0;
    for (std::size_t k = 1; k < spec.magnitudes.size(); ++k) {
        weighted += spec.bin_frequencies[k] * spec.magnitudes[k];
        total += spec.magnitudes[k];
    }
    out.average_frequency = total > 0.0 ? weighted / total : 0.0;
    return out;
}

std::vector<std::string> channel_feature_names(ChannelId id) {
    std::vector<std::string> names;
    names.reserve(kFeaturesPerChannel);
    const std::string prefix = std::string(channel_name(id)) + "_";
    for (const char* stat : kStatNames) names.push_back(prefix + stat);
    return names;
}

FeatureSet feature_set_of(std::span<const std::string> layout) {
    bool pressure = false, accel = false;
    for (const auto& name : layout) {
        if (name.rfind("pressure_", 0) == 0) pressure = true;
        if (name.rfind("ax_", 0) == 0 || name.rfind("ay_", 0) == 0 || name.rfind("az_", 0) == 0)
            accel = true;
    }
    if (pressure && accel) return FeatureSet::Combined;
    if (accel) return FeatureSet::AccelOnly;
    return FeatureSet::PressureOnly;
}

std::vector<std::string> feature_layout(std::span<const ChannelId> channels) {
    std::vector<std::string> layout;
    layout.reserve(channels.size() * kFeaturesPerChannel);
    for (ChannelId id : channels) {
        auto block = channel_feature_names(id);
        layout.insert(layout.end(), block.begin(), block.end());
    }
    return layout;
}

FeatureVector featurize_window(const WindowSegment& window, double rate) {
    FeatureVector fv;
    fv.layout = feature_layout(window.channels);
    fv.values.reserve(fv.layout.size());

    for (const auto& slice : window.slices) {
        if (slice.empty())
            raise(ErrorCode::TooFewSamples, "window slice is empty");
        const TimeStats t = time_stats(slice);
        const FreqStats f = freq_stats(spectrum(slice, rate));
        fv.values.insert(fv.values.end(),
                         {t.max, t.min, t.mean, t.std, t.skewness, t.kurtosis,
                          f.max, f.min, f.mean, f.std, f.skewness, f.kurtosis,
                          f.peak_frequency, f.average_frequency});
    }
    return fv;
}

FeatureMatrix build_matrix(std::span<const WindowSegment> windows, double rate,
                           std::span<const ChannelId> channels) {
    FeatureMatrix matrix;
    matrix.column_names = feature_layout(channels);
    matrix.start_times.reserve(windows.size());
    matrix.rows.reserve(windows.size());

    for (const auto& window : windows) {
        if (!std::equal(window.channels.begin(), window.channels.end(),
                        channels.begin(), channels.end()))
            raise(ErrorCode::InconsistentChannelSets,
                  "all windows must share the same channel set");
        matrix.start_times.push_back(window.start_time);
        matrix.rows.push_back(featurize_window(window, rate).values);
    }
    return matrix;
}

FeatureMatrix build_matrix(std::span<const WindowSegment> windows, double rate) {
    if (windows.empty()) return {};
    return build_matrix(windows, rate, windows.front().channels);
}

} // namespace speechbelt
