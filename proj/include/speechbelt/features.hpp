#pragma once

#include <span>
#include <string>
#include <vector>

#include "speechbelt/types.hpp"

namespace speechbelt {

// Breathing band used by the peak-frequency rule: a spectral peak only
// counts if it falls inside [0.13, 0.66] Hz, otherwise the feature is 0.
inline constexpr double kPeakBandLowHz = 0.13;
inline constexpr double kPeakBandHighHz = 0.66;

inline constexpr int kFeaturesPerChannel = 14;

struct TimeStats {
    double max = 0.0;
    double min = 0.0;
    double mean = 0.0;
    double std = 0.0;       // sample standard deviation, n-1 denominator
    double skewness = 0.0;  // g1, moment-based
    double kurtosis = 0.0;  // excess g2, moment-based
};

struct FreqStats {
    double max = 0.0;
    double min = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double peak_frequency = 0.0;     // Hz, 0 when no in-band peak
    double average_frequency = 0.0;  // magnitude-weighted spectral centroid, Hz
};

// One-sided magnitude spectrum. Bin k sits at k * rate / N for
// k = 0 .. floor(N/2). The DC bin is kept in the structure but excluded
// from all downstream statistics.
struct MagnitudeSpectrum {
    std::vector<double> bin_frequencies;  // Hz
    std::vector<double> magnitudes;       // |X_k|, >= 0
    double resolution = 0.0;              // Hz, rate / N
};

struct FeatureVector {
    std::vector<double> values;
    std::vector<std::string> layout;
};

struct FeatureMatrix {
    std::vector<std::string> column_names;
    std::vector<double> start_times;            // seconds, one per row
    std::vector<std::vector<double>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return column_names.size(); }
};

TimeStats time_stats(std::span<const double> samples);

MagnitudeSpectrum spectrum(std::span<const double> samples, double rate);

FreqStats freq_stats(const MagnitudeSpectrum& spec);

// Column names for one channel block, in the fixed 14-column order.
std::vector<std::string> channel_feature_names(ChannelId id);

// Full layout for a channel set (channels must already be in canonical order).
std::vector<std::string> feature_layout(std::span<const ChannelId> channels);

// Feature set implied by a column layout (pressure-only / accel-only / both).
FeatureSet feature_set_of(std::span<const std::string> layout);

FeatureVector featurize_window(const WindowSegment& window, double rate);

// Row i is featurize_window(windows[i]). `channels` fixes the expected
// channel set (and thus the column names) even when there are no windows.
FeatureMatrix build_matrix(std::span<const WindowSegment> windows, double rate,
                           std::span<const ChannelId> channels);

// Convenience overload: channel set taken from the first window; zero
// windows yield a fully empty matrix.
FeatureMatrix build_matrix(std::span<const WindowSegment> windows, double rate);

} // namespace speechbelt
