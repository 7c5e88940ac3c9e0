#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "speechbelt/error.hpp"
#include "speechbelt/features.hpp"
#include "speechbelt/rng.hpp"

using namespace speechbelt;

namespace {

std::vector<double> on_bin_cosine(std::size_t n, std::size_t bin, double rate) {
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k)
        x[k] = std::cos(2.0 * 3.14159265358979323846 * static_cast<double>(bin) *
                        static_cast<double>(k) / static_cast<double>(n));
    (void)rate;
    return x;
}

WindowSegment make_window(std::vector<ChannelId> channels, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    WindowSegment w;
    w.start_time = 0.0;
    w.duration = static_cast<double>(n) / 8.0;
    w.channels = std::move(channels);
    for (std::size_t c = 0; c < w.channels.size(); ++c) {
        std::vector<double> slice(n);
        for (auto& v : slice) v = rng.normal(0.0, 1.0);
        w.slices.push_back(std::move(slice));
    }
    return w;
}

} // namespace

TEST_CASE("time_stats on a constant series") {
    const std::vector<double> x{5.0, 5.0, 5.0, 5.0};
    const auto s = time_stats(x);
    CHECK(s.max == 5.0);
    CHECK(s.min == 5.0);
    CHECK(s.mean == 5.0);
    CHECK(s.std == 0.0);
    CHECK(s.skewness == 0.0);
    CHECK(s.kurtosis == 0.0);
}

TEST_CASE("time_stats matches hand-computed moments") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const auto s = time_stats(x);
    CHECK(s.max == 4.0);
    CHECK(s.min == 1.0);
    CHECK(s.mean == doctest::Approx(2.5));
    // sqrt(5/3), m3 = 0, m4/m2^2 - 3 = 2.5625/1.5625 - 3
    CHECK(s.std == doctest::Approx(1.2909944487358056).epsilon(1e-14));
    CHECK(s.skewness == doctest::Approx(0.0));
    CHECK(s.kurtosis == doctest::Approx(-1.36).epsilon(1e-14));
}

TEST_CASE("time_stats skewness sign and value for a right tail") {
    const std::vector<double> x{0.0, 0.0, 0.0, 10.0};
    const auto s = time_stats(x);
    CHECK(s.skewness > 0.0);
    // m3/m2^1.5 = 93.75 / 18.75^1.5 = 2/sqrt(3)
    CHECK(s.skewness == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("time_stats needs two samples") {
    CHECK_THROWS_WITH_AS((void)time_stats(std::vector<double>{1.0}),
                         doctest::Contains("TooFewSamples"), Error);
}

TEST_CASE("spectrum concentrates an on-bin cosine in one bin") {
    const std::size_t n = 48, bin = 5;
    const auto spec = spectrum(on_bin_cosine(n, bin, 8.0), 8.0);
    REQUIRE(spec.magnitudes.size() == 25);
    CHECK(spec.resolution == doctest::Approx(8.0 / 48.0));
    CHECK(spec.bin_frequencies[bin] == doctest::Approx(8.0 * 5.0 / 48.0));
    const double peak = spec.magnitudes[bin];
    CHECK(peak == doctest::Approx(24.0).epsilon(1e-9));  // N/2 for unit cosine
    for (std::size_t k = 0; k < spec.magnitudes.size(); ++k)
        if (k != bin) CHECK(spec.magnitudes[k] <= 1e-9 * peak);
}

TEST_CASE("spectrum of zeros is zero") {
    const auto spec = spectrum(std::vector<double>(48, 0.0), 8.0);
    for (double m : spec.magnitudes) CHECK(m == 0.0);
}

TEST_CASE("spectrum agrees with the naive DFT oracle") {
    Rng rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(48);
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        const auto spec = spectrum(x, 8.0);
        const auto expected = oracle::naive_dft_magnitudes(x);
        REQUIRE(spec.magnitudes.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k)
            CHECK(std::abs(spec.magnitudes[k] - expected[k]) <= 1e-9);
    }
    CHECK_THROWS_WITH_AS((void)spectrum(std::vector<double>(7, 1.0), 8.0),
                         doctest::Contains("TooFewSamples"), Error);
}

TEST_CASE("the transform handles odd and prime lengths") {
    for (std::size_t n : {std::size_t{9}, std::size_t{13}, std::size_t{21}, std::size_t{50},
                          std::size_t{53}, std::size_t{60}}) {
        Rng rng(n);
        std::vector<double> x(n);
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        const auto spec = spectrum(x, 8.0);
        const auto expected = oracle::naive_dft_magnitudes(x);
        REQUIRE(spec.magnitudes.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k)
            CHECK(std::abs(spec.magnitudes[k] - expected[k]) <= 1e-9);
    }
}

TEST_CASE("freq_stats finds the in-band peak") {
    // bin 2 of N=48 @ 8 Hz sits at 1/3 Hz, inside [0.13, 0.66]
    const auto spec = spectrum(on_bin_cosine(48, 2, 8.0), 8.0);
    const auto f = freq_stats(spec);
    CHECK(f.peak_frequency == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(f.average_frequency == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("freq_stats zeroes the peak outside the breathing band") {
    // bin 6 of N=48 @ 8 Hz = 1.0 Hz
    const auto spec = spectrum(on_bin_cosine(48, 6, 8.0), 8.0);
    CHECK(freq_stats(spec).peak_frequency == 0.0);
}

TEST_CASE("freq_stats needs at least two non-DC bins") {
    MagnitudeSpectrum tiny;
    tiny.bin_frequencies = {0.0, 4.0};
    tiny.magnitudes = {1.0, 1.0};
    tiny.resolution = 4.0;
    CHECK_THROWS_WITH_AS((void)freq_stats(tiny), doctest::Contains("EmptySpectrum"), Error);
}

TEST_CASE("freq_stats on an all-zero spectrum") {
    const auto f = freq_stats(spectrum(std::vector<double>(48, 0.0), 8.0));
    CHECK(f.max == 0.0);
    CHECK(f.std == 0.0);
    CHECK(f.skewness == 0.0);
    CHECK(f.kurtosis == 0.0);
    CHECK(f.peak_frequency == 0.0);
    CHECK(f.average_frequency == 0.0);
}

TEST_CASE("featurize_window layouts: 14 / 42 / 56 columns") {
    const auto p = featurize_window(make_window({ChannelId::Pressure}, 48, 1), 8.0);
    CHECK(p.values.size() == 14);
    CHECK(p.layout.size() == 14);
    CHECK(p.layout.front() == "pressure_max");
    CHECK(p.layout.back() == "pressure_average_frequency");

    const auto a = featurize_window(
        make_window({ChannelId::AccelX, ChannelId::AccelY, ChannelId::AccelZ}, 48, 2), 8.0);
    CHECK(a.values.size() == 42);

    const auto b = featurize_window(
        make_window({ChannelId::Pressure, ChannelId::AccelX, ChannelId::AccelY,
                     ChannelId::AccelZ}, 48, 3), 8.0);
    CHECK(b.values.size() == 56);
    const std::set<std::string> unique(b.layout.begin(), b.layout.end());
    CHECK(unique.size() == 56);
}

TEST_CASE("build_matrix shapes and errors") {
    std::vector<WindowSegment> windows;
    const std::vector<ChannelId> four{ChannelId::Pressure, ChannelId::AccelX,
                                      ChannelId::AccelY, ChannelId::AccelZ};
    for (int i = 0; i < 13; ++i) windows.push_back(make_window(four, 48, 100 + i));
    const auto m = build_matrix(windows, 8.0);
    CHECK(m.n_rows() == 13);
    CHECK(m.n_cols() == 56);

    const auto empty = build_matrix(std::vector<WindowSegment>{}, 8.0, four);
    CHECK(empty.n_rows() == 0);
    CHECK(empty.n_cols() == 56);

    windows.push_back(make_window({ChannelId::Pressure}, 48, 200));
    CHECK_THROWS_WITH_AS((void)build_matrix(windows, 8.0),
                         doctest::Contains("InconsistentChannelSets"), Error);
}

TEST_CASE("amplitude scaling moves the right features and leaves the rest") {
    auto window = make_window({ChannelId::Pressure}, 48, 9);
    const auto base = featurize_window(window, 8.0);

    const double c = 3.5;
    for (auto& v : window.slices[0]) v *= c;
    const auto scaled = featurize_window(window, 8.0);

    // indices: 0..5 time stats, 6..11 freq stats, 12 peak, 13 centroid
    for (std::size_t i : {0u, 1u, 2u, 3u, 6u, 7u, 8u, 9u})
        CHECK(scaled.values[i] == doctest::Approx(c * base.values[i]).epsilon(1e-12));
    for (std::size_t i : {4u, 5u, 10u, 11u})
        CHECK(scaled.values[i] == doctest::Approx(base.values[i]).epsilon(1e-9));
    CHECK(scaled.values[12] == doctest::Approx(base.values[12]).epsilon(1e-12));
    CHECK(scaled.values[13] == doctest::Approx(base.values[13]).epsilon(1e-12));
}

TEST_CASE("peak_frequency is always 0 or inside the breathing band") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(48);
        for (auto& v : x) v = rng.normal(0.0, 1.0);
        const double peak = freq_stats(spectrum(x, 8.0)).peak_frequency;
        const bool ok = peak == 0.0 || (peak >= kPeakBandLowHz && peak <= kPeakBandHighHz);
        CHECK(ok);
    }
}
