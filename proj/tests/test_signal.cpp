#include <doctest.h>

#include <cmath>

#include "speechbelt/error.hpp"
#include "speechbelt/rng.hpp"
#include "speechbelt/signal.hpp"

using namespace speechbelt;

namespace {

std::vector<SensorRecord> pressure_records(const std::vector<double>& times,
                                           const std::vector<double>& values) {
    std::vector<SensorRecord> records(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        records[i].timestamp = times[i];
        records[i].pressure = values[i];
    }
    return records;
}

ChannelSeries sinusoid(double freq, double rate, double duration_s, double amp = 1.0) {
    ChannelSeries s;
    s.channel_id = ChannelId::Pressure;
    s.sample_rate = rate;
    const auto n = static_cast<std::size_t>(std::llround(duration_s * rate));
    s.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        s.samples[k] = amp * std::sin(2.0 * 3.14159265358979323846 * freq *
                                      static_cast<double>(k) / rate);
    return s;
}

double central_rms(const std::vector<double>& x) {
    const std::size_t lo = x.size() / 4;
    const std::size_t hi = x.size() - lo;
    double ss = 0.0;
    for (std::size_t i = lo; i < hi; ++i) ss += x[i] * x[i];
    return std::sqrt(ss / static_cast<double>(hi - lo));
}

} // namespace

TEST_CASE("regularize passes through on-grid samples") {
    PipelineConfig cfg;
    const auto records = pressure_records({0.0, 0.125, 0.25}, {1000.0, 1001.0, 1002.0});
    const auto channels = regularize(records, cfg);
    REQUIRE(channels.size() == 1);
    CHECK(channels[0].channel_id == ChannelId::Pressure);
    CHECK(channels[0].sample_rate == 8.0);
    CHECK(channels[0].samples == std::vector<double>{1000.0, 1001.0, 1002.0});
}

TEST_CASE("regularize interpolates between jittered samples") {
    PipelineConfig cfg;
    const auto records = pressure_records({0.0, 0.2}, {0.0, 2.0});
    const auto channels = regularize(records, cfg);
    REQUIRE(channels.size() == 1);
    // grid points 0 and 0.125 fit inside [0, 0.2]; 0.25 would extrapolate
    REQUIRE(channels[0].samples.size() == 2);
    CHECK(channels[0].samples[0] == doctest::Approx(0.0));
    CHECK(channels[0].samples[1] == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("regularize rejects bad inputs") {
    PipelineConfig cfg;
    CHECK_THROWS_WITH_AS(
        (void)regularize(pressure_records({0.0, 0.1, 0.1}, {1.0, 2.0, 3.0}), cfg),
        doctest::Contains("NonMonotonicTimestamps"), Error);
    CHECK_THROWS_AS((void)regularize(pressure_records({0.0}, {1.0}), cfg), Error);

    auto mixed = pressure_records({0.0, 0.125, 0.25}, {1.0, 2.0, 3.0});
    mixed[1].pressure.reset();
    mixed[1].accel = std::array<double, 3>{0.0, 0.0, 0.0};
    try {
        (void)regularize(mixed, cfg);
        FAIL("expected MixedChannelPresence");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MixedChannelPresence);
    }
}

TEST_CASE("regularize is the identity on already-uniform input") {
    PipelineConfig cfg;
    Rng rng(42);
    std::vector<SensorRecord> records(480);
    for (std::size_t k = 0; k < records.size(); ++k) {
        records[k].timestamp = static_cast<double>(k) / 8.0;
        records[k].pressure = 1000.0 + rng.uniform(-1.0, 1.0);
        records[k].accel =
            std::array<double, 3>{rng.uniform(), rng.uniform(), rng.uniform()};
    }
    const auto channels = regularize(records, cfg);
    REQUIRE(channels.size() == 4);
    CHECK(channels[0].channel_id == ChannelId::Pressure);
    CHECK(channels[1].channel_id == ChannelId::AccelX);
    REQUIRE(channels[0].samples.size() == records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
        CHECK(channels[0].samples[k] == doctest::Approx(*records[k].pressure).epsilon(1e-12));
        CHECK(channels[1].samples[k] == (*records[k].accel)[0]);
    }
}

TEST_CASE("smooth keeps a 0.3 Hz tone within 1 dB") {
    PipelineConfig cfg;
    const auto in = sinusoid(0.3, 8.0, 60.0);
    const auto out = smooth(in, cfg);
    CHECK(out.channel_id == in.channel_id);
    CHECK(out.sample_rate == in.sample_rate);
    REQUIRE(out.samples.size() == in.samples.size());

    const double gain = central_rms(out.samples) / central_rms(in.samples);
    const double gain_db = 20.0 * std::log10(gain);
    CHECK(gain_db > -1.0);
    CHECK(gain_db < 1.0);
}

TEST_CASE("smooth rejects DC") {
    PipelineConfig cfg;
    ChannelSeries constant;
    constant.channel_id = ChannelId::Pressure;
    constant.sample_rate = 8.0;
    constant.samples.assign(480, 5.0);
    const auto out = smooth(constant, cfg);
    double peak = 0.0;
    for (double v : out.samples) peak = std::max(peak, std::abs(v));
    CHECK(peak <= 0.01 * 5.0);
}

TEST_CASE("smooth attenuates 0.01 Hz drift by 20 dB") {
    PipelineConfig cfg;
    const auto in = sinusoid(0.01, 8.0, 600.0);
    const auto out = smooth(in, cfg);
    const double gain = central_rms(out.samples) / central_rms(in.samples);
    CHECK(20.0 * std::log10(gain) <= -20.0);
}

TEST_CASE("smooth is zero-phase: time reversal commutes") {
    PipelineConfig cfg;
    Rng rng(7);
    ChannelSeries series;
    series.channel_id = ChannelId::AccelY;
    series.sample_rate = 8.0;
    series.samples.resize(300);
    for (auto& v : series.samples) v = rng.normal(0.0, 2.0);

    ChannelSeries reversed = series;
    std::reverse(reversed.samples.begin(), reversed.samples.end());

    const auto a = smooth(reversed, cfg).samples;
    auto b = smooth(series, cfg).samples;
    std::reverse(b.begin(), b.end());

    double max_diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        max_diff = std::max(max_diff, std::abs(a[i] - b[i]));
    CHECK(max_diff <= 1e-9);
}

TEST_CASE("smooth needs more than 12 samples") {
    PipelineConfig cfg;
    ChannelSeries tiny;
    tiny.sample_rate = 8.0;
    tiny.samples.assign(12, 1.0);
    CHECK_THROWS_WITH_AS((void)smooth(tiny, cfg), doctest::Contains("SeriesTooShort"), Error);

    // shortest legal series: the reflection padding wraps many times
    tiny.samples.assign(13, 1.0);
    const auto out = smooth(tiny, cfg);
    REQUIRE(out.samples.size() == 13);
    for (double v : out.samples) CHECK(std::isfinite(v));
}

TEST_CASE("discard_warmup drops the first 30 s") {
    PipelineConfig cfg;
    ChannelSeries series;
    series.channel_id = ChannelId::Pressure;
    series.sample_rate = 8.0;
    series.samples.resize(720);
    for (std::size_t i = 0; i < series.samples.size(); ++i)
        series.samples[i] = static_cast<double>(i);

    const auto out = discard_warmup(series, cfg);
    REQUIRE(out.samples.size() == 480);
    CHECK(out.samples.front() == 240.0);
    CHECK(out.channel_id == series.channel_id);

    PipelineConfig no_discard = cfg;
    no_discard.warmup_discard_s = 0.0;
    CHECK(discard_warmup(series, no_discard).samples == series.samples);

    ChannelSeries short_series = series;
    short_series.samples.resize(160);  // 20 s
    CHECK_THROWS_WITH_AS((void)discard_warmup(short_series, cfg),
                         doctest::Contains("SeriesTooShort"), Error);
}

TEST_CASE("segment cuts 13 windows out of 60 s") {
    PipelineConfig cfg;
    const auto series = sinusoid(0.3, 8.0, 60.0);
    const auto windows = segment(std::vector<ChannelSeries>{series}, cfg);
    REQUIRE(windows.size() == 13);
    for (std::size_t w = 0; w < windows.size(); ++w) {
        CHECK(windows[w].start_time == doctest::Approx(4.5 * static_cast<double>(w)));
        CHECK(windows[w].duration == 6.0);
        REQUIRE(windows[w].slices.size() == 1);
        CHECK(windows[w].slices[0].size() == 48);
    }
    CHECK(windows.back().start_time == doctest::Approx(54.0));
}

TEST_CASE("segment boundary and overlap cases") {
    PipelineConfig cfg;
    CHECK(segment(std::vector<ChannelSeries>{sinusoid(0.3, 8.0, 6.0)}, cfg).size() == 1);

    PipelineConfig disjoint = cfg;
    disjoint.overlap_fraction = 0.0;
    CHECK(segment(std::vector<ChannelSeries>{sinusoid(0.3, 8.0, 12.0)}, disjoint).size() == 2);

    CHECK_THROWS_WITH_AS(
        (void)segment(std::vector<ChannelSeries>{sinusoid(0.3, 8.0, 5.0)}, cfg),
        doctest::Contains("SeriesShorterThanWindow"), Error);

    std::vector<ChannelSeries> mismatched{sinusoid(0.3, 8.0, 12.0), sinusoid(0.3, 4.0, 12.0)};
    mismatched[1].channel_id = ChannelId::AccelX;
    CHECK_THROWS_WITH_AS((void)segment(mismatched, cfg),
                         doctest::Contains("RateMismatchAcrossChannels"), Error);
}

TEST_CASE("configs with broken invariants are rejected") {
    PipelineConfig fractional;
    fractional.window_s = 5.9;  // 47.2 samples at 8 Hz
    CHECK_THROWS_WITH_AS(fractional.validate(), doctest::Contains("InvalidConfig"), Error);

    PipelineConfig band;
    band.band_low = 3.5;
    band.band_high = 0.1;
    CHECK_THROWS_AS(band.validate(), Error);

    PipelineConfig nyquist;
    nyquist.band_high = 4.5;  // above rate/2
    CHECK_THROWS_AS(nyquist.validate(), Error);
}

TEST_CASE("consecutive windows share exactly the overlap region") {
    PipelineConfig cfg;
    Rng rng(11);
    ChannelSeries series;
    series.channel_id = ChannelId::Pressure;
    series.sample_rate = 8.0;
    series.samples.resize(480);
    for (auto& v : series.samples) v = rng.uniform();

    const auto windows = segment(std::vector<ChannelSeries>{series}, cfg);
    const std::size_t shared =
        static_cast<std::size_t>(std::llround(cfg.overlap_fraction * cfg.window_s * 8.0));
    REQUIRE(shared == 12);
    for (std::size_t w = 0; w + 1 < windows.size(); ++w) {
        const auto& cur = windows[w].slices[0];
        const auto& next = windows[w + 1].slices[0];
        for (std::size_t i = 0; i < shared; ++i)
            CHECK(cur[cur.size() - shared + i] == next[i]);
        CHECK(windows[w + 1].start_time - windows[w].start_time ==
              doctest::Approx(cfg.window_s * (1.0 - cfg.overlap_fraction)));
    }
}
