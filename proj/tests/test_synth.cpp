#include <doctest.h>

#include <cmath>
#include <set>

#include "speechbelt/error.hpp"
#include "speechbelt/features.hpp"
#include "speechbelt/pipeline.hpp"
#include "speechbelt/synth.hpp"

using namespace speechbelt;

namespace {

bool same_records(const std::vector<SensorRecord>& a, const std::vector<SensorRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].timestamp != b[i].timestamp) return false;
        if (a[i].pressure != b[i].pressure) return false;
        if (a[i].accel != b[i].accel) return false;
    }
    return true;
}

} // namespace

TEST_CASE("gen_breathing is deterministic and jittered") {
    SynthProfile profile;
    profile.seed = 99;
    const auto a = gen_breathing(60.0, profile);
    const auto b = gen_breathing(60.0, profile);
    CHECK(same_records(a.records, b.records));
    CHECK(a.truth.intervals.empty());
    CHECK(a.records.size() == 480);
    CHECK(a.records[0].timestamp == 0.0);

    bool any_off_grid = false;
    for (std::size_t k = 1; k < a.records.size(); ++k) {
        const double nominal = static_cast<double>(k) / 8.0;
        if (std::abs(a.records[k].timestamp - nominal) > 1e-6) any_off_grid = true;
        CHECK(std::abs(a.records[k].timestamp - nominal) <= 0.010 + 1e-12);
        CHECK(a.records[k].timestamp > a.records[k - 1].timestamp);
    }
    CHECK(any_off_grid);
}

TEST_CASE("gen_breathing rejects too-short durations") {
    SynthProfile profile;
    CHECK_THROWS_WITH_AS((void)gen_breathing(5.0, profile),
                         doctest::Contains("DurationTooShort"), Error);
}

TEST_CASE("gen_session validates intervals") {
    SynthProfile profile;
    AnnotationTrack out_of_range;
    out_of_range.intervals.push_back({55.0, 70.0});
    CHECK_THROWS_WITH_AS((void)gen_session(60.0, out_of_range, profile),
                         doctest::Contains("IntervalOutOfRange"), Error);
}

TEST_CASE("gen_session with no intervals degenerates to gen_breathing") {
    SynthProfile profile;
    profile.seed = 1234;
    const auto plain = gen_breathing(45.0, profile);
    const auto empty = gen_session(45.0, AnnotationTrack{}, profile);
    CHECK(same_records(plain.records, empty.records));
}

TEST_CASE("clean breathing shows up as the in-band peak frequency") {
    for (double rate : {1.0 / 3.0, 0.5}) {
        SynthProfile profile;
        profile.breathing_rate = rate;  // exactly on a 48-point bin at 8 Hz
        profile.noise_std = 0.0;
        profile.drift_rate = 0.0;
        profile.seed = 7;

        const auto rec = gen_breathing(90.0, profile);
        PipelineConfig cfg;
        const auto matrix = featurize_recording(rec.records, cfg, FeatureSet::PressureOnly);
        REQUIRE(matrix.n_rows() == 13);
        const auto col = std::find(matrix.column_names.begin(), matrix.column_names.end(),
                                   "pressure_peak_frequency");
        REQUIRE(col != matrix.column_names.end());
        const auto idx = static_cast<std::size_t>(col - matrix.column_names.begin());
        for (const auto& row : matrix.rows)
            CHECK(row[idx] == doctest::Approx(rate).epsilon(1e-9));
    }
}

TEST_CASE("speech windows follow the truth track through label_windows") {
    SynthProfile profile;
    profile.seed = 21;
    AnnotationTrack track;
    track.intervals.push_back({10.0, 40.0});
    const auto rec = gen_session(60.0, track, profile);
    CHECK(annotation_total(rec.truth) == 30.0);

    PipelineConfig cfg;
    cfg.warmup_discard_s = 0.0;
    const auto windows = preprocess_recording(rec.records, cfg, FeatureSet::PressureOnly);
    const auto labels = label_windows(windows, rec.truth);
    REQUIRE(labels.size() == windows.size());
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const double lo = std::max(windows[w].start_time, 10.0);
        const double hi = std::min(windows[w].start_time + windows[w].duration, 40.0);
        const Label expected = (hi - lo) > 3.0 ? Label::Speech : Label::NoSpeech;
        CHECK(labels[w] == expected);
    }
}

TEST_CASE("gen_corpus produces two distinct recordings per subject") {
    const ProfileRanges ranges;
    const auto corpus = gen_corpus(10, ranges, 42);
    REQUIRE(corpus.size() == 20);

    const auto again = gen_corpus(10, ranges, 42);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(corpus[i].name == again[i].name);
        CHECK(same_records(corpus[i].records, again[i].records));
    }

    std::set<double> rates;
    for (std::size_t i = 0; i < corpus.size(); i += 2) {
        CHECK(corpus[i].truth.intervals.empty());
        REQUIRE(corpus[i + 1].truth.intervals.size() == 1);
        CHECK(corpus[i + 1].truth.intervals[0].start == 0.0);
        CHECK(corpus[i + 1].truth.intervals[0].end == 90.0);
        rates.insert(corpus[i].profile.breathing_rate);
    }
    CHECK(rates.size() == 10);  // all subjects distinct
    CHECK(corpus[0].name == "subject01_nospeech");
    CHECK(corpus[1].name == "subject01_speech");
}

TEST_CASE("generator output flows through the whole ingest pipeline") {
    const auto corpus = gen_corpus(2, ProfileRanges{}, 3);
    PipelineConfig cfg;
    for (const auto& rec : corpus) {
        const auto matrix = featurize_recording(rec.records, cfg, FeatureSet::Combined);
        CHECK(matrix.n_rows() == 13);
        CHECK(matrix.n_cols() == 56);
        for (const auto& row : matrix.rows)
            for (double v : row) CHECK(std::isfinite(v));
    }
}

TEST_CASE("profiles outside the documented ranges are rejected") {
    SynthProfile profile;
    profile.breathing_rate = 0.9;  // above the breathing band
    CHECK_THROWS_WITH_AS((void)gen_breathing(30.0, profile),
                         doctest::Contains("InvalidConfig"), Error);

    SynthProfile burst;
    burst.speech_burst_rate = 0.5;
    CHECK_THROWS_AS((void)gen_breathing(30.0, burst), Error);
}

TEST_CASE("a trained model stays quiet on a fresh breathing-only recording") {
    const auto corpus = gen_corpus(4, ProfileRanges{}, 88);
    std::vector<CorpusEntry> entries;
    for (const auto& rec : corpus) entries.push_back({rec.name, rec.records, rec.truth});

    PipelineConfig cfg;
    const auto dataset = build_dataset(entries, cfg, FeatureSet::Combined);
    const auto model = train(dataset, ModelKind::RF, Hyperparams{}, 88);

    SynthProfile fresh;
    fresh.breathing_rate = 0.28;
    fresh.seed = 4242;  // not part of the training corpus
    const auto recording = gen_breathing(90.0, fresh);
    const auto matrix = featurize_for_model(model, recording.records, cfg);
    const auto est = estimate_duration(predict_matrix(model, matrix));
    CHECK(est.estimated_seconds <= 0.05 * 90.0);
}

TEST_CASE("a pressure-only recording cannot feed an accel-trained model") {
    const auto corpus = gen_corpus(2, ProfileRanges{}, 5);
    std::vector<CorpusEntry> entries;
    for (const auto& rec : corpus) entries.push_back({rec.name, rec.records, rec.truth});

    PipelineConfig cfg;
    const auto dataset = build_dataset(entries, cfg, FeatureSet::Combined);
    const auto model = train(dataset, ModelKind::KNN, Hyperparams{}, 5);

    auto pressure_only = corpus[0].records;
    for (auto& rec : pressure_only) rec.accel.reset();
    CHECK_THROWS_WITH_AS((void)featurize_for_model(model, pressure_only, cfg),
                         doctest::Contains("ModelRecordingLayoutMismatch"), Error);
}
