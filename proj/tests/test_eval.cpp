#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "speechbelt/error.hpp"
#include "speechbelt/eval.hpp"

using namespace speechbelt;

TEST_CASE("confusion counts the four cells") {
    const std::vector<Label> both{Label::Speech, Label::Speech, Label::NoSpeech,
                                  Label::NoSpeech};
    const auto cm = confusion(both, both);
    CHECK(cm.tp == 2);
    CHECK(cm.tn == 2);
    CHECK(cm.fp == 0);
    CHECK(cm.fn == 0);
    CHECK(cm.accuracy() == 1.0);

    const std::vector<Label> all_speech(4, Label::Speech);
    const std::vector<Label> all_quiet(4, Label::NoSpeech);
    const auto over = confusion(all_speech, all_quiet);
    CHECK(over.fp == 4);
    CHECK(over.total() == 4);
    CHECK(over.accuracy() == 0.0);

    CHECK_THROWS_WITH_AS((void)confusion(all_speech, std::vector<Label>(3, Label::Speech)),
                         doctest::Contains("LengthMismatch"), Error);
    CHECK_THROWS_WITH_AS((void)confusion(std::vector<Label>{}, std::vector<Label>{}),
                         doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("cross_validate hits 1.0 on separable data and reproduces itself") {
    const auto data = oracle::make_blobs(100, 14, 8.0, 300);
    const auto a = cross_validate(data, ModelKind::RF, Hyperparams{}, 17);
    CHECK(a.n_splits == 10);
    CHECK(a.per_split_accuracy.size() == 10);
    CHECK(a.mean_accuracy == 1.0);
    CHECK(a.feature_set == FeatureSet::PressureOnly);  // f0.. columns carry no prefixes

    const auto b = cross_validate(data, ModelKind::RF, Hyperparams{}, 17);
    CHECK(a.per_split_accuracy == b.per_split_accuracy);

    const auto c = cross_validate(data, ModelKind::RF, Hyperparams{}, 18);
    CHECK(std::abs(a.mean_accuracy - c.mean_accuracy) < 0.02);
}

TEST_CASE("mean accuracy is the arithmetic mean of the splits") {
    const auto data = oracle::make_blobs(60, 6, 3.0, 301);
    const auto report = cross_validate(data, ModelKind::KNN, Hyperparams{}, 9);
    double sum = 0.0;
    for (double a : report.per_split_accuracy) sum += a;
    CHECK(report.mean_accuracy ==
          doctest::Approx(sum / static_cast<double>(report.n_splits)).epsilon(1e-15));
}

TEST_CASE("holdouts are stratified to within one sample per class") {
    // 40 Speech vs 160 NoSpeech; a 10% stratified holdout must carry
    // round(4) Speech and round(16) NoSpeech rows per split.
    auto data = oracle::make_blobs(100, 4, 6.0, 302);
    std::size_t flipped = 0;
    for (std::size_t i = 0; i < data.labels.size() && flipped < 60; ++i) {
        if (data.labels[i] == Label::Speech) {
            data.labels[i] = Label::NoSpeech;
            ++flipped;
        }
    }
    const auto report = cross_validate(data, ModelKind::KNN, Hyperparams{}, 23);
    CHECK(report.pooled.tp + report.pooled.fn == 10 * 4);
    CHECK(report.pooled.tn + report.pooled.fp == 10 * 16);
}

TEST_CASE("shuffled labels score near chance") {
    auto data = oracle::make_blobs(100, 10, 8.0, 303);
    Rng rng(404);
    for (std::size_t i = data.labels.size(); i > 1; --i)
        std::swap(data.labels[i - 1], data.labels[rng.uniform_index(i)]);
    const auto report = cross_validate(data, ModelKind::RF, Hyperparams{}, 31);
    CHECK(report.mean_accuracy >= 0.35);
    CHECK(report.mean_accuracy <= 0.65);
}

TEST_CASE("k-fold mode tests every row exactly once") {
    const auto data = oracle::make_blobs(50, 5, 8.0, 304);
    CvOptions options;
    options.mode = SplitMode::KFold;
    const auto report = cross_validate(data, ModelKind::RF, Hyperparams{}, 7, options);
    CHECK(report.n_splits == 10);
    CHECK(report.pooled.total() == 100);
    CHECK(report.mean_accuracy >= 0.99);
}

TEST_CASE("grouped cross-validation holds each group out once") {
    auto data = oracle::make_blobs(50, 5, 8.0, 305);
    std::vector<int> groups(data.labels.size());
    for (std::size_t i = 0; i < groups.size(); ++i) groups[i] = static_cast<int>(i % 5);
    const auto report = cross_validate_grouped(data, groups, ModelKind::RF, Hyperparams{}, 3);
    CHECK(report.n_splits == 5);
    CHECK(report.pooled.total() == 100);
    CHECK(report.mean_accuracy >= 0.95);
}

TEST_CASE("cross_validate raises on impossible datasets") {
    const auto tiny = oracle::make_blobs(2, 3, 8.0, 306);
    CHECK_THROWS_WITH_AS((void)cross_validate(tiny, ModelKind::RF, Hyperparams{}, 1),
                         doctest::Contains("DatasetTooSmall"), Error);

    auto single = oracle::make_blobs(20, 3, 8.0, 307);
    for (auto& l : single.labels) l = Label::NoSpeech;
    CHECK_THROWS_WITH_AS((void)cross_validate(single, ModelKind::RF, Hyperparams{}, 1),
                         doctest::Contains("SingleClassDataset"), Error);
}

TEST_CASE("report exports have the documented shapes") {
    const auto data = oracle::make_blobs(40, 5, 8.0, 308);
    std::vector<CvReport> reports{cross_validate(data, ModelKind::RF, Hyperparams{}, 2)};

    const auto csv = cv_reports_to_csv(reports);
    CHECK(csv.rfind("model,feature_set,split,accuracy\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);  // header + 10 splits

    const auto text = cv_reports_to_text(reports);
    CHECK(text.find("model") != std::string::npos);
    CHECK(text.find("rf") != std::string::npos);
    CHECK(text.find("precision=") != std::string::npos);
}
