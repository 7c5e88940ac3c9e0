#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "speechbelt/classify.hpp"

namespace speechbelt {

// Speech is the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    double accuracy() const {
        return total() > 0 ? static_cast<double>(tp + tn) / static_cast<double>(total()) : 0.0;
    }
    double precision() const {
        return tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    }
    double recall() const {
        return tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    }
    double f1() const {
        const double p = precision(), r = recall();
        return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    }
};

enum class SplitMode {
    ShuffleSplit,  // independent stratified 90/10 draws
    KFold,         // stratified k-fold partition
};

struct CvOptions {
    int n_splits = 10;
    double holdout = 0.10;  // ignored for KFold
    SplitMode mode = SplitMode::ShuffleSplit;
};

struct CvReport {
    std::vector<double> per_split_accuracy;
    double mean_accuracy = 0.0;
    int n_splits = 0;
    ModelKind model_kind = ModelKind::RF;
    FeatureSet feature_set = FeatureSet::Combined;
    // Pooled over every holdout; reported alongside accuracy but never
    // used for model selection.
    ConfusionMatrix pooled;
};

// Repeated stratified train/validation splits: the model is retrained per
// split on the (1 - holdout) portion and scored on the rest. Per-split
// seeds derive from `seed`, so a report is exactly reproducible.
CvReport cross_validate(const LabeledDataset& data, ModelKind kind, const Hyperparams& hp,
                        std::uint64_t seed, const CvOptions& options = {});

// Leave-one-group-out variant: each distinct group id (e.g. subject) is
// held out once; n_splits equals the number of groups.
CvReport cross_validate_grouped(const LabeledDataset& data, std::span<const int> groups,
                                ModelKind kind, const Hyperparams& hp, std::uint64_t seed);

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truth);

// One CSV row per split across all reports: model,feature_set,split,accuracy.
std::string cv_reports_to_csv(std::span<const CvReport> reports);

// Text block with a model x feature-set grid of mean accuracies plus
// per-combination detail (per-split accuracies, precision/recall/F1).
std::string cv_reports_to_text(std::span<const CvReport> reports);

} // namespace speechbelt
