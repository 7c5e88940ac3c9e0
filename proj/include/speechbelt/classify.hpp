#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "speechbelt/features.hpp"
#include "speechbelt/types.hpp"

namespace speechbelt {

enum class ModelKind {
    RF,
    SVM,
    KNN,
};

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(std::string_view name);

struct LabeledDataset {
    FeatureMatrix matrix;
    std::vector<Label> labels;
};

// Defaults follow the common toolkit defaults for each method; every value
// can be overridden from the CLI or a config file.
struct Hyperparams {
    int rf_n_trees = 100;
    int rf_max_features = 0;  // 0 => ceil(sqrt(n_features))
    int rf_min_leaf = 1;
    int rf_max_depth = 0;     // 0 => unlimited
    int knn_k = 5;
    double svm_c = 1.0;
    double svm_gamma = 0.0;   // 0 => 1 / (n_features * mean feature variance)
    double svm_tol = 1e-3;

    bool operator==(const Hyperparams&) const = default;
};

// Per-column z-scoring parameters, fit on training rows only. Empty for
// RF: trees split on thresholds and are scale-free, while distance and
// kernel methods are not.
struct Normalization {
    std::vector<double> mean;
    std::vector<double> std;

    bool enabled() const { return !mean.empty(); }
    std::vector<double> apply(std::span<const double> row) const;
};

struct TreeNode {
    int feature = -1;         // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    Label label = Label::NoSpeech;  // leaves only
    int sample_count = 0;           // training samples routed to this node
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    Label predict(std::span<const double> row) const;
};

struct RfParameters {
    std::vector<DecisionTree> trees;
};

struct SvmParameters {
    std::vector<std::vector<double>> support_vectors;  // normalized rows
    std::vector<double> coefficients;                  // alpha_i * y_i
    double bias = 0.0;                                 // decision = sum coef*K - bias
    double gamma = 0.0;                                // resolved RBF width
};

struct KnnParameters {
    std::vector<std::vector<double>> points;  // normalized training rows
    std::vector<Label> labels;
    int k = 5;
};

struct TrainedModel {
    ModelKind kind = ModelKind::RF;
    Hyperparams hyperparams;
    std::uint64_t seed = 0;
    std::vector<std::string> feature_layout;
    Normalization normalization;

    // Exactly one of these is populated, matching `kind`.
    RfParameters rf;
    SvmParameters svm;
    KnnParameters knn;
};

// Deterministic given (data, kind, hyperparams, seed).
TrainedModel train(const LabeledDataset& data, ModelKind kind, const Hyperparams& hyperparams,
                   std::uint64_t seed);

// Checks x.layout against the model's layout, then classifies. All ties
// break toward Speech.
Label predict(const TrainedModel& model, const FeatureVector& x);

// Classifies a raw row without a layout check (row must already follow the
// model's layout).
Label predict_row(const TrainedModel& model, std::span<const double> row);

// Layout is checked once against the matrix columns.
std::vector<Label> predict_matrix(const TrainedModel& model, const FeatureMatrix& matrix);

// (speech votes, total trees) for a row; RF models only.
std::pair<int, int> rf_vote_counts(const TrainedModel& model, std::span<const double> row);

// Versioned JSON text, canonical: save(load(save(m))) == save(m) bytes.
std::string save_model(const TrainedModel& model);
TrainedModel load_model(std::string_view bytes);

// SVM decision value (sum coef*K - bias) for diagnostics and tests.
double svm_decision_value(const TrainedModel& model, std::span<const double> row);

} // namespace speechbelt
