#include "speechbelt/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "speechbelt/error.hpp"
#include "speechbelt/rng.hpp"

namespace speechbelt {

// Implemented in forest.cpp / svm.cpp.
RfParameters train_forest(const FeatureMatrix& matrix, const std::vector<Label>& labels,
                          const Hyperparams& hp, std::uint64_t seed);
SvmParameters train_svm(const std::vector<std::vector<double>>& rows,
                        const std::vector<Label>& labels, const Hyperparams& hp,
                        std::uint64_t seed);

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::RF: return "rf";
    case ModelKind::SVM: return "svm";
    case ModelKind::KNN: return "knn";
    }
    return "?";
}

ModelKind model_kind_from_name(std::string_view name) {
    if (name == "rf") return ModelKind::RF;
    if (name == "svm") return ModelKind::SVM;
    if (name == "knn") return ModelKind::KNN;
    raise(ErrorCode::InvalidConfig, "unknown model kind '" + std::string(name) + "'");
}

std::vector<double> Normalization::apply(std::span<const double> row) const {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / std[j];
    return out;
}

namespace {

Normalization fit_normalization(const FeatureMatrix& matrix) {
    const std::size_t n = matrix.n_rows();
    const std::size_t d = matrix.n_cols();
    Normalization norm;
    norm.mean.assign(d, 0.0);
    norm.std.assign(d, 1.0);
    for (const auto& row : matrix.rows)
        for (std::size_t j = 0; j < d; ++j) norm.mean[j] += row[j];
    for (std::size_t j = 0; j < d; ++j) norm.mean[j] /= static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) {
        double ss = 0.0;
        for (const auto& row : matrix.rows) {
            const double dlt = row[j] - norm.mean[j];
            ss += dlt * dlt;
        }
        const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        norm.std[j] = sd > 0.0 ? sd : 1.0;  // constant columns stay centered
    }
    return norm;
}

std::vector<std::vector<double>> normalized_rows(const FeatureMatrix& matrix,
                                                 const Normalization& norm) {
    std::vector<std::vector<double>> rows;
    rows.reserve(matrix.n_rows());
    for (const auto& row : matrix.rows) rows.push_back(norm.apply(row));
    return rows;
}

void validate_hyperparams(const Hyperparams& hp) {
    if (hp.rf_n_trees < 1)
        raise(ErrorCode::InvalidConfig, "rf_n_trees must be at least 1");
    if (hp.knn_k < 1)
        raise(ErrorCode::InvalidConfig, "knn_k must be at least 1");
    if (!(hp.svm_c > 0.0))
        raise(ErrorCode::InvalidConfig, "svm_c must be positive");
    if (!(hp.svm_tol > 0.0))
        raise(ErrorCode::InvalidConfig, "svm_tol must be positive");
}

void validate_training_data(const LabeledDataset& data) {
    if (data.labels.size() != data.matrix.n_rows())
        raise(ErrorCode::LengthMismatch, "labels and feature rows disagree in count");
    std::size_t speech = 0, no_speech = 0;
    for (Label l : data.labels) (l == Label::Speech ? speech : no_speech)++;
    if (speech < 2 || no_speech < 2)
        raise(ErrorCode::SingleClassDataset, "training needs at least 2 rows of each class");
    for (std::size_t i = 0; i < data.matrix.rows.size(); ++i)
        for (double v : data.matrix.rows[i])
            if (!std::isfinite(v))
                raise(ErrorCode::NonFiniteFeature,
                      "non-finite feature value in row " + std::to_string(i));
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    double ss = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        ss += d * d;
    }
    return std::exp(-gamma * ss);
}

Label knn_vote(const KnnParameters& knn, std::span<const double> row) {
    const std::size_t n = knn.points.size();
    const auto k = static_cast<std::size_t>(std::min<std::size_t>(
        n, static_cast<std::size_t>(std::max(1, knn.k))));

    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ss = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double d = knn.points[i][j] - row[j];
            ss += d * d;
        }
        dist[i] = ss;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<long long>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                      });

    std::size_t speech = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (knn.labels[order[i]] == Label::Speech) ++speech;
    return 2 * speech >= k ? Label::Speech : Label::NoSpeech;
}

} // namespace

Label DecisionTree::predict(std::span<const double> row) const {
    int at = 0;
    while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
        const TreeNode& node = nodes[static_cast<std::size_t>(at)];
        at = row[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left
                                                                          : node.right;
    }
    return nodes[static_cast<std::size_t>(at)].label;
}

TrainedModel train(const LabeledDataset& data, ModelKind kind, const Hyperparams& hyperparams,
                   std::uint64_t seed) {
    validate_hyperparams(hyperparams);
    validate_training_data(data);

    TrainedModel model;
    model.kind = kind;
    model.hyperparams = hyperparams;
    model.seed = seed;
    model.feature_layout = data.matrix.column_names;

    switch (kind) {
    case ModelKind::RF:
        model.rf = train_forest(data.matrix, data.labels, hyperparams, seed);
        break;
    case ModelKind::SVM: {
        model.normalization = fit_normalization(data.matrix);
        model.svm = train_svm(normalized_rows(data.matrix, model.normalization), data.labels,
                              hyperparams, seed);
        break;
    }
    case ModelKind::KNN: {
        model.normalization = fit_normalization(data.matrix);
        model.knn.points = normalized_rows(data.matrix, model.normalization);
        model.knn.labels = data.labels;
        model.knn.k = hyperparams.knn_k;
        break;
    }
    }
    return model;
}

Label predict(const TrainedModel& model, const FeatureVector& x) {
    if (x.layout != model.feature_layout)
        raise(ErrorCode::LayoutMismatch,
              "feature vector layout (" + std::to_string(x.layout.size()) +
                  " columns) does not match the model layout (" +
                  std::to_string(model.feature_layout.size()) + " columns)");
    return predict_row(model, x.values);
}

Label predict_row(const TrainedModel& model, std::span<const double> row) {
    switch (model.kind) {
    case ModelKind::RF: {
        const auto [speech, total] = rf_vote_counts(model, row);
        return 2 * speech >= total ? Label::Speech : Label::NoSpeech;
    }
    case ModelKind::SVM:
        return svm_decision_value(model, row) >= 0.0 ? Label::Speech : Label::NoSpeech;
    case ModelKind::KNN: {
        const auto normalized = model.normalization.apply(row);
        return knn_vote(model.knn, normalized);
    }
    }
    return Label::NoSpeech;
}

std::vector<Label> predict_matrix(const TrainedModel& model, const FeatureMatrix& matrix) {
    if (matrix.column_names != model.feature_layout)
        raise(ErrorCode::LayoutMismatch, "matrix columns do not match the model layout");
    std::vector<Label> out;
    out.reserve(matrix.n_rows());
    for (const auto& row : matrix.rows) out.push_back(predict_row(model, row));
    return out;
}

std::pair<int, int> rf_vote_counts(const TrainedModel& model, std::span<const double> row) {
    if (model.kind != ModelKind::RF)
        raise(ErrorCode::InvalidConfig, "vote counts are only defined for RF models");
    int speech = 0;
    for (const auto& tree : model.rf.trees)
        if (tree.predict(row) == Label::Speech) ++speech;
    return {speech, static_cast<int>(model.rf.trees.size())};
}

double svm_decision_value(const TrainedModel& model, std::span<const double> row) {
    const auto normalized = model.normalization.apply(row);
    double value = 0.0;
    for (std::size_t i = 0; i < model.svm.support_vectors.size(); ++i)
        value += model.svm.coefficients[i] *
                 rbf_kernel(model.svm.support_vectors[i], normalized, model.svm.gamma);
    return value - model.svm.bias;
}

} // namespace speechbelt
