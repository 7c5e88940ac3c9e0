#include <json.hpp>

#include "speechbelt/classify.hpp"
#include "speechbelt/error.hpp"

namespace speechbelt {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json hyperparams_to_json(const Hyperparams& hp) {
    return json{
        {"knn_k", hp.knn_k},
        {"rf_max_depth", hp.rf_max_depth},
        {"rf_max_features", hp.rf_max_features},
        {"rf_min_leaf", hp.rf_min_leaf},
        {"rf_n_trees", hp.rf_n_trees},
        {"svm_c", hp.svm_c},
        {"svm_gamma", hp.svm_gamma},
        {"svm_tol", hp.svm_tol},
    };
}

Hyperparams hyperparams_from_json(const json& j) {
    Hyperparams hp;
    hp.knn_k = j.at("knn_k").get<int>();
    hp.rf_max_depth = j.at("rf_max_depth").get<int>();
    hp.rf_max_features = j.at("rf_max_features").get<int>();
    hp.rf_min_leaf = j.at("rf_min_leaf").get<int>();
    hp.rf_n_trees = j.at("rf_n_trees").get<int>();
    hp.svm_c = j.at("svm_c").get<double>();
    hp.svm_gamma = j.at("svm_gamma").get<double>();
    hp.svm_tol = j.at("svm_tol").get<double>();
    return hp;
}

// Trees serialize as parallel arrays, one entry per node.
json tree_to_json(const DecisionTree& tree) {
    json feature = json::array(), threshold = json::array(), left = json::array(),
         right = json::array(), label = json::array(), count = json::array();
    for (const auto& node : tree.nodes) {
        feature.push_back(node.feature);
        threshold.push_back(node.threshold);
        left.push_back(node.left);
        right.push_back(node.right);
        label.push_back(static_cast<int>(node.label));
        count.push_back(node.sample_count);
    }
    return json{{"count", count},   {"feature", feature}, {"label", label},
                {"left", left},     {"right", right},     {"threshold", threshold}};
}

DecisionTree tree_from_json(const json& j) {
    DecisionTree tree;
    const auto& feature = j.at("feature");
    const auto& threshold = j.at("threshold");
    const auto& left = j.at("left");
    const auto& right = j.at("right");
    const auto& label = j.at("label");
    const auto& count = j.at("count");
    const std::size_t n = feature.size();
    if (threshold.size() != n || left.size() != n || right.size() != n || label.size() != n ||
        count.size() != n || n == 0)
        raise(ErrorCode::CorruptModel, "tree arrays are inconsistent");
    tree.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        TreeNode& node = tree.nodes[i];
        node.feature = feature[i].get<int>();
        node.threshold = threshold[i].get<double>();
        node.left = left[i].get<int>();
        node.right = right[i].get<int>();
        node.label = label[i].get<int>() == 1 ? Label::Speech : Label::NoSpeech;
        node.sample_count = count[i].get<int>();
    }
    return tree;
}

void validate_tree(const DecisionTree& tree, std::size_t n_features) {
    const auto n = static_cast<int>(tree.nodes.size());
    for (const auto& node : tree.nodes) {
        if (node.feature < 0) continue;  // leaf
        if (node.feature >= static_cast<int>(n_features))
            raise(ErrorCode::CorruptModel, "tree split references a missing feature");
        if (node.left < 0 || node.left >= n || node.right < 0 || node.right >= n)
            raise(ErrorCode::CorruptModel, "tree child index out of range");
    }
}

std::vector<double> doubles_from_json(const json& j) { return j.get<std::vector<double>>(); }

json matrix_to_json(const std::vector<std::vector<double>>& rows) {
    json out = json::array();
    for (const auto& row : rows) out.push_back(row);
    return out;
}

std::vector<std::vector<double>> matrix_from_json(const json& j, std::size_t width) {
    std::vector<std::vector<double>> rows;
    rows.reserve(j.size());
    for (const auto& row : j) {
        rows.push_back(row.get<std::vector<double>>());
        if (rows.back().size() != width)
            raise(ErrorCode::CorruptModel, "row width does not match the feature layout");
    }
    return rows;
}

} // namespace

std::string save_model(const TrainedModel& model) {
    json parameters;
    switch (model.kind) {
    case ModelKind::RF: {
        json trees = json::array();
        for (const auto& tree : model.rf.trees) trees.push_back(tree_to_json(tree));
        parameters = json{{"trees", trees}};
        break;
    }
    case ModelKind::SVM:
        parameters = json{{"bias", model.svm.bias},
                          {"coefficients", model.svm.coefficients},
                          {"gamma", model.svm.gamma},
                          {"support_vectors", matrix_to_json(model.svm.support_vectors)}};
        break;
    case ModelKind::KNN: {
        json labels = json::array();
        for (Label l : model.knn.labels) labels.push_back(static_cast<int>(l));
        parameters = json{{"k", model.knn.k},
                          {"labels", labels},
                          {"points", matrix_to_json(model.knn.points)}};
        break;
    }
    }

    const json doc{
        {"feature_layout", model.feature_layout},
        {"hyperparams", hyperparams_to_json(model.hyperparams)},
        {"kind", model_kind_name(model.kind)},
        {"normalization",
         json{{"mean", model.normalization.mean}, {"std", model.normalization.std}}},
        {"parameters", parameters},
        {"schema_version", kSchemaVersion},
        {"seed", model.seed},
    };
    return doc.dump(2) + "\n";
}

TrainedModel load_model(std::string_view bytes) {
    json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        raise(ErrorCode::CorruptModel, "model file is not well-formed JSON");
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer())
        raise(ErrorCode::CorruptModel, "model file lacks a schema_version field");
    if (doc["schema_version"].get<int>() != kSchemaVersion)
        raise(ErrorCode::UnsupportedVersion,
              "schema_version " + doc["schema_version"].dump() + " is not supported");

    try {
        TrainedModel model;
        model.kind = model_kind_from_name(doc.at("kind").get<std::string>());
        model.hyperparams = hyperparams_from_json(doc.at("hyperparams"));
        model.seed = doc.at("seed").get<std::uint64_t>();
        model.feature_layout = doc.at("feature_layout").get<std::vector<std::string>>();
        const std::size_t d = model.feature_layout.size();

        const auto& norm = doc.at("normalization");
        model.normalization.mean = doubles_from_json(norm.at("mean"));
        model.normalization.std = doubles_from_json(norm.at("std"));
        if (model.normalization.mean.size() != model.normalization.std.size() ||
            (!model.normalization.mean.empty() && model.normalization.mean.size() != d))
            raise(ErrorCode::CorruptModel, "normalization arrays are inconsistent");

        const auto& parameters = doc.at("parameters");
        switch (model.kind) {
        case ModelKind::RF:
            for (const auto& tj : parameters.at("trees")) {
                model.rf.trees.push_back(tree_from_json(tj));
                validate_tree(model.rf.trees.back(), d);
            }
            if (model.rf.trees.empty())
                raise(ErrorCode::CorruptModel, "RF model has no trees");
            break;
        case ModelKind::SVM:
            model.svm.bias = parameters.at("bias").get<double>();
            model.svm.gamma = parameters.at("gamma").get<double>();
            model.svm.coefficients = doubles_from_json(parameters.at("coefficients"));
            model.svm.support_vectors = matrix_from_json(parameters.at("support_vectors"), d);
            if (model.svm.coefficients.size() != model.svm.support_vectors.size())
                raise(ErrorCode::CorruptModel, "coefficient and support vector counts differ");
            break;
        case ModelKind::KNN: {
            model.knn.k = parameters.at("k").get<int>();
            model.knn.points = matrix_from_json(parameters.at("points"), d);
            model.knn.labels.clear();
            for (const auto& l : parameters.at("labels"))
                model.knn.labels.push_back(l.get<int>() == 1 ? Label::Speech : Label::NoSpeech);
            if (model.knn.labels.size() != model.knn.points.size() || model.knn.points.empty())
                raise(ErrorCode::CorruptModel, "kNN labels and points are inconsistent");
            break;
        }
        }
        return model;
    } catch (const json::exception& e) {
        raise(ErrorCode::CorruptModel, std::string("malformed model document: ") + e.what());
    }
}

} // namespace speechbelt
