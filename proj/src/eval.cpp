#include "speechbelt/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "speechbelt/error.hpp"
#include "speechbelt/rng.hpp"

namespace speechbelt {

namespace {

struct ClassIndices {
    std::vector<std::size_t> speech;
    std::vector<std::size_t> no_speech;
};

ClassIndices split_by_class(const LabeledDataset& data) {
    if (data.labels.size() != data.matrix.n_rows())
        raise(ErrorCode::LengthMismatch, "labels and feature rows disagree in count");
    ClassIndices idx;
    for (std::size_t i = 0; i < data.labels.size(); ++i)
        (data.labels[i] == Label::Speech ? idx.speech : idx.no_speech).push_back(i);
    if (idx.speech.empty() || idx.no_speech.empty())
        raise(ErrorCode::SingleClassDataset, "cross-validation needs both classes");
    return idx;
}

LabeledDataset subset(const LabeledDataset& data, std::span<const std::size_t> rows) {
    LabeledDataset out;
    out.matrix.column_names = data.matrix.column_names;
    out.matrix.rows.reserve(rows.size());
    out.labels.reserve(rows.size());
    for (std::size_t r : rows) {
        out.matrix.rows.push_back(data.matrix.rows[r]);
        if (r < data.matrix.start_times.size())
            out.matrix.start_times.push_back(data.matrix.start_times[r]);
        out.labels.push_back(data.labels[r]);
    }
    return out;
}

void shuffle_indices(std::vector<std::size_t>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.uniform_index(i)]);
}

double evaluate_split(const LabeledDataset& data, std::span<const std::size_t> train_rows,
                      std::span<const std::size_t> test_rows, ModelKind kind,
                      const Hyperparams& hp, std::uint64_t train_seed,
                      ConfusionMatrix& pooled) {
    const LabeledDataset train_set = subset(data, train_rows);
    const LabeledDataset test_set = subset(data, test_rows);
    const TrainedModel model = train(train_set, kind, hp, train_seed);

    std::vector<Label> predictions;
    predictions.reserve(test_set.labels.size());
    for (const auto& row : test_set.matrix.rows) predictions.push_back(predict_row(model, row));

    const ConfusionMatrix cm = confusion(predictions, test_set.labels);
    pooled.tp += cm.tp;
    pooled.fp += cm.fp;
    pooled.tn += cm.tn;
    pooled.fn += cm.fn;
    return cm.accuracy();
}

CvReport finish_report(CvReport report) {
    double sum = 0.0;
    for (double a : report.per_split_accuracy) sum += a;
    report.n_splits = static_cast<int>(report.per_split_accuracy.size());
    report.mean_accuracy =
        report.n_splits > 0 ? sum / static_cast<double>(report.n_splits) : 0.0;
    return report;
}

std::string format4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

CvReport cross_validate(const LabeledDataset& data, ModelKind kind, const Hyperparams& hp,
                        std::uint64_t seed, const CvOptions& options) {
    if (options.n_splits < 1)
        raise(ErrorCode::InvalidConfig, "n_splits must be at least 1");
    ClassIndices classes = split_by_class(data);

    CvReport report;
    report.model_kind = kind;
    report.feature_set = feature_set_of(data.matrix.column_names);

    if (options.mode == SplitMode::ShuffleSplit) {
        if (!(options.holdout > 0.0 && options.holdout < 1.0))
            raise(ErrorCode::InvalidConfig, "holdout fraction must be in (0, 1)");
        // Per-class holdout counts: within one sample of the global ratio.
        const auto take = [&](std::size_t n_class) {
            return std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(options.holdout *
                                                         static_cast<double>(n_class))));
        };
        const std::size_t take_speech = take(classes.speech.size());
        const std::size_t take_no_speech = take(classes.no_speech.size());
        if (classes.speech.size() < take_speech + 2 ||
            classes.no_speech.size() < take_no_speech + 2)
            raise(ErrorCode::DatasetTooSmall,
                  "not enough rows per class for a stratified holdout");

        for (int s = 0; s < options.n_splits; ++s) {
            // Each split shuffles a fresh copy, so split s is a pure
            // function of (data, seed, s) and splits can run in parallel.
            Rng rng(derive_seed(seed, "cv-split", static_cast<std::uint64_t>(s)));
            auto speech = classes.speech;
            auto no_speech = classes.no_speech;
            shuffle_indices(speech, rng);
            shuffle_indices(no_speech, rng);

            std::vector<std::size_t> test_rows, train_rows;
            test_rows.insert(test_rows.end(), speech.begin(),
                             speech.begin() + static_cast<long long>(take_speech));
            test_rows.insert(test_rows.end(), no_speech.begin(),
                             no_speech.begin() + static_cast<long long>(take_no_speech));
            train_rows.insert(train_rows.end(),
                              speech.begin() + static_cast<long long>(take_speech),
                              speech.end());
            train_rows.insert(train_rows.end(),
                              no_speech.begin() + static_cast<long long>(take_no_speech),
                              no_speech.end());

            report.per_split_accuracy.push_back(
                evaluate_split(data, train_rows, test_rows, kind, hp,
                               derive_seed(seed, "cv-train", static_cast<std::uint64_t>(s)),
                               report.pooled));
        }
        return finish_report(std::move(report));
    }

    // Stratified k-fold: one shuffle, then contiguous per-class folds.
    const auto k = static_cast<std::size_t>(options.n_splits);
    if (classes.speech.size() < k || classes.no_speech.size() < k)
        raise(ErrorCode::DatasetTooSmall, "fewer rows per class than folds");
    Rng rng(derive_seed(seed, "cv-kfold"));
    shuffle_indices(classes.speech, rng);
    shuffle_indices(classes.no_speech, rng);

    const auto fold_range = [k](const std::vector<std::size_t>& v, std::size_t f) {
        const std::size_t lo = f * v.size() / k;
        const std::size_t hi = (f + 1) * v.size() / k;
        return std::pair(lo, hi);
    };

    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> test_rows, train_rows;
        for (const auto* cls : {&classes.speech, &classes.no_speech}) {
            const auto [lo, hi] = fold_range(*cls, f);
            for (std::size_t i = 0; i < cls->size(); ++i)
                (i >= lo && i < hi ? test_rows : train_rows).push_back((*cls)[i]);
        }
        if (test_rows.empty())
            raise(ErrorCode::DatasetTooSmall, "empty fold");
        report.per_split_accuracy.push_back(
            evaluate_split(data, train_rows, test_rows, kind, hp,
                           derive_seed(seed, "cv-train", f), report.pooled));
    }
    return finish_report(std::move(report));
}

CvReport cross_validate_grouped(const LabeledDataset& data, std::span<const int> groups,
                                ModelKind kind, const Hyperparams& hp, std::uint64_t seed) {
    if (groups.size() != data.matrix.n_rows())
        raise(ErrorCode::LengthMismatch, "group ids and feature rows disagree in count");
    split_by_class(data);  // class-presence validation

    std::set<int> distinct(groups.begin(), groups.end());
    if (distinct.size() < 2)
        raise(ErrorCode::DatasetTooSmall, "grouped CV needs at least 2 groups");

    CvReport report;
    report.model_kind = kind;
    report.feature_set = feature_set_of(data.matrix.column_names);

    std::uint64_t fold = 0;
    for (int g : distinct) {
        std::vector<std::size_t> test_rows, train_rows;
        for (std::size_t i = 0; i < groups.size(); ++i)
            (groups[i] == g ? test_rows : train_rows).push_back(i);
        report.per_split_accuracy.push_back(
            evaluate_split(data, train_rows, test_rows, kind, hp,
                           derive_seed(seed, "cv-group", fold++), report.pooled));
    }
    return finish_report(std::move(report));
}

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truth) {
    if (predictions.size() != truth.size())
        raise(ErrorCode::LengthMismatch, "prediction and truth lists differ in length");
    if (predictions.empty())
        raise(ErrorCode::EmptyInput, "confusion matrix needs at least one pair");

    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool predicted = predictions[i] == Label::Speech;
        const bool actual = truth[i] == Label::Speech;
        if (predicted && actual)
            ++cm.tp;
        else if (predicted && !actual)
            ++cm.fp;
        else if (!predicted && actual)
            ++cm.fn;
        else
            ++cm.tn;
    }
    return cm;
}

std::string cv_reports_to_csv(std::span<const CvReport> reports) {
    std::string out = "model,feature_set,split,accuracy\n";
    for (const auto& report : reports)
        for (std::size_t s = 0; s < report.per_split_accuracy.size(); ++s) {
            out += model_kind_name(report.model_kind);
            out += ',';
            out += feature_set_name(report.feature_set);
            out += ',';
            out += std::to_string(s);
            out += ',';
            out += format4(report.per_split_accuracy[s]);
            out += '\n';
        }
    return out;
}

std::string cv_reports_to_text(std::span<const CvReport> reports) {
    // Grid of mean accuracies: rows = model kind, columns = feature set.
    static constexpr ModelKind kKinds[] = {ModelKind::RF, ModelKind::SVM, ModelKind::KNN};
    static constexpr FeatureSet kSets[] = {FeatureSet::PressureOnly, FeatureSet::AccelOnly,
                                           FeatureSet::Combined};
    std::map<std::pair<int, int>, const CvReport*> cells;
    for (const auto& report : reports)
        cells[{static_cast<int>(report.model_kind), static_cast<int>(report.feature_set)}] =
            &report;

    char line[160];
    std::string out;
    std::snprintf(line, sizeof line, "%-6s %12s %12s %12s\n", "model", "pressure", "accel",
                  "both");
    out += line;
    for (ModelKind kind : kKinds) {
        std::string row;
        bool any = false;
        std::snprintf(line, sizeof line, "%-6s", model_kind_name(kind));
        row += line;
        for (FeatureSet fs : kSets) {
            const auto it = cells.find({static_cast<int>(kind), static_cast<int>(fs)});
            if (it != cells.end()) {
                any = true;
                std::snprintf(line, sizeof line, " %11.1f%%",
                              100.0 * it->second->mean_accuracy);
            } else {
                std::snprintf(line, sizeof line, " %12s", "-");
            }
            row += line;
        }
        if (any) out += row + "\n";
    }

    for (const auto& report : reports) {
        out += "\n";
        out += model_kind_name(report.model_kind);
        out += " / ";
        out += feature_set_name(report.feature_set);
        out += ": mean accuracy " + format4(report.mean_accuracy) + " over " +
               std::to_string(report.n_splits) + " splits\n";
        out += "  per-split:";
        for (double a : report.per_split_accuracy) out += " " + format4(a);
        out += "\n";
        const auto& cm = report.pooled;
        out += "  pooled tp=" + std::to_string(cm.tp) + " fp=" + std::to_string(cm.fp) +
               " tn=" + std::to_string(cm.tn) + " fn=" + std::to_string(cm.fn) +
               "  precision=" + format4(cm.precision()) + " recall=" + format4(cm.recall()) +
               " f1=" + format4(cm.f1()) + "\n";
    }
    return out;
}

} // namespace speechbelt
