// speechbelt: microphone-free speech-duration estimation from abdominal
// pressure/acceleration recordings.
//
// Every command accepts --config (TOML-shaped, flags override file values)
// and echoes its effective configuration next to its outputs, so any run
// can be reproduced byte-for-byte from the echoed file.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "speechbelt/classify.hpp"
#include "speechbelt/csv.hpp"
#include "speechbelt/duration.hpp"
#include "speechbelt/error.hpp"
#include "speechbelt/eval.hpp"
#include "speechbelt/pipeline.hpp"
#include "speechbelt/signal.hpp"
#include "speechbelt/synth.hpp"

namespace fs = std::filesystem;
using namespace speechbelt;

namespace {

// Failing stage + file, reported with non-zero exit status.
std::string g_stage = "startup";

void set_stage(const std::string& stage, const fs::path& input = {}) {
    g_stage = stage;
    if (!input.empty()) g_stage += " (" + input.string() + ")";
}

struct PipelineOpts {
    double rate = 8.0;
    double window = 6.0;
    double overlap = 0.25;
    double warmup = 30.0;
    double band_low = 0.05;
    double band_high = 3.0;

    PipelineConfig to_config() const {
        PipelineConfig cfg;
        cfg.target_rate = rate;
        cfg.window_s = window;
        cfg.overlap_fraction = overlap;
        cfg.warmup_discard_s = warmup;
        cfg.band_low = band_low;
        cfg.band_high = band_high;
        cfg.validate();
        return cfg;
    }
};

void add_pipeline_options(CLI::App* cmd, PipelineOpts& p) {
    cmd->add_option("--rate", p.rate, "target sample rate, Hz");
    cmd->add_option("--window", p.window, "window width, seconds");
    cmd->add_option("--overlap", p.overlap, "window overlap fraction in [0,1)");
    cmd->add_option("--warmup", p.warmup, "warm-up seconds discarded at the start");
    cmd->add_option("--band-low", p.band_low, "smoothing band lower edge, Hz");
    cmd->add_option("--band-high", p.band_high, "smoothing band upper edge, Hz");
}

void add_hyper_options(CLI::App* cmd, Hyperparams& hp) {
    cmd->add_option("--trees", hp.rf_n_trees, "RF: number of trees");
    cmd->add_option("--max-features", hp.rf_max_features,
                    "RF: features tried per split (0 = ceil(sqrt(d)))");
    cmd->add_option("--min-leaf", hp.rf_min_leaf, "RF: minimum samples per leaf");
    cmd->add_option("--max-depth", hp.rf_max_depth, "RF: depth cap (0 = unlimited)");
    cmd->add_option("--knn-k", hp.knn_k, "kNN: neighbor count");
    cmd->add_option("--svm-c", hp.svm_c, "SVM: soft-margin C");
    cmd->add_option("--svm-gamma", hp.svm_gamma, "SVM: RBF gamma (0 = auto)");
    cmd->add_option("--svm-tol", hp.svm_tol, "SVM: SMO KKT tolerance");
}

FeatureSet feature_set_from_flag(const std::string& flag) {
    if (flag == "pressure") return FeatureSet::PressureOnly;
    if (flag == "accel") return FeatureSet::AccelOnly;
    if (flag == "both") return FeatureSet::Combined;
    raise(ErrorCode::InvalidConfig, "unknown feature set '" + flag + "'");
}

// --- config files -----------------------------------------------------------
//
// TOML-shaped `key=value` files mapping onto the subcommand's long option
// names. `--config FILE` is expanded into option tokens ahead of the other
// command-line arguments, so explicit flags always override file values.

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> read_config_tokens(const fs::path& path) {
    set_stage("load-config", path);
    const std::string text = read_text_file(path);

    std::vector<std::string> tokens;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == '[') continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(ErrorCode::IoError, path.string() + ":" + std::to_string(line_no) +
                                          ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            raise(ErrorCode::IoError,
                  path.string() + ":" + std::to_string(line_no) + ": empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);

        if (value == "true") {
            tokens.push_back("--" + key);
        } else if (value == "false") {
            // flag left at its default
        } else {
            tokens.push_back("--" + key);
            tokens.push_back(value);
        }
    }
    return tokens;
}

// Pulls `--config FILE` out of args and splices the file's tokens right
// after the subcommand name.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string config_file;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                raise(ErrorCode::IoError, "--config needs a file argument");
            config_file = args[i + 1];
            args.erase(args.begin() + static_cast<long long>(i),
                       args.begin() + static_cast<long long>(i) + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_file = args[i].substr(9);
            args.erase(args.begin() + static_cast<long long>(i));
        } else {
            ++i;
        }
    }
    if (config_file.empty()) return args;

    std::size_t sub_at = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty() && args[i][0] != '-') {
            sub_at = i;
            break;
        }
    }
    if (sub_at == args.size())
        raise(ErrorCode::IoError, "--config requires a subcommand");

    const auto tokens = read_config_tokens(config_file);
    args.insert(args.begin() + static_cast<long long>(sub_at) + 1, tokens.begin(),
                tokens.end());
    return args;
}

bool looks_bare(const std::string& value) {
    if (value == "true" || value == "false") return true;
    if (value.empty()) return false;
    char* end = nullptr;
    std::strtod(value.c_str(), &end);
    return end == value.c_str() + value.size();
}

// Effective configuration of a finished run, loadable back via --config.
void write_config_echo(const CLI::App* cmd, const fs::path& dest) {
    set_stage("write-config-echo", dest);
    std::string out = "# speechbelt " + cmd->get_name() + " configuration echo\n";
    out += "# rerun with: speechbelt " + cmd->get_name() + " --config <this file>\n";
    for (const CLI::Option* op : cmd->get_options()) {
        if (op->get_lnames().empty()) continue;
        const std::string& name = op->get_lnames().front();
        if (name == "help" || name == "config") continue;
        out += '\n';
        if (!op->get_description().empty()) out += "# " + op->get_description() + "\n";
        if (op->get_expected_min() == 0) {
            out += name + (op->count() > 0 ? "=true\n" : "=false\n");
            continue;
        }
        const std::string value =
            op->count() > 0 ? op->results().back() : op->get_default_str();
        out += name + "=" + (looks_bare(value) ? value : '"' + value + '"') + "\n";
    }
    write_text_file(dest, out);
}

std::vector<CorpusEntry> load_corpus(const fs::path& dir) {
    set_stage("scan-corpus", dir);
    if (!fs::is_directory(dir))
        raise(ErrorCode::IoError, dir.string() + " is not a directory");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto& path = entry.path();
        if (path.extension() != ".csv") continue;
        if (path.filename().string().ends_with(".annotations.csv")) continue;
        files.push_back(path);
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
        raise(ErrorCode::IoError, "no recording CSVs found in " + dir.string());

    std::vector<CorpusEntry> corpus;
    for (const auto& path : files) {
        CorpusEntry entry;
        entry.name = path.stem().string();
        set_stage("read-recording", path);
        entry.records = read_recording_csv(path);
        fs::path ann = path;
        ann.replace_extension("");
        ann += ".annotations.csv";
        if (fs::exists(ann)) {
            set_stage("read-annotations", ann);
            entry.truth = read_annotations_csv(ann);
        }
        corpus.push_back(std::move(entry));
    }
    return corpus;
}

TrainedModel load_model_file(const fs::path& path) {
    set_stage("load-model", path);
    return load_model(read_text_file(path));
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    int subjects = 10;
    double duration = 90.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_synth(const CLI::App* cmd, const SynthArgs& args) {
    set_stage("synthesize");
    const auto corpus = gen_corpus(args.subjects, ProfileRanges{}, args.seed, args.duration);

    const fs::path dir(args.out);
    set_stage("create-output-dir", dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        raise(ErrorCode::IoError, "cannot create output directory " + dir.string());

    for (const auto& rec : corpus) {
        const fs::path rec_path = dir / (rec.name + ".csv");
        set_stage("write-recording", rec_path);
        write_recording_csv(rec_path, rec.records);
        std::cout << "wrote " << rec_path.string() << " (" << rec.records.size()
                  << " records)\n";

        const fs::path ann_path = dir / (rec.name + ".annotations.csv");
        set_stage("write-annotations", ann_path);
        write_annotations_csv(ann_path, rec.truth);
        std::cout << "wrote " << ann_path.string() << " (" << rec.truth.intervals.size()
                  << " intervals)\n";
    }

    write_config_echo(cmd, dir / "synth.config.toml");
    std::cout << "wrote " << (dir / "synth.config.toml").string() << "\n"
              << corpus.size() << " recordings for " << args.subjects << " subjects\n";
    return 0;
}

// ---------------------------------------------------------------------------
// featurize

struct FeaturizeArgs {
    std::string in;
    std::string out;
    std::string features = "both";
    PipelineOpts pipeline;
};

int cmd_featurize(const CLI::App* cmd, const FeaturizeArgs& args) {
    const PipelineConfig cfg = args.pipeline.to_config();
    set_stage("read-recording", args.in);
    const auto records = read_recording_csv(args.in);

    set_stage("featurize", args.in);
    const auto matrix =
        featurize_recording(records, cfg, feature_set_from_flag(args.features));

    set_stage("write-features", args.out);
    write_matrix_csv(args.out, matrix);
    write_config_echo(cmd, args.out + ".config.toml");
    std::cout << "wrote " << args.out << " (" << matrix.n_rows() << " windows x "
              << matrix.n_cols() << " features)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
    std::string data;
    std::string out;
    std::string model = "rf";
    std::string features = "both";
    std::uint64_t seed = 0;
    double label_threshold = 3.0;
    Hyperparams hp;
    PipelineOpts pipeline;
};

int cmd_train(const CLI::App* cmd, const TrainArgs& args) {
    const PipelineConfig cfg = args.pipeline.to_config();
    const auto corpus = load_corpus(args.data);

    set_stage("build-dataset", args.data);
    const auto dataset = build_dataset(corpus, cfg, feature_set_from_flag(args.features),
                                       args.label_threshold);

    set_stage("train");
    const auto model =
        train(dataset, model_kind_from_name(args.model), args.hp, args.seed);

    set_stage("write-model", args.out);
    write_text_file(args.out, save_model(model));
    write_config_echo(cmd, args.out + ".config.toml");
    std::cout << "trained " << args.model << " on " << dataset.matrix.n_rows() << " windows x "
              << dataset.matrix.n_cols() << " features -> " << args.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// cv

struct CvArgs {
    std::string data;
    std::string out;
    std::string model = "rf";
    std::string features = "both";
    std::uint64_t seed = 0;
    int splits = 10;
    double holdout = 0.10;
    bool kfold = false;
    bool subject_cv = false;
    double label_threshold = 3.0;
    Hyperparams hp;
    PipelineOpts pipeline;
};

int cmd_cv(const CLI::App* cmd, const CvArgs& args) {
    const PipelineConfig cfg = args.pipeline.to_config();
    const auto corpus = load_corpus(args.data);

    std::vector<FeatureSet> sets;
    if (args.features == "all")
        sets = {FeatureSet::PressureOnly, FeatureSet::AccelOnly, FeatureSet::Combined};
    else
        sets = {feature_set_from_flag(args.features)};

    std::vector<ModelKind> kinds;
    if (args.model == "all")
        kinds = {ModelKind::RF, ModelKind::SVM, ModelKind::KNN};
    else
        kinds = {model_kind_from_name(args.model)};

    CvOptions options;
    options.n_splits = args.splits;
    options.holdout = args.holdout;
    options.mode = args.kfold ? SplitMode::KFold : SplitMode::ShuffleSplit;

    std::vector<CvReport> reports;
    for (FeatureSet fs_sel : sets) {
        set_stage(std::string("build-dataset [") + feature_set_name(fs_sel) + "]", args.data);
        std::vector<int> groups;
        const auto dataset =
            build_dataset(corpus, cfg, fs_sel, args.label_threshold, &groups);
        for (ModelKind kind : kinds) {
            set_stage(std::string("cross-validate ") + model_kind_name(kind) + " [" +
                      feature_set_name(fs_sel) + "]");
            reports.push_back(args.subject_cv
                                  ? cross_validate_grouped(dataset, groups, kind, args.hp,
                                                           args.seed)
                                  : cross_validate(dataset, kind, args.hp, args.seed,
                                                   options));
        }
    }

    const std::string text = cv_reports_to_text(reports);
    std::cout << text;

    const fs::path dir(args.out);
    set_stage("create-output-dir", dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        raise(ErrorCode::IoError, "cannot create output directory " + dir.string());

    set_stage("write-report", dir);
    write_text_file(dir / "cv_report.csv", cv_reports_to_csv(reports));
    write_text_file(dir / "cv_report.txt", text);
    write_config_echo(cmd, dir / "cv.config.toml");
    std::cout << "wrote " << (dir / "cv_report.csv").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// predict / estimate / eval-meeting

struct PredictArgs {
    std::string model_file;
    std::string in;
    std::string out;
    PipelineOpts pipeline;
};

int cmd_predict(const CLI::App* cmd, const PredictArgs& args) {
    const PipelineConfig cfg = args.pipeline.to_config();
    const auto model = load_model_file(args.model_file);
    set_stage("read-recording", args.in);
    const auto records = read_recording_csv(args.in);

    set_stage("featurize", args.in);
    const auto matrix = featurize_for_model(model, records, cfg);
    set_stage("predict", args.in);
    const auto labels = predict_matrix(model, matrix);

    set_stage("write-predictions", args.out);
    write_predictions_csv(args.out, matrix.start_times, labels);
    write_config_echo(cmd, args.out + ".config.toml");
    std::cout << "wrote " << args.out << " (" << labels.size() << " windows)\n";
    return 0;
}

struct EstimateArgs {
    std::string model_file;
    std::string in;
    std::string out;  // optional report file
    double credit = 4.5;
    PipelineOpts pipeline;
};

int cmd_estimate(const CLI::App* cmd, const EstimateArgs& args) {
    const PipelineConfig cfg = args.pipeline.to_config();
    const auto model = load_model_file(args.model_file);
    set_stage("read-recording", args.in);
    const auto records = read_recording_csv(args.in);

    set_stage("featurize", args.in);
    const auto matrix = featurize_for_model(model, records, cfg);
    set_stage("predict", args.in);
    const auto labels = predict_matrix(model, matrix);
    const auto est = estimate_duration(labels, args.credit);

    std::string report;
    report += "recording: " + args.in + "\n";
    report += "windows: " + std::to_string(labels.size()) + "\n";
    report += "speech windows: " + std::to_string(est.speech_window_count) + "\n";
    report += "window credit: " + format_double(est.window_credit_s) + " s\n";
    report += "estimated speech: " + format_double(est.estimated_seconds) + " s\n";
    std::cout << report;

    if (!args.out.empty()) {
        set_stage("write-report", args.out);
        write_text_file(args.out, report);
        write_config_echo(cmd, args.out + ".config.toml");
        std::cout << "wrote " << args.out << "\n";
    }
    return 0;
}

struct EvalMeetingArgs {
    std::string model_file;
    std::string in;
    std::string annotations;
    std::string out;
    double credit = 4.5;
    double label_threshold = 3.0;
    PipelineOpts pipeline;
};

int cmd_eval_meeting(const CLI::App* cmd, const EvalMeetingArgs& args) {
    const PipelineConfig cfg = args.pipeline.to_config();
    const auto model = load_model_file(args.model_file);
    set_stage("read-recording", args.in);
    const auto records = read_recording_csv(args.in);
    set_stage("read-annotations", args.annotations);
    const auto truth = read_annotations_csv(args.annotations);

    set_stage("featurize", args.in);
    std::vector<WindowSegment> windows;
    const auto matrix = featurize_for_model(model, records, cfg, &windows);
    set_stage("predict", args.in);
    const auto predicted = predict_matrix(model, matrix);

    set_stage("evaluate", args.annotations);
    const auto actual_labels = label_windows(windows, truth, args.label_threshold);
    const auto est = estimate_duration(predicted, args.credit);
    const auto cm = confusion(predicted, actual_labels);

    std::string report;
    report += "recording: " + args.in + "\n";
    report += "annotations: " + args.annotations + "\n";
    report += "windows: " + std::to_string(predicted.size()) + "\n";
    report += "speech windows (predicted): " + std::to_string(est.speech_window_count) + "\n";
    report += "estimated speech: " + format_double(est.estimated_seconds) + " s\n";
    report += "actual speech: " + format_double(annotation_total(truth)) + " s\n";
    report += "confusion (Speech positive): tp=" + std::to_string(cm.tp) +
              " fp=" + std::to_string(cm.fp) + " tn=" + std::to_string(cm.tn) +
              " fn=" + std::to_string(cm.fn) + "\n";
    char metrics[128];
    std::snprintf(metrics, sizeof metrics,
                  "accuracy: %.4f\nprecision: %.4f\nrecall: %.4f\nf1: %.4f\n", cm.accuracy(),
                  cm.precision(), cm.recall(), cm.f1());
    report += metrics;
    std::cout << report;

    const fs::path dir(args.out);
    set_stage("create-output-dir", dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        raise(ErrorCode::IoError, "cannot create output directory " + dir.string());

    set_stage("write-report", dir);
    write_text_file(dir / "meeting_report.txt", report);
    write_prediction_trace_csv(dir / "window_trace.csv", matrix.start_times, predicted,
                               actual_labels);
    write_config_echo(cmd, dir / "eval-meeting.config.toml");
    std::cout << "wrote " << (dir / "meeting_report.txt").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"speech-duration estimation from abdominal motion recordings"};
    app.require_subcommand(1);
    app.option_defaults()
        ->always_capture_default(true)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string config_display;  // --config is consumed before parsing
    const auto add_config_option = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_display,
                        "config file (TOML-shaped); explicit flags override file values");
    };

    // synth
    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    add_config_option(synth_cmd);
    synth_cmd->add_option("--subjects", synth_args.subjects, "number of subjects");
    synth_cmd->add_option("--duration", synth_args.duration, "seconds per recording");
    synth_cmd->add_option("--seed", synth_args.seed, "master seed");
    synth_cmd->add_option("-o,--out", synth_args.out, "output directory")->required();

    // featurize
    FeaturizeArgs feat_args;
    auto* feat_cmd =
        app.add_subcommand("featurize", "turn one recording into a feature matrix");
    add_config_option(feat_cmd);
    feat_cmd->add_option("-i,--in", feat_args.in, "recording CSV")->required();
    feat_cmd->add_option("-o,--out", feat_args.out, "feature matrix CSV")->required();
    feat_cmd->add_option("--features", feat_args.features, "pressure|accel|both");
    add_pipeline_options(feat_cmd, feat_args.pipeline);

    // train
    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "train a speech discrimination model");
    add_config_option(train_cmd);
    train_cmd->add_option("--data", train_args.data, "corpus directory")->required();
    train_cmd->add_option("-o,--out", train_args.out, "model file")->required();
    train_cmd->add_option("--model", train_args.model, "rf|svm|knn");
    train_cmd->add_option("--features", train_args.features, "pressure|accel|both");
    train_cmd->add_option("--seed", train_args.seed, "master seed");
    train_cmd->add_option("--label-threshold", train_args.label_threshold,
                          "speech seconds per window needed for a Speech label");
    add_hyper_options(train_cmd, train_args.hp);
    add_pipeline_options(train_cmd, train_args.pipeline);

    // cv
    CvArgs cv_args;
    auto* cv_cmd = app.add_subcommand("cv", "repeated 90/10 cross-validation");
    add_config_option(cv_cmd);
    cv_cmd->add_option("--data", cv_args.data, "corpus directory")->required();
    cv_cmd->add_option("-o,--out", cv_args.out, "report directory")->required();
    cv_cmd->add_option("--model", cv_args.model, "rf|svm|knn|all");
    cv_cmd->add_option("--features", cv_args.features, "pressure|accel|both|all");
    cv_cmd->add_option("--seed", cv_args.seed, "master seed");
    cv_cmd->add_option("--splits", cv_args.splits, "number of splits");
    cv_cmd->add_option("--holdout", cv_args.holdout, "validation fraction");
    cv_cmd->add_flag("--kfold", cv_args.kfold, "stratified k-fold instead of shuffle splits");
    cv_cmd->add_flag("--subject-cv", cv_args.subject_cv,
                     "leave-one-subject-out instead of stratified splits");
    cv_cmd->add_option("--label-threshold", cv_args.label_threshold,
                       "speech seconds per window needed for a Speech label");
    add_hyper_options(cv_cmd, cv_args.hp);
    add_pipeline_options(cv_cmd, cv_args.pipeline);

    // predict
    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "per-window labels for a recording");
    add_config_option(predict_cmd);
    predict_cmd->add_option("-m,--model-file", predict_args.model_file, "model JSON")
        ->required();
    predict_cmd->add_option("-i,--in", predict_args.in, "recording CSV")->required();
    predict_cmd->add_option("-o,--out", predict_args.out, "predictions CSV")->required();
    add_pipeline_options(predict_cmd, predict_args.pipeline);

    // estimate
    EstimateArgs estimate_args;
    auto* estimate_cmd = app.add_subcommand("estimate", "estimate total speech duration");
    add_config_option(estimate_cmd);
    estimate_cmd->add_option("-m,--model-file", estimate_args.model_file, "model JSON")
        ->required();
    estimate_cmd->add_option("-i,--in", estimate_args.in, "recording CSV")->required();
    estimate_cmd->add_option("-o,--out", estimate_args.out, "report file (optional)");
    estimate_cmd->add_option("--credit", estimate_args.credit,
                             "seconds credited per Speech window");
    add_pipeline_options(estimate_cmd, estimate_args.pipeline);

    // eval-meeting
    EvalMeetingArgs meeting_args;
    auto* meeting_cmd =
        app.add_subcommand("eval-meeting", "estimate and score against annotations");
    add_config_option(meeting_cmd);
    meeting_cmd->add_option("-m,--model-file", meeting_args.model_file, "model JSON")
        ->required();
    meeting_cmd->add_option("-i,--in", meeting_args.in, "recording CSV")->required();
    meeting_cmd->add_option("-a,--annotations", meeting_args.annotations,
                            "truth intervals CSV")
        ->required();
    meeting_cmd->add_option("-o,--out", meeting_args.out, "output directory")->required();
    meeting_cmd->add_option("--credit", meeting_args.credit,
                            "seconds credited per Speech window");
    meeting_cmd->add_option("--label-threshold", meeting_args.label_threshold,
                            "speech seconds per window needed for a Speech label");
    add_pipeline_options(meeting_cmd, meeting_args.pipeline);

    try {
        auto args = expand_config_args(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "speechbelt: failed at stage [" << g_stage << "]: " << e.what() << "\n";
        return 1;
    }

    const CLI::App* active = app.get_subcommands().front();
    try {
        if (active == synth_cmd) return cmd_synth(synth_cmd, synth_args);
        if (active == feat_cmd) return cmd_featurize(feat_cmd, feat_args);
        if (active == train_cmd) return cmd_train(train_cmd, train_args);
        if (active == cv_cmd) return cmd_cv(cv_cmd, cv_args);
        if (active == predict_cmd) return cmd_predict(predict_cmd, predict_args);
        if (active == estimate_cmd) return cmd_estimate(estimate_cmd, estimate_args);
        if (active == meeting_cmd) return cmd_eval_meeting(meeting_cmd, meeting_args);
    } catch (const std::exception& e) {
        std::cerr << "speechbelt " << active->get_name() << ": failed at stage [" << g_stage
                  << "]: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
