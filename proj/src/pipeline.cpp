#include "speechbelt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "speechbelt/error.hpp"
#include "speechbelt/signal.hpp"

namespace speechbelt {

std::vector<ChannelId> channels_for(FeatureSet fs) {
    switch (fs) {
    case FeatureSet::PressureOnly: return {ChannelId::Pressure};
    case FeatureSet::AccelOnly: return {ChannelId::AccelX, ChannelId::AccelY, ChannelId::AccelZ};
    case FeatureSet::Combined:
        return {ChannelId::Pressure, ChannelId::AccelX, ChannelId::AccelY, ChannelId::AccelZ};
    }
    return {};
}

std::vector<WindowSegment> preprocess_recording(std::span<const SensorRecord> records,
                                                const PipelineConfig& cfg, FeatureSet fs) {
    const auto all = regularize(records, cfg);

    std::vector<ChannelSeries> selected;
    for (ChannelId want : channels_for(fs)) {
        const auto it = std::find_if(all.begin(), all.end(), [&](const ChannelSeries& s) {
            return s.channel_id == want;
        });
        if (it == all.end())
            raise(ErrorCode::InconsistentChannelSets,
                  std::string("recording lacks the '") + channel_name(want) +
                      "' channel required by feature set '" + feature_set_name(fs) + "'");
        selected.push_back(*it);
    }

    for (auto& series : selected) series = discard_warmup(smooth(series, cfg), cfg);
    auto windows = segment(selected, cfg);

    // Shift window starts into recording time so annotations line up.
    const double first_grid =
        std::ceil(records.front().timestamp * cfg.target_rate - 1e-9) / cfg.target_rate;
    const double offset =
        first_grid + std::llround(cfg.warmup_discard_s * cfg.target_rate) / cfg.target_rate;
    for (auto& window : windows) window.start_time += offset;
    return windows;
}

FeatureMatrix featurize_recording(std::span<const SensorRecord> records,
                                  const PipelineConfig& cfg, FeatureSet fs) {
    const auto windows = preprocess_recording(records, cfg, fs);
    const auto channels = channels_for(fs);
    return build_matrix(windows, cfg.target_rate, channels);
}

FeatureMatrix featurize_for_model(const TrainedModel& model,
                                  std::span<const SensorRecord> records,
                                  const PipelineConfig& cfg,
                                  std::vector<WindowSegment>* windows_out) {
    const FeatureSet fs = feature_set_of(model.feature_layout);
    try {
        auto windows = preprocess_recording(records, cfg, fs);
        auto matrix = build_matrix(windows, cfg.target_rate, channels_for(fs));
        if (matrix.column_names != model.feature_layout)
            raise(ErrorCode::ModelRecordingLayoutMismatch,
                  "model layout does not match the features this pipeline produces");
        if (windows_out) *windows_out = std::move(windows);
        return matrix;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InconsistentChannelSets)
            raise(ErrorCode::ModelRecordingLayoutMismatch,
                  std::string("recording lacks channels the model was trained on: ") +
                      e.what());
        throw;
    }
}

LabeledDataset build_dataset(std::span<const CorpusEntry> entries, const PipelineConfig& cfg,
                             FeatureSet fs, double threshold_s, std::vector<int>* groups_out) {
    if (entries.empty())
        raise(ErrorCode::EmptyInput, "no recordings to build a dataset from");

    LabeledDataset data;
    if (groups_out) groups_out->clear();
    std::map<std::string, int> group_ids;

    for (const auto& entry : entries) {
        const auto windows = preprocess_recording(entry.records, cfg, fs);
        const auto matrix = build_matrix(windows, cfg.target_rate, channels_for(fs));
        const auto labels = label_windows(windows, entry.truth, threshold_s);

        if (data.matrix.column_names.empty())
            data.matrix.column_names = matrix.column_names;
        else if (data.matrix.column_names != matrix.column_names)
            raise(ErrorCode::InconsistentChannelSets,
                  "recordings disagree on the feature layout");

        int group = 0;
        if (groups_out) {
            const std::string prefix = entry.name.substr(0, entry.name.find('_'));
            const auto [it, inserted] =
                group_ids.emplace(prefix, static_cast<int>(group_ids.size()));
            group = it->second;
        }
        for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
            data.matrix.rows.push_back(matrix.rows[r]);
            data.matrix.start_times.push_back(matrix.start_times[r]);
            data.labels.push_back(labels[r]);
            if (groups_out) groups_out->push_back(group);
        }
    }
    return data;
}

} // namespace speechbelt
