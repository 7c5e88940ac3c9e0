#pragma once

#include <span>
#include <string>
#include <vector>

#include "speechbelt/classify.hpp"
#include "speechbelt/config.hpp"
#include "speechbelt/duration.hpp"
#include "speechbelt/features.hpp"
#include "speechbelt/types.hpp"

namespace speechbelt {

// Channels a feature set consumes, in canonical order.
std::vector<ChannelId> channels_for(FeatureSet fs);

// Fixed stage order: regularize -> select channels -> smooth ->
// discard_warmup -> segment. Window start times are shifted into
// recording time (first grid point + warm-up discard), so they line up
// with annotation tracks.
std::vector<WindowSegment> preprocess_recording(std::span<const SensorRecord> records,
                                                const PipelineConfig& cfg, FeatureSet fs);

FeatureMatrix featurize_recording(std::span<const SensorRecord> records,
                                  const PipelineConfig& cfg, FeatureSet fs);

// Featurize with the channel set a trained model expects. A recording that
// lacks those channels (or a model trained on a foreign layout) raises
// ModelRecordingLayoutMismatch. Optionally hands back the windows so
// callers can label them against annotations.
FeatureMatrix featurize_for_model(const TrainedModel& model,
                                  std::span<const SensorRecord> records,
                                  const PipelineConfig& cfg,
                                  std::vector<WindowSegment>* windows_out = nullptr);

// One recording plus its ground truth (empty track = no speech at all).
struct CorpusEntry {
    std::string name;
    std::vector<SensorRecord> records;
    AnnotationTrack truth;
};

// Featurizes every entry and labels windows with the >threshold_s overlap
// rule. When groups_out is given it receives one subject id per row,
// derived from the entry-name prefix before the first '_'.
LabeledDataset build_dataset(std::span<const CorpusEntry> entries, const PipelineConfig& cfg,
                             FeatureSet fs, double threshold_s = 3.0,
                             std::vector<int>* groups_out = nullptr);

} // namespace speechbelt
