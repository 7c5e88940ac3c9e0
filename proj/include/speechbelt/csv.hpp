#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "speechbelt/duration.hpp"
#include "speechbelt/features.hpp"
#include "speechbelt/types.hpp"

namespace speechbelt {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Recording format: header `t,pressure,ax,ay,az`, `.` decimal separator,
// missing channels left as empty fields consistently for the whole file.
std::vector<SensorRecord> read_recording_csv(const std::filesystem::path& path);
void write_recording_csv(const std::filesystem::path& path,
                         std::span<const SensorRecord> records);

// Annotation format: header `start_s,end_s`, one interval per row.
AnnotationTrack read_annotations_csv(const std::filesystem::path& path);
void write_annotations_csv(const std::filesystem::path& path, const AnnotationTrack& track);

// Feature matrix export: `start_time` first, then one named column per feature.
void write_matrix_csv(const std::filesystem::path& path, const FeatureMatrix& matrix);

// Per-window label trace: `start_time,label`, optionally with a truth column.
void write_predictions_csv(const std::filesystem::path& path,
                           std::span<const double> start_times, std::span<const Label> labels);
void write_prediction_trace_csv(const std::filesystem::path& path,
                                std::span<const double> start_times,
                                std::span<const Label> predicted,
                                std::span<const Label> truth);

} // namespace speechbelt
