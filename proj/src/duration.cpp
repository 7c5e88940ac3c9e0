#include "speechbelt/duration.hpp"

#include <algorithm>
#include <string>

#include "speechbelt/error.hpp"

namespace speechbelt {

void AnnotationTrack::validate() const {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        if (!(iv.end > iv.start))
            raise(ErrorCode::UnsortedAnnotations,
                  "interval " + std::to_string(i) + " has end <= start");
        if (i > 0 && intervals[i - 1].end > iv.start)
            raise(ErrorCode::UnsortedAnnotations,
                  "intervals must be sorted and pairwise disjoint");
    }
}

AnnotationTrack AnnotationTrack::shifted(double offset_s) const {
    AnnotationTrack out;
    for (const auto& iv : intervals) {
        const double start = std::max(0.0, iv.start - offset_s);
        const double end = iv.end - offset_s;
        if (end > start) out.intervals.push_back({start, end});
    }
    return out;
}

DurationEstimate estimate_duration(std::span<const Label> predictions, double window_credit_s) {
    if (!(window_credit_s > 0.0))
        raise(ErrorCode::InvalidConfig, "window_credit_s must be positive");

    DurationEstimate est;
    est.window_credit_s = window_credit_s;
    est.speech_window_count = static_cast<std::size_t>(
        std::count(predictions.begin(), predictions.end(), Label::Speech));
    est.estimated_seconds = static_cast<double>(est.speech_window_count) * window_credit_s;
    return est;
}

std::vector<Label> label_windows(std::span<const WindowSegment> windows,
                                 const AnnotationTrack& truth, double threshold_s) {
    truth.validate();

    std::vector<Label> labels;
    labels.reserve(windows.size());
    for (const auto& window : windows) {
        if (!(threshold_s > 0.0 && threshold_s <= window.duration))
            raise(ErrorCode::InvalidConfig, "threshold_s must lie in (0, window_s]");
        const double w_start = window.start_time;
        const double w_end = window.start_time + window.duration;
        double overlap = 0.0;
        for (const auto& iv : truth.intervals) {
            const double lo = std::max(w_start, iv.start);
            const double hi = std::min(w_end, iv.end);
            if (hi > lo) overlap += hi - lo;
        }
        labels.push_back(overlap > threshold_s ? Label::Speech : Label::NoSpeech);
    }
    return labels;
}

double annotation_total(const AnnotationTrack& truth) {
    truth.validate();
    double total = 0.0;
    for (const auto& iv : truth.intervals) total += iv.end - iv.start;
    return total;
}

} // namespace speechbelt
