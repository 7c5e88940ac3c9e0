#pragma once

#include <span>
#include <vector>

#include "speechbelt/types.hpp"

namespace speechbelt {

struct Interval {
    double start = 0.0;  // seconds, inclusive
    double end = 0.0;    // seconds, exclusive
};

// Ground-truth speech intervals: sorted, pairwise disjoint, end > start.
struct AnnotationTrack {
    std::vector<Interval> intervals;

    // Throws UnsortedAnnotations if the invariants do not hold.
    void validate() const;

    // Copy with every interval shifted by -offset_s and clipped at 0.
    // Used to move recording-time annotations into post-warm-up time.
    AnnotationTrack shifted(double offset_s) const;
};

struct DurationEstimate {
    std::size_t speech_window_count = 0;
    double estimated_seconds = 0.0;
    double window_credit_s = 4.5;
};

// Each Speech-classified window contributes window_credit_s seconds. The
// default credit equals the hop length, so back-to-back Speech windows sum
// without double counting.
DurationEstimate estimate_duration(std::span<const Label> predictions,
                                   double window_credit_s = 4.5);

// A window is Speech iff the annotated speech time inside
// [start, start + duration) is strictly greater than threshold_s.
std::vector<Label> label_windows(std::span<const WindowSegment> windows,
                                 const AnnotationTrack& truth,
                                 double threshold_s = 3.0);

double annotation_total(const AnnotationTrack& truth);

} // namespace speechbelt
