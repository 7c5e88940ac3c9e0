#pragma once

#include <stdexcept>
#include <string>

namespace speechbelt {

enum class ErrorCode {
    NonMonotonicTimestamps,
    TooFewSamples,
    MixedChannelPresence,
    SeriesTooShort,
    SeriesShorterThanWindow,
    RateMismatchAcrossChannels,
    EmptySpectrum,
    InconsistentChannelSets,
    SingleClassDataset,
    NonFiniteFeature,
    LayoutMismatch,
    UnsupportedVersion,
    CorruptModel,
    DatasetTooSmall,
    LengthMismatch,
    EmptyInput,
    UnsortedAnnotations,
    DurationTooShort,
    IntervalOutOfRange,
    IoError,
    ModelRecordingLayoutMismatch,
    InvalidConfig,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace speechbelt
