#include "speechbelt/error.hpp"

namespace speechbelt {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::MixedChannelPresence: return "MixedChannelPresence";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::SeriesShorterThanWindow: return "SeriesShorterThanWindow";
    case ErrorCode::RateMismatchAcrossChannels: return "RateMismatchAcrossChannels";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::InconsistentChannelSets: return "InconsistentChannelSets";
    case ErrorCode::SingleClassDataset: return "SingleClassDataset";
    case ErrorCode::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::LayoutMismatch: return "LayoutMismatch";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::CorruptModel: return "CorruptModel";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnsortedAnnotations: return "UnsortedAnnotations";
    case ErrorCode::DurationTooShort: return "DurationTooShort";
    case ErrorCode::IntervalOutOfRange: return "IntervalOutOfRange";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ModelRecordingLayoutMismatch: return "ModelRecordingLayoutMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

} // namespace speechbelt
