#include "speechbelt/types.hpp"

namespace speechbelt {

const char* channel_name(ChannelId id) {
    switch (id) {
    case ChannelId::Pressure: return "pressure";
    case ChannelId::AccelX: return "ax";
    case ChannelId::AccelY: return "ay";
    case ChannelId::AccelZ: return "az";
    }
    return "?";
}

const char* feature_set_name(FeatureSet fs) {
    switch (fs) {
    case FeatureSet::PressureOnly: return "pressure";
    case FeatureSet::AccelOnly: return "accel";
    case FeatureSet::Combined: return "both";
    }
    return "?";
}

} // namespace speechbelt
