#include "wsnx/error.hpp"

namespace wsnx {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::MalformedRow: return "MalformedRow";
        case Errc::MixedMetricDay: return "MixedMetricDay";
        case Errc::EmptyDataset: return "EmptyDataset";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::EmptyWindow: return "EmptyWindow";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::TraceTooShort: return "TraceTooShort";
        case Errc::UncalibratedThreshold: return "UncalibratedThreshold";
        case Errc::StaleMessage: return "StaleMessage";
        case Errc::UnknownVersion: return "UnknownVersion";
        case Errc::ParseError: return "ParseError";
        case Errc::DegenerateRange: return "DegenerateRange";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NoHighIntervals: return "NoHighIntervals";
        case Errc::EmptyTraining: return "EmptyTraining";
        case Errc::TooFewDays: return "TooFewDays";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace wsnx
