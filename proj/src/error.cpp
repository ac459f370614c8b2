#include "vidseal/error.hpp"

namespace vidseal {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptImage: return "CorruptImage";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidDimensions: return "InvalidDimensions";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::EmptyVideo: return "EmptyVideo";
    case ErrorCode::HeterogeneousDimensions: return "HeterogeneousDimensions";
    case ErrorCode::BadSequence: return "BadSequence";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::InconsistentHeader: return "InconsistentHeader";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::MissingDonor: return "MissingDonor";
    case ErrorCode::DegenerateOutput: return "DegenerateOutput";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::EmptyEvaluation: return "EmptyEvaluation";
    case ErrorCode::NoPositives: return "NoPositives";
    case ErrorCode::EmptySweep: return "EmptySweep";
  }
  return "Unknown";
}

}  // namespace vidseal
