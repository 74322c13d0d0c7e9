#include "coverspectra/errors.hpp"

namespace coverspectra {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::RatioOutOfRange: return "RatioOutOfRange";
    case Errc::ProbOutOfRange: return "ProbOutOfRange";
    case Errc::ProbSumError: return "ProbSumError";
    case Errc::DigitOutOfRange: return "DigitOutOfRange";
    case Errc::WordTooLong: return "WordTooLong";
    case Errc::AlphaNonPositive: return "AlphaNonPositive";
    case Errc::HorizonZero: return "HorizonZero";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::BracketFailure: return "BracketFailure";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DegenerateM: return "DegenerateM";
    case Errc::Overflow: return "Overflow";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::WeightError: return "WeightError";
    case Errc::GammaTooLarge: return "GammaTooLarge";
    case Errc::Infeasible: return "Infeasible";
    case Errc::TruncatedOrbit: return "TruncatedOrbit";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace coverspectra
