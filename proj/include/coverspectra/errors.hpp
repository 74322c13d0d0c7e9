#ifndef COVERSPECTRA_ERRORS_HPP
#define COVERSPECTRA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coverspectra {

// Error taxonomy shared across the library. The CLI maps these onto exit
// codes: config/validation errors -> 2, numeric failures -> 3, I/O -> 4.
enum class Errc {
  LengthMismatch,
  RatioOutOfRange,
  ProbOutOfRange,
  ProbSumError,
  DigitOutOfRange,
  WordTooLong,
  AlphaNonPositive,
  HorizonZero,
  NoConvergence,
  BracketFailure,
  TooLarge,
  DegenerateM,
  Overflow,
  DepthTooLarge,
  WeightError,
  GammaTooLarge,
  Infeasible,
  TruncatedOrbit,
  ConfigError,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

  // true for errors caused by bad inputs rather than numeric breakdown
  bool is_config_error() const {
    switch (code_) {
      case Errc::LengthMismatch:
      case Errc::RatioOutOfRange:
      case Errc::ProbOutOfRange:
      case Errc::ProbSumError:
      case Errc::DigitOutOfRange:
      case Errc::WordTooLong:
      case Errc::AlphaNonPositive:
      case Errc::HorizonZero:
      case Errc::GammaTooLarge:
      case Errc::ConfigError:
        return true;
      default:
        return false;
    }
  }

 private:
  Errc code_;
};

}  // namespace coverspectra

#endif
