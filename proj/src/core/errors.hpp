#pragma once

#include <stdexcept>
#include <string>

namespace ddfdi {

/// Failure categories surfaced by the library. They map one-to-one onto the
/// status codes of the C API.
enum class Errc {
  invalid_argument,
  dimension_mismatch,
  rank_deficient_ce,
  not_reconstructable,
  solvability_failed,
  guarantee_violated,
  horizon_too_short,
  faulty_historical_data,
  rank_deficient_regressor,
  residual_too_large,
  rank_mismatch,
  not_identifiable,
  out_of_range,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::rank_deficient_ce: return "RankDeficientCE";
    case Errc::not_reconstructable: return "NotReconstructable";
    case Errc::solvability_failed: return "SolvabilityFailed";
    case Errc::guarantee_violated: return "GuaranteeViolated";
    case Errc::horizon_too_short: return "HorizonTooShort";
    case Errc::faulty_historical_data: return "FaultyHistoricalData";
    case Errc::rank_deficient_regressor: return "RankDeficientRegressor";
    case Errc::residual_too_large: return "ResidualTooLarge";
    case Errc::rank_mismatch: return "RankMismatch";
    case Errc::not_identifiable: return "NotIdentifiable";
    case Errc::out_of_range: return "OutOfRange";
  }
  return "UnknownError";
}

}  // namespace ddfdi
