#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace efk {

enum class ErrorCode {
  ParseError,
  InvalidArgument,
  ClockNotDecreasing,
  GameOver,
  GameNotOver,
  ElementNotInStructure,
  EpsNonPositive,
  AnswerOutsideBall,
  DimensionMismatch,
  NotYourTurn,
  MalformedMove,
  MalformedSpec,
  UnsupportedStructure,
  UnknownSession,
  EngineForfeit,
  SearchLimit,
  BudgetExceeded,
  Internal,
};

// Upper-snake name used on the wire, e.g. "CLOCK_NOT_DECREASING".
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(ErrorCode::ParseError,
              message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace efk
