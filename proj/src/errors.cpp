#include "efk/errors.hpp"

namespace efk {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ClockNotDecreasing: return "CLOCK_NOT_DECREASING";
    case ErrorCode::GameOver: return "GAME_OVER";
    case ErrorCode::GameNotOver: return "GAME_NOT_OVER";
    case ErrorCode::ElementNotInStructure: return "ELEMENT_NOT_IN_STRUCTURE";
    case ErrorCode::EpsNonPositive: return "EPS_NON_POSITIVE";
    case ErrorCode::AnswerOutsideBall: return "ANSWER_OUTSIDE_BALL";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NotYourTurn: return "NOT_YOUR_TURN";
    case ErrorCode::MalformedMove: return "MALFORMED_MOVE";
    case ErrorCode::MalformedSpec: return "MALFORMED_SPEC";
    case ErrorCode::UnsupportedStructure: return "UNSUPPORTED_STRUCTURE";
    case ErrorCode::UnknownSession: return "UNKNOWN_SESSION";
    case ErrorCode::EngineForfeit: return "ENGINE_FORFEIT";
    case ErrorCode::SearchLimit: return "SEARCH_LIMIT";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

}  // namespace efk
