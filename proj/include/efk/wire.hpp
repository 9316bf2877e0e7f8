#pragma once

#include <string>

#include "efk/dimgroup.hpp"
#include "efk/efgame.hpp"
#include "efk/errors.hpp"
#include "efk/logic/continuous.hpp"
#include "efk/logic/discrete.hpp"
#include "efk/ordinal.hpp"
#include "efk/pigame.hpp"
#include "efk/transfer.hpp"
#include "json.hpp"

namespace efk::wire {

using Json = nlohmann::json;

// {"notation": "w^(2)+1", "terms": [[exponent-terms, "coefficient"], ...]};
// an epsilon atom is written [{"epsilon": k}, "coefficient"].
Json ordinal_json(const Ordinal& a);
// Accepts a notation string or an object carrying "notation".
Ordinal ordinal_from(const Json& j);

// {"ambient": beta, "breakpoints": [...], "values": [...]}.
Json step_json(const StepFunction& f);
StepFunction step_from(const Json& j);

Json vec_json(const Vec& v);
Vec vec_from(const Json& j);

Json error_json(const Error& e);
Json error_json(ErrorCode code, const std::string& message);
Json illegal_json(const IllegalPlay& p);

// {initial_clock, rounds: [{clock, side, move, answer}], verdict}; the
// verdict is null while the game runs.
Json transcript_json(const Position<Ordinal>& pos, const std::optional<Verdict>& verdict = {});
Json transcript_json(const Position<StepFunction>& pos, const std::optional<Verdict>& verdict = {});
// Rounds also carry "eps" and both elements.
Json transcript_json(const PiPosition& pos, const std::optional<Verdict>& verdict = {});
// Group rounds, each with the auxiliary order rounds it triggered.
Json transfer_json(const TransferMatch& match, const std::vector<TransferStep>& steps);

Json iso_check_json(const GroupIsoCheck& c);

Json formula_json(const logic::Formula& f);
logic::Formula formula_from(const Json& j);
Json cformula_json(const logic::CFormula& f);

}  // namespace efk::wire
