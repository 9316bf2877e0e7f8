#include "efk/wire.hpp"

namespace efk::wire {
namespace {

Json terms_json(const Ordinal& a) {
  Json out = Json::array();
  for (const auto& t : a.terms()) {
    Json exponent = t.is_epsilon() ? Json{{"epsilon", t.epsilon}} : terms_json(*t.exponent);
    out.push_back(Json::array({exponent, t.coefficient.get_str()}));
  }
  return out;
}

const char* kind_name(logic::Kind k) {
  using logic::Kind;
  switch (k) {
    case Kind::Equal: return "eq";
    case Kind::LessEq: return "leq";
    case Kind::Not: return "not";
    case Kind::And: return "and";
    case Kind::Or: return "or";
    case Kind::Exists: return "exists";
    case Kind::Forall: return "forall";
    case Kind::Schema: return "schema";
  }
  return "eq";
}

const char* ckind_name(logic::CKind k) {
  using logic::CKind;
  switch (k) {
    case CKind::Norm: return "norm";
    case CKind::Const: return "const";
    case CKind::Max: return "max";
    case CKind::Min: return "min";
    case CKind::DotMinus: return "dotminus";
    case CKind::Affine: return "affine";
    case CKind::Inf: return "inf";
    case CKind::Sup: return "sup";
    case CKind::Phi: return "phi";
    case CKind::Schema: return "schema";
  }
  return "const";
}

Json term_json(const logic::LinearTerm& t) { return {{"vars", t.vars}, {"units", t.units}}; }

logic::LinearTerm term_from(const Json& j) {
  return logic::LinearTerm{j.value("vars", std::vector<std::string>{}), j.value("units", 0ul)};
}

Json verdict_value(const std::optional<Verdict>& v) { return v ? Json(verdict_name(*v)) : Json(nullptr); }

template <class E, class F>
Json efd_transcript(const Position<E>& pos, const std::optional<Verdict>& verdict, F element) {
  Json rounds = Json::array();
  for (const auto& r : pos.rounds())
    rounds.push_back({{"clock", ordinal_json(r.clock)},
                      {"side", side_name(r.side)},
                      {"move", element(r.move)},
                      {"answer", element(r.answer)}});
  return {{"initial_clock", ordinal_json(pos.initial_clock())}, {"rounds", rounds}, {"verdict", verdict_value(verdict)}};
}

}  // namespace

Json ordinal_json(const Ordinal& a) { return {{"notation", a.str()}, {"terms", terms_json(a)}}; }

Ordinal ordinal_from(const Json& j) {
  try {
    if (j.is_string()) return Ordinal::parse(j.get<std::string>());
    if (j.is_number_unsigned()) return Ordinal(j.get<long long>());
    if (j.is_object() && j.contains("notation")) return Ordinal::parse(j.at("notation").get<std::string>());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::MalformedSpec, std::string("bad ordinal: ") + e.what());
  }
  throw Error(ErrorCode::MalformedSpec, "ordinal must be a notation string");
}

Json step_json(const StepFunction& f) {
  Json bps = Json::array(), values = Json::array();
  for (const auto& b : f.partition().breakpoints()) bps.push_back(b.str());
  for (const auto& v : f.values()) values.push_back(to_string(v));
  return {{"ambient", f.beta().str()}, {"breakpoints", bps}, {"values", values}};
}

StepFunction step_from(const Json& j) {
  try {
    std::vector<Ordinal> bps;
    for (const auto& b : j.at("breakpoints")) bps.push_back(ordinal_from(b));
    std::vector<Rational> values;
    for (const auto& v : j.at("values")) values.push_back(parse_rational(v.get<std::string>()));
    IntervalPartition p = IntervalPartition::from_breakpoints(bps);
    if (j.contains("ambient") && !(ordinal_from(j.at("ambient")) == p.beta()))
      throw Error(ErrorCode::MalformedMove, "ambient does not match the last breakpoint");
    return StepFunction(std::move(p), std::move(values));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::MalformedMove, std::string("bad step function: ") + e.what());
  }
}

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& g : v) out.push_back(g.str());
  return out;
}

Vec vec_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::MalformedMove, "vector must be an array of strings");
  Vec out;
  for (const auto& g : j) {
    if (g.is_string()) out.push_back(Gaussian::parse(g.get<std::string>()));
    else if (g.is_number_integer()) out.emplace_back(Rational(g.get<long>()));
    else throw Error(ErrorCode::MalformedMove, "vector entries are strings such as \"1+2i\"");
  }
  return out;
}

Json error_json(ErrorCode code, const std::string& message) {
  return {{"error", {{"code", std::string(code_name(code))}, {"message", message}}}};
}
Json error_json(const Error& e) { return error_json(e.code(), e.what()); }

Json illegal_json(const IllegalPlay& p) {
  return {{"round", p.round}, {"player", p.player}, {"code", std::string(code_name(p.code))}, {"message", p.message}};
}

Json transcript_json(const Position<Ordinal>& pos, const std::optional<Verdict>& verdict) {
  return efd_transcript(pos, verdict, [](const Ordinal& x) { return Json(x.str()); });
}

Json transcript_json(const Position<StepFunction>& pos, const std::optional<Verdict>& verdict) {
  return efd_transcript(pos, verdict, [](const StepFunction& f) { return step_json(f); });
}

Json transcript_json(const PiPosition& pos, const std::optional<Verdict>& verdict) {
  Json rounds = Json::array();
  for (const auto& r : pos.rounds()) {
    const Vec& answer = r.side == Side::A ? r.b : r.a;
    rounds.push_back({{"clock", ordinal_json(r.clock)},
                      {"side", side_name(r.side)},
                      {"move", vec_json(r.probe)},
                      {"eps", to_string(r.eps)},
                      {"a", vec_json(r.a)},
                      {"b", vec_json(r.b)},
                      {"answer", vec_json(answer)}});
  }
  return {{"initial_clock", ordinal_json(pos.initial_clock())}, {"rounds", rounds}, {"verdict", verdict_value(verdict)}};
}

Json iso_check_json(const GroupIsoCheck& c) {
  return {{"verdict", verdict_name(c.verdict)}, {"bounded", c.bounded}, {"reason", c.reason}};
}

Json transfer_json(const TransferMatch& match, const std::vector<TransferStep>& steps) {
  Json out = transcript_json(match.position, match.verdict);
  Json aux = transcript_json(match.auxiliary);
  for (std::size_t i = 0; i < out["rounds"].size(); ++i) {
    Json slice = Json::array();
    for (const auto& s : steps)
      if (s.group_round == i)
        for (std::size_t k = s.first_aux; k < s.first_aux + s.aux_count && k < aux["rounds"].size(); ++k)
          slice.push_back(aux["rounds"][k]);
    out["rounds"][i]["auxiliary"] = slice;
  }
  out["auxiliary"] = aux;
  out["final_check"] = iso_check_json(match.final_check);
  out["illegal"] = match.illegal ? illegal_json(*match.illegal) : Json(nullptr);
  return out;
}

Json formula_json(const logic::Formula& f) {
  using logic::Kind;
  Json out{{"kind", kind_name(f->kind)}};
  switch (f->kind) {
    case Kind::Equal:
    case Kind::LessEq:
      out["lhs"] = term_json(f->lhs);
      out["rhs"] = term_json(f->rhs);
      break;
    case Kind::Not:
    case Kind::And:
    case Kind::Or: {
      Json kids = Json::array();
      for (const auto& c : f->children) kids.push_back(formula_json(c));
      out["children"] = kids;
      break;
    }
    case Kind::Exists:
    case Kind::Forall:
      out["var"] = f->var;
      out["body"] = formula_json(f->children[0]);
      break;
    case Kind::Schema:
      out["name"] = f->name;
      out["rank"] = f->rank.str();
      out["free"] = f->free;
      break;
  }
  return out;
}

logic::Formula formula_from(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    auto kids = [&] {
      std::vector<logic::Formula> out;
      for (const auto& c : j.at("children")) out.push_back(formula_from(c));
      return out;
    };
    if (kind == "eq") return logic::equal(term_from(j.at("lhs")), term_from(j.at("rhs")));
    if (kind == "leq") return logic::less_eq(term_from(j.at("lhs")), term_from(j.at("rhs")));
    if (kind == "not") {
      auto c = kids();
      if (c.size() != 1) throw Error(ErrorCode::MalformedSpec, "not takes one child");
      return logic::negation(c[0]);
    }
    if (kind == "and") return logic::conjunction(kids());
    if (kind == "or") return logic::disjunction(kids());
    if (kind == "exists") return logic::exists(j.at("var").get<std::string>(), formula_from(j.at("body")));
    if (kind == "forall") return logic::forall(j.at("var").get<std::string>(), formula_from(j.at("body")));
    if (kind == "schema")
      return logic::schema(j.at("name").get<std::string>(), ordinal_from(j.at("rank")),
                           j.value("free", std::vector<std::string>{}));
    throw Error(ErrorCode::MalformedSpec, "unknown formula kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::MalformedSpec, std::string("bad formula: ") + e.what());
  }
}

Json cformula_json(const logic::CFormula& f) {
  using logic::CKind;
  Json out{{"kind", ckind_name(f->kind)},
           {"rank", f->rank.str()},
           {"range", {to_string(f->range.lo), f->range.hi ? Json(to_string(*f->range.hi)) : Json(nullptr)}},
           {"lipschitz", to_string(f->lipschitz)}};
  Json kids = Json::array();
  for (const auto& c : f->children) kids.push_back(cformula_json(c));
  switch (f->kind) {
    case CKind::Norm:
      out["poly"] = f->poly.str();
      break;
    case CKind::Const:
      out["value"] = to_string(f->value);
      break;
    case CKind::Affine: {
      Json w = Json::array();
      for (const auto& x : f->weights) w.push_back(to_string(x));
      out["weights"] = w;
      out["shift"] = to_string(f->value);
      out["children"] = kids;
      break;
    }
    case CKind::Inf:
    case CKind::Sup:
      out["block"] = f->block;
      out["body"] = kids[0];
      break;
    case CKind::Phi: {
      Json args = Json::array();
      for (const auto& a : f->args) args.push_back(a.str());
      out["n"] = f->n;
      out["delta"] = to_string(f->delta);
      out["args"] = args;
      break;
    }
    case CKind::Schema:
      out["name"] = f->name;
      out["free"] = f->free;
      break;
    default:
      out["children"] = kids;
      if (f->family)
        out["family"] = {{"lipschitz", to_string(f->family->lipschitz)}, {"range", f->family->range.str()}};
  }
  return out;
}

}  // namespace efk::wire
