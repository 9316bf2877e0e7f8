#include "efk/service/session.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>

#include "efk/brute_force.hpp"
#include "efk/linear_order.hpp"

namespace efk::service {

const char* status_name(Status s) {
  switch (s) {
    case Status::AwaitingI: return "AwaitingI";
    case Status::AwaitingII: return "AwaitingII";
    case Status::Finished: return "Finished";
  }
  return "Finished";
}

namespace {

[[noreturn]] void bad_spec(const std::string& msg) { throw Error(ErrorCode::MalformedSpec, msg); }

std::string field(const Json& j, const char* key, const std::string& fallback = {}) {
  if (!j.contains(key)) {
    if (fallback.empty()) bad_spec(std::string("spec is missing \"") + key + "\"");
    return fallback;
  }
  if (!j.at(key).is_string()) bad_spec(std::string("\"") + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

std::pair<std::string, std::string> split_tag(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) bad_spec("structure '" + text + "' has no tag; use order:, group: or algebra:");
  return {text.substr(0, colon), text.substr(colon + 1)};
}

Ordinal parse_ordinal_field(const std::string& text, const char* what) {
  try {
    return Ordinal::parse(text);
  } catch (const Error& e) {
    bad_spec(std::string("bad ") + what + ": " + e.what());
  }
}

std::uint64_t seed_of(const Json& spec) {
  if (!spec.contains("seed")) return 0;
  if (!spec.at("seed").is_number_unsigned()) bad_spec("\"seed\" must be a non-negative integer");
  return spec.at("seed").get<std::uint64_t>();
}

const char* engine_field(const std::string& e) {
  if (e == "I") return "I";
  if (e == "II") return "II";
  if (e == "none") return "none";
  bad_spec("\"engine\" must be \"I\", \"II\" or \"none\"");
}

Side parse_side(const Json& move) {
  if (!move.contains("side") || !move.at("side").is_string())
    throw Error(ErrorCode::MalformedMove, "move needs \"side\": \"A\" or \"B\"");
  std::string s = move.at("side").get<std::string>();
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  throw Error(ErrorCode::MalformedMove, "side must be \"A\" or \"B\"");
}

Ordinal parse_clock(const Json& move) {
  if (!move.contains("clock")) throw Error(ErrorCode::MalformedMove, "move needs \"clock\"");
  try {
    return wire::ordinal_from(move.at("clock"));
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedMove, std::string("bad clock: ") + e.what());
  }
}

void check_player(const Json& move, const char* expected) {
  if (move.contains("player") && move.at("player") != expected)
    throw Error(ErrorCode::NotYourTurn, std::string("it is Player ") + expected + "'s turn");
}

Json decision_note(const std::optional<IllegalPlay>& forfeit) {
  return forfeit ? wire::illegal_json(*forfeit) : Json(nullptr);
}

// Element codec and engines for one EFD instantiation.
template <class S, class E>
struct EfdKit {
  S a, b;
  std::function<E(const Json&)> decode;
  std::function<Json(const E&)> encode;
  std::function<Json(const Position<E>&)> transcript;
  std::function<Json(const Position<E>&, Verdict)> witness;
  std::function<Json(const Position<E>&)> extra;  // optional per-state additions
  std::optional<PlayerI<E>> one;
  std::optional<PlayerII<E>> two;
  std::string strategy;
};

template <class S, class E>
class EfdSession final : public Session {
 public:
  EfdSession(Json spec, EfdKit<S, E> kit, Ordinal clock, std::string engine)
      : kit_(std::move(kit)), pos_(std::move(clock)), engine_(std::move(engine)) {
    spec_ = std::move(spec);
    settle();
  }

  void post_move(const Json& move) override {
    if (status_ == Status::Finished) throw Error(ErrorCode::GameOver, "the game is over");
    if (status_ == Status::AwaitingI) {
      if (engine_ == "I") throw Error(ErrorCode::NotYourTurn, "the engine plays Player I");
      check_player(move, "I");
      if (!move.contains("element")) throw Error(ErrorCode::MalformedMove, "Player I move needs \"element\"");
      Move<E> m{parse_clock(move), parse_side(move), decode(move.at("element"))};
      pending_ = efd_step(pos_, std::move(m), kit_.a, kit_.b);
      status_ = Status::AwaitingII;
    } else {
      if (engine_ == "II") throw Error(ErrorCode::NotYourTurn, "the engine plays Player II");
      check_player(move, "II");
      if (!move.contains("answer")) throw Error(ErrorCode::MalformedMove, "Player II move needs \"answer\"");
      pos_ = efd_answer(*pending_, decode(move.at("answer")), kit_.a, kit_.b);
      pending_.reset();
      status_ = Status::AwaitingI;
    }
    log_.push_back(move);
    settle();
  }

  Status status() const override { return status_; }

  Json state() const override {
    Json out{{"kind", "EFD"},
             {"status", status_name(status_)},
             {"verdict", verdict_ ? Json(verdict_name(*verdict_)) : Json(nullptr)},
             {"clock", wire::ordinal_json(pos_.clock())},
             {"A", spec_.at("A")},
             {"B", spec_.at("B")},
             {"engine", {{"side", engine_}, {"strategy", kit_.strategy}, {"provenance", provenance()}}},
             {"transcript", kit_.transcript(pos_)},
             {"forfeit", decision_note(forfeit_)}};
    out["transcript"]["verdict"] = out["verdict"];
    if (pending_)
      out["pending"] = {{"clock", wire::ordinal_json(pending_->move.clock)},
                        {"side", side_name(pending_->move.side)},
                        {"element", kit_.encode(pending_->move.element)}};
    else
      out["pending"] = nullptr;
    if (kit_.extra) out["auxiliary"] = kit_.extra(pos_);
    return out;
  }

  Json export_json() const override {
    Json out = state();
    out["spec"] = spec_;
    out["log"] = log_;
    out["witness"] = verdict_ && !forfeit_ ? kit_.witness(pos_, *verdict_) : Json(nullptr);
    return out;
  }

 private:
  E decode(const Json& j) const {
    try {
      return kit_.decode(j);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::MalformedMove, e.what());
    } catch (const ParseError& e) {
      throw Error(ErrorCode::MalformedMove, e.what());
    }
  }

  const char* provenance() const {
    if (engine_ == "I" && kit_.one) return provenance_name(kit_.one->provenance);
    if (engine_ == "II" && kit_.two) return provenance_name(kit_.two->provenance);
    return provenance_name(Provenance::Human);
  }

  void finish(Verdict v, std::optional<IllegalPlay> forfeit = {}) {
    verdict_ = v;
    forfeit_ = std::move(forfeit);
    status_ = Status::Finished;
    pending_.reset();
  }

  void settle() {
    while (status_ != Status::Finished) {
      if (status_ == Status::AwaitingI && pos_.over()) {
        finish(check_win(pos_, kit_.a, kit_.b));
      } else if (status_ == Status::AwaitingI && engine_ == "I") {
        try {
          pending_ = efd_step(pos_, kit_.one->choose(pos_), kit_.a, kit_.b);
          status_ = Status::AwaitingII;
        } catch (const Error& e) {
          finish(Verdict::IIWins, IllegalPlay{pos_.size(), "I", e.code(), e.what()});
        }
      } else if (status_ == Status::AwaitingII && engine_ == "II") {
        try {
          pos_ = efd_answer(*pending_, kit_.two->answer(pos_, pending_->move), kit_.a, kit_.b);
          pending_.reset();
          status_ = Status::AwaitingI;
        } catch (const Error& e) {
          finish(Verdict::IWins, IllegalPlay{pos_.size(), "II", e.code(), e.what()});
        }
      } else {
        return;
      }
    }
  }

  EfdKit<S, E> kit_;
  Position<E> pos_;
  std::optional<Pending<E>> pending_;
  std::string engine_;
  Status status_ = Status::AwaitingI;
  std::optional<Verdict> verdict_;
  std::optional<IllegalPlay> forfeit_;
};

class PiSession final : public Session {
 public:
  PiSession(Json spec, ToyAlgebra a, ToyAlgebra b, Ordinal clock, std::string engine, std::optional<PiPlayerI> one,
            std::optional<PiPlayerII> two, std::string strategy)
      : a_(a), b_(b), pos_(std::move(clock)), engine_(std::move(engine)), one_(std::move(one)), two_(std::move(two)),
        strategy_(std::move(strategy)) {
    spec_ = std::move(spec);
    settle();
  }

  void post_move(const Json& move) override {
    if (status_ == Status::Finished) throw Error(ErrorCode::GameOver, "the game is over");
    if (status_ == Status::AwaitingI) {
      if (engine_ == "I") throw Error(ErrorCode::NotYourTurn, "the engine plays Player I");
      check_player(move, "I");
      if (!move.contains("probe") || !move.contains("eps"))
        throw Error(ErrorCode::MalformedMove, "Player I move needs \"probe\" and \"eps\"");
      PiMove m{parse_clock(move), parse_side(move), wire::vec_from(move.at("probe")), parse_eps(move.at("eps"))};
      pending_ = pi_step(pos_, std::move(m), a_, b_);
      status_ = Status::AwaitingII;
    } else {
      if (engine_ == "II") throw Error(ErrorCode::NotYourTurn, "the engine plays Player II");
      check_player(move, "II");
      Vec x, y;
      if (move.contains("a") && move.contains("b")) {
        x = wire::vec_from(move.at("a"));
        y = wire::vec_from(move.at("b"));
      } else if (move.contains("answer")) {
        Vec other = wire::vec_from(move.at("answer"));
        bool from_a = pending_->move.side == Side::A;
        x = from_a ? pending_->move.probe : other;
        y = from_a ? other : pending_->move.probe;
      } else {
        throw Error(ErrorCode::MalformedMove, "Player II move needs \"a\" and \"b\", or \"answer\"");
      }
      pos_ = pi_answer(*pending_, std::move(x), std::move(y), a_, b_);
      pending_.reset();
      status_ = Status::AwaitingI;
    }
    log_.push_back(move);
    settle();
  }

  Status status() const override { return status_; }

  Json state() const override {
    Json out{{"kind", "PI"},
             {"status", status_name(status_)},
             {"verdict", verdict_ ? Json(verdict_name(*verdict_)) : Json(nullptr)},
             {"clock", wire::ordinal_json(pos_.clock())},
             {"A", spec_.at("A")},
             {"B", spec_.at("B")},
             {"engine", {{"side", engine_}, {"strategy", strategy_}, {"provenance", provenance()}}},
             {"transcript", wire::transcript_json(pos_, verdict_)},
             {"forfeit", decision_note(forfeit_)}};
    if (pending_)
      out["pending"] = {{"clock", wire::ordinal_json(pending_->move.clock)},
                        {"side", side_name(pending_->move.side)},
                        {"probe", wire::vec_json(pending_->move.probe)},
                        {"eps", to_string(pending_->move.eps)}};
    else
      out["pending"] = nullptr;
    return out;
  }

  Json export_json() const override {
    Json out = state();
    out["spec"] = spec_;
    out["log"] = log_;
    if (verdict_ && !forfeit_) {
      auto pairs = pos_.pairs();
      PiWinCheck detail = check_win_pi_detail(pairs, a_, b_);
      std::vector<Vec> ga{a_.unit()}, gb{b_.unit()};
      for (const auto& [x, y] : pairs) {
        ga.push_back(x);
        gb.push_back(y);
      }
      out["witness"] = {{"verdict", verdict_name(detail.verdict)},
                        {"cells_A", generated_partition(ga, a_.dim)},
                        {"cells_B", generated_partition(gb, b_.dim)},
                        {"bijection", detail.bijection}};
    } else {
      out["witness"] = nullptr;
    }
    return out;
  }

 private:
  static Rational parse_eps(const Json& j) {
    try {
      if (j.is_number_integer()) return Rational(j.get<long>());
      return parse_rational(j.get<std::string>());
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::MalformedMove, std::string("bad eps: ") + e.what());
    }
  }

  const char* provenance() const {
    if (engine_ == "I" && one_) return provenance_name(one_->provenance);
    if (engine_ == "II" && two_) return provenance_name(two_->provenance);
    return provenance_name(Provenance::Human);
  }

  void finish(Verdict v, std::optional<IllegalPlay> forfeit = {}) {
    verdict_ = v;
    forfeit_ = std::move(forfeit);
    status_ = Status::Finished;
    pending_.reset();
  }

  void settle() {
    while (status_ != Status::Finished) {
      if (status_ == Status::AwaitingI && pos_.over()) {
        finish(check_win_pi(pos_, a_, b_));
      } else if (status_ == Status::AwaitingI && engine_ == "I") {
        try {
          pending_ = pi_step(pos_, one_->choose(pos_), a_, b_);
          status_ = Status::AwaitingII;
        } catch (const Error& e) {
          finish(Verdict::IIWins, IllegalPlay{pos_.size(), "I", e.code(), e.what()});
        }
      } else if (status_ == Status::AwaitingII && engine_ == "II") {
        try {
          auto [x, y] = two_->answer(pos_, pending_->move);
          pos_ = pi_answer(*pending_, std::move(x), std::move(y), a_, b_);
          pending_.reset();
          status_ = Status::AwaitingI;
        } catch (const Error& e) {
          finish(Verdict::IWins, IllegalPlay{pos_.size(), "II", e.code(), e.what()});
        }
      } else {
        return;
      }
    }
  }

  ToyAlgebra a_, b_;
  PiPosition pos_;
  std::optional<PiPending> pending_;
  std::string engine_;
  std::optional<PiPlayerI> one_;
  std::optional<PiPlayerII> two_;
  std::string strategy_;
  Status status_ = Status::AwaitingI;
  std::optional<Verdict> verdict_;
  std::optional<IllegalPlay> forfeit_;
};

std::chrono::milliseconds budget_of(const Json& spec) {
  if (!spec.contains("budget_ms")) return std::chrono::milliseconds(5000);
  if (!spec.at("budget_ms").is_number_unsigned()) bad_spec("\"budget_ms\" must be a non-negative integer");
  return std::chrono::milliseconds(spec.at("budget_ms").get<std::uint64_t>());
}

std::uint64_t finite_clock(const Ordinal& clock, const std::string& strategy) {
  if (!clock.is_finite()) throw Error(ErrorCode::UnsupportedStructure, "strategy '" + strategy + "' needs a finite clock");
  return clock.to_u64();
}

std::unique_ptr<Session> order_session(const Json& spec, const Ordinal& la, const Ordinal& lb, const Ordinal& clock,
                                       const std::string& engine) {
  using K = EfdKit<OrdinalOrder, Ordinal>;
  K kit;
  kit.a = OrdinalOrder{la};
  kit.b = OrdinalOrder{lb};
  kit.decode = [](const Json& j) {
    if (!j.is_string()) throw Error(ErrorCode::MalformedMove, "order element must be a notation string");
    return Ordinal::parse(j.get<std::string>());
  };
  kit.encode = [](const Ordinal& x) { return Json(x.str()); };
  kit.transcript = [](const Position<Ordinal>& p) { return wire::transcript_json(p); };
  kit.witness = [](const Position<Ordinal>& p, Verdict v) {
    Json map = Json::array();
    auto pairs = p.pairs();
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const auto& [x, y] : pairs) map.push_back(Json::array({x.str(), y.str()}));
    return Json{{"verdict", verdict_name(v)}, {"map", map}};
  };
  const std::uint64_t seed = seed_of(spec);
  if (engine == "II") {
    kit.strategy = field(spec, "strategy", "identity");
    if (kit.strategy == "identity") {
      kit.two = identity_order_strategy();
    } else if (kit.strategy == "decided") {
      finite_clock(clock, kit.strategy);
      auto decider = std::make_shared<OrderGameDecider>();
      kit.two = PlayerII<Ordinal>{[decider, a = kit.a, b = kit.b](const Position<Ordinal>& pos, const Move<Ordinal>& m) {
                                    return decider->answer(a, b, pos, m);
                                  },
                                  Provenance::Decided};
    } else if (kit.strategy == "brute_force") {
      if (!la.is_finite() || !lb.is_finite()) throw Error(ErrorCode::UnsupportedStructure, "brute_force needs finite orders");
      SolverOptions opt;
      opt.deadline = std::chrono::steady_clock::now() + budget_of(spec);
      kit.two = brute_force_solve(kit.a, kit.b, finite_clock(clock, kit.strategy), opt).ii;
    } else if (kit.strategy == "karp") {
      if (!la.is_successor() || !lb.is_successor())
        throw Error(ErrorCode::UnsupportedStructure, "karp needs orders of successor length");
      kit.two = karp_order_strategy(la.predecessor(), lb.predecessor());
    } else {
      bad_spec("unknown Player II strategy '" + kit.strategy + "' for orders");
    }
  } else if (engine == "I") {
    kit.strategy = field(spec, "strategy", "random");
    if (kit.strategy == "random") {
      kit.one = random_order_player(kit.a, kit.b, seed);
    } else if (kit.strategy == "decided") {
      OrderDecision d = decide_equiv_finite_clock(la, lb, finite_clock(clock, kit.strategy));
      kit.one = d.equivalent ? random_order_player(kit.a, kit.b, seed) : d.i;
    } else if (kit.strategy == "brute_force") {
      if (!la.is_finite() || !lb.is_finite()) throw Error(ErrorCode::UnsupportedStructure, "brute_force needs finite orders");
      SolverOptions opt;
      opt.deadline = std::chrono::steady_clock::now() + budget_of(spec);
      auto r = brute_force_solve(kit.a, kit.b, finite_clock(clock, kit.strategy), opt);
      kit.one = r.ii_wins ? random_order_player(kit.a, kit.b, seed) : r.i;
    } else {
      bad_spec("unknown Player I strategy '" + kit.strategy + "' for orders");
    }
  } else {
    kit.strategy = "none";
  }
  return std::make_unique<EfdSession<OrdinalOrder, Ordinal>>(spec, std::move(kit), clock, engine);
}

PlayerII<Ordinal> named_order_strategy(const std::string& name, const Ordinal& beta, const Ordinal& gamma) {
  if (name == "identity") return identity_order_strategy();
  if (name == "karp") return karp_order_strategy(beta, gamma);
  bad_spec("unknown order strategy '" + name + "'; use identity or karp");
}

std::unique_ptr<Session> group_session(const Json& spec, const Ordinal& sa, const Ordinal& sb, const Ordinal& clock,
                                       const std::string& engine) {
  if (!sa.is_successor() || !sb.is_successor())
    throw Error(ErrorCode::UnsupportedStructure, "group spaces must be successor ordinals");
  const Ordinal beta = sa.predecessor(), gamma = sb.predecessor();
  GroupOrder order = GroupOrder::LL;
  std::string order_text = field(spec, "order", "ll");
  if (order_text == "leq") order = GroupOrder::Leq;
  else if (order_text != "ll") bad_spec("\"order\" must be \"ll\" or \"leq\"");
  using K = EfdKit<DimGroup, StepFunction>;
  K kit;
  kit.a = DimGroup{beta, order};
  kit.b = DimGroup{gamma, order};
  kit.decode = [](const Json& j) { return wire::step_from(j); };
  kit.encode = [](const StepFunction& f) { return wire::step_json(f); };
  kit.transcript = [](const Position<StepFunction>& p) { return wire::transcript_json(p); };
  kit.witness = [order](const Position<StepFunction>& p, Verdict) {
    Json map = Json::array();
    for (const auto& [g, h] : p.pairs()) map.push_back(Json::array({wire::step_json(g), wire::step_json(h)}));
    return Json{{"check", wire::iso_check_json(check_partial_iso_group(p.pairs(), order))}, {"generators", map}};
  };
  const std::uint64_t seed = seed_of(spec);
  if (engine == "II") {
    kit.strategy = field(spec, "strategy", "transfer");
    if (kit.strategy == "transfer") {
      std::string inner = field(spec, "order_strategy", beta == gamma ? "identity" : "karp");
      PlayerII<Ordinal> order_strategy = named_order_strategy(inner, beta, gamma);
      kit.two = transfer_strategy(order_strategy, beta, gamma);
      kit.extra = [order_strategy, beta, gamma](const Position<StepFunction>& p) {
        try {
          TransferSession s = replay_transfer(order_strategy, beta, gamma, p);
          Json aux = wire::transcript_json(s.auxiliary());
          Json steps = Json::array();
          for (const auto& st : s.steps())
            steps.push_back({{"group_round", st.group_round}, {"first_aux", st.first_aux}, {"aux_count", st.aux_count}});
          aux["steps"] = steps;
          return aux;
        } catch (const Error& e) {
          return wire::error_json(e);
        }
      };
    } else if (kit.strategy == "identity") {
      if (!(beta == gamma)) throw Error(ErrorCode::UnsupportedStructure, "identity needs equal groups");
      kit.two = PlayerII<StepFunction>{[](const Position<StepFunction>&, const Move<StepFunction>& m) { return m.element; },
                                       Provenance::Identity};
    } else {
      bad_spec("unknown Player II strategy '" + kit.strategy + "' for groups");
    }
  } else if (engine == "I") {
    kit.strategy = field(spec, "strategy", "random");
    if (kit.strategy != "random") bad_spec("unknown Player I strategy '" + kit.strategy + "' for groups");
    kit.one = random_group_player(beta, gamma, seed);
  } else {
    kit.strategy = "none";
  }
  return std::make_unique<EfdSession<DimGroup, StepFunction>>(spec, std::move(kit), clock, engine);
}

std::size_t parse_dim(const std::string& text) {
  try {
    Ordinal d = Ordinal::parse(text);
    if (!d.is_finite() || d.is_zero() || d.to_u64() > 64) bad_spec("algebra dimension must be in 1..64");
    return static_cast<std::size_t>(d.to_u64());
  } catch (const ParseError& e) {
    bad_spec(std::string("bad algebra dimension: ") + e.what());
  }
}

std::unique_ptr<Session> pi_session(const Json& spec, std::size_t da, std::size_t db, const Ordinal& clock,
                                    const std::string& engine) {
  ToyAlgebra a{da}, b{db};
  std::optional<PiPlayerI> one;
  std::optional<PiPlayerII> two;
  std::string strategy = "none";
  if (engine == "II") {
    strategy = field(spec, "strategy", "echo");
    if (strategy != "echo") bad_spec("unknown Player II strategy '" + strategy + "' for PI games");
    std::vector<std::size_t> perm;
    if (spec.contains("permutation")) perm = spec.at("permutation").get<std::vector<std::size_t>>();
    two = echo_strategy(perm);
  } else if (engine == "I") {
    strategy = field(spec, "strategy", "random");
    if (strategy != "random") bad_spec("unknown Player I strategy '" + strategy + "' for PI games");
    one = random_pi_player(a, b, seed_of(spec));
  }
  return std::make_unique<PiSession>(spec, a, b, clock, engine, std::move(one), std::move(two), strategy);
}

}  // namespace

std::unique_ptr<Session> Session::create(const Json& spec) {
  if (!spec.is_object()) bad_spec("spec must be a JSON object");
  try {
    const std::string kind = field(spec, "kind");
    const auto [ta, va] = split_tag(field(spec, "A"));
    const auto [tb, vb] = split_tag(field(spec, "B"));
    if (ta != tb) throw Error(ErrorCode::UnsupportedStructure, "both sides must have the same structure tag");
    const Ordinal clock = parse_ordinal_field(field(spec, "clock"), "clock");
    const std::string engine = engine_field(field(spec, "engine", "none"));
    if (kind == "EFD") {
      if (ta == "order")
        return order_session(spec, parse_ordinal_field(va, "order length"), parse_ordinal_field(vb, "order length"),
                             clock, engine);
      if (ta == "group")
        return group_session(spec, parse_ordinal_field(va, "group space"), parse_ordinal_field(vb, "group space"), clock,
                             engine);
      throw Error(ErrorCode::UnsupportedStructure, "EFD games take order: or group: structures, not " + ta + ":");
    }
    if (kind == "PI") {
      if (ta != "algebra") throw Error(ErrorCode::UnsupportedStructure, "PI games take algebra: structures, not " + ta + ":");
      return pi_session(spec, parse_dim(va), parse_dim(vb), clock, engine);
    }
    bad_spec("\"kind\" must be \"EFD\" or \"PI\"");
  } catch (const Json::exception& e) {
    bad_spec(std::string("malformed spec: ") + e.what());
  }
}

Json replay_transcript(const Json& spec, const Json& transcript) {
  Json bare = spec;
  bare["engine"] = "none";
  std::unique_ptr<Session> s = Session::create(bare);
  const bool pi = spec.at("kind") == "PI";
  for (const auto& r : transcript.at("rounds")) {
    Json one{{"clock", r.at("clock")}, {"side", r.at("side")}};
    Json two;
    if (pi) {
      one["probe"] = r.at("move");
      one["eps"] = r.at("eps");
      two = {{"a", r.at("a")}, {"b", r.at("b")}};
    } else {
      one["element"] = r.at("move");
      two = {{"answer", r.at("answer")}};
    }
    s->post_move(one);
    s->post_move(two);
  }
  return s->state().at("transcript");
}

std::string SessionStore::insert(std::unique_ptr<Session> s, std::string id) {
  std::unique_lock lock(mu_);
  if (id.empty()) id = "s" + std::to_string(next_++);
  auto entry = std::make_shared<Entry>();
  entry->session = std::move(s);
  sessions_[id] = std::move(entry);
  return id;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
  return it->second;
}

Json SessionStore::create(const Json& spec) {
  auto s = Session::create(spec);
  Json state = s->state();
  state["id"] = insert(std::move(s));
  return state;
}

Json SessionStore::post_move(const std::string& id, const Json& move) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  entry->session->post_move(move);
  Json state = entry->session->state();
  state["id"] = id;
  return state;
}

Json SessionStore::get(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  Json state = entry->session->state();
  state["id"] = id;
  return state;
}

Json SessionStore::export_session(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  Json out = entry->session->export_json();
  out["id"] = id;
  return out;
}

Json SessionStore::list() const {
  std::vector<std::pair<std::string, std::shared_ptr<Entry>>> entries;
  {
    std::shared_lock lock(mu_);
    entries.assign(sessions_.begin(), sessions_.end());
  }
  Json out = Json::array();
  for (const auto& [id, entry] : entries) {
    std::lock_guard lock(entry->mu);
    Json state = entry->session->state();
    out.push_back({{"id", id}, {"kind", state["kind"]}, {"status", state["status"]}, {"verdict", state["verdict"]},
                   {"A", state["A"]}, {"B", state["B"]}});
  }
  return out;
}

void SessionStore::save_snapshot(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write snapshot " + path);
  std::vector<std::pair<std::string, std::shared_ptr<Entry>>> entries;
  {
    std::shared_lock lock(mu_);
    entries.assign(sessions_.begin(), sessions_.end());
  }
  for (const auto& [id, entry] : entries) {
    std::lock_guard lock(entry->mu);
    out << Json{{"id", id}, {"spec", entry->session->spec()}, {"log", entry->session->log()}}.dump() << "\n";
  }
}

std::size_t SessionStore::load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  std::size_t restored = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::MalformedSpec, std::string("bad snapshot line: ") + e.what());
    }
    auto s = Session::create(j.at("spec"));
    for (const auto& m : j.at("log")) s->post_move(m);
    std::string id = j.at("id").get<std::string>();
    insert(std::move(s), id);
    {
      std::unique_lock lock(mu_);
      if (id.size() > 1 && id[0] == 's') {
        try {
          next_ = std::max(next_, std::stoul(id.substr(1)) + 1);
        } catch (const std::exception&) {
        }
      }
    }
    ++restored;
  }
  return restored;
}

}  // namespace efk::service
