#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "efk/bratteli.hpp"
#include "efk/brute_force.hpp"
#include "efk/linear_order.hpp"
#include "efk/logic/continuous.hpp"
#include "efk/logic/semigroup.hpp"
#include "efk/logic/sexpr.hpp"
#include "efk/service/http.hpp"
#include "efk/transfer.hpp"
#include "efk/wire.hpp"

using namespace efk;
using wire::Json;

namespace {

std::pair<std::string, std::string> split_tag(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::MalformedSpec, "structure '" + text + "' needs a tag");
  return {text.substr(0, colon), text.substr(colon + 1)};
}

struct PlayArgs {
  std::string kind = "EFD", a, b, clock, one = "random", two, order_strategy;
  std::uint64_t seed = 1;
  std::size_t rounds = 1000;
};

PlayerI<Ordinal> order_player_one(const PlayArgs& p, const OrdinalOrder& a, const OrdinalOrder& b, const Ordinal& clock) {
  if (p.one == "random") return random_order_player(a, b, p.seed);
  if (!clock.is_finite()) throw Error(ErrorCode::UnsupportedStructure, p.one + " needs a finite clock");
  if (p.one == "decided") {
    auto d = decide_equiv_finite_clock(a.length, b.length, clock.to_u64());
    return d.equivalent ? random_order_player(a, b, p.seed) : d.i;
  }
  if (p.one == "brute_force") {
    auto r = brute_force_solve(a, b, clock.to_u64());
    return r.ii_wins ? random_order_player(a, b, p.seed) : r.i;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Player I strategy " + p.one);
}

PlayerII<Ordinal> order_player_two(const std::string& name, const OrdinalOrder& a, const OrdinalOrder& b,
                                   const Ordinal& clock) {
  if (name == "identity") return identity_order_strategy();
  if (name == "karp") return karp_order_strategy(a.length.predecessor(), b.length.predecessor());
  if (!clock.is_finite()) throw Error(ErrorCode::UnsupportedStructure, name + " needs a finite clock");
  if (name == "decided") {
    auto decider = std::make_shared<OrderGameDecider>();
    return PlayerII<Ordinal>{[decider, a, b](const Position<Ordinal>& pos, const Move<Ordinal>& m) {
                               return decider->answer(a, b, pos, m);
                             },
                             Provenance::Decided};
  }
  if (name == "brute_force") return brute_force_solve(a, b, clock.to_u64()).ii;
  throw Error(ErrorCode::InvalidArgument, "unknown Player II strategy " + name);
}

int run_play(const PlayArgs& p) {
  auto [ta, va] = split_tag(p.a);
  auto [tb, vb] = split_tag(p.b);
  if (ta != tb) throw Error(ErrorCode::UnsupportedStructure, "both sides need the same tag");
  Ordinal clock = Ordinal::parse(p.clock);
  Json out;
  if (p.kind == "PI") {
    ToyAlgebra a{Ordinal::parse(va).to_u64()}, b{Ordinal::parse(vb).to_u64()};
    auto r = play_pi_match(a, b, clock, random_pi_player(a, b, p.seed), echo_strategy(), p.rounds);
    out = wire::transcript_json(r.position, r.verdict);
    out["illegal"] = r.illegal ? wire::illegal_json(*r.illegal) : Json(nullptr);
  } else if (ta == "order") {
    OrdinalOrder a{Ordinal::parse(va)}, b{Ordinal::parse(vb)};
    auto r = play_match(a, b, clock, order_player_one(p, a, b, clock),
                        order_player_two(p.two.empty() ? "identity" : p.two, a, b, clock), p.rounds);
    out = wire::transcript_json(r.position, r.verdict);
    out["illegal"] = r.illegal ? wire::illegal_json(*r.illegal) : Json(nullptr);
  } else if (ta == "group") {
    Ordinal beta = Ordinal::parse(va).predecessor(), gamma = Ordinal::parse(vb).predecessor();
    std::string inner = p.order_strategy.empty() ? (beta == gamma ? "identity" : "karp") : p.order_strategy;
    PlayerII<Ordinal> order = inner == "identity" ? identity_order_strategy() : karp_order_strategy(beta, gamma);
    auto m = play_transfer_match(beta, gamma, clock, random_group_player(beta, gamma, p.seed), order);
    out = wire::transfer_json(m, m.steps);
  } else {
    throw Error(ErrorCode::UnsupportedStructure, "unknown structure tag " + ta);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

Ordinal finite_or_throw(const std::string& text) {
  Ordinal a = Ordinal::parse(text);
  if (!a.is_finite()) throw Error(ErrorCode::UnsupportedStructure, text + " is not finite");
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ehrenfeucht-Fraisse games on ordinals, dimension groups and toy algebras"};
  app.require_subcommand(1);

  service::ServeOptions serve_opt;
  if (const char* env = std::getenv("EFK_SNAPSHOT")) serve_opt.snapshot = env;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session API");
  serve->add_option("--port", serve_opt.port, "TCP port")->capture_default_str();
  serve->add_option("--host", serve_opt.host, "Bind address")->capture_default_str();
  serve->add_option("--snapshot", serve_opt.snapshot, "NDJSON snapshot file (default $EFK_SNAPSHOT)");
  serve->add_option("--static", serve_opt.static_dir, "Directory served at /");

  PlayArgs play_args;
  auto* play = app.add_subcommand("play", "Play one engine-vs-engine match and print its transcript");
  play->add_option("--kind", play_args.kind, "EFD or PI")->capture_default_str();
  play->add_option("-A,--A", play_args.a, "order:<len>, group:<space> or algebra:<dim>")->required();
  play->add_option("-B,--B", play_args.b, "Same tag as A")->required();
  play->add_option("--clock", play_args.clock, "Initial clock")->required();
  play->add_option("--one", play_args.one, "Player I: random, decided, brute_force")->capture_default_str();
  play->add_option("--two", play_args.two, "Player II: identity, decided, brute_force, karp");
  play->add_option("--order-strategy", play_args.order_strategy, "Order strategy behind the transfer: identity or karp");
  play->add_option("--seed", play_args.seed)->capture_default_str();
  play->add_option("--rounds", play_args.rounds, "Round limit")->capture_default_str();

  std::string sa, sb;
  std::uint64_t sclock = 0;
  auto* solve = app.add_subcommand("solve", "Exhaustive solution of EFD_n on two finite orders");
  solve->add_option("a", sa, "Length of A")->required();
  solve->add_option("b", sb, "Length of B")->required();
  solve->add_option("clock", sclock, "Finite clock")->required();

  std::string ea, eb;
  std::uint64_t eclock = 0;
  auto* equiv = app.add_subcommand("equiv", "Decide whether Player II wins EFD_n(a, b) on ordinal orders");
  equiv->add_option("a", ea)->required();
  equiv->add_option("b", eb)->required();
  equiv->add_option("clock", eclock)->required();

  unsigned bk = 0, blevels = 3;
  std::string bspace, bformat = "dot";
  auto* bratt = app.add_subcommand("bratteli", "Export a Bratteli diagram");
  bratt->add_option("--k", bk, "G_k for finite k");
  bratt->add_option("--space", bspace, "G_space for a successor ordinal space, e.g. w+1");
  bratt->add_option("--levels", blevels, "Connecting maps (with --k) or partitions (with --space)")->capture_default_str();
  bratt->add_option("--format", bformat, "dot or json")->capture_default_str();

  std::string formula, target = "v", delta = "1/10", cap = "1";
  bool as_json = false;
  auto* translate = app.add_subcommand("translate", "Translate a formula about K_0 into V (and on into C*)");
  translate->add_option("formula", formula, "S-expression formula")->required();
  translate->add_option("--to", target, "v or cstar")->capture_default_str();
  translate->add_option("--delta", delta)->capture_default_str();
  translate->add_option("--cap", cap, "Truncation bound M for families")->capture_default_str();
  translate->add_flag("--json", as_json, "Print the JSON AST");

  std::string qformula;
  auto* qr = app.add_subcommand("qr", "Quantifier rank of a formula");
  qr->add_option("formula", qformula)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return service::serve(serve_opt);
    if (*play) return run_play(play_args);
    if (*solve) {
      OrdinalOrder a{finite_or_throw(sa)}, b{finite_or_throw(sb)};
      auto r = brute_force_solve(a, b, sclock);
      Json out{{"a", sa}, {"b", sb}, {"clock", sclock}, {"winner", r.ii_wins ? "II" : "I"}};
      if (!r.ii_wins) {
        Move<Ordinal> m = r.i.choose(Position<Ordinal>(Ordinal(static_cast<long long>(sclock))));
        out["first_move"] = {{"clock", m.clock.str()}, {"side", side_name(m.side)}, {"element", m.element.str()}};
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*equiv) {
      Ordinal a = Ordinal::parse(ea), b = Ordinal::parse(eb);
      auto d = decide_equiv_finite_clock(a, b, eclock);
      Json out{{"a", a.str()}, {"b", b.str()}, {"clock", eclock}, {"result", d.equivalent ? "Equivalent" : "Inequivalent"}};
      if (!d.equivalent) {
        Move<Ordinal> m = d.i.choose(Position<Ordinal>(Ordinal(static_cast<long long>(eclock))));
        out["first_move"] = {{"clock", m.clock.str()}, {"side", side_name(m.side)}, {"element", m.element.str()}};
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*bratt) {
      bratteli::ExportFormat f = bratteli::parse_format(bformat);
      bratteli::Diagram d;
      if (!bspace.empty()) d = bratteli::diagram_for(Ordinal::parse(bspace), blevels);
      else if (bk > 0) d = bratteli::diagram_k(bk, blevels);
      else throw Error(ErrorCode::InvalidArgument, "give --k or --space");
      std::cout << bratteli::export_diagram(d, f);
      if (f == bratteli::ExportFormat::Json) std::cout << "\n";
      return 0;
    }
    if (*translate) {
      logic::Formula phi = logic::parse_formula(formula);
      logic::Formula v = logic::translate_k0_to_v(phi);
      if (target == "v") {
        std::cout << (as_json ? wire::formula_json(v).dump(2) : logic::to_sexpr(v)) << "\n";
        std::cerr << "qr " << logic::qr(phi).str() << " -> " << logic::qr(v).str() << "\n";
      } else if (target == "cstar") {
        logic::CstarOptions opt{parse_rational(delta), parse_rational(cap)};
        logic::CFormula c = logic::translate_v_to_cstar(v, opt);
        std::cout << (as_json ? wire::cformula_json(c).dump(2) : logic::to_sexpr(c)) << "\n";
        std::cerr << "qr " << logic::qr(phi).str() << " -> " << logic::qr(c).str() << "\n";
      } else {
        throw Error(ErrorCode::InvalidArgument, "--to must be v or cstar");
      }
      return 0;
    }
    if (*qr) {
      std::cout << logic::qr(logic::parse_formula(qformula)).str() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << wire::error_json(e).dump() << "\n";
    return 1;
  }
  return 0;
}
