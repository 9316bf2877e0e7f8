#include "efk/bratteli.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "efk/errors.hpp"
#include "json.hpp"

namespace efk::bratteli {

const Integer& factorial(unsigned long n) {
  // Only requested values are kept: the levels used are sparse and huge.
  static std::mutex mu;
  static std::map<unsigned long, Integer> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = memo.try_emplace(n);
  if (fresh) mpz_fac_ui(it->second.get_mpz_t(), n);
  return it->second;
}

std::vector<unsigned long> a_seq(unsigned k, unsigned N) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  std::vector<unsigned long> a{k + 2ul};
  for (unsigned n = 1; n <= N; ++n) {
    if (a.back() > (1ul << 40)) throw Error(ErrorCode::SearchLimit, "a_n overflows");
    a.push_back(2 * (a.back() + 1) - k + 1);
  }
  return a;
}

unsigned long a_at(unsigned k, unsigned n) { return a_seq(k, n).back(); }

QMatrix matrix_A(unsigned k, unsigned long a) {
  QMatrix m(k, k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) m(i, j) = i == j ? Rational(Integer(a)) : Rational(1);
  return m;
}

namespace {

// a^2 + a(k-2) - k + 1 = (a-1)(a+k-1), the scalar in the closed-form inverse.
Integer inverse_denominator(unsigned k, unsigned long a) {
  Integer A(a);
  return A * A + A * (Integer(k) - 2) - Integer(k) + 1;
}

Rational ratio(unsigned long top, unsigned long bottom) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), factorial(top).get_mpz_t(), factorial(bottom).get_mpz_t());
  return Rational(q);
}

// b_n = (a_{n+1}! / a_n!) / ((a_{n+1} - 1)(a_{n+1} + k - 1)); throws when not integral.
Integer b_value(unsigned k, unsigned long a, unsigned long next) {
  Rational b = ratio(next, a) / Rational(inverse_denominator(k, next));
  if (!is_integer(b)) throw Error(ErrorCode::Internal, "b_n is not an integer");
  return b.get_num();
}

}  // namespace

QMatrix matrix_A_inverse(unsigned k, unsigned long a) {
  Integer den = inverse_denominator(k, a);
  QMatrix m(k, k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) {
      Rational v(i == j ? Integer(a) + Integer(k) - 2 : Integer(-1), den);
      v.canonicalize();
      m(i, j) = v;
    }
  return m;
}

QMatrix matrix_C(unsigned k, unsigned n) {
  unsigned long a = a_at(k, n);
  return matrix_A(k, a) * Rational(Integer(1), factorial(a));
}

LevelData level(unsigned k, unsigned n) {
  auto a = a_seq(k, n + 1);
  LevelData d;
  d.k = k;
  d.n = n;
  d.a_n = a[n];
  const unsigned long next = a[n + 1];
  d.A = matrix_A(k, a[n]);
  d.C = matrix_C(k, n);
  d.A_inv = matrix_A_inverse(k, a[n]);
  if (!(d.A_inv == d.A.inverse()) || !(d.A_inv * d.A == QMatrix::identity(k)))
    throw Error(ErrorCode::Internal, "closed-form inverse of A_n is wrong");
  d.b_n = b_value(k, a[n], next);
  Integer diag = Integer(a[n]) * (Integer(next) + Integer(k) - 2) - Integer(k) + 1;
  Integer off = Integer(next) - Integer(a[n]);
  d.B = QMatrix(k, k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) d.B(i, j) = Rational(d.b_n * (i == j ? diag : off));
  QMatrix product = matrix_C(k, n + 1).inverse() * d.C;
  if (!(product == d.B)) throw Error(ErrorCode::Internal, "closed form of B_{n,n+1} disagrees with C_{n+1}^{-1} C_n");
  if (!d.B.is_integral() || !d.B.all_positive()) throw Error(ErrorCode::Internal, "B_{n,n+1} is not a positive integer matrix");
  return d;
}

namespace {

void require_dim(unsigned k, std::size_t size) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (size != k) throw Error(ErrorCode::DimensionMismatch, "vector has " + std::to_string(size) + " entries, expected " + std::to_string(k));
}

// b_m((a_{m+1}+k-2) x_i - sum_{j != i} x_j), which satisfies C_{m+1} y = x / a_m!.
std::vector<Integer> adjugate_step(unsigned k, unsigned m, const std::vector<Integer>& x) {
  const Integer a = Integer(a_at(k, m + 1));
  const Integer b = b_value(k, a_at(k, m), a_at(k, m + 1));
  Integer total = 0;
  for (const auto& v : x) total += v;
  std::vector<Integer> y;
  for (unsigned i = 0; i < k; ++i) y.push_back(b * ((a + Integer(k) - 2) * x[i] - (total - x[i])));
  return y;
}

// C_level y = x / source_a!, checked as A_level y = x * (a_level! / source_a!)
// so that no huge denominators appear.
void verify_image(unsigned k, unsigned level_index, const std::vector<Integer>& y, const std::vector<Integer>& x,
                  unsigned long source_a) {
  const unsigned long a = a_at(k, level_index);
  const Integer scale = ratio(a, source_a).get_num();
  Integer total = 0;
  for (const auto& v : y) total += v;
  for (unsigned i = 0; i < k; ++i)
    if (total + Integer(a - 1) * y[i] != x[i] * scale)
      throw Error(ErrorCode::Internal, "preimage does not map onto the target");
}

}  // namespace

std::vector<Integer> preimage(unsigned k, unsigned n, const std::vector<Integer>& x) {
  require_dim(k, x.size());
  std::vector<Integer> y = adjugate_step(k, n, x);
  verify_image(k, n + 1, y, x, a_at(k, n));
  return y;
}

PositivePreimage positive_preimage(unsigned k, unsigned n, const std::vector<Integer>& x) {
  require_dim(k, x.size());
  for (const auto& v : x)
    if (v <= 0) throw Error(ErrorCode::InvalidArgument, "positive_preimage needs strictly positive entries");
  Integer total = 0;
  for (const auto& v : x) total += v;
  Rational worst = 0;
  for (const auto& v : x) worst = std::max(worst, Rational(total - v, v));
  worst.canonicalize();
  Rational threshold = worst - Rational(k) + 2;
  unsigned m = n;
  while (!(Rational(Integer(a_at(k, m + 1))) > threshold)) ++m;
  std::vector<Integer> y = adjugate_step(k, m, x);
  Rational scale = ratio(a_at(k, m), a_at(k, n));
  for (auto& v : y) {
    if (v <= 0) throw Error(ErrorCode::Internal, "positive preimage has a non-positive entry");
    v *= scale.get_num();
  }
  verify_image(k, m + 1, y, x, a_at(k, n));
  return {m, y};
}

Lift lift_rational(const std::vector<Rational>& target, unsigned max_level) {
  unsigned k = static_cast<unsigned>(target.size());
  require_dim(k, target.size());
  for (unsigned n = 0; n <= max_level; ++n) {
    const Integer& f = factorial(a_at(k, n));
    bool clears = true;
    for (const auto& q : target) {
      Integer rem = f % q.get_den();
      if (rem != 0) {
        clears = false;
        break;
      }
    }
    if (!clears) continue;
    Lift out;
    out.n = n;
    for (const auto& q : target) out.x.push_back(q.get_num() * (f / q.get_den()));
    out.y = preimage(k, n, out.x);
    return out;
  }
  throw Error(ErrorCode::SearchLimit, "no level up to " + std::to_string(max_level) + " clears the denominators");
}

QMatrix refinement_matrix(const IntervalPartition& coarse, const IntervalPartition& fine) {
  if (!fine.refines(coarse)) throw Error(ErrorCode::InvalidArgument, "partition does not refine its predecessor");
  QMatrix r(fine.cells(), coarse.cells());
  for (std::size_t j = 0; j < fine.cells(); ++j) r(j, coarse.cell_of(fine.ends()[j])) = 1;
  return r;
}

QMatrix duplication_matrix(unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  QMatrix d(k + 1, k);
  for (unsigned i = 0; i < k; ++i) d(i, i) = 1;
  d(k, k - 1) = 1;
  return d;
}

StackedSystem stack_partitions(std::vector<IntervalPartition> chain, const StackOptions& options) {
  StackedSystem out;
  if (chain.empty()) return out;
  out.n.push_back(options.first_level);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const unsigned d = static_cast<unsigned>(chain[i].cells());
    const unsigned d2 = static_cast<unsigned>(chain[i + 1].cells());
    QMatrix r = refinement_matrix(chain[i], chain[i + 1]);
    const unsigned long a = a_at(d, out.n.back());
    QMatrix right = r * matrix_A(d, a);
    std::string failure;
    bool found = false;
    for (unsigned next = out.n.back() + 1; next <= out.n.back() + options.search_cap; ++next) {
      const unsigned long a2 = a_at(d2, next);
      if (a2 > options.max_a) {
        failure = "a_n exceeds " + std::to_string(options.max_a);
        break;
      }
      QMatrix e = matrix_A_inverse(d2, a2) * right * ratio(a2, a);
      failure.clear();
      for (std::size_t col = 0; col < e.cols() && failure.empty(); ++col)
        for (std::size_t row = 0; row < e.rows(); ++row)
          if (!is_integer(e(row, col)) || e(row, col) <= 0) {
            failure = "generator e_" + std::to_string(col) + " has no positive integer preimage";
            break;
          }
      if (!failure.empty()) continue;
      if (!(matrix_C(d2, next) * e == r * matrix_C(d, out.n.back())))
        throw Error(ErrorCode::Internal, "connecting map does not commute with theta");
      out.n.push_back(next);
      out.R.push_back(std::move(r));
      out.E.push_back(std::move(e));
      found = true;
      break;
    }
    if (!found)
      throw Error(ErrorCode::SearchLimit, "level " + std::to_string(i + 1) + ": " +
                                              (failure.empty() ? std::string("search cap exceeded") : failure));
  }
  out.partitions = std::move(chain);
  return out;
}

StackedSystem stack_omega(unsigned k_max, const StackOptions& options) {
  if (k_max == 0) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 1");
  std::vector<IntervalPartition> chain;
  for (unsigned k = 1; k <= k_max; ++k) chain.push_back(partition_at(Ordinal::omega(), k - 1));
  return stack_partitions(std::move(chain), options);
}

Ordinal fundamental_term(const Ordinal& limit, unsigned n) {
  if (!limit.is_limit()) throw Error(ErrorCode::InvalidArgument, limit.str() + " is not a limit ordinal");
  std::vector<OrdinalTerm> terms = limit.terms();
  OrdinalTerm last = terms.back();
  if (last.is_epsilon()) throw Error(ErrorCode::UnsupportedStructure, "no fundamental sequence for epsilon atoms");
  terms.pop_back();
  if (last.coefficient > 1) {
    OrdinalTerm rest = last;
    rest.coefficient -= 1;
    terms.push_back(rest);
  }
  Ordinal prefix = Ordinal::from_terms(std::move(terms));
  const Ordinal& e = *last.exponent;
  if (e.is_successor()) return prefix + omega_pow(e.predecessor()) * Ordinal(static_cast<long long>(n));
  return prefix + omega_pow(fundamental_term(e, n));
}

namespace {

IntervalPartition stretch(const IntervalPartition& p, const Ordinal& beta) {
  std::vector<Ordinal> ends = p.ends();
  ends.back() = beta;
  return IntervalPartition(beta, std::move(ends));
}

std::vector<IntervalPartition> limit_chain(const Ordinal& beta, const std::vector<Ordinal>& fundamental, unsigned depth) {
  if (depth > fundamental.size()) throw Error(ErrorCode::InvalidArgument, "fundamental sequence is shorter than depth");
  std::vector<IntervalPartition> chain;
  for (unsigned n = 0; n < depth; ++n) {
    if (!(fundamental[n] < beta)) throw Error(ErrorCode::InvalidArgument, "fundamental sequence must stay below " + beta.str());
    if (n > 0 && !(fundamental[n - 1] < fundamental[n]))
      throw Error(ErrorCode::InvalidArgument, "fundamental sequence is not increasing");
    IntervalPartition p = stretch(partition_at(fundamental[n], n), beta);
    if (!chain.empty()) p = common_refinement(p, chain.back());
    chain.push_back(std::move(p));
  }
  return chain;
}

std::vector<Ordinal> canonical_fundamental(const Ordinal& beta, unsigned depth) {
  std::vector<Ordinal> out;
  for (unsigned n = 0; n < depth; ++n) out.push_back(fundamental_term(beta, n));
  return out;
}

}  // namespace

IntervalPartition partition_at(const Ordinal& gamma, unsigned n) {
  if (gamma.is_finite()) {
    std::vector<Ordinal> ends;
    for (std::uint64_t i = 0; i <= gamma.to_u64(); ++i) ends.emplace_back(static_cast<long long>(i));
    return IntervalPartition(gamma, std::move(ends));
  }
  if (gamma.is_successor()) {
    // The top point is isolated, so it gets its own cell.
    std::vector<Ordinal> ends = partition_at(gamma.predecessor(), n).ends();
    ends.push_back(gamma);
    return IntervalPartition(gamma, std::move(ends));
  }
  return limit_chain(gamma, canonical_fundamental(gamma, n + 1), n + 1).back();
}

Diagram diagram_of(const StackedSystem& system, const std::string& name) {
  Diagram d;
  d.name = name;
  for (std::size_t i = 0; i < system.partitions.size(); ++i) {
    const IntervalPartition& p = system.partitions[i];
    DiagramLevel level;
    level.vertices = p.cells();
    for (std::size_t c = 0; c < p.cells(); ++c) {
      Ordinal lo = p.cell_start(c), hi = p.ends()[c];
      level.labels.push_back(lo == hi ? "{" + lo.str() + "}" : "[" + lo.str() + "," + hi.str() + "]");
    }
    if (i < system.E.size()) {
      const QMatrix& e = system.E[i];
      level.edges.assign(e.rows(), std::vector<Integer>(e.cols()));
      for (std::size_t r = 0; r < e.rows(); ++r)
        for (std::size_t c = 0; c < e.cols(); ++c) level.edges[r][c] = e(r, c).get_num();
    }
    d.levels.push_back(std::move(level));
  }
  return d;
}

Diagram diagram_k(unsigned k, unsigned maps) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  Diagram d;
  d.name = "G_" + std::to_string(k);
  for (unsigned n = 0; n <= maps; ++n) {
    DiagramLevel level;
    level.vertices = k;
    for (unsigned i = 0; i < k; ++i) level.labels.push_back("{" + std::to_string(i) + "}");
    if (n < maps) {
      LevelData data = bratteli::level(k, n);
      level.edges.assign(k, std::vector<Integer>(k));
      for (unsigned r = 0; r < k; ++r)
        for (unsigned c = 0; c < k; ++c) level.edges[r][c] = data.B(r, c).get_num();
    }
    d.levels.push_back(std::move(level));
  }
  return d;
}

Diagram limit_diagram(const Ordinal& beta, const std::vector<Ordinal>& fundamental, unsigned depth,
                      const StackOptions& options) {
  if (!beta.is_limit()) throw Error(ErrorCode::InvalidArgument, beta.str() + " is not a limit ordinal");
  return diagram_of(stack_partitions(limit_chain(beta, fundamental, depth), options), "G_" + (beta + Ordinal(1)).str());
}

Diagram diagram_for(const Ordinal& space, unsigned depth, const StackOptions& options) {
  if (!space.is_successor()) throw Error(ErrorCode::InvalidArgument, "the space must be a successor ordinal");
  if (space.is_finite()) {
    auto k = space.to_u64();
    return diagram_k(static_cast<unsigned>(k), depth == 0 ? 0 : depth - 1);
  }
  Ordinal alpha = space.predecessor();
  if (alpha.is_successor()) {
    // alpha + 1 and alpha are homeomorphic, so the groups coincide.
    Diagram d = diagram_for(alpha, depth, options);
    d.name = "G_" + space.str();
    return d;
  }
  Diagram d = limit_diagram(alpha, canonical_fundamental(alpha, depth), depth, options);
  d.name = "G_" + space.str();
  return d;
}

ExportFormat parse_format(const std::string& name) {
  if (name == "dot") return ExportFormat::Dot;
  if (name == "json") return ExportFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown export format '" + name + "'");
}

std::string export_diagram(const Diagram& d, ExportFormat format) {
  if (format == ExportFormat::Dot) {
    std::string out = "digraph bratteli {\n";
    if (!d.name.empty()) out += "  label=\"" + d.name + "\";\n";
    for (std::size_t n = 0; n < d.levels.size(); ++n)
      for (std::size_t i = 0; i < d.levels[n].vertices; ++i)
        out += "  L" + std::to_string(n) + "_" + std::to_string(i) + " [label=\"" + d.levels[n].labels[i] + "\"];\n";
    for (std::size_t n = 0; n < d.levels.size(); ++n) {
      const auto& edges = d.levels[n].edges;
      for (std::size_t j = 0; j < edges.size(); ++j)
        for (std::size_t i = 0; i < edges[j].size(); ++i)
          if (edges[j][i] != 0)
            out += "  L" + std::to_string(n) + "_" + std::to_string(i) + " -> L" + std::to_string(n + 1) + "_" +
                   std::to_string(j) + " [label=" + edges[j][i].get_str() + "];\n";
    }
    return out + "}\n";
  }
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& level : d.levels) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& row : level.edges) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& v : row) r.push_back(v.get_str());
      edges.push_back(r);
    }
    levels.push_back({{"vertices", level.vertices}, {"labels", level.labels}, {"edges", edges}});
  }
  return nlohmann::json{{"name", d.name}, {"levels", levels}}.dump();
}

Diagram parse_diagram_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    Diagram d;
    d.name = j.value("name", "");
    for (const auto& l : j.at("levels")) {
      DiagramLevel level;
      level.vertices = l.at("vertices").get<std::size_t>();
      level.labels = l.at("labels").get<std::vector<std::string>>();
      for (const auto& row : l.at("edges")) {
        std::vector<Integer> r;
        for (const auto& v : row) r.push_back(parse_integer(v.get<std::string>()));
        level.edges.push_back(std::move(r));
      }
      if (level.labels.size() != level.vertices) throw Error(ErrorCode::MalformedSpec, "label count differs from vertex count");
      d.levels.push_back(std::move(level));
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedSpec, std::string("bad diagram json: ") + e.what());
  }
}

}  // namespace efk::bratteli
