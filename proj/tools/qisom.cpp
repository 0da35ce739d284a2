// Copyright 2026 The qisom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qisom: command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 bad input.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qisom/acceptance.hpp"
#include "qisom/json_io.hpp"

namespace {

using namespace qisom;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct BadInput : Error {
  using Error::Error;
};

struct RunConfig {
  std::string q_file;
  std::string preset;
  int n = 0;
  std::string format = "text";
  double tol = 1e-9;
  std::uint64_t seed = 20260101;
};

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_q = true) {
  if (needs_q) {
    auto* file = sub->add_option("--q", cfg.q_file, "q-matrix JSON file");
    auto* preset = sub->add_option("--preset", cfg.preset, "zero | random:SEED:MAXMOD");
    file->excludes(preset);
    preset->excludes(file);
  }
  sub->add_option("--n", cfg.n, "number of generators (required with --preset)");
  sub->add_option("--format", cfg.format, "text | json | dot")->check(CLI::IsMember({"text", "json", "dot"}));
  sub->add_option("--tol", cfg.tol, "tolerance override for the primary check");
  sub->add_option("--seed", cfg.seed, "seed for all randomness");
}

QMatrix load_q(const RunConfig& cfg) {
  if (cfg.q_file.empty() && cfg.preset.empty()) throw BadInput("one of --q FILE or --preset is required");
  if (!cfg.q_file.empty()) {
    QMatrix q = load_qmatrix(cfg.q_file);
    if (cfg.n != 0 && static_cast<std::size_t>(cfg.n) != q.n())
      throw BadInput("--n " + std::to_string(cfg.n) + " disagrees with the " + std::to_string(q.n()) + "x" + std::to_string(q.n()) +
                     " matrix in " + cfg.q_file);
    return q;
  }
  if (cfg.n < 1) throw BadInput("--preset needs --n >= 1");
  const auto n = static_cast<std::size_t>(cfg.n);
  if (cfg.preset == "zero") return QMatrix::zero(n);
  if (cfg.preset.rfind("random:", 0) == 0) {
    std::istringstream in(cfg.preset.substr(7));
    std::string seed_text, mod_text;
    if (!std::getline(in, seed_text, ':') || !std::getline(in, mod_text) || seed_text.empty() || mod_text.empty())
      throw BadInput("preset must look like random:SEED:MAXMOD");
    std::uint64_t seed = 0;
    double maxmod = 0.0;
    try {
      std::size_t used = 0;
      seed = std::stoull(seed_text, &used);
      if (used != seed_text.size()) throw std::invalid_argument(seed_text);
      maxmod = std::stod(mod_text, &used);
      if (used != mod_text.size()) throw std::invalid_argument(mod_text);
    } catch (const std::logic_error&) {
      throw BadInput("preset must look like random:SEED:MAXMOD with integer SEED and real MAXMOD");
    }
    if (!(maxmod >= 0.0)) throw BadInput("MAXMOD must be non-negative");
    Rng rng(seed);
    return random_qmatrix(n, maxmod, rng);
  }
  throw BadInput("unknown preset '" + cfg.preset + "'; use zero or random:SEED:MAXMOD");
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw BadInput("format '" + cfg.format + "' is not available for this subcommand");
}

std::string complex_text(Complex c) {
  std::ostringstream os;
  os << std::setprecision(12) << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  return os.str();
}

void print_json(const Json& body) { std::cout << with_schema(body).dump(2) << "\n"; }

OccVector parse_occ(const std::string& text, std::size_t n) {
  std::vector<int> entries;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(item, &used);
      if (used != item.size() || x < 0) throw std::invalid_argument(item);
      entries.push_back(x);
    } catch (const std::logic_error&) {
      throw BadInput("occupation vector entries must be non-negative integers, got '" + item + "'");
    }
  }
  if (entries.size() != n) throw BadInput("occupation vector '" + text + "' must have " + std::to_string(n) + " entries");
  return OccVector(std::move(entries));
}

// ---- subcommands ----

int cmd_rewrite(const RunConfig& cfg, const std::string& word_text, const std::string& strategy_name) {
  require_format(cfg, {"text", "json"});
  const QMatrix q = load_q(cfg);
  const Word w = parse_word(word_text, q.n());
  const Strategy s = strategy_name == "rightmost" ? Strategy::Rightmost : Strategy::Leftmost;
  const Reduction r = reduce(w, q, s);
  if (cfg.format == "json") {
    print_json(Json{{"word", to_string(w)},
                    {"strategy", strategy_name},
                    {"coefficient", to_json(r.monomial.coefficient)},
                    {"mu", to_json(r.monomial.mu)},
                    {"sigma", to_json(r.monomial.sigma)},
                    {"normal_form", to_string(r.monomial.word())},
                    {"steps", r.steps},
                    {"swaps", r.swaps}});
  } else {
    std::cout << "word:        " << to_string(w) << "\n"
              << "coefficient: " << complex_text(r.monomial.coefficient) << "\n"
              << "normal form: " << (r.monomial.word().empty() ? "1" : to_string(r.monomial.word())) << "\n"
              << "steps:       " << r.steps << " (" << r.swaps << " swaps)\n";
  }
  return kOk;
}

int cmd_gram(const RunConfig& cfg, const std::string& v_text) {
  require_format(cfg, {"text", "json"});
  const QMatrix q = load_q(cfg);
  if (v_text.empty()) throw BadInput("--v is required, e.g. --v 1,1");
  const OccVector v = parse_occ(v_text, q.n());
  const GramBlock g = assemble_gram_block(v, FockInnerProduct(q));
  if (cfg.format == "json") {
    Json body = to_json(g);
    if (!g.positive()) body["failed"] = "positive-definite Gram block";
    print_json(body);
  } else {
    std::cout << "v = " << v.to_string() << ", dim " << g.dim() << "\nbasis:";
    for (const auto& b : g.basis) std::cout << " " << to_string(b);
    std::cout << "\ngram:\n" << std::setprecision(10) << g.gram << "\ndeterminant: " << g.determinant()
              << "\npositive-definite: " << (g.positive() ? "yes" : "no") << " (min pivot " << g.min_pivot << ")\n";
    if (g.positive()) std::cout << "C:\n" << orthonormalize(g) << "\n";
  }
  return g.positive() ? kOk : kCheckFailed;
}

int cmd_rep(const RunConfig& cfg, int L, bool verify) {
  require_format(cfg, {"text", "json"});
  const QMatrix q = load_q(cfg);
  if (L < 1) throw BadInput("--L must be at least 1");
  const TruncatedFock t(q, L);
  Json body{{"n", q.n()}, {"L", L}, {"total_dim", t.total_dim()}, {"blocks", t.blocks().size()}};
  bool ok = true;
  RelationReport rep;
  if (verify) {
    if (!q.isom_mode()) throw BadInput(std::string(QMatrix::kZeroDiagonal) + ": relation check requires isometric mode");
    rep = verify_relations(t, cfg.tol, false);
    ok = rep.worst <= cfg.tol;
    body["relations"] = to_json(rep);
    body["tolerance"] = cfg.tol;
    body["passed"] = ok;
    if (!ok) body["failed"] = "relation residual above tolerance";
  }
  if (cfg.format == "json") {
    print_json(body);
  } else {
    std::cout << "truncated Fock space: n = " << q.n() << ", L = " << L << ", " << t.blocks().size() << " blocks, dim "
              << t.total_dim() << "\n";
    if (verify) {
      for (const auto& r : rep.twisted) std::cout << "  a" << r.i << "* a" << r.j << " - q a" << r.j << " a" << r.i << "*: " << r.norm << "\n";
      for (const auto& r : rep.isometry) std::cout << "  a" << r.i << "* a" << r.i << " - 1: " << r.norm << "\n";
      std::cout << "worst residual " << rep.worst << " (tolerance " << cfg.tol << "): " << (ok ? "PASS" : "FAIL") << "\n"
                << "top-level isometry defect " << rep.top_level_isometry_defect << " (" << rep.note << ")\n";
    }
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_gicar(const RunConfig& cfg, int k) {
  require_format(cfg, {"text", "json"});
  const QMatrix q = load_q(cfg);
  if (!q.isom_mode()) throw BadInput(std::string(QMatrix::kZeroDiagonal) + ": filtration requires isometric mode");
  if (k < 0) throw BadInput("--k must be non-negative");
  Tolerances tol;
  tol.equality = cfg.tol;
  tol.derived = std::max(tol.derived, cfg.tol);
  const auto rep = decompose(k, fock_for_level(q, k), tol, false);
  if (cfg.format == "json") {
    Json body = to_json(rep);
    if (!rep.passed()) body["failed"] = rep.first_failure();
    print_json(body);
  } else {
    std::cout << "W_" << k << " for n = " << q.n() << ": " << rep.blocks.size() << " blocks, total dimension " << rep.total_dim
              << ", represented rank " << rep.represented_rank << "\n";
    for (const auto& b : rep.blocks) {
      bool ok = true;
      for (const auto& [name, pass] : b.checks) ok = ok && pass;
      std::cout << "  v = " << b.v.to_string() << "  M_" << b.dim << "  algebra dim " << b.algebra_dim << "  unit rank "
                << b.unit_rank << "  " << (ok ? "ok" : "FAIL") << "\n";
    }
    std::cout << (rep.passed() ? "PASS" : "FAIL: " + rep.first_failure()) << "\n";
  }
  return rep.passed() ? kOk : kCheckFailed;
}

int cmd_bratteli(const RunConfig& cfg, int k_max, bool closed_only) {
  if (k_max < 1) throw BadInput("--k-max must be at least 1");
  std::optional<QMatrix> q;
  std::size_t n = static_cast<std::size_t>(cfg.n);
  if (!closed_only) {
    q = load_q(cfg);
    n = q->n();
    if (!q->isom_mode()) throw BadInput(std::string(QMatrix::kZeroDiagonal) + ": filtration requires isometric mode");
  } else if (cfg.n < 1) {
    throw BadInput("--closed needs --n >= 1");
  }
  const BratteliDiagram closed = bratteli_closed(n, k_max);
  const BratteliDiagram d = closed_only ? closed : bratteli_numeric(*q, k_max);
  const bool agree = d.same_edges(closed);
  if (cfg.format == "dot") {
    std::cout << to_dot(d);
  } else if (cfg.format == "json") {
    Json body = to_json(d);
    body["source"] = closed_only ? "closed" : "numeric";
    body["agrees_with_closed_form"] = agree;
    if (!agree) body["failed"] = "numeric multiplicities differ from the closed form";
    print_json(body);
  } else {
    for (const auto& e : d.edges)
      std::cout << "k=" << e.k << "  " << e.v.to_string() << " -> " << e.u.to_string() << "  m=" << e.m << "\n";
    for (const auto& f : d.fills)
      std::cout << "level " << f.k << " block " << f.u.to_string() << ": " << f.received << "/" << f.dim
                << (f.unital() ? " unital" : "") << "\n";
    std::cout << (agree ? "numeric and closed form agree" : "MISMATCH with closed form") << "\n";
  }
  return agree ? kOk : kCheckFailed;
}

int cmd_symmetry(const RunConfig& cfg, const std::string& u_file, int sample) {
  require_format(cfg, {"text", "json"});
  const QMatrix q = load_q(cfg);
  if (u_file.empty() == (sample <= 0)) throw BadInput("give exactly one of --u FILE or --sample N");
  if (!u_file.empty()) {
    std::ifstream in(u_file);
    if (!in) throw BadInput("cannot open unitary file " + u_file);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw BadInput("malformed JSON in " + u_file + ": " + e.what());
    }
    const CMatrix m = matrix_from_json(doc, "u");
    if (static_cast<std::size_t>(m.rows()) != q.n()) throw BadInput("unitary size differs from n");
    const UnitaryCandidate u(m);
    const auto r = membership_test(u, q);
    if (cfg.format == "json") {
      Json body = to_json(r);
      if (!r.passed) body["failed"] = "membership condition conj(u_ki) u_lj (q_kl - q_ij) = 0";
      print_json(body);
    } else {
      std::cout << (r.passed ? "PASS" : "FAIL") << " (worst term " << r.worst << ")";
      if (r.witness) {
        const auto& [i, j, k, l] = *r.witness;
        std::cout << "  witness (i,j,k,l) = (" << i << "," << j << "," << k << "," << l << ")";
      }
      std::cout << "\n";
    }
    return r.passed ? kOk : kCheckFailed;
  }
  Rng rng(cfg.seed);
  const auto r = group_axiom_sample(q, sample, rng);
  if (cfg.format == "json") {
    Json body = to_json(r);
    if (!r.ok()) body["failed"] = "group axioms of the symmetry group";
    print_json(body);
  } else {
    std::cout << "trials " << r.trials << ", members found " << r.passing << ", products checked " << r.closure_checked
              << " (" << r.closure_failures << " failures), inverse failures " << r.inverse_failures << "\n"
              << "non-diagonal samples " << r.nondiagonal_checked << ", passing " << r.nondiagonal_passed
              << (r.distinct_diagonal ? " (distinct q_ii: must be 0)" : "") << "\n"
              << (r.ok() ? "PASS" : "FAIL") << "\n";
  }
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_ideal(const RunConfig& cfg, int L, int max_len) {
  require_format(cfg, {"text", "json"});
  const QMatrix q = load_q(cfg);
  if (!q.isom_mode()) throw BadInput(std::string(QMatrix::kZeroDiagonal) + ": ideal requires isometric mode");
  if (L < 2) throw BadInput("--L must be at least 2");
  if (max_len < 0 || max_len > L - 1) throw BadInput("--max-len must lie in 0..L-1");
  const auto r = verify_ideal(TruncatedFock(q, L), max_len);
  const bool ok = r.passed(cfg.tol, std::max(1e-8, cfg.tol));
  if (cfg.format == "json") {
    Json body = to_json(r);
    body["passed"] = ok;
    if (!ok) body["failed"] = "matrix-unit relations of the compact ideal";
    print_json(body);
  } else {
    std::cout << "rank p = " << r.rank_p << " of " << r.dim << ", spectral gap " << r.spectral_gap << "\n"
              << r.units << " matrix units over " << r.words << " words, span rank " << r.span_rank << "\n"
              << "worst: product " << r.product << ", adjoint " << r.adjoint << ", p A_i " << r.p_kills_creation
              << ", orthogonality " << std::max(r.orthogonality_same_occ, r.orthogonality_diff_occ) << "\n"
              << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const RunConfig& cfg, int L, bool timing) {
  require_format(cfg, {"text", "json"});
  const QMatrix q = load_q(cfg);
  if (!q.isom_mode()) throw BadInput(std::string(QMatrix::kZeroDiagonal) + ": verify requires isometric mode");
  if (L < 2) throw BadInput("--L must be at least 2");
  bool all = true;
  Json criteria = Json::array();
  std::vector<std::string> lines;
  for (const auto& c : acceptance::criteria()) {
    const auto r = acceptance::run(c, cfg.seed);
    all = all && r.passed;
    Json j{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"within_limit", r.in_time}, {"limit_seconds", r.limit}, {"detail", r.detail}};
    if (timing) j["seconds"] = r.seconds;
    criteria.push_back(std::move(j));
    lines.push_back(acceptance::summary_line(r));
  }

  // Checks on the supplied q.
  Json checks = Json::object();
  const auto record = [&](const std::string& name, bool ok, Json detail) {
    all = all && ok;
    checks[name] = Json{{"passed", ok}, {"detail", std::move(detail)}};
    lines.push_back(std::string(ok ? "PASS" : "FAIL") + "  [q] " + name);
  };
  const TruncatedFock t(q, L);
  const auto rel = verify_relations(t, cfg.tol, false);
  record("relations", rel.worst <= cfg.tol, to_json(rel));
  const auto dec = decompose(1, fock_for_level(q, 1), Tolerances{}, false);
  record("decomposition_k1", dec.passed(), Json{{"total_dim", dec.total_dim}, {"represented_rank", dec.represented_rank}});
  const auto brat = bratteli_numeric(q, 1);
  record("bratteli_k1", brat.same_edges(bratteli_closed(q.n(), 1)), Json{{"edges", brat.edges.size()}});
  const auto ideal = verify_ideal(t, std::min(2, L - 1));
  record("ideal", ideal.passed(), to_json(ideal));

  if (cfg.format == "json") {
    Json failed = Json::array();
    for (const auto& c : criteria)
      if (!c["passed"].get<bool>()) failed.push_back(c["name"]);
    for (const auto& [name, c] : checks.items())
      if (!c["passed"].get<bool>()) failed.push_back(name);
    print_json(Json{{"q", to_json(q)}, {"seed", cfg.seed}, {"criteria", criteria}, {"q_checks", checks}, {"passed", all}, {"failed", failed}});
  } else {
    for (const auto& l : lines) std::cout << l << "\n";
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return all ? kOk : kCheckFailed;
}

int report_error(const RunConfig& cfg, const std::string& kind, const std::string& message, const std::string& invariant = {}) {
  if (cfg.format == "json") {
    Json body{{"error", kind}, {"message", message}};
    if (!invariant.empty()) body["invariant"] = invariant;
    std::cerr << with_schema(body).dump(2) << "\n";
  } else {
    std::cerr << "qisom: " << message << "\n";
  }
  return kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qisom: computations for C*-algebras of q-twisted isometries"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string word, strategy = "leftmost", v_text, u_file;
  int L = 3, k = 1, k_max = 2, sample = 0, max_len = 2, verify_L = 4;
  bool verify = false, report = false, closed_only = false, timing = false;

  auto* rewrite = app.add_subcommand("rewrite", "normal form of a word");
  add_common(rewrite, cfg);
  rewrite->add_option("--word", word, "word such as \"a1* a2 a1\"")->required();
  rewrite->add_option("--strategy", strategy, "leftmost | rightmost")->check(CLI::IsMember({"leftmost", "rightmost"}));

  auto* gram = app.add_subcommand("gram", "Gram block of H_v with its factorization");
  add_common(gram, cfg);
  gram->add_option("--v", v_text, "occupation vector, e.g. 1,1");

  auto* rep = app.add_subcommand("rep", "truncated Fock representation");
  add_common(rep, cfg);
  rep->add_option("--L", L, "truncation level");
  rep->add_flag("--verify", verify, "report relation residuals");

  auto* gicar = app.add_subcommand("gicar", "block decomposition of the filtration level W_k");
  add_common(gicar, cfg);
  gicar->add_option("--k", k, "filtration level");
  gicar->add_flag("--report", report, "emit the full report (default)");

  auto* bratteli = app.add_subcommand("bratteli", "Bratteli diagram of the filtration");
  add_common(bratteli, cfg);
  bratteli->add_option("--k-max", k_max, "last level with outgoing edges");
  bratteli->add_flag("--closed", closed_only, "closed form only; needs --n, no q");

  auto* symmetry = app.add_subcommand("symmetry", "membership of unitaries in the symmetry group");
  add_common(symmetry, cfg);
  symmetry->add_option("--u", u_file, "unitary JSON file {\"u\": [[[re, im], ...], ...]}");
  symmetry->add_option("--sample", sample, "sample N candidates and check the group axioms");

  auto* ideal = app.add_subcommand("ideal", "projection p and matrix units of the compact ideal");
  add_common(ideal, cfg);
  ideal->add_option("--L", L, "truncation level");
  ideal->add_option("--max-len", max_len, "longest word in the matrix units");

  auto* verify_cmd = app.add_subcommand("verify", "run every acceptance criterion plus checks on q");
  add_common(verify_cmd, cfg);
  verify_cmd->add_option("--L", verify_L, "truncation level for the checks on q");
  verify_cmd->add_flag("--timing", timing, "include wall-clock seconds in JSON (breaks byte-identical output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (rewrite->parsed()) return cmd_rewrite(cfg, word, strategy);
    if (gram->parsed()) return cmd_gram(cfg, v_text);
    if (rep->parsed()) return cmd_rep(cfg, L, verify);
    if (gicar->parsed()) return cmd_gicar(cfg, k);
    if (bratteli->parsed()) return cmd_bratteli(cfg, k_max, closed_only);
    if (symmetry->parsed()) return cmd_symmetry(cfg, u_file, sample);
    if (ideal->parsed()) return cmd_ideal(cfg, L, max_len);
    if (verify_cmd->parsed()) return cmd_verify(cfg, verify_L, timing);
  } catch (const InvalidQMatrix& e) {
    return report_error(cfg, "invalid_q", e.what(), e.invariant());
  } catch (const ParseError& e) {
    return report_error(cfg, "parse", e.what());
  } catch (const BadInput& e) {
    return report_error(cfg, "usage", e.what());
  } catch (const Error& e) {
    // A computation refused its result (non-positive Gram, spectral gap, ...).
    if (cfg.format == "json") {
      std::cout << with_schema(Json{{"passed", false}, {"failed", e.what()}}).dump(2) << "\n";
    } else {
      std::cerr << "qisom: " << e.what() << "\n";
    }
    return kCheckFailed;
  }
  return kBadInput;
}
