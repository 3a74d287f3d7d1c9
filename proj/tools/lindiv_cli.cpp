// Command-line front end: family selection, element parsing, norms,
// witnesses, divergence profiles and oracle checks, with JSON/CSV output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lindiv/bfs.hpp"
#include "lindiv/divergence.hpp"
#include "lindiv/growth.hpp"
#include "lindiv/json_io.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/version.hpp"
#include "lindiv/witness.hpp"
#include "lindiv/words.hpp"
#include "lindiv/families/baumslag_solitar.hpp"
#include "lindiv/families/diestel_leader.hpp"
#include "lindiv/families/graph_wreath.hpp"
#include "lindiv/families/houghton.hpp"
#include "lindiv/families/wreath.hpp"

using nlohmann::json;
using namespace lindiv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitBudgetExceeded = 3;
constexpr int kExitParseError = 4;

struct RunConfig {
  std::string family = "lamplighter";
  std::int64_t lamp_modulus = 2;  // 0 = Z lamps
  std::int64_t k = 3;             // finite-X modulus
  std::int64_t m = 2;             // Houghton rays
  std::int64_t p = 2, q = 3;      // DL / BS parameters
  std::size_t bfs_cap = kDefaultBfsCap;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;

  json echo() const {
    json j;
    j["family"] = family;
    j["params"] = {{"lamp_modulus", lamp_modulus}, {"k", k}, {"m", m}, {"p", p}, {"q", q}};
    j["bfs_cap"] = bfs_cap;
    j["seed"] = seed;
    j["version"] = kVersion;
    return j;
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(cfg.output);
    out << text << "\n";
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "bfs_cap") cfg.bfs_cap = std::stoull(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "format") cfg.format = value;
    else if (key == "output") cfg.output = value;
  }
}

// ---------------------------------------------------------------------------
// Per-family dispatch. Each family knows how to parse a word, compute a norm
// with certificate, and build + verify its witness.
// ---------------------------------------------------------------------------

struct NormResult {
  std::int64_t norm = 0;
  std::int64_t certificate = 0;
};

struct WitnessOutcome {
  WitnessReport report;
  json extra;
};

template <MarkedSpace S>
NormResult norm_result(const S& space, const typename S::vertex_type& v, std::size_t cap) {
  NormResult r;
  NormCache<S> cache(space, cap);
  r.norm = cache.norm(v);
  r.certificate = certificate_or_zero(space, v);
  return r;
}

void corrupt(std::vector<Label>& labels) {
  if (labels.empty()) return;
  auto& l = labels[labels.size() / 2];
  l.arg = l.arg == 0 ? 1 : -l.arg;
}

template <ActionKind K>
WitnessOutcome wreath_witness_outcome(const WreathSpace<K>& space, const WreathElement& g,
                                      std::size_t cap, bool inject_fault) {
  NormCache<WreathSpace<K>> cache(space, cap);
  const std::int64_t n = cache.norm(g);
  auto target = make_wreath_target(space, n);
  auto w = build_wreath_witness(space, g, n, target);
  if (inject_fault) corrupt(w.path.labels);
  WitnessOutcome out;
  out.report = verify_witness(space, w.path, space.basepoint(), wreath_witness_radius(space, n),
                              target.gstar, 6 * n, VerifyOptions{false, cap});
  out.extra = {{"n", n}, {"case", w.case_id}};
  return out;
}

json growth_sample_row(const GrowthSample& s, const std::string& status) {
  auto j = to_json(s);
  j["status"] = status;
  return j;
}

std::string csv_row(const GrowthSample& s, const std::string& status) {
  std::string value = s.value ? std::to_string(*s.value) : "";
  return std::to_string(s.n) + "," + value + "," + std::to_string(s.pairs_examined) + "," +
         (s.exhaustive ? "true" : "false") + "," + std::to_string(s.wall_seconds) + "," + status;
}

// ---------------------------------------------------------------------------

int cmd_families(const RunConfig& cfg) {
  json out;
  out["config"] = cfg.echo();
  out["families"] = json::array({
      {{"id", "lamplighter"},
       {"description", "wreath product over the regular Z action"},
       {"params", "--lamp <modulus, 0 for Z>"},
       {"tokens", "t t^-1 h0 h0^-1"},
       {"serialization", "c<cursor>|<orbit>:<pos>=<value>..."}},
      {{"id", "wreath-translation"},
       {"description", "Z acting on Z by translation (Schreier picture)"},
       {"params", "--lamp"},
       {"tokens", "t t^-1 h0 h0^-1"}},
      {{"id", "wreath-two-orbit"},
       {"description", "Z acting on two disjoint copies of Z"},
       {"params", "--lamp"},
       {"tokens", "t t^-1 h0 h0^-1 h0@1 h0@1^-1"}},
      {{"id", "wreath-mod-k"},
       {"description", "Z acting on Z_k; infinite lamps"},
       {"params", "--k"},
       {"tokens", "t t^-1 h0 h0^-1"}},
      {{"id", "graph-wreath-zz"},
       {"description", "wreath product of graphs, both factors the Z line"},
       {"tokens", "A0 A1 B0 B1 (neighbor indices)"},
       {"serialization", "@<cursor>|<a>=<b>..."}},
      {{"id", "houghton"},
       {"description", "Houghton group H_m"},
       {"params", "--m <rays>"},
       {"tokens", "m=2: t t^-1 a; m>=3: g1 g1^-1 ... g{m-1}^-1"},
       {"serialization", "m=2: l<shift>|slot>ball...; m>=3: o<offsets>|ray:depth>ray:depth..."}},
      {{"id", "bs"},
       {"description", "Baumslag-Solitar group BS(p, q)"},
       {"params", "--p --q"},
       {"tokens", "a a^-1 t t^-1"},
       {"serialization", "a<r0>|t|a<r1>|... (T marks t^-1)"}},
      {{"id", "dl"},
       {"description", "Diestel-Leader graph DL(p, q)"},
       {"params", "--p --q"},
       {"tokens", "up<digit> down<digit>"},
       {"serialization", "h<height>[level:digit,...][level:digit,...]"}},
  });
  emit(cfg, out.dump(2));
  return kExitOk;
}

int cmd_norm(const RunConfig& cfg, const std::string& element) {
  NormResult r;
  if (cfg.family == "lamplighter") {
    LamplighterSpace sp(cfg.lamp_modulus == 0 ? LampDriver::integers()
                                              : LampDriver::cyclic(cfg.lamp_modulus));
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "wreath-translation") {
    WreathSpace<ActionKind::TranslationZ> sp(cfg.lamp_modulus == 0
                                                 ? LampDriver::integers()
                                                 : LampDriver::cyclic(cfg.lamp_modulus));
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "wreath-two-orbit") {
    WreathSpace<ActionKind::TwoOrbitZ> sp(cfg.lamp_modulus == 0
                                              ? LampDriver::integers()
                                              : LampDriver::cyclic(cfg.lamp_modulus));
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "wreath-mod-k") {
    WreathSpace<ActionKind::ModK> sp(LampDriver::integers(), cfg.k);
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "graph-wreath-zz") {
    ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "houghton" && cfg.m == 2) {
    H2Space sp;
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "houghton") {
    HmSpace sp(static_cast<std::int32_t>(cfg.m));
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "bs") {
    BSSpace sp(cfg.p, cfg.q);
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else if (cfg.family == "dl") {
    DLSpace sp(static_cast<std::int32_t>(cfg.p), static_cast<std::int32_t>(cfg.q));
    r = norm_result(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap);
  } else {
    throw CLI::ValidationError("--family", "unknown family " + cfg.family);
  }
  json out;
  out["config"] = cfg.echo();
  out["element"] = element;
  out["norm"] = r.norm;
  out["certificate_lower_bound"] = r.certificate;
  out["certificate_consistent"] = r.certificate <= r.norm;
  emit(cfg, out.dump(2));
  return kExitOk;
}

int cmd_witness(const RunConfig& cfg, const std::string& element, bool inject_fault) {
  WitnessOutcome outcome;
  if (cfg.family == "lamplighter") {
    LamplighterSpace sp(cfg.lamp_modulus == 0 ? LampDriver::integers()
                                              : LampDriver::cyclic(cfg.lamp_modulus));
    outcome = wreath_witness_outcome(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap,
                                     inject_fault);
  } else if (cfg.family == "wreath-translation") {
    WreathSpace<ActionKind::TranslationZ> sp(cfg.lamp_modulus == 0
                                                 ? LampDriver::integers()
                                                 : LampDriver::cyclic(cfg.lamp_modulus));
    outcome = wreath_witness_outcome(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap,
                                     inject_fault);
  } else if (cfg.family == "wreath-two-orbit") {
    WreathSpace<ActionKind::TwoOrbitZ> sp(cfg.lamp_modulus == 0
                                              ? LampDriver::integers()
                                              : LampDriver::cyclic(cfg.lamp_modulus));
    outcome = wreath_witness_outcome(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap,
                                     inject_fault);
  } else if (cfg.family == "wreath-mod-k") {
    WreathSpace<ActionKind::ModK> sp(LampDriver::integers(), cfg.k);
    outcome = wreath_witness_outcome(sp, evaluate_word(sp, parse_word(sp, element)), cfg.bfs_cap,
                                     inject_fault);
  } else if (cfg.family == "graph-wreath-zz") {
    ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
    auto g = evaluate_word(sp, parse_word(sp, element));
    const std::int64_t n = sp.exact_norm(g);
    auto target = make_gw_target(sp, n);
    GWWitnessInfo info;
    auto path = witness_path_graph(sp, g, n, zline_gw_itinerary(sp, g), target, &info);
    if (inject_fault) corrupt(path.labels);
    outcome.report = verify_witness(sp, path, sp.basepoint(), Rational(n, 6), target.gstar, 6 * n,
                                    VerifyOptions{false, cfg.bfs_cap});
    outcome.extra = {{"n", n}, {"case", info.case_id}};
  } else if (cfg.family == "houghton" && cfg.m == 2) {
    H2Space sp;
    auto g = evaluate_word(sp, parse_word(sp, element));
    NormCache<H2Space> cache(sp, cfg.bfs_cap);
    const std::int64_t n = cache.norm(g);
    auto tree = bfs_tree(sp, n, cfg.bfs_cap);
    auto word = geodesic_word(tree, sp.canonical_key(g));
    BallMap<H2Element> cb(sp.basepoint());
    auto w = build_h2_witness(sp, g, n, word, cb, cfg.bfs_cap);
    if (inject_fault) corrupt(w.path.labels);
    outcome.report = verify_witness(sp, w.path, sp.basepoint(), Rational(n, 2), h2_target(sp, n),
                                    18 * n, VerifyOptions{false, cfg.bfs_cap});
    outcome.extra = {{"n", n}, {"ray_direction", w.chosen_direction}};
  } else if (cfg.family == "houghton") {
    HmSpace sp(static_cast<std::int32_t>(cfg.m));
    auto g = evaluate_word(sp, parse_word(sp, element));
    NormCache<HmSpace> cache(sp, cfg.bfs_cap);
    const std::int64_t n = cache.norm(g);
    auto tree = bfs_tree(sp, n, cfg.bfs_cap);
    auto word = geodesic_word(tree, sp.canonical_key(g));
    BallMap<HmElement> cb(sp.basepoint());
    auto w = build_hm_witness(sp, g, n, word, cb, cfg.bfs_cap);
    if (inject_fault) corrupt(w.path.labels);
    outcome.report = verify_witness(sp, w.path, sp.basepoint(), Rational(n, 2), hm_target(sp, n),
                                    18 * n, VerifyOptions{false, cfg.bfs_cap});
    outcome.extra = {{"n", n}, {"ray_direction", w.chosen_direction}};
  } else if (cfg.family == "bs") {
    BSSpace sp(cfg.p, cfg.q);
    if (!sp.is_2_4()) {
      throw UnsupportedParams("the witness construction is restricted to BS(2,4); see families");
    }
    auto g = sp.reduce(parse_word(sp, element));
    NormCache<BSSpace> cache(sp, cfg.bfs_cap);
    const std::int64_t N = cache.norm(g);
    auto tree = bfs_tree(sp, N, cfg.bfs_cap);
    auto word = geodesic_word(tree, sp.canonical_key(g));
    BallMap<BSNormalForm> cb(sp.basepoint());
    auto w = build_bs24_witness(sp, g, word, cb, cfg.bfs_cap);
    if (inject_fault) corrupt(w.path.labels);
    outcome.report =
        verify_witness(sp, w.path, sp.basepoint(), Rational(N / 2), bs24_endpoint(sp, w.n),
                       10 * w.n + 8, VerifyOptions{false, cfg.bfs_cap});
    outcome.extra = {{"n", w.n}, {"t_level", w.t_level}, {"mirrored", w.mirrored},
                     {"adjusted_radius", (N / 2)}};
  } else if (cfg.family == "dl") {
    DLSpace sp(static_cast<std::int32_t>(cfg.p), static_cast<std::int32_t>(cfg.q));
    auto g = evaluate_word(sp, parse_word(sp, element));
    const std::int64_t n = sp.exact_norm(g);
    auto path = witness_path_dl(sp, g, n);
    if (inject_fault) corrupt(path.labels);
    outcome.report = verify_witness(sp, path, sp.basepoint(), Rational(n, 2), make_dl_target(n),
                                    6 * n, VerifyOptions{false, cfg.bfs_cap});
    outcome.extra = {{"n", n}};
  } else {
    throw CLI::ValidationError("--family", "unknown family " + cfg.family);
  }

  json out;
  out["config"] = cfg.echo();
  out["element"] = element;
  out["witness"] = to_json(outcome.report);
  out["details"] = outcome.extra;
  emit(cfg, out.dump(2));
  return outcome.report.overall_pass ? kExitOk : kExitVerificationFailure;
}

template <MarkedSpace S>
int divergence_rows(const S& space, const RunConfig& cfg, std::int64_t n_min, std::int64_t n_max,
                    const Rational& delta, const Rational& gamma, const std::string& strategy,
                    std::uint64_t samples) {
  std::vector<std::string> csv_rows{"n,value,pairs_examined,exhaustive,wall_seconds,status"};
  json json_rows = json::array();
  std::vector<std::pair<Rational, Rational>> profile_points;
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    ProfileStrategy strat = strategy == "sample" ? ProfileStrategy::sample(samples, cfg.seed)
                                                 : ProfileStrategy::exhaustive();
    try {
      auto sample = div_profile(space, n, delta, gamma, strat, 0, cfg.bfs_cap);
      csv_rows.push_back(csv_row(sample, "ok"));
      json_rows.push_back(growth_sample_row(sample, "ok"));
      if (sample.value) profile_points.emplace_back(Rational(n), Rational(*sample.value));
    } catch (const BudgetExceeded&) {
      GrowthSample empty;
      empty.n = n;
      csv_rows.push_back(csv_row(empty, "budget-exceeded"));
      json_rows.push_back(growth_sample_row(empty, "budget-exceeded"));
    }
  }
  if (cfg.format == "csv") {
    std::string text;
    for (const auto& row : csv_rows) text += row + "\n";
    if (!text.empty()) text.pop_back();
    emit(cfg, text);
  } else {
    json out;
    out["config"] = cfg.echo();
    out["delta"] = delta.str();
    out["gamma"] = gamma.str();
    out["rows"] = json_rows;
    out["linear_with_A12"] =
        compare_growth(profile_points, GrowthCurve::identity(), Rational(12));
    emit(cfg, out.dump(2));
  }
  return kExitOk;
}

int cmd_divergence(const RunConfig& cfg, std::int64_t n_min, std::int64_t n_max,
                   const std::string& delta_text, const std::string& gamma_text,
                   const std::string& strategy, std::uint64_t samples) {
  const Rational delta = Rational::parse(delta_text);
  const Rational gamma = Rational::parse(gamma_text);
  if (!(Rational(0) < delta && delta < Rational(1)) || gamma < Rational(0)) {
    throw CLI::ValidationError("--delta", "need 0 < delta < 1 and gamma >= 0");
  }
  if (cfg.family == "lamplighter") {
    LamplighterSpace sp(cfg.lamp_modulus == 0 ? LampDriver::integers()
                                              : LampDriver::cyclic(cfg.lamp_modulus));
    return divergence_rows(sp, cfg, n_min, n_max, delta, gamma, strategy, samples);
  }
  if (cfg.family == "dl") {
    DLSpace sp(static_cast<std::int32_t>(cfg.p), static_cast<std::int32_t>(cfg.q));
    return divergence_rows(sp, cfg, n_min, n_max, delta, gamma, strategy, samples);
  }
  if (cfg.family == "houghton" && cfg.m == 2) {
    H2Space sp;
    return divergence_rows(sp, cfg, n_min, n_max, delta, gamma, strategy, samples);
  }
  if (cfg.family == "bs") {
    BSSpace sp(cfg.p, cfg.q);
    return divergence_rows(sp, cfg, n_min, n_max, delta, gamma, strategy, samples);
  }
  if (cfg.family == "graph-wreath-zz") {
    ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
    return divergence_rows(sp, cfg, n_min, n_max, delta, gamma, strategy, samples);
  }
  throw CLI::ValidationError("--family", "divergence profiles: unsupported family " + cfg.family);
}

int cmd_oracle(const RunConfig& cfg, std::int64_t max_norm, bool wrong_formula) {
  std::uint64_t mismatches = 0, checked = 0;
  if (cfg.family == "lamplighter") {
    LamplighterSpace sp(cfg.lamp_modulus == 0 ? LampDriver::integers()
                                              : LampDriver::cyclic(cfg.lamp_modulus));
    auto b = ball(sp, max_norm, cfg.bfs_cap);
    for (const auto& [key, entry] : b.dist) {
      std::int64_t closed = sp.exact_norm(entry.first) + (wrong_formula ? 1 : 0);
      ++checked;
      if (closed != entry.second) ++mismatches;
    }
  } else if (cfg.family == "dl") {
    DLSpace sp(static_cast<std::int32_t>(cfg.p), static_cast<std::int32_t>(cfg.q));
    auto b = ball(sp, max_norm, cfg.bfs_cap);
    for (const auto& [key, entry] : b.dist) {
      std::int64_t closed = sp.exact_norm(entry.first) + (wrong_formula ? 1 : 0);
      ++checked;
      if (closed != entry.second) ++mismatches;
    }
  } else {
    throw CLI::ValidationError("--family",
                               "oracle: closed forms exist for lamplighter and dl only");
  }
  json out;
  out["config"] = cfg.echo();
  out["max_norm"] = max_norm;
  out["elements_checked"] = checked;
  out["mismatches"] = mismatches;
  emit(cfg, out.dump(2));
  return mismatches == 0 ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear-divergence toolkit: word metrics, witness paths and divergence profiles"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env_cap = std::getenv("LINDIV_BFS_CAP")) {
    cfg.bfs_cap = std::strtoull(env_cap, nullptr, 10);
  }
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--family", cfg.family, "family id (see `families`)");
  app.add_option("--lamp", cfg.lamp_modulus, "lamp group modulus, 0 for Z");
  app.add_option("--k", cfg.k, "finite-X modulus");
  app.add_option("--m", cfg.m, "Houghton ray count");
  app.add_option("--p", cfg.p, "p parameter (dl, bs)");
  app.add_option("--q", cfg.q, "q parameter (dl, bs)");
  app.add_option("--bfs-cap", cfg.bfs_cap, "BFS vertex budget");
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--output", cfg.output, "write output to this file");

  auto* families = app.add_subcommand("families", "list the built-in families");
  families->fallthrough();

  std::string element;
  auto* norm_cmd = app.add_subcommand("norm", "norm and certificate of an element");
  norm_cmd->fallthrough();
  norm_cmd->add_option("--element", element, "generator word")->required();

  bool inject_fault = false;
  auto* witness_cmd = app.add_subcommand("witness", "build and verify the witness path");
  witness_cmd->fallthrough();
  witness_cmd->add_option("--element", element, "generator word")->required();
  witness_cmd->add_flag("--inject-fault", inject_fault, "corrupt one label (negative control)");

  std::int64_t n_min = 0, n_max = 0, max_norm = 4;
  std::string delta_text = "1/6", gamma_text = "0", strategy = "exhaustive";
  std::uint64_t samples = 100;
  auto* div_cmd = app.add_subcommand("divergence", "divergence profile rows");
  div_cmd->fallthrough();
  div_cmd->add_option("--n-min", n_min)->required();
  div_cmd->add_option("--n-max", n_max)->required();
  div_cmd->add_option("--delta", delta_text, "rational in (0,1)");
  div_cmd->add_option("--gamma", gamma_text, "nonnegative rational");
  div_cmd->add_option("--strategy", strategy, "exhaustive or sample");
  div_cmd->add_option("--samples", samples, "pair count for the sample strategy");

  bool wrong_formula = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "closed form vs BFS, exhaustively");
  oracle_cmd->fallthrough();
  oracle_cmd->add_option("--max-norm", max_norm);
  oracle_cmd->add_flag("--wrong-formula", wrong_formula,
                       "deliberately offset the closed form (negative control)");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) load_config_file(cfg, config_path);
    // flags reapply over the config file
    app.clear();
    app.parse(argc, argv);

    if (families->parsed()) return cmd_families(cfg);
    if (norm_cmd->parsed()) return cmd_norm(cfg, element);
    if (witness_cmd->parsed()) return cmd_witness(cfg, element, inject_fault);
    if (div_cmd->parsed()) return cmd_divergence(cfg, n_min, n_max, delta_text, gamma_text,
                                                 strategy, samples);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, max_norm, wrong_formula);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParseError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
}
