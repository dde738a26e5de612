#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "markovdf/definetti.hpp"
#include "markovdf/diagram/axioms.hpp"
#include "markovdf/diagram/normal_form.hpp"
#include "markovdf/diagram/parse.hpp"
#include "markovdf/exchange.hpp"
#include "markovdf/io.hpp"
#include "markovdf/processes.hpp"
#include "markovdf/verify.hpp"

using namespace markovdf;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kSuiteFailed = 2,
  kUnwritable = 3,
  kNegative = 4,
  kNotExchangeable = 5,
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Writes `text` to `path`, or stdout when empty. False if the file can't be written.
bool emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text << '\n';
  return static_cast<bool>(out);
}

json report_json(const verify::SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"cases", c.cases},
                      {"failures", c.failures},
                      {"max_deviation", c.max_deviation},
                      {"tolerance", c.tolerance}});
  json j = {{"suite", r.suite}, {"passed", r.passed()}, {"cases", r.cases}, {"checks", checks}};
  if (!r.counters.empty()) j["counters"] = r.counters;
  if (!r.messages.empty()) j["messages"] = r.messages;
  return j;
}

// --- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::size_t cases = 100;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = true;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> names =
      a.suite == "all" ? std::vector<std::string>{"finstoch", "diagram", "lemmas"}
                       : std::vector<std::string>{a.suite};
  json suites = json::array();
  json timing = json::object();
  bool ok = true;
  for (const auto& n : names) {
    const auto t0 = Clock::now();
    const auto rep = verify::run_suite(n, a.cases, a.seed);
    timing[n] = seconds_since(t0);
    ok = ok && rep.passed();
    suites.push_back(report_json(rep));
    std::cerr << n << ": " << (rep.passed() ? "pass" : "FAIL") << '\n';
    for (const auto& m : rep.messages) std::cerr << "  " << m << '\n';
  }
  json j = {{"schema_version", 1},
            {"command", "verify"},
            {"suite", a.suite},
            {"seed", a.seed},
            {"cases", a.cases},
            {"passed", ok},
            {"suites", suites}};
  if (a.timing) j["timing"] = timing;
  if (!emit(j.dump(2), a.out)) {
    std::cerr << "error: cannot write '" << a.out << "'\n";
    return kUnwritable;
  }
  return ok ? kOk : kSuiteFailed;
}

// --- simulate -----------------------------------------------------------------

int cmd_simulate(const std::string& spec_file, const std::string& out_file) {
  MarginalFamily p = [&] {
    const auto spec = process_from_json(parse_json(read_text(spec_file), spec_file));
    return generate(spec);
  }();
  std::ofstream out(out_file, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_file << "'\n";
    return kUnwritable;
  }
  out << to_json(p).dump() << '\n';
  if (!out) {
    std::cerr << "error: cannot write '" << out_file << "'\n";
    return kUnwritable;
  }
  std::cout << p.depth() << " levels, " << to_string(p.form()) << " form\n";
  return kOk;
}

// --- analyze ------------------------------------------------------------------

struct AnalyzeArgs {
  std::string family;
  std::size_t grid = 1001;
  std::optional<std::size_t> max_level;
  std::optional<std::size_t> order;
  double threshold = 1e-3;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = true;
};

std::size_t binom(std::size_t n, std::size_t r) {
  double v = 1;
  for (std::size_t i = 1; i <= r; ++i) v = v * double(n - r + i) / double(i);
  return static_cast<std::size_t>(std::llround(std::min(v, 1e15)));
}

// For k > 2 the grid budget is a point count; pick the finest simplex
// resolution that fits in it.
std::size_t grid_resolution(std::size_t k, std::size_t points) {
  if (k <= 2) return std::max<std::size_t>(points, 2) - 1;
  std::size_t r = 1;
  while (binom(r + 1 + k - 1, k - 1) <= points) ++r;
  return r;
}

json measure_json(const MixingMeasure& mu) { return to_json(mu)["atoms"]; }

int cmd_analyze(const AnalyzeArgs& a) {
  const auto t0 = Clock::now();
  const std::string text = read_text(a.family);
  const MarginalFamily p = family_from_json(parse_json(text, a.family));
  const std::size_t depth = p.depth();
  const std::size_t k = p.k();

  json j = {{"schema_version", 1},
            {"command", "analyze"},
            {"input_digest", digest(text)},
            {"seed", a.seed},
            {"family",
             {{"alphabet", p.alphabet().labels()}, {"depth", depth}, {"form", to_string(p.form())}}}};

  const auto cons = check_consistency(p);
  const auto exch = check_exchangeability(p);
  j["checks"] = {{"consistency", to_json(cons)}, {"exchangeability", to_json(exch)}};
  json timing = json::object();

  auto finish = [&](int code) {
    if (a.timing) {
      timing["total"] = seconds_since(t0);
      j["timing"] = timing;
    }
    if (!emit(j.dump(2), a.out)) {
      std::cerr << "error: cannot write '" << a.out << "'\n";
      return static_cast<int>(kUnwritable);
    }
    return code;
  };

  if (!cons.holds || !exch.holds) {
    const auto& bad = !cons.holds ? cons : exch;
    const char* what = !cons.holds ? "consistency" : "exchangeability";
    j["verdict"] = {{"extendable", false},
                    {"reason", std::string(what) + " fails at level " + std::to_string(bad.level)}};
    std::cerr << what << " fails at level " << bad.level << " (deviation " << bad.max_deviation
              << ", " << bad.witness << ")\n";
    return finish(kNotExchangeable);
  }

  // tail diagnostics
  json shift = json::array();
  for (std::size_t n = 2; n < depth; n *= 2)
    shift.push_back({{"n", n}, {"deviation", tail_shift_deviation(p, n)}});
  json ciid = json::array();
  if (depth >= 3) {
    std::vector<std::size_t> ms;
    for (std::size_t m = 1; m + 1 < depth; m *= 2) ms.push_back(m);
    ms.push_back(depth - 1);
    for (auto m : ms) ciid.push_back({{"n", 2}, {"m", m}, {"error", conditionally_iid_error(p, 2, m)}});
  }
  j["tail"] = {{"tail_shift_deviation", shift}, {"conditionally_iid_error", ciid}};

  const auto m = moments(p);
  const std::size_t max_level = a.max_level.value_or(std::min<std::size_t>(depth, 10));
  if (max_level < 1 || max_level > depth)
    throw InvalidArgument("--max-level must lie in [1, " + std::to_string(depth) + "]");
  if (m.binary.size() > 0) j["moments"] = m.binary;
  const auto nonneg = pattern_nonnegativity_check(m);
  j["checks"]["pattern_nonnegativity"] = to_json(nonneg);

  json recon = json::object();
  if (k == 2) {
    const std::size_t order = a.order.value_or(depth);
    if (order < 1 || order > depth)
      throw InvalidArgument("--order must lie in [1, " + std::to_string(depth) + "]");
    const auto t1 = Clock::now();
    const auto h = hausdorff_reconstruct(m, order);
    timing["hausdorff"] = seconds_since(t1);
    recon["hausdorff"] = {{"order", order},
                          {"raw_sum", h.raw_sum},
                          {"clip_mass", h.clip_mass},
                          {"measure", measure_json(h.measure)}};
  }

  MatchOptions opt;
  opt.seed = a.seed;
  const std::size_t res = grid_resolution(k, a.grid);
  const auto grid = simplex_grid(k, res);
  const auto t2 = Clock::now();
  const auto match = grid_moment_match(p, grid, max_level, opt);
  timing["grid_match"] = seconds_since(t2);
  recon["grid_match"] = {{"grid_points", grid.size()},
                         {"max_level", max_level},
                         {"residual", match.residual},
                         {"iterations", match.iterations},
                         {"measure", measure_json(match.measure)}};
  j["reconstruction"] = recon;

  const bool extendable = match.residual <= a.threshold;
  j["threshold"] = a.threshold;
  j["verdict"] = {{"extendable", extendable},
                  {"residual", match.residual},
                  {"reason", extendable ? "grid mixture reproduces levels 1.." + std::to_string(max_level)
                                        : "no grid mixture within threshold at level " +
                                              std::to_string(max_level)}};
  std::cerr << (extendable ? "extendable" : "not extendable") << " (residual " << match.residual
            << ", threshold " << a.threshold << ")\n";
  return finish(extendable ? kOk : kNegative);
}

// --- diagram ------------------------------------------------------------------

struct DiagramArgs {
  std::string script;
  std::string lhs, rhs;
  bool check_axioms = false;
};

std::string canonical(const diagram::Term& t) {
  return diagram::readback(diagram::normalize(t)).to_string();
}

int cmd_diagram(const DiagramArgs& a) {
  const auto script = diagram::parse_script(read_text(a.script));
  if (a.check_axioms) {
    const auto sig = script.signature.objects().empty() ? diagram::default_signature() : script.signature;
    std::size_t failed = 0;
    const auto checks = diagram::check_axioms(sig);
    for (const auto& c : checks) {
      if (c.passed()) continue;
      ++failed;
      std::cout << "FAIL " << c.instance.name << ": " << c.instance.lhs.to_string() << "  vs  "
                << c.instance.rhs.to_string() << '\n';
    }
    std::cout << checks.size() - failed << "/" << checks.size() << " axiom instances decided as expected\n";
    return failed ? kSuiteFailed : kOk;
  }
  if (a.lhs.empty() != a.rhs.empty()) throw InvalidArgument("--lhs and --rhs go together");
  if (a.lhs.empty()) {
    if (!script.main) throw InvalidArgument("nothing to do: give --lhs/--rhs or --check-axioms");
    std::cout << canonical(*script.main) << '\n';
    return kOk;
  }
  auto lookup = [&](const std::string& name) {
    const auto* t = script.find(name);
    if (!t) throw InvalidArgument("no definition named '" + name + "'");
    return *t;
  };
  const auto l = lookup(a.lhs);
  const auto r = lookup(a.rhs);
  const bool eq = diagram::equal(l, r);
  std::cout << (eq ? "EQUAL" : "NOT-EQUAL") << '\n'
            << a.lhs << ": " << canonical(l) << '\n'
            << a.rhs << ": " << canonical(r) << '\n';
  return eq ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"markovdf: Markov kernels, string diagrams and exchangeable sequences"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", va.suite, "finstoch | diagram | lemmas | all")
      ->required()
      ->check(CLI::IsMember({"finstoch", "diagram", "lemmas", "all"}));
  verify->add_option("--cases", va.cases, "random cases per suite")->capture_default_str();
  verify->add_option("--seed", va.seed)->capture_default_str();
  verify->add_option("--out", va.out, "report file (default stdout)");
  verify->add_flag("!--no-timing", va.timing, "omit the timing field");

  std::string spec_file, sim_out;
  auto* simulate = app.add_subcommand("simulate", "write the marginal family of a process spec");
  simulate->add_option("spec", spec_file)->required();
  simulate->add_option("out", sim_out)->required();

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "check a family file and reconstruct its mixing measure");
  analyze->add_option("family", aa.family)->required();
  analyze->add_option("--grid", aa.grid, "grid points for the moment match")->capture_default_str();
  analyze->add_option("--max-level", aa.max_level, "levels matched (default min(depth,10))");
  analyze->add_option("--order", aa.order, "Hausdorff order (default depth)");
  analyze->add_option("--threshold", aa.threshold, "extendability residual threshold")->capture_default_str();
  analyze->add_option("--seed", aa.seed)->capture_default_str();
  analyze->add_option("--out", aa.out, "report file (default stdout)");
  analyze->add_flag("!--no-timing", aa.timing, "omit the timing field");

  DiagramArgs da;
  auto* dia = app.add_subcommand("diagram", "decide equality of string diagrams in a script");
  dia->add_option("script", da.script)->required();
  auto* lhs = dia->add_option("--lhs", da.lhs);
  auto* rhs = dia->add_option("--rhs", da.rhs);
  auto* ax = dia->add_flag("--check-axioms", da.check_axioms);
  ax->excludes(lhs)->excludes(rhs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*simulate) return cmd_simulate(spec_file, sim_out);
    if (*analyze) return cmd_analyze(aa);
    if (*dia) return cmd_diagram(da);
  } catch (const diagram::ParseError& e) {
    std::cerr << da.script << ":" << e.location().line << ":" << e.location().column << ": "
              << e.what() << '\n';
    return kUsage;
  } catch (const diagram::TypeError& e) {
    std::cerr << da.script << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
