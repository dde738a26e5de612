// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "markovdf/definetti.hpp"
#include "markovdf/exchange.hpp"
#include "markovdf/io.hpp"
#include "markovdf/processes.hpp"
#include "markovdf/random.hpp"

using namespace markovdf;
namespace fs = std::filesystem;

namespace {

fs::path scratch;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int run_cli(const std::string& args, const std::string& log) {
  const std::string cmd = std::string(MARKOVDF_CLI) + " " + args + " > " + log + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json load(const fs::path& p) { return parse_json(read_text(p.string()), p.string()); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// Runs a verify suite through the CLI and checks every listed property.
Outcome suite(const std::string& name, std::size_t cases, const std::vector<std::string>& required,
              double limit_s) {
  const fs::path out = scratch / (name + ".json");
  const auto t0 = std::chrono::steady_clock::now();
  const int rc = run_cli("verify " + name + " --cases " + std::to_string(cases) + " --out " + out.string(),
                         (scratch / (name + ".log")).string());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rc != 0) return {false, "exit " + std::to_string(rc)};
  const json rep = load(out)["suites"][0];
  double worst = 0;
  std::size_t total = 0;
  for (const auto& want : required) {
    bool found = false;
    for (const auto& c : rep["checks"]) {
      if (c["name"] != want) continue;
      found = true;
      total += c["cases"].get<std::size_t>();
      if (c["failures"].get<std::size_t>() != 0 || c["cases"].get<std::size_t>() == 0)
        return {false, want + " failed"};
      if (c["tolerance"].get<double>() < 0.1) worst = std::max(worst, c["max_deviation"].get<double>());
    }
    if (!found) return {false, "missing check " + want};
  }
  const bool ok = worst <= 1e-9 && secs < limit_s;
  return {ok, std::to_string(total) + " property cases, max deviation " + fmt("%.2e", worst) + ", " +
                  fmt("%.2f", secs) + " s (limit " + fmt("%.0f", limit_s) + " s)"};
}

Outcome c1() {
  return suite("finstoch", 1000,
               {"associativity", "unit", "interchange", "counit", "coassociativity", "cocommutativity",
                "copy-multiplicativity", "conditional-reconstruction", "bayesian-inverse"},
               10);
}

Outcome c2() {
  auto o = suite("diagram", 500, {"axiom-instances", "rewrite-decided-equal", "rewrite-sound", "equal-sound"}, 30);
  if (o.pass) {
    const json rep = load(scratch / "diagram.json")["suites"][0];
    for (const auto& c : rep["checks"])
      if (c["name"] == "rewrite-sound" && c["cases"].get<std::size_t>() != 5000)
        return {false, "expected 500 x 10 evaluations"};
  }
  return o;
}

Outcome c3() { return suite("lemmas", 200, {"invariant-observable"}, 10); }

Outcome c4() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = generate(ProcessSpec::polya(1, 1, 40));
  const auto r = hausdorff_reconstruct(moments(p), 40);
  const double d = measure_distance(r.measure, [](double x) { return x; }, Metric::Kolmogorov);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {d <= 0.05 && secs < 5,
          "Kolmogorov " + fmt("%.4f", d) + " (limit 0.05), " + fmt("%.3f", secs) + " s (limit 5 s)"};
}

Outcome c5() {
  const auto spec = ProcessSpec::polya(2, 3, 60);
  const auto r = hausdorff_reconstruct(moments(generate(spec)), 60);
  const double d = measure_distance(r.measure, *analytic_mixing(spec, 1001), Metric::Kolmogorov);
  return {d <= 0.08, "Kolmogorov " + fmt("%.4f", d) + " (limit 0.08)"};
}

Outcome c6() {
  const auto p = generate(ProcessSpec::iid(0.3, 400));
  if (p.form() != FamilyForm::Count) return {false, "expected count form"};
  const auto r = hausdorff_reconstruct(moments(p), 400);
  double near = 0;
  for (const auto& a : r.measure.atoms())
    if (std::abs(a.q[1] - 0.3) <= 0.05 + 1e-12) near += a.weight;
  return {near >= 0.9, "mass within 0.05 of 0.3: " + fmt("%.4f", near) + " (limit 0.9)"};
}

Outcome c7() {
  const std::size_t level = 4;
  const auto grid = simplex_grid(2, 1000);
  const auto urn = grid_moment_match(generate(ProcessSpec::without_replacement(2, 2, 4)), grid, level);
  const auto polya = grid_moment_match(generate(ProcessSpec::polya(1, 1, 40)), grid, level);

  const fs::path spec = scratch / "urn_spec.json", fam = scratch / "urn.json";
  std::ofstream(spec) << R"({"process":"without_replacement","red":2,"black":2,"depth":4})";
  const int sim = run_cli("simulate " + spec.string() + " " + fam.string(), (scratch / "sim.log").string());
  const int rc = run_cli("analyze " + fam.string() + " --out " + (scratch / "urn_report.json").string(),
                         (scratch / "analyze.log").string());
  const bool ok = urn.residual > 1e-2 && urn.residual > 10 * polya.residual && sim == 0 && rc == 4;
  return {ok, "residual " + fmt("%.4f", urn.residual) + " vs Polya " + fmt("%.1e", polya.residual) +
                  " at level 4, analyze exit " + std::to_string(rc)};
}

Outcome c8() {
  const auto p = generate(ProcessSpec::polya(1, 1, 40));
  std::ostringstream s;
  bool ok = true;
  double prev = 2;
  s << "shift";
  for (std::size_t n : {4, 8, 16, 32}) {
    const double d = tail_shift_deviation(p, n);
    ok = ok && d < prev;
    prev = d;
    s << " " << fmt("%.4f", d);
  }
  ok = ok && prev <= 0.1;
  prev = 2;
  s << "; cond-iid";
  for (std::size_t m : {5, 10, 20, 39}) {
    const double e = conditionally_iid_error(p, 2, m);
    ok = ok && e < prev;
    prev = e;
    s << " " << fmt("%.5f", e);
  }
  return {ok, s.str()};
}

Outcome c9() {
  Rng rng(9);
  const auto grid = simplex_grid(2, 200);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const auto w = random_distribution(grid.size(), rng, 0.8);
    std::vector<Atom> atoms;
    for (std::size_t g = 0; g < grid.size(); ++g)
      if (w[g] > 0) atoms.push_back({grid[g], w[g]});
    const MixingMeasure mu(2, atoms);
    const auto m = moments(mixture_marginals(mu, 20));
    for (std::size_t j = 0; j <= 20; ++j) worst = std::max(worst, std::abs(m.binary[j] - mu.moment(j)));
  }
  return {worst <= 1e-12, "50 measures, max moment error " + fmt("%.2e", worst) + " (limit 1e-12)"};
}

}  // namespace

int main() {
  scratch = fs::temp_directory_path() / ("markovdf_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"axiom suite", c1},
      {"diagram soundness", c2},
      {"lemma instantiation", c3},
      {"hard direction, Beta(1,1)", c4},
      {"hard direction, Beta(2,3)", c5},
      {"iid concentration", c6},
      {"non-extendability detection", c7},
      {"tail convergence", c8},
      {"easy direction exactness", c9},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& [name, run] : criteria) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::error_code ec;
  fs::remove_all(scratch, ec);
  std::printf("%d/%d criteria passed\n", idx - failed, idx);
  return failed ? 1 : 0;
}
