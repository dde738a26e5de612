#pragma once

// Seeded property suites behind `markovdf verify`.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "markovdf/diagram.hpp"
#include "markovdf/diagram/random.hpp"
#include "markovdf/finstoch.hpp"
#include "markovdf/random.hpp"

namespace markovdf::verify {

struct Check {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;
  double tolerance = kPredicateTol;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<Check> checks;
  /// First few failure descriptions.
  std::vector<std::string> messages;
  /// Informational tallies (not pass/fail).
  std::map<std::string, std::size_t> counters;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.failures == 0; });
  }

  Check& check(const std::string& name, double tol = kPredicateTol) {
    for (auto& c : checks)
      if (c.name == name) return c;
    checks.push_back({name, 0, 0, 0.0, tol});
    return checks.back();
  }

  /// Records one case of `name` with the given deviation.
  void record(const std::string& name, double deviation, double tol = kPredicateTol,
              const std::string& context = {}) {
    Check& c = check(name, tol);
    ++c.cases;
    c.max_deviation = std::max(c.max_deviation, deviation);
    if (!(deviation <= c.tolerance)) {
      ++c.failures;
      if (messages.size() < 20)
        messages.push_back(name + ": deviation " + std::to_string(deviation) +
                           (context.empty() ? "" : " (" + context + ")"));
    }
  }

  void require(const std::string& name, bool ok, const std::string& context = {}) {
    record(name, ok ? 0.0 : 1.0, 0.5, context);
  }
};

namespace detail {

inline FinSpace random_space(Rng& rng, std::size_t max_size = 4) {
  return FinSpace::range(std::uniform_int_distribution<std::size_t>(1, max_size)(rng));
}

inline double deviation(const Kernel& a, const Kernel& b) { return compare(a, b, 0.0).max_deviation; }

/// Stationary law of an irreducible stochastic matrix (rows sum to one).
inline std::vector<double> stationary(const std::vector<std::vector<double>>& T) {
  const auto n = static_cast<Eigen::Index>(T.size());
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = T[j][i] - (i == j ? 1.0 : 0.0);
  M.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[n - 1] = 1.0;
  const Eigen::VectorXd pi = M.fullPivLu().solve(rhs);
  std::vector<double> out(pi.data(), pi.data() + n);
  double s = 0.0;
  for (auto& v : out) s += v = std::max(0.0, v);
  for (auto& v : out) v /= s;
  return out;
}

}  // namespace detail

/// Categorical laws and the conditional / Bayesian-inverse identities on
/// random kernels between spaces of size 1..4.
inline SuiteReport finstoch_suite(std::size_t cases, std::uint64_t seed) {
  SuiteReport rep{"finstoch", seed, cases, {}, {}, {}};
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const double zeros = (i % 3 == 0) ? 0.3 : 0.0;
    const FinSpace A = detail::random_space(rng), B = detail::random_space(rng),
                   C = detail::random_space(rng), D = detail::random_space(rng);
    const Kernel f = random_kernel(A, B, rng, zeros), g = random_kernel(B, C, rng, zeros),
                 h = random_kernel(C, D, rng, zeros);
    rep.record("associativity", detail::deviation(compose(h, compose(g, f)), compose(compose(h, g), f)));
    rep.record("unit", std::max(detail::deviation(compose(identity(B), f), f),
                                detail::deviation(compose(f, identity(A)), f)));

    const Kernel f2 = random_kernel(C, D, rng, zeros), g2 = random_kernel(D, B, rng, zeros);
    rep.record("interchange", detail::deviation(tensor(compose(g, f), compose(g2, f2)),
                                                compose(tensor(g, g2), tensor(f, f2))));
    rep.record("discard-terminal", detail::deviation(compose(discard(B), f), discard(A)));
    rep.record("row-stochastic", std::max(max_row_sum_deviation(compose(g, f)),
                                          max_row_sum_deviation(tensor(f, g))));

    // Comonoid laws on A and multiplicativity of copy on A (x) B.
    const Kernel cA = copy(A);
    rep.record("counit", std::max(detail::deviation(compose(tensor(identity(A), discard(A)), cA).relabel(A, A),
                                                    identity(A)),
                                  detail::deviation(compose(tensor(discard(A), identity(A)), cA).relabel(A, A),
                                                    identity(A))));
    rep.record("coassociativity", detail::deviation(compose(tensor(cA, identity(A)), cA),
                                                    compose(tensor(identity(A), cA), cA)));
    rep.record("cocommutativity", detail::deviation(compose(swap(A, A), cA), cA));
    const FinSpace AB = FinSpace::tensor(A, B);
    const Kernel rhs = compose(tensor(tensor(identity(A), swap(A, B)), identity(B)),
                               tensor(cA, copy(B)));
    rep.record("copy-multiplicativity", detail::deviation(copy(AB), rhs));

    // Conditional reconstruction: f = (id_X (x) f|X) . (copy_X (x) id_A) . (f_X (x) id_A) . copy_A.
    const FinSpace X = detail::random_space(rng, 3), Y = detail::random_space(rng, 3);
    const Kernel joint = random_kernel(A, FinSpace::tensor(X, Y), rng, zeros);
    const Kernel cond = conditional(joint, 1);
    const Kernel fx = marginal(joint, {0});
    const Kernel rebuilt =
        compose(tensor(identity(X), cond),
                compose(tensor(copy(X), identity(A)), compose(tensor(fx, identity(A)), copy(A))));
    rep.record("conditional-reconstruction", detail::deviation(rebuilt, joint));

    // Bayesian inverse: (f (x) id) . copy . m = (id (x) f^dagger) . copy . (f . m), up to swap.
    const Kernel m = random_state(A, rng, zeros);
    const Kernel inv = bayesian_inverse(f, m);
    const Kernel lhs = compose(tensor(identity(A), f), compose(copy(A), m));
    const Kernel rhs2 =
        compose(swap(B, A), compose(tensor(identity(B), inv), compose(copy(B), compose(f, m))));
    rep.record("bayesian-inverse", detail::deviation(lhs, rhs2));
  }
  return rep;
}

/// Built-in axiom instances, rewrite soundness and normal-form decisions
/// checked against random interpretations.
inline SuiteReport diagram_suite(std::size_t cases, std::uint64_t seed,
                                 std::size_t interpretations = 10) {
  using namespace diagram;
  SuiteReport rep{"diagram", seed, cases, {}, {}, {}};
  const Signature sig = default_signature();
  for (const auto& c : check_axioms(sig, 3)) rep.require("axiom-instances", c.passed(), c.instance.name);

  // Rewrites that would need matrices beyond this size are redrawn.
  constexpr double kMaxEntries = 1 << 16;
  Rng rng(seed);
  const Interpretation sizes = random_interpretation(sig, rng);
  for (std::size_t i = 0; i < cases; ++i) {
    const Term t = random_term(sig, random_objects(sig, rng, 3), rng);
    Term u = random_rewrite(random_rewrite(t, sig, rng), sig, rng);
    while (evaluation_size(u, sizes) > kMaxEntries) {
      ++rep.counters["rewrite-redraws"];
      u = random_rewrite(random_rewrite(t, sig, rng), sig, rng);
    }
    rep.require("rewrite-decided-equal", equal(t, u), t.to_string());
    rep.require("normalize-idempotent",
                normalize(readback(normalize(t))).serialize() == normalize(t).serialize(),
                t.to_string());

    // An independent term on the same inputs; compared only when the
    // interfaces agree.
    const Term v = random_term(sig, t.dom(), rng);
    const bool comparable = v.cod() == t.cod();
    const bool decided_equal = comparable && equal(t, v);
    for (std::size_t k = 0; k < interpretations; ++k) {
      const Interpretation interp = random_interpretation(sig, rng, k % 2 ? 0.2 : 0.0);
      const Kernel et = evaluate(t, interp);
      rep.record("rewrite-sound", detail::deviation(et, evaluate(u, interp)), kPredicateTol,
                 t.to_string());
      if (decided_equal)
        rep.record("equal-sound", detail::deviation(et, evaluate(v, interp)), kPredicateTol,
                   t.to_string() + " vs " + v.to_string());
    }
  }
  return rep;
}

/// The invariant-observable lemma on random stationary dynamics: whenever
/// the hypothesis holds within 1e-12 the conclusion must hold within 1e-9.
inline SuiteReport lemmas_suite(std::size_t cases, std::uint64_t seed) {
  SuiteReport rep{"lemmas", seed, cases, {}, {}, {}};
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> block_count(1, 3), block_size(1, 3), transient(0, 2);
  std::bernoulli_distribution coin(0.5);
  std::size_t hypothesis_held = 0;
  for (std::size_t i = 0; i < cases; ++i) {
    // Closed classes with their own dynamics, followed by transient states.
    std::vector<std::size_t> block_of;
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t b = 0, nb = block_count(rng); b < nb; ++b) {
      blocks.emplace_back();
      for (std::size_t s = 0, sz = block_size(rng); s < sz; ++s) {
        blocks.back().push_back(block_of.size());
        block_of.push_back(b);
      }
    }
    const std::size_t recurrent = block_of.size();
    const std::size_t n = recurrent + transient(rng);
    std::vector<double> t(n * n, 0.0), p(n, 0.0);
    const auto weights = random_distribution(blocks.size(), rng);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& states = blocks[b];
      std::vector<std::vector<double>> T;
      for (std::size_t r = 0; r < states.size(); ++r) T.push_back(random_distribution(states.size(), rng));
      const auto pi = detail::stationary(T);
      for (std::size_t r = 0; r < states.size(); ++r) {
        p[states[r]] = weights[b] * pi[r];
        for (std::size_t c = 0; c < states.size(); ++c) t[states[r] * n + states[c]] = T[r][c];
      }
    }
    for (std::size_t s = recurrent; s < n; ++s) {
      const auto row = random_distribution(n, rng);
      std::copy(row.begin(), row.end(), t.begin() + static_cast<long>(s * n));
    }
    const FinSpace T = FinSpace::range(n);
    const Kernel tk(T, T, t);
    const Kernel pk = Kernel::state(T, p);

    // Half the observables are functions of the closed class; the rest are
    // arbitrary functions, for which the hypothesis usually fails.
    const FinSpace X = FinSpace::range(std::uniform_int_distribution<std::size_t>(2, 3)(rng));
    std::vector<std::size_t> label(n);
    std::uniform_int_distribution<std::size_t> pick(0, X.size() - 1);
    std::vector<std::size_t> block_label(blocks.size());
    for (auto& l : block_label) l = pick(rng);
    const bool invariant = coin(rng);
    for (std::size_t s = 0; s < n; ++s)
      label[s] = (invariant && s < recurrent) ? block_label[block_of[s]] : pick(rng);
    const Kernel f = Kernel::deterministic(T, X, [&](std::size_t s) { return label[s]; });

    try {
      const auto r = check_invariant_observable(pk, tk, f, kPredicateTol);
      const bool hyp = r.hypothesis.max_deviation <= 1e-12;
      if (hyp) {
        ++hypothesis_held;
        rep.record("invariant-observable", r.conclusion.max_deviation, kPredicateTol);
      }
      if (invariant) rep.require("class-functions-satisfy-hypothesis", hyp);
    } catch (const PreconditionViolation& e) {
      rep.require("preconditions", false, e.what());
    }
  }
  return rep;
}

inline SuiteReport run_suite(const std::string& name, std::size_t cases, std::uint64_t seed) {
  if (name == "finstoch") return finstoch_suite(cases, seed);
  if (name == "diagram") return diagram_suite(cases, seed);
  if (name == "lemmas") return lemmas_suite(cases, seed);
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace markovdf::verify
