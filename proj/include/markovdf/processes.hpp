#pragma once

// Named families with closed-form marginals, used as fixtures and oracles.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "markovdf/combinatorics.hpp"
#include "markovdf/definetti.hpp"
#include "markovdf/error.hpp"
#include "markovdf/exchange.hpp"

namespace markovdf {

enum class ProcessKind { Polya, Iid, Mixture, WithoutReplacement, Diagonal, MarkovChain };

inline const char* to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::Polya: return "polya";
    case ProcessKind::Iid: return "iid";
    case ProcessKind::Mixture: return "mixture";
    case ProcessKind::WithoutReplacement: return "without_replacement";
    case ProcessKind::Diagonal: return "diagonal";
    case ProcessKind::MarkovChain: return "markov_chain";
  }
  return "?";
}

inline ProcessKind parse_process_kind(const std::string& s) {
  for (auto k : {ProcessKind::Polya, ProcessKind::Iid, ProcessKind::Mixture,
                 ProcessKind::WithoutReplacement, ProcessKind::Diagonal, ProcessKind::MarkovChain})
    if (s == to_string(k)) return k;
  throw InvalidArgument("unknown process '" + s + "'");
}

/// Only the fields relevant to `kind` are read.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::Iid;
  std::size_t depth = 1;
  double alpha = 1.0, beta = 1.0;  // polya; alpha counts symbol 1
  std::vector<double> q;           // iid
  std::size_t red = 0, black = 0;  // without_replacement; red is symbol 1
  std::vector<double> nu;          // diagonal
  std::vector<double> initial;     // markov_chain
  std::vector<std::vector<double>> transition;
  std::optional<MixingMeasure> mixture;

  static ProcessSpec polya(double a, double b, std::size_t depth) {
    ProcessSpec s;
    s.kind = ProcessKind::Polya;
    s.alpha = a;
    s.beta = b;
    s.depth = depth;
    return s;
  }
  static ProcessSpec iid(double theta, std::size_t depth) {
    return iid(std::vector<double>{1.0 - theta, theta}, depth);
  }
  static ProcessSpec iid(std::vector<double> q, std::size_t depth) {
    ProcessSpec s;
    s.kind = ProcessKind::Iid;
    s.q = std::move(q);
    s.depth = depth;
    return s;
  }
  static ProcessSpec without_replacement(std::size_t red, std::size_t black, std::size_t depth) {
    ProcessSpec s;
    s.kind = ProcessKind::WithoutReplacement;
    s.red = red;
    s.black = black;
    s.depth = depth;
    return s;
  }
  static ProcessSpec diagonal(std::vector<double> nu, std::size_t depth) {
    ProcessSpec s;
    s.kind = ProcessKind::Diagonal;
    s.nu = std::move(nu);
    s.depth = depth;
    return s;
  }
  static ProcessSpec markov_chain(std::vector<double> initial,
                                  std::vector<std::vector<double>> transition, std::size_t depth) {
    ProcessSpec s;
    s.kind = ProcessKind::MarkovChain;
    s.initial = std::move(initial);
    s.transition = std::move(transition);
    s.depth = depth;
    return s;
  }
  static ProcessSpec of_mixture(MixingMeasure mu, std::size_t depth) {
    ProcessSpec s;
    s.kind = ProcessKind::Mixture;
    s.mixture = std::move(mu);
    s.depth = depth;
    return s;
  }

  void validate() const {
    if (depth == 0) throw InvalidArgument("process: depth must be positive");
    auto distribution = [](const std::vector<double>& v, const char* what) {
      if (v.size() < 2) throw InvalidArgument(std::string("process: ") + what + " needs >= 2 entries");
      double s = 0.0;
      for (double x : v) {
        if (!std::isfinite(x) || x < 0.0 || x > 1.0)
          throw InvalidArgument(std::string("process: ") + what + " entry outside [0,1]");
        s += x;
      }
      if (std::abs(s - 1.0) > kPredicateTol)
        throw InvalidArgument(std::string("process: ") + what + " does not sum to 1");
    };
    switch (kind) {
      case ProcessKind::Polya:
        if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
          throw InvalidArgument("process: polya needs alpha, beta > 0");
        break;
      case ProcessKind::Iid: distribution(q, "iid q"); break;
      case ProcessKind::WithoutReplacement:
        if (red == 0 || black == 0)
          throw InvalidArgument("process: urn counts must be positive integers");
        break;
      case ProcessKind::Diagonal: distribution(nu, "diagonal nu"); break;
      case ProcessKind::MarkovChain:
        distribution(initial, "initial");
        if (transition.size() != initial.size())
          throw InvalidArgument("process: transition matrix has the wrong number of rows");
        for (const auto& row : transition) {
          if (row.size() != initial.size())
            throw InvalidArgument("process: transition matrix is not square");
          distribution(row, "transition row");
        }
        break;
      case ProcessKind::Mixture:
        if (!mixture) throw InvalidArgument("process: mixture needs atoms");
        break;
    }
  }

  /// Levels actually generated; urn draws stop when the urn is empty.
  std::size_t effective_depth() const {
    return kind == ProcessKind::WithoutReplacement ? std::min(depth, red + black) : depth;
  }
};

namespace detail {

inline double falling(std::size_t n, std::size_t j) {
  double out = 1.0;
  for (std::size_t i = 0; i < j; ++i) out *= static_cast<double>(n - i);
  return out;
}

template <class F>
MarginalFamily count_family(std::size_t k, std::size_t depth, F&& per_sequence) {
  std::vector<MarginalFamily::CountLevel> levels(depth);
  for (std::size_t n = 1; n <= depth; ++n)
    for (const auto& c : compositions(n, k)) {
      const double v = per_sequence(c);
      if (v > 0.0) levels[n - 1].emplace(c, v);
    }
  return MarginalFamily::count(FinSpace::range(k), std::move(levels));
}

}  // namespace detail

inline MarginalFamily generate(const ProcessSpec& spec) {
  spec.validate();
  const std::size_t depth = spec.effective_depth();
  switch (spec.kind) {
    case ProcessKind::Polya: {
      const double a = spec.alpha, b = spec.beta;
      const double base = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
      return detail::count_family(2, depth, [&](const Counts& c) {
        const double j = static_cast<double>(c[1]), z = static_cast<double>(c[0]);
        return std::exp(std::lgamma(a + j) + std::lgamma(b + z) - std::lgamma(a + b + j + z) - base);
      });
    }
    case ProcessKind::Iid:
      return mixture_marginals(MixingMeasure::delta(spec.q), depth);
    case ProcessKind::Mixture:
      return mixture_marginals(*spec.mixture, depth);
    case ProcessKind::WithoutReplacement: {
      const std::size_t total = spec.red + spec.black;
      return detail::count_family(2, depth, [&](const Counts& c) {
        if (c[1] > spec.red || c[0] > spec.black) return 0.0;
        return detail::falling(spec.red, c[1]) * detail::falling(spec.black, c[0]) /
               detail::falling(total, c[0] + c[1]);
      });
    }
    case ProcessKind::Diagonal: {
      const std::size_t k = spec.nu.size();
      return detail::count_family(k, depth, [&](const Counts& c) {
        for (std::size_t s = 0; s < k; ++s)
          if (c[s] == total(c)) return spec.nu[s];
        return 0.0;
      });
    }
    case ProcessKind::MarkovChain: {
      const std::size_t k = spec.initial.size();
      std::vector<std::vector<double>> levels;
      levels.push_back(spec.initial);
      for (std::size_t n = 2; n <= depth; ++n) {
        if (bounded_power(k, n, kDenseCap) == 0)
          throw InvalidArgument("process: markov_chain depth " + std::to_string(depth) +
                                " exceeds the dense size cap");
        const auto& prev = levels.back();
        std::vector<double> lvl(prev.size() * k);
        for (std::size_t i = 0; i < prev.size(); ++i)
          for (std::size_t x = 0; x < k; ++x) lvl[i * k + x] = prev[i] * spec.transition[i % k][x];
        levels.push_back(std::move(lvl));
      }
      return MarginalFamily::dense(FinSpace::range(k), std::move(levels));
    }
  }
  throw InvalidArgument("process: unknown kind");
}

/// The de Finetti measure of `spec`, discretized to `grid_size` atoms where it
/// is continuous. Beta laws are placed at the quantiles (i + 1/2) / grid_size
/// with equal weights.
inline std::optional<MixingMeasure> analytic_mixing(const ProcessSpec& spec,
                                                    std::size_t grid_size) {
  spec.validate();
  switch (spec.kind) {
    case ProcessKind::Polya: {
      if (grid_size == 0) throw InvalidArgument("analytic_mixing: empty grid");
      std::vector<Atom> atoms;
      const double g = static_cast<double>(grid_size);
      for (std::size_t i = 0; i < grid_size; ++i) {
        const double theta =
            boost::math::ibeta_inv(spec.alpha, spec.beta, (static_cast<double>(i) + 0.5) / g);
        atoms.push_back({{1.0 - theta, theta}, 1.0 / g});
      }
      return MixingMeasure(2, std::move(atoms));
    }
    case ProcessKind::Iid: return MixingMeasure::delta(spec.q);
    case ProcessKind::Mixture: return *spec.mixture;
    case ProcessKind::Diagonal: {
      std::vector<Atom> atoms;
      for (std::size_t s = 0; s < spec.nu.size(); ++s) {
        std::vector<double> q(spec.nu.size(), 0.0);
        q[s] = 1.0;
        if (spec.nu[s] > 0.0) atoms.push_back({std::move(q), spec.nu[s]});
      }
      return MixingMeasure(spec.nu.size(), std::move(atoms));
    }
    case ProcessKind::WithoutReplacement:
    case ProcessKind::MarkovChain: return std::nullopt;
  }
  return std::nullopt;
}

/// CDF of Beta(a, b).
inline double beta_cdf(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

}  // namespace markovdf
