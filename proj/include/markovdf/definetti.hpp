#pragma once

// Mixtures of iid laws and their recovery from finite exchangeable families.
//
// Binary conventions: the alphabet is {0, 1} and theta = q[1] is the
// probability of symbol 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "markovdf/combinatorics.hpp"
#include "markovdf/error.hpp"
#include "markovdf/exchange.hpp"
#include "markovdf/finstoch.hpp"
#include "markovdf/random.hpp"

namespace markovdf {

struct Atom {
  std::vector<double> q;
  double weight = 0.0;
};

class MixingMeasure {
 public:
  MixingMeasure(std::size_t k, std::vector<Atom> atoms) : k_(k), atoms_(std::move(atoms)) {
    if (k_ == 0) throw InvalidArgument("mixing measure: empty alphabet");
    if (atoms_.empty()) throw InvalidArgument("mixing measure: no atoms");
    double total = 0.0;
    for (const auto& a : atoms_) {
      if (a.q.size() != k_)
        throw InvalidArgument("mixing measure: atom of dimension " + std::to_string(a.q.size()) +
                              ", alphabet has " + std::to_string(k_));
      if (!std::isfinite(a.weight) || a.weight < 0.0)
        throw InvalidArgument("mixing measure: negative or non-finite weight");
      double s = 0.0;
      for (double v : a.q) {
        if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("mixing measure: bad atom entry");
        s += v;
      }
      if (std::abs(s - 1.0) > kPredicateTol)
        throw InvalidArgument("mixing measure: atom sums to " + std::to_string(s));
      total += a.weight;
    }
    if (std::abs(total - 1.0) > kPredicateTol)
      throw InvalidArgument("mixing measure: weights sum to " + std::to_string(total));
  }

  static MixingMeasure delta(std::vector<double> q) {
    const std::size_t k = q.size();
    return MixingMeasure(k, {Atom{std::move(q), 1.0}});
  }

  std::size_t k() const noexcept { return k_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  /// Sum of weight * prod_s q_s^{c_s}: the per-sequence probability of any
  /// sequence with counts c under the mixture.
  double pattern_probability(const Counts& c) const {
    double s = 0.0;
    for (const auto& a : atoms_) {
      double prod = a.weight;
      for (std::size_t x = 0; x < k_ && prod != 0.0; ++x)
        if (c[x]) prod *= std::pow(a.q[x], static_cast<double>(c[x]));
      s += prod;
    }
    return s;
  }

  /// Binary moment sum weight * theta^j.
  double moment(std::size_t j) const {
    require_binary("moment");
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight * std::pow(a.q[1], static_cast<double>(j));
    return s;
  }

  void require_binary(const char* what) const {
    if (k_ != 2) throw InvalidArgument(std::string(what) + ": requires a binary alphabet");
  }

 private:
  std::size_t k_;
  std::vector<Atom> atoms_;
};

/// Cylinder probabilities of an exchangeable family.
///
/// `binary` holds m_0..m_N with m_j the probability of j leading ones
/// (binary alphabets only). `patterns[n-1]` maps count vectors to
/// per-sequence probabilities at level n; it is empty for sequences built
/// from bare moments.
struct MomentSequence {
  std::size_t k = 2;
  std::vector<double> binary;
  std::vector<std::map<Counts, double>> patterns;

  static MomentSequence from_binary(std::vector<double> m) {
    if (m.empty() || std::abs(m[0] - 1.0) > kPredicateTol)
      throw InvalidArgument("moment sequence must start with m_0 = 1");
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (!std::isfinite(m[j]) || m[j] < -kPredicateTol || m[j] > 1.0 + kPredicateTol)
        throw InvalidArgument("moment m_" + std::to_string(j) + " outside [0,1]");
      if (j && m[j] > m[j - 1] + kPredicateTol)
        throw InvalidArgument("moment sequence increases at m_" + std::to_string(j));
    }
    MomentSequence out;
    out.binary = std::move(m);
    return out;
  }

  std::size_t depth() const { return patterns.empty() ? binary.size() - 1 : patterns.size(); }
  bool has_patterns() const { return !patterns.empty(); }

  /// (-1)^r Delta^r m_j, the probability of j ones followed by r zeros.
  double difference(std::size_t j, std::size_t r) const {
    if (j + r > depth()) throw LevelOutOfRange("difference", j + r, depth());
    if (j + r == 0) return 1.0;
    if (has_patterns()) {
      const auto& lvl = patterns[j + r - 1];
      const auto it = lvl.find(Counts{r, j});
      return it == lvl.end() ? 0.0 : it->second;
    }
    // Alternating sums cancel catastrophically in double precision.
    using big = boost::multiprecision::cpp_bin_float_50;
    big s = 0, c = 1;
    for (std::size_t i = 0; i <= r; ++i) {
      const big term = c * big(binary[j + i]);
      s += (i % 2 == 0) ? term : big(-term);
      c = c * big(r - i) / big(i + 1);
    }
    return static_cast<double>(s);
  }
};

inline MomentSequence moments(const MarginalFamily& p) {
  const CheckReport ex = check_exchangeability(p);
  if (!ex.holds)
    throw NotExchangeable("moments: family is not exchangeable (deviation " +
                          std::to_string(ex.max_deviation) + " at level " +
                          std::to_string(ex.level) + ")");
  MomentSequence m;
  m.k = p.k();
  m.patterns.resize(p.depth());
  for (std::size_t n = 1; n <= p.depth(); ++n)
    for (const auto& c : compositions(n, p.k())) m.patterns[n - 1][c] = p.count_probability(c);
  if (p.k() == 2) {
    m.binary.push_back(1.0);
    for (std::size_t j = 1; j <= p.depth(); ++j) m.binary.push_back(p.count_probability({0, j}));
  }
  return m;
}

/// (-1)^r Delta^r m_j >= -tol for all j + r <= N. Every finite exchangeable
/// family passes; passing does not imply extendability.
inline CheckReport pattern_nonnegativity_check(const MomentSequence& m,
                                               double tol = kPredicateTol) {
  CheckReport r;
  r.note = "necessary for a genuine finite exchangeable family; not an extendability test";
  if (m.has_patterns()) {
    for (std::size_t n = 1; n <= m.patterns.size(); ++n)
      for (const auto& [c, v] : m.patterns[n - 1])
        if (-v > r.max_deviation) r.record(-v, n, "counts " + counts_key(c));
    return r.finish(tol);
  }
  const std::size_t N = m.depth();
  for (std::size_t n = 1; n <= N; ++n)
    for (std::size_t j = 0; j <= n; ++j) {
      const double v = m.difference(j, n - j);
      if (-v > r.max_deviation)
        r.record(-v, n, "j=" + std::to_string(j) + ", r=" + std::to_string(n - j));
    }
  return r.finish(tol);
}

struct Reconstruction {
  MixingMeasure measure;
  double raw_sum = 0.0;    // sum of weights before clipping
  double clip_mass = 0.0;  // total negative weight removed
};

/// Atoms at theta = j/n with weights C(n,j) (-1)^{n-j} Delta^{n-j} m_j.
inline Reconstruction hausdorff_reconstruct(const MomentSequence& m, std::size_t n) {
  if (m.k != 2) throw InvalidArgument("hausdorff_reconstruct: requires a binary alphabet");
  if (n == 0 || n > m.depth()) throw LevelOutOfRange("hausdorff_reconstruct", n, m.depth());
  std::vector<double> w(n + 1);
  double raw = 0.0, clipped = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    w[j] = binomial(n, j) * m.difference(j, n - j);
    raw += w[j];
    if (w[j] < 0.0) {
      clipped -= w[j];
      w[j] = 0.0;
    }
  }
  const double kept = raw + clipped;
  if (!(kept > 0.0)) throw InvalidArgument("hausdorff_reconstruct: no nonnegative mass");
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j <= n; ++j) {
    const double theta = static_cast<double>(j) / static_cast<double>(n);
    atoms.push_back({{1.0 - theta, theta}, w[j] / kept});
  }
  return {MixingMeasure(2, std::move(atoms)), raw, clipped};
}

/// COUNT family whose level-n law is the mixture of iid q^n.
inline MarginalFamily mixture_marginals(const MixingMeasure& mu, std::size_t depth) {
  std::vector<MarginalFamily::CountLevel> levels(depth);
  for (std::size_t n = 1; n <= depth; ++n)
    for (const auto& c : compositions(n, mu.k())) {
      const double v = mu.pattern_probability(c);
      if (v > 0.0) levels[n - 1].emplace(c, v);
    }
  return MarginalFamily::count(FinSpace::range(mu.k()), std::move(levels));
}

/// All points c / resolution of the k-simplex. In the binary case they are
/// ordered by increasing theta.
inline std::vector<std::vector<double>> simplex_grid(std::size_t k, std::size_t resolution) {
  if (k == 0 || resolution == 0) throw InvalidArgument("simplex_grid: empty grid");
  std::vector<std::vector<double>> out;
  for (const auto& c : compositions(resolution, k)) {
    std::vector<double> q(k);
    for (std::size_t s = 0; s < k; ++s)
      q[s] = static_cast<double>(c[s]) / static_cast<double>(resolution);
    out.push_back(std::move(q));
  }
  return out;
}

/// Kernel from the grid (as a finite space) to the alphabet; row i is grid[i].
inline Kernel grid_samp(const std::vector<std::vector<double>>& grid, const FinSpace& alphabet) {
  if (grid.empty()) throw InvalidArgument("grid_samp: empty grid");
  std::vector<double> e;
  for (const auto& q : grid) {
    if (q.size() != alphabet.size())
      throw DomainMismatch("grid_samp: point dimension vs alphabet",
                           std::to_string(q.size()), alphabet.describe());
    e.insert(e.end(), q.begin(), q.end());
  }
  return Kernel(FinSpace::range(grid.size()), alphabet, std::move(e));
}

/// Worker count: hardware concurrency, capped by MARKOVDF_THREADS.
inline std::size_t thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MARKOVDF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = std::min(n, static_cast<std::size_t>(v));
  }
  return n;
}

/// Runs body(i) for i in [0, n) on up to thread_count() workers. Each index
/// is handled by exactly one worker, so results do not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

struct MatchOptions {
  std::size_t max_iterations = 10000;
  /// Stop once an iteration moves the weights by less than this (max norm).
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  /// Seeded random initial weights instead of uniform ones.
  bool random_init = false;
};

struct MatchResult {
  MixingMeasure measure;
  /// Max absolute mismatch over all fitted pattern probabilities.
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t rows = 0;
};

namespace detail {

/// Euclidean projection onto the probability simplex.
inline void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  for (auto& x : v) x = std::max(0.0, x - tau);
}

/// Lawson-Hanson active-set NNLS for min |M x - d|, started from the support
/// of `x` (which must be nonnegative).
inline Eigen::VectorXd nnls_from(const Eigen::MatrixXd& M, const Eigen::VectorXd& d,
                                 Eigen::VectorXd x, double tol = 1e-14) {
  const Eigen::Index G = M.cols();
  std::vector<bool> passive(static_cast<std::size_t>(G));
  for (Eigen::Index g = 0; g < G; ++g) passive[g] = x[g] > 0.0;

  auto solve_passive = [&] {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index g = 0; g < G; ++g)
      if (passive[g]) cols.push_back(g);
    Eigen::MatrixXd sub(M.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = M.col(cols[i]);
    const Eigen::VectorXd zs = sub.completeOrthogonalDecomposition().solve(d);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(G);
    for (std::size_t i = 0; i < cols.size(); ++i) z[cols[i]] = zs[static_cast<Eigen::Index>(i)];
    return z;
  };
  // Moves x toward the passive solution until it is feasible.
  auto settle = [&] {
    for (Eigen::Index guard = 0; guard <= G; ++guard) {
      const Eigen::VectorXd z = solve_passive();
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index g = 0; g < G; ++g)
        if (passive[g] && z[g] <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x[g] / (x[g] - z[g]));
        }
      if (feasible) {
        x = z;
        return;
      }
      x += alpha * (z - x);
      for (Eigen::Index g = 0; g < G; ++g)
        if (passive[g] && x[g] <= 1e-300) {
          passive[g] = false;
          x[g] = 0.0;
        }
    }
  };

  if (x.sum() > 0.0) settle();
  for (Eigen::Index outer = 0; outer < 3 * G; ++outer) {
    const Eigen::VectorXd grad = M.transpose() * (d - M * x);
    Eigen::Index best = -1;
    double top = tol;
    for (Eigen::Index g = 0; g < G; ++g)
      if (!passive[g] && grad[g] > top) {
        top = grad[g];
        best = g;
      }
    if (best < 0) break;
    passive[best] = true;
    const Eigen::VectorXd z = solve_passive();
    if (z[best] <= 0.0) {
      // Numerically dependent column: leave it out.
      passive[best] = false;
      break;
    }
    settle();
  }
  return x;
}

}  // namespace detail

/// Best mixture over a fixed grid for the pattern probabilities of `p` at
/// levels 1..max_level, fitted by least squares on the simplex.
///
/// Accelerated projected gradient runs first (at most max_iterations steps,
/// stopping when no weight moves by more than `tolerance`). An active-set
/// NNLS pass started from its support then polishes the solution; the
/// better of the two by max mismatch is returned.
inline MatchResult grid_moment_match(const MarginalFamily& p,
                                     const std::vector<std::vector<double>>& grid,
                                     std::size_t max_level, const MatchOptions& opt = {}) {
  if (grid.empty()) throw InvalidArgument("grid_moment_match: empty grid");
  if (max_level == 0 || max_level > p.depth())
    throw LevelOutOfRange("grid_moment_match", max_level, p.depth());
  const CheckReport ex = check_exchangeability(p);
  if (!ex.holds) throw NotExchangeable("grid_moment_match: family is not exchangeable");
  const std::size_t k = p.k();
  for (const auto& q : grid)
    if (q.size() != k)
      throw DomainMismatch("grid_moment_match: grid point dimension vs alphabet",
                           std::to_string(q.size()), std::to_string(k));

  std::vector<Counts> patterns;
  std::vector<double> b;
  for (std::size_t n = 1; n <= max_level; ++n)
    for (const auto& c : compositions(n, k)) {
      patterns.push_back(c);
      b.push_back(p.count_probability(c));
    }
  const std::size_t R = patterns.size(), G = grid.size();

  // A is stored column-major: column g holds the patterns under grid[g].
  std::vector<double> A(R * G);
  parallel_for(G, [&](std::size_t g) {
    for (std::size_t r = 0; r < R; ++r) {
      double prod = 1.0;
      for (std::size_t s = 0; s < k; ++s)
        if (patterns[r][s]) prod *= std::pow(grid[g][s], static_cast<double>(patterns[r][s]));
      A[g * R + r] = prod;
    }
  });

  auto apply = [&](const std::vector<double>& w, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t g = 0; g < G; ++g)
      if (w[g] != 0.0)
        for (std::size_t r = 0; r < R; ++r) out[r] += A[g * R + r] * w[g];
  };
  auto apply_t = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (std::size_t g = 0; g < G; ++g) {
      double s = 0.0;
      for (std::size_t r = 0; r < R; ++r) s += A[g * R + r] * v[r];
      out[g] = s;
    }
  };

  // Lipschitz constant of the gradient: largest eigenvalue of A^T A.
  std::vector<double> v(G, 1.0), Av(R), AtAv(G);
  double L = 1.0;
  for (int it = 0; it < 100; ++it) {
    apply(v, Av);
    apply_t(Av, AtAv);
    const double norm = std::sqrt(std::inner_product(AtAv.begin(), AtAv.end(), AtAv.begin(), 0.0));
    if (norm == 0.0) break;
    L = norm / std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (std::size_t g = 0; g < G; ++g) v[g] = AtAv[g] / norm;
  }
  const double step = 1.0 / (1.01 * L);

  std::vector<double> w(G, 1.0 / static_cast<double>(G));
  if (opt.random_init) {
    Rng rng(opt.seed);
    w = random_distribution(G, rng);
  }
  std::vector<double> y = w, prev = w, resid(R), grad(G);
  double t = 1.0;
  std::size_t it = 0;
  for (; it < opt.max_iterations; ++it) {
    apply(y, resid);
    for (std::size_t r = 0; r < R; ++r) resid[r] -= b[r];
    apply_t(resid, grad);
    prev = w;
    for (std::size_t g = 0; g < G; ++g) w[g] = y[g] - step * grad[g];
    detail::project_simplex(w);
    double move = 0.0;
    for (std::size_t g = 0; g < G; ++g) move = std::max(move, std::abs(w[g] - prev[g]));
    if (move < opt.tolerance) {
      ++it;
      break;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    // Restart momentum when it points uphill.
    double uphill = 0.0;
    for (std::size_t g = 0; g < G; ++g) uphill += (y[g] - w[g]) * (w[g] - prev[g]);
    if (uphill > 0.0) {
      y = w;
      t = 1.0;
      continue;
    }
    for (std::size_t g = 0; g < G; ++g) y[g] = w[g] + ((t - 1.0) / t_next) * (w[g] - prev[g]);
    t = t_next;
  }

  auto mismatch = [&](const std::vector<double>& x) {
    apply(x, resid);
    double out = 0.0;
    for (std::size_t r = 0; r < R; ++r) out = std::max(out, std::abs(resid[r] - b[r]));
    return out;
  };
  double residual = mismatch(w);

  {
    // The sum-to-one constraint enters as one extra least-squares row.
    Eigen::MatrixXd M(static_cast<Eigen::Index>(R + 1), static_cast<Eigen::Index>(G));
    Eigen::VectorXd d(static_cast<Eigen::Index>(R + 1)), x0(static_cast<Eigen::Index>(G));
    for (std::size_t g = 0; g < G; ++g) {
      for (std::size_t r = 0; r < R; ++r) M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g)) = A[g * R + r];
      M(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(g)) = 1.0;
      x0[static_cast<Eigen::Index>(g)] = w[g];
    }
    for (std::size_t r = 0; r < R; ++r) d[static_cast<Eigen::Index>(r)] = b[r];
    d[static_cast<Eigen::Index>(R)] = 1.0;
    const Eigen::VectorXd x = detail::nnls_from(M, d, x0);
    std::vector<double> polished(G);
    double mass = 0.0;
    for (std::size_t g = 0; g < G; ++g) mass += polished[g] = std::max(0.0, x[static_cast<Eigen::Index>(g)]);
    if (mass > 0.0) {
      for (auto& v : polished) v /= mass;
      const double r2 = mismatch(polished);
      if (r2 < residual) {
        residual = r2;
        w = std::move(polished);
      }
    }
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<Atom> atoms;
  for (std::size_t g = 0; g < G; ++g)
    if (w[g] > 0.0) atoms.push_back({grid[g], w[g] / total});
  return {MixingMeasure(k, std::move(atoms)), residual, it, R};
}

enum class Metric { Kolmogorov, Wasserstein1 };

namespace detail {

/// (theta, weight) pairs sorted by theta, equal thetas merged.
inline std::vector<std::pair<double, double>> binary_atoms(const MixingMeasure& m) {
  m.require_binary("measure_distance");
  std::vector<std::pair<double, double>> out;
  for (const auto& a : m.atoms()) out.emplace_back(a.q[1], a.weight);
  std::sort(out.begin(), out.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [x, w] : out) {
    if (!merged.empty() && merged.back().first == x)
      merged.back().second += w;
    else
      merged.emplace_back(x, w);
  }
  return merged;
}

}  // namespace detail

/// Distance between the theta-marginals of two binary mixing measures.
inline double measure_distance(const MixingMeasure& a, const MixingMeasure& b, Metric metric) {
  if (a.k() != b.k())
    throw DomainMismatch("measure_distance: alphabet sizes", std::to_string(a.k()),
                         std::to_string(b.k()));
  const auto xa = detail::binary_atoms(a), xb = detail::binary_atoms(b);
  std::vector<double> points;
  for (const auto& [x, w] : xa) points.push_back(x);
  for (const auto& [x, w] : xb) points.push_back(x);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  double out = 0.0, Fa = 0.0, Fb = 0.0;
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    while (ia < xa.size() && xa[ia].first <= x) Fa += xa[ia++].second;
    while (ib < xb.size() && xb[ib].first <= x) Fb += xb[ib++].second;
    const double gap = std::abs(Fa - Fb);
    if (metric == Metric::Kolmogorov) {
      out = std::max(out, gap);
    } else {
      const double next = i + 1 < points.size() ? points[i + 1] : x;
      out += gap * (next - x);
    }
  }
  return out;
}

/// Distance between a binary mixing measure and a continuous law on [0,1]
/// given by its CDF.
inline double measure_distance(const MixingMeasure& a, const std::function<double(double)>& cdf,
                               Metric metric) {
  const auto xa = detail::binary_atoms(a);
  if (metric == Metric::Kolmogorov) {
    double out = 0.0, F = 0.0;
    for (const auto& [x, w] : xa) {
      const double G = cdf(x);
      out = std::max(out, std::abs(F - G));  // left limit
      F += w;
      out = std::max(out, std::abs(F - G));
    }
    return std::max(out, std::abs(F - cdf(1.0)));
  }
  using boost::math::quadrature::gauss_kronrod;
  double out = 0.0, F = 0.0, left = 0.0;
  auto piece = [&](double lo, double hi, double level) {
    if (hi <= lo) return 0.0;
    return gauss_kronrod<double, 31>::integrate(
        [&](double x) { return std::abs(level - cdf(x)); }, lo, hi, 10, 1e-12);
  };
  for (const auto& [x, w] : xa) {
    out += piece(left, x, F);
    F += w;
    left = x;
  }
  return out + piece(left, 1.0, F);
}

}  // namespace markovdf
