#pragma once

// Truncated laws on X^N: consistent families of joint distributions on X^n
// for n <= depth, with exchangeability, spreadability and tail-conditional
// diagnostics.
//
// DENSE levels store p_n as a flat array of length k^n with coordinate 1 most
// significant. COUNT levels store, for each count vector, the probability of
// any single sequence with those counts; such a family is exchangeable by
// construction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "markovdf/combinatorics.hpp"
#include "markovdf/error.hpp"
#include "markovdf/finstoch.hpp"

namespace markovdf {

/// Largest dense level (number of entries) the library will materialize.
inline constexpr std::size_t kDenseCap = 1u << 19;

/// Histories with probability at or below this are treated as null.
inline constexpr double kSupportFloor = 1e-12;

enum class FamilyForm { Dense, Count };

inline const char* to_string(FamilyForm f) {
  return f == FamilyForm::Dense ? "dense" : "count";
}

struct CheckReport {
  bool holds = true;
  double max_deviation = 0.0;
  double tolerance = kPredicateTol;
  /// Level at which max_deviation occurs (0 when nothing deviates).
  std::size_t level = 0;
  std::string witness;
  std::string note;

  void record(double deviation, std::size_t at_level, std::string what) {
    if (deviation > max_deviation) {
      max_deviation = deviation;
      level = at_level;
      witness = std::move(what);
    }
  }

  CheckReport& finish(double tol) {
    tolerance = tol;
    holds = max_deviation <= tol;
    return *this;
  }
};

class MarginalFamily {
 public:
  using CountLevel = std::map<Counts, double>;

  /// levels[n-1] has k^n entries.
  static MarginalFamily dense(FinSpace alphabet, std::vector<std::vector<double>> levels) {
    MarginalFamily p(std::move(alphabet), FamilyForm::Dense, levels.size());
    const std::size_t k = p.k();
    for (std::size_t n = 1; n <= levels.size(); ++n) {
      const std::size_t expected = bounded_power(k, n, kDenseCap);
      if (expected == 0)
        throw InvalidArgument("dense family: level " + std::to_string(n) +
                              " exceeds the dense size cap");
      if (levels[n - 1].size() != expected)
        throw InvalidArgument("dense family: level " + std::to_string(n) + " has " +
                              std::to_string(levels[n - 1].size()) + " entries, expected " +
                              std::to_string(expected));
      for (double v : levels[n - 1]) check_entry(v, n);
    }
    p.dense_ = std::move(levels);
    return p;
  }

  /// levels[n-1] maps count vectors (summing to n) to per-sequence
  /// probabilities; absent count vectors have probability 0.
  static MarginalFamily count(FinSpace alphabet, std::vector<CountLevel> levels) {
    MarginalFamily p(std::move(alphabet), FamilyForm::Count, levels.size());
    for (std::size_t n = 1; n <= levels.size(); ++n)
      for (const auto& [c, v] : levels[n - 1]) {
        if (c.size() != p.k() || total(c) != n)
          throw InvalidArgument("count family: level " + std::to_string(n) +
                                " holds count vector " + counts_key(c));
        check_entry(v, n);
      }
    p.counts_ = std::move(levels);
    return p;
  }

  FamilyForm form() const noexcept { return form_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t k() const noexcept { return alphabet_.size(); }
  const FinSpace& alphabet() const noexcept { return alphabet_; }

  const std::vector<double>& dense_level(std::size_t n) const {
    require_level(n, "dense_level");
    if (form_ != FamilyForm::Dense) throw InvalidArgument("dense_level: COUNT family");
    return dense_[n - 1];
  }

  const CountLevel& count_level(std::size_t n) const {
    require_level(n, "count_level");
    if (form_ != FamilyForm::Count) throw InvalidArgument("count_level: DENSE family");
    return counts_[n - 1];
  }

  /// p_n of one sequence; n = seq.size() <= depth, and p_0 = 1.
  double sequence_probability(const std::vector<std::size_t>& seq) const {
    if (seq.empty()) return 1.0;
    require_level(seq.size(), "sequence_probability");
    if (form_ == FamilyForm::Count) return count_probability(counts_of(seq, k()));
    std::size_t index = 0;
    for (auto s : seq) {
      if (s >= k()) throw InvalidArgument("symbol outside alphabet");
      index = index * k() + s;
    }
    return dense_[seq.size() - 1][index];
  }

  /// Probability of one sequence with counts `c`. For DENSE families this
  /// reads the sorted representative, which is only meaningful when the
  /// family is exchangeable.
  double count_probability(const Counts& c) const {
    const std::size_t n = total(c);
    if (n == 0) return 1.0;
    require_level(n, "count_probability");
    if (form_ == FamilyForm::Count) {
      const auto& lvl = counts_[n - 1];
      const auto it = lvl.find(c);
      return it == lvl.end() ? 0.0 : it->second;
    }
    std::vector<std::size_t> seq;
    for (std::size_t s = 0; s < c.size(); ++s) seq.insert(seq.end(), c[s], s);
    return sequence_probability(seq);
  }

  /// Dense copy of levels 1..min(depth, max_level).
  MarginalFamily to_dense(std::size_t max_level) const {
    const std::size_t top = std::min(depth_, max_level);
    if (form_ == FamilyForm::Dense) {
      return dense(alphabet_, std::vector<std::vector<double>>(
                                  dense_.begin(), dense_.begin() + static_cast<long>(top)));
    }
    std::vector<std::vector<double>> levels;
    for (std::size_t n = 1; n <= top; ++n) {
      const std::size_t size = bounded_power(k(), n, kDenseCap);
      if (size == 0) throw InvalidArgument("to_dense: level exceeds the dense size cap");
      std::vector<double> lvl(size);
      std::vector<std::size_t> seq(n);
      for (std::size_t idx = 0; idx < size; ++idx) {
        decode_sequence(idx, n, seq);
        lvl[idx] = count_probability(counts_of(seq, k()));
      }
      levels.push_back(std::move(lvl));
    }
    return dense(alphabet_, std::move(levels));
  }

  void decode_sequence(std::size_t index, std::size_t n, std::vector<std::size_t>& seq) const {
    seq.resize(n);
    for (std::size_t i = n; i-- > 0;) {
      seq[i] = index % k();
      index /= k();
    }
  }

  /// p_n as a state on X^n.
  Kernel level_state(std::size_t n) const {
    require_level(n, "level_state");
    const MarginalFamily d = form_ == FamilyForm::Dense ? *this : to_dense(n);
    return Kernel::state(FinSpace::power(alphabet_, n), d.dense_[n - 1]);
  }

  void require_level(std::size_t n, const char* what) const {
    if (n == 0 || n > depth_) throw LevelOutOfRange(what, n, depth_);
  }

 private:
  MarginalFamily(FinSpace alphabet, FamilyForm form, std::size_t depth)
      : alphabet_(std::move(alphabet)), form_(form), depth_(depth) {
    if (depth_ == 0) throw InvalidArgument("family: depth must be positive");
    if (alphabet_.is_unit()) throw InvalidArgument("family: alphabet must be a set");
  }

  static void check_entry(double v, std::size_t n) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0 + kEntrySlack)
      throw InvalidArgument("family: level " + std::to_string(n) +
                            " holds a value that is not a probability");
  }

  FinSpace alphabet_;
  FamilyForm form_;
  std::size_t depth_;
  std::vector<std::vector<double>> dense_;
  std::vector<CountLevel> counts_;
};

namespace detail {

inline std::string format_sequence(const std::vector<std::size_t>& seq) {
  std::string out = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(seq[i]);
  }
  return out + ")";
}

inline double level_mass(const MarginalFamily& p, std::size_t n) {
  if (p.form() == FamilyForm::Dense) {
    double s = 0.0;
    for (double v : p.dense_level(n)) s += v;
    return s;
  }
  double s = 0.0;
  for (const auto& [c, v] : p.count_level(n)) s += multinomial(c) * v;
  return s;
}

inline Counts plus(Counts c, std::size_t s) {
  ++c[s];
  return c;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace detail

/// Each level sums to one and summing p_n over its last coordinate gives p_{n-1}.
inline CheckReport check_consistency(const MarginalFamily& p, double tol = kPredicateTol) {
  CheckReport r;
  const std::size_t k = p.k();
  for (std::size_t n = 1; n <= p.depth(); ++n) {
    const double mass = detail::level_mass(p, n);
    r.record(std::abs(mass - 1.0), n, "level sum " + std::to_string(mass));
    if (n == 1) continue;
    if (p.form() == FamilyForm::Dense) {
      const auto& hi = p.dense_level(n);
      const auto& lo = p.dense_level(n - 1);
      for (std::size_t i = 0; i < lo.size(); ++i) {
        double s = 0.0;
        for (std::size_t x = 0; x < k; ++x) s += hi[i * k + x];
        r.record(std::abs(s - lo[i]), n, "prefix index " + std::to_string(i));
      }
    } else {
      for (const auto& c : compositions(n - 1, k)) {
        double s = 0.0;
        for (std::size_t x = 0; x < k; ++x) s += p.count_probability(detail::plus(c, x));
        r.record(std::abs(s - p.count_probability(c)), n, "prefix counts " + counts_key(c));
      }
    }
  }
  return r.finish(tol);
}

/// Invariance under every adjacent transposition at every level. COUNT
/// families hold by construction.
inline CheckReport check_exchangeability(const MarginalFamily& p, double tol = kPredicateTol) {
  CheckReport r;
  if (p.form() == FamilyForm::Count) {
    r.note = "count form is exchangeable by construction";
    return r.finish(tol);
  }
  std::vector<std::size_t> seq;
  for (std::size_t n = 2; n <= p.depth(); ++n) {
    const auto& lvl = p.dense_level(n);
    for (std::size_t idx = 0; idx < lvl.size(); ++idx) {
      p.decode_sequence(idx, n, seq);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (seq[i] == seq[i + 1]) continue;
        std::swap(seq[i], seq[i + 1]);
        const double d = std::abs(lvl[idx] - p.sequence_probability(seq));
        std::swap(seq[i], seq[i + 1]);
        if (d > r.max_deviation)
          r.record(d, n,
                   "transposition (" + std::to_string(i + 1) + "," + std::to_string(i + 2) +
                       ") at " + detail::format_sequence(seq));
      }
    }
  }
  return r.finish(tol);
}

/// Marginalizing p_n over the 1-based coordinates in `drop` equals p_{n-|drop|}.
inline CheckReport spreadability_check(const MarginalFamily& p, std::set<std::size_t> drop,
                                       std::size_t n, double tol = kPredicateTol) {
  p.require_level(n, "spreadability_check");
  for (auto i : drop)
    if (i == 0 || i > n)
      throw InvalidArgument("spreadability_check: coordinate " + std::to_string(i) +
                            " outside 1.." + std::to_string(n));
  const std::size_t d = drop.size(), m = n - d, k = p.k();
  CheckReport r;
  if (p.form() == FamilyForm::Dense) {
    const auto& lvl = p.dense_level(n);
    std::vector<double> reduced(bounded_power(k, m, kDenseCap), 0.0);
    std::vector<std::size_t> seq;
    for (std::size_t idx = 0; idx < lvl.size(); ++idx) {
      p.decode_sequence(idx, n, seq);
      std::size_t j = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!drop.count(i + 1)) j = j * k + seq[i];
      reduced[j] += lvl[idx];
    }
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      std::vector<std::size_t> kept;
      p.decode_sequence(j, m, kept);
      r.record(std::abs(reduced[j] - p.sequence_probability(kept)), n,
               "kept pattern " + detail::format_sequence(kept));
    }
    return r.finish(tol);
  }
  // COUNT: sum over the dropped coordinates grouped by their counts.
  const auto dropped = compositions(d, k);
  for (const auto& cy : compositions(m, k)) {
    double s = 0.0;
    for (const auto& cz : dropped) {
      Counts c = cy;
      for (std::size_t x = 0; x < k; ++x) c[x] += cz[x];
      s += multinomial(cz) * p.count_probability(c);
    }
    r.record(std::abs(s - p.count_probability(cy)), n, "kept counts " + counts_key(cy));
  }
  return r.finish(tol);
}

/// Distribution of coordinate 1 at level n given coordinates 2..n with
/// counts `history` (total n-1). Zero-evidence histories get the uniform row.
inline std::vector<double> tail_predictive(const MarginalFamily& p, const Counts& history) {
  const std::size_t k = p.k();
  if (history.size() != k) throw InvalidArgument("tail_predictive: wrong alphabet size");
  p.require_level(total(history) + 1, "tail_predictive");
  std::vector<double> row(k);
  double mass = 0.0;
  for (std::size_t x = 0; x < k; ++x) {
    row[x] = p.count_probability(detail::plus(history, x));
    mass += row[x];
  }
  for (auto& v : row) v = mass > 0.0 ? v / mass : 1.0 / static_cast<double>(k);
  return row;
}

/// Conditional of coordinate 1 given coordinates 2..n, as a kernel X^{n-1} -> X.
inline Kernel tail_conditional(const MarginalFamily& p, std::size_t n) {
  if (n < 2 || n > p.depth()) throw LevelOutOfRange("tail_conditional", n, p.depth());
  const std::size_t k = p.k();
  const FinSpace history_space = FinSpace::power(p.alphabet(), n - 1);
  if (bounded_power(k, n, kDenseCap) == 0)
    throw InvalidArgument("tail_conditional: level too large to materialize; use "
                          "tail_predictive");
  if (p.form() == FamilyForm::Dense) {
    // Move coordinate 1 last and condition on the rest.
    std::vector<std::size_t> order;
    for (std::size_t i = 1; i < n; ++i) order.push_back(i);
    order.push_back(0);
    const Kernel joint = permute_codomain(p.level_state(n), order);
    return conditional(joint, n - 1).relabel(history_space, p.alphabet());
  }
  std::vector<double> e;
  std::vector<std::size_t> seq;
  for (std::size_t idx = 0; idx < history_space.size(); ++idx) {
    p.decode_sequence(idx, n - 1, seq);
    const auto row = tail_predictive(p, counts_of(seq, k));
    e.insert(e.end(), row.begin(), row.end());
  }
  return Kernel(history_space, p.alphabet(), std::move(e));
}

/// max over p-non-null histories (x_2..x_{n+1}) of the total variation
/// between the level-(n+1) tail conditional and the level-n tail conditional
/// given the shifted history (x_3..x_{n+1}).
inline double tail_shift_deviation(const MarginalFamily& p, std::size_t n) {
  if (n < 2 || n >= p.depth()) throw LevelOutOfRange("tail_shift_deviation", n, p.depth() - 1);
  const std::size_t k = p.k();
  double worst = 0.0;
  if (p.form() == FamilyForm::Count) {
    for (const auto& c : compositions(n, k)) {
      if (p.count_probability(c) <= kSupportFloor) continue;
      const auto longer = tail_predictive(p, c);
      for (std::size_t s = 0; s < k; ++s) {
        if (c[s] == 0) continue;
        Counts shifted = c;
        --shifted[s];
        worst = std::max(worst, detail::total_variation(longer, tail_predictive(p, shifted)));
      }
    }
    return worst;
  }
  const Kernel longer = tail_conditional(p, n + 1);
  const Kernel shorter = tail_conditional(p, n);
  const auto& hist = p.dense_level(n);
  std::vector<std::size_t> seq;
  for (std::size_t idx = 0; idx < hist.size(); ++idx) {
    // Evidence for the history as it appears in coordinates 2..n+1.
    double evidence = 0.0;
    p.decode_sequence(idx, n, seq);
    for (std::size_t x = 0; x < k; ++x) {
      std::vector<std::size_t> full{x};
      full.insert(full.end(), seq.begin(), seq.end());
      evidence += p.sequence_probability(full);
    }
    if (evidence <= kSupportFloor) continue;
    const std::size_t shifted = idx % bounded_power(k, n - 1, kDenseCap);
    const auto a = longer.row(idx), b = shorter.row(shifted);
    worst = std::max(worst, detail::total_variation({a.begin(), a.end()}, {b.begin(), b.end()}));
  }
  return worst;
}

/// max over length-n patterns x of
///   | p_n(x) - sum_{xi in X^m} p_m(xi) prod_i t(x_i | xi) |
/// where t is the tail conditional with an m-long conditioning window.
inline double conditionally_iid_error(const MarginalFamily& p, std::size_t n, std::size_t m) {
  if (n == 0 || n > p.depth()) throw LevelOutOfRange("conditionally_iid_error", n, p.depth());
  if (m + 1 > p.depth())
    throw LevelOutOfRange("conditionally_iid_error: window", m, p.depth() - 1);
  const std::size_t k = p.k();
  struct Weighted {
    double weight;
    std::vector<double> predictive;
  };
  std::vector<Weighted> windows;
  if (p.form() == FamilyForm::Count) {
    for (const auto& c : compositions(m, k)) {
      const double w = multinomial(c) * p.count_probability(c);
      if (w > 0.0) windows.push_back({w, tail_predictive(p, c)});
    }
    double worst = 0.0;
    for (const auto& cx : compositions(n, k)) {
      double mix = 0.0;
      for (const auto& win : windows) {
        double prod = win.weight;
        for (std::size_t s = 0; s < k; ++s)
          prod *= std::pow(win.predictive[s], static_cast<double>(cx[s]));
        mix += prod;
      }
      worst = std::max(worst, std::abs(p.count_probability(cx) - mix));
    }
    return worst;
  }
  const std::size_t nwin = bounded_power(k, m, kDenseCap);
  if (nwin == 0 || bounded_power(k, n, kDenseCap) == 0)
    throw InvalidArgument("conditionally_iid_error: dense level too large");
  std::vector<std::size_t> seq;
  for (std::size_t idx = 0; idx < nwin; ++idx) {
    p.decode_sequence(idx, m, seq);
    const double w = p.sequence_probability(seq);
    if (w <= 0.0) continue;
    std::vector<double> row(k);
    double mass = 0.0;
    for (std::size_t x = 0; x < k; ++x) {
      std::vector<std::size_t> full{x};
      full.insert(full.end(), seq.begin(), seq.end());
      row[x] = p.sequence_probability(full);
      mass += row[x];
    }
    for (auto& v : row) v = mass > 0.0 ? v / mass : 1.0 / static_cast<double>(k);
    windows.push_back({w, std::move(row)});
  }
  double worst = 0.0;
  const std::size_t npat = bounded_power(k, n, kDenseCap);
  for (std::size_t idx = 0; idx < npat; ++idx) {
    p.decode_sequence(idx, n, seq);
    double mix = 0.0;
    for (const auto& win : windows) {
      double prod = win.weight;
      for (auto s : seq) prod *= win.predictive[s];
      mix += prod;
    }
    worst = std::max(worst, std::abs(p.sequence_probability(seq) - mix));
  }
  return worst;
}

}  // namespace markovdf
