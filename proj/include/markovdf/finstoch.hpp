#pragma once

// Finite stochastic kernels: the concrete Markov category of finite sets and
// row-stochastic matrices. Row = domain element, column = codomain element;
// products are indexed row-major with the left factor most significant, so
// compose(h, f) is the matrix product f * h read as h after f.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "markovdf/error.hpp"

namespace markovdf {

inline constexpr double kPredicateTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kEntrySlack = 1e-12;

/// A finite labeled set. Products remember their atomic factors so that
/// marginals and conditionals can address them; the unit I has no factors.
class FinSpace {
 public:
  FinSpace() : labels_{"*"} {}

  explicit FinSpace(std::vector<std::string> labels) {
    if (labels.empty()) throw InvalidArgument("FinSpace: empty label list");
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("FinSpace: duplicate label");
    factors_.push_back(labels);
    labels_ = std::move(labels);
  }

  static FinSpace unit() { return FinSpace{}; }

  /// {"0", "1", ..., "n-1"}.
  static FinSpace range(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return FinSpace(std::move(labels));
  }

  static FinSpace tensor(const FinSpace& a, const FinSpace& b) {
    FinSpace out;
    out.factors_ = a.factors_;
    out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
    out.rebuild_labels();
    return out;
  }

  static FinSpace power(const FinSpace& x, std::size_t n) {
    FinSpace out;
    for (std::size_t i = 0; i < n; ++i) out = tensor(out, x);
    return out;
  }

  static FinSpace product(std::span<const FinSpace> spaces) {
    FinSpace out;
    for (const auto& s : spaces) out = tensor(out, s);
    return out;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t num_factors() const noexcept { return factors_.size(); }
  bool is_unit() const noexcept { return factors_.empty(); }

  FinSpace factor(std::size_t i) const {
    if (i >= factors_.size())
      throw InvalidArgument("FinSpace::factor: index " + std::to_string(i) +
                            " out of range");
    return FinSpace(factors_[i]);
  }

  std::size_t factor_size(std::size_t i) const { return factors_.at(i).size(); }

  /// The same set seen as a single atomic factor.
  FinSpace flatten() const { return is_unit() ? *this : FinSpace(labels_); }

  std::string describe() const {
    if (is_unit()) return "I";
    std::string out;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      if (f) out += " x ";
      out += "{";
      const auto& ls = factors_[f];
      const std::size_t shown = std::min<std::size_t>(ls.size(), 6);
      for (std::size_t i = 0; i < shown; ++i) {
        if (i) out += ",";
        out += ls[i];
      }
      if (shown < ls.size()) out += ",...(" + std::to_string(ls.size()) + ")";
      out += "}";
    }
    return out;
  }

  bool operator==(const FinSpace& other) const { return factors_ == other.factors_; }

 private:
  void rebuild_labels() {
    if (factors_.empty()) {
      labels_ = {"*"};
      return;
    }
    if (factors_.size() == 1) {
      labels_ = factors_.front();
      return;
    }
    std::vector<std::string> acc{""};
    for (const auto& ls : factors_) {
      std::vector<std::string> next;
      next.reserve(acc.size() * ls.size());
      for (const auto& prefix : acc)
        for (const auto& l : ls) next.push_back(prefix.empty() ? l : prefix + "," + l);
      acc = std::move(next);
    }
    for (auto& l : acc) l = "(" + l + ")";
    labels_ = std::move(acc);
  }

  std::vector<std::vector<std::string>> factors_;
  std::vector<std::string> labels_;
};

/// Outcome of an equality-style predicate. `holds` iff max_deviation <= tolerance.
struct EqReport {
  bool holds = true;
  double max_deviation = 0.0;
  double tolerance = kPredicateTol;
  /// (input element, output element) realizing max_deviation, when nonzero.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::string note;
};

/// A morphism of FinStoch: entry at(a, x) = f(x|a).
class Kernel {
 public:
  Kernel(FinSpace dom, FinSpace cod, std::vector<double> entries)
      : dom_(std::move(dom)), cod_(std::move(cod)), entries_(std::move(entries)) {
    validate();
  }

  static Kernel from_rows(FinSpace dom, FinSpace cod,
                          const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    if (rows.size() != dom.size())
      throw InvalidKernel("Kernel: expected " + std::to_string(dom.size()) +
                          " rows, got " + std::to_string(rows.size()));
    for (const auto& r : rows) {
      if (r.size() != cod.size())
        throw InvalidKernel("Kernel: row of length " + std::to_string(r.size()) +
                            ", expected " + std::to_string(cod.size()));
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return Kernel(std::move(dom), std::move(cod), std::move(flat));
  }

  /// A distribution on `space`, i.e. a kernel I -> space.
  static Kernel state(FinSpace space, std::vector<double> probs) {
    return Kernel(FinSpace::unit(), std::move(space), std::move(probs));
  }

  static Kernel identity(const FinSpace& x) {
    return deterministic(x, x, [](std::size_t a) { return a; });
  }

  template <typename Fn>
  static Kernel deterministic(FinSpace dom, FinSpace cod, Fn&& map) {
    std::vector<double> e(dom.size() * cod.size(), 0.0);
    for (std::size_t a = 0; a < dom.size(); ++a) e[a * cod.size() + map(a)] = 1.0;
    return Kernel(std::move(dom), std::move(cod), std::move(e));
  }

  const FinSpace& dom() const noexcept { return dom_; }
  const FinSpace& cod() const noexcept { return cod_; }
  std::size_t rows() const noexcept { return dom_.size(); }
  std::size_t cols() const noexcept { return cod_.size(); }

  double at(std::size_t a, std::size_t x) const { return entries_[a * cols() + x]; }

  std::span<const double> row(std::size_t a) const {
    return {entries_.data() + a * cols(), cols()};
  }

  const std::vector<double>& entries() const noexcept { return entries_; }

  /// Same matrix over spaces of equal sizes (e.g. a flattened product).
  Kernel relabel(FinSpace dom, FinSpace cod) const {
    if (dom.size() != dom_.size() || cod.size() != cod_.size())
      throw DomainMismatch("Kernel::relabel: size mismatch",
                           dom_.describe() + " -> " + cod_.describe(),
                           dom.describe() + " -> " + cod.describe());
    return Kernel(std::move(dom), std::move(cod), entries_);
  }

  bool is_state() const noexcept { return dom_.is_unit(); }

 private:
  void validate() const {
    if (entries_.size() != dom_.size() * cod_.size())
      throw InvalidKernel("Kernel: " + std::to_string(entries_.size()) +
                          " entries for a " + std::to_string(dom_.size()) + "x" +
                          std::to_string(cod_.size()) + " matrix");
    for (std::size_t a = 0; a < rows(); ++a) {
      double sum = 0.0;
      for (std::size_t x = 0; x < cols(); ++x) {
        const double v = entries_[a * cols() + x];
        if (!std::isfinite(v) || v < 0.0 || v > 1.0 + kEntrySlack)
          throw InvalidKernel("Kernel: entry (" + std::to_string(a) + "," +
                              std::to_string(x) + ") = " + std::to_string(v) +
                              " is not a probability");
        sum += v;
      }
      if (std::abs(sum - 1.0) > kPredicateTol)
        throw InvalidKernel("Kernel: row " + std::to_string(a) + " sums to " +
                            std::to_string(sum));
    }
  }

  FinSpace dom_;
  FinSpace cod_;
  std::vector<double> entries_;
};

// ---------------------------------------------------------------------------
// Composition and monoidal structure

/// h after f (Chapman-Kolmogorov).
inline Kernel compose(const Kernel& h, const Kernel& f) {
  if (!(f.cod() == h.dom()))
    throw DomainMismatch("compose: codomain of f does not match domain of h",
                         f.cod().describe(), h.dom().describe());
  const std::size_t na = f.rows(), nx = f.cols(), nz = h.cols();
  std::vector<double> out(na * nz, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double w = f.at(a, x);
      if (w == 0.0) continue;
      const auto hrow = h.row(x);
      for (std::size_t z = 0; z < nz; ++z) out[a * nz + z] += w * hrow[z];
    }
  }
  return Kernel(f.dom(), h.cod(), std::move(out));
}

inline Kernel tensor(const Kernel& f, const Kernel& g) {
  const std::size_t nb = g.rows(), nx = f.cols(), ny = g.cols();
  std::vector<double> out(f.rows() * nb * nx * ny);
  const std::size_t ncols = nx * ny;
  for (std::size_t a = 0; a < f.rows(); ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y)
          out[(a * nb + b) * ncols + x * ny + y] = f.at(a, x) * g.at(b, y);
  return Kernel(FinSpace::tensor(f.dom(), g.dom()), FinSpace::tensor(f.cod(), g.cod()),
                std::move(out));
}

inline Kernel identity(const FinSpace& x) { return Kernel::identity(x); }

inline Kernel copy(const FinSpace& x) {
  const std::size_t n = x.size();
  return Kernel::deterministic(x, FinSpace::tensor(x, x),
                               [n](std::size_t a) { return a * n + a; });
}

inline Kernel discard(const FinSpace& x) {
  return Kernel(x, FinSpace::unit(), std::vector<double>(x.size(), 1.0));
}

inline Kernel swap(const FinSpace& x, const FinSpace& y) {
  const std::size_t nx = x.size(), ny = y.size();
  return Kernel::deterministic(FinSpace::tensor(x, y), FinSpace::tensor(y, x),
                               [nx, ny](std::size_t i) {
                                 const std::size_t a = i / ny, b = i % ny;
                                 return b * nx + a;
                               });
}

enum class Structural { Copy, Discard, Swap };

inline Kernel structural(Structural kind, const FinSpace& x,
                         const std::optional<FinSpace>& y = std::nullopt) {
  switch (kind) {
    case Structural::Copy:
      return copy(x);
    case Structural::Discard:
      return discard(x);
    case Structural::Swap:
      if (!y) throw InvalidArgument("structural: swap requires a second space");
      return swap(x, *y);
  }
  throw InvalidArgument("structural: unknown kind");
}

// ---------------------------------------------------------------------------
// Factor addressing

namespace detail {

inline std::vector<std::size_t> factor_sizes(const FinSpace& s) {
  std::vector<std::size_t> sizes(s.num_factors());
  for (std::size_t i = 0; i < sizes.size(); ++i) sizes[i] = s.factor_size(i);
  return sizes;
}

/// Mixed-radix digits of `index`, most significant first.
inline void decode(std::size_t index, std::span<const std::size_t> radix,
                   std::span<std::size_t> digits) {
  for (std::size_t i = radix.size(); i-- > 0;) {
    digits[i] = index % radix[i];
    index /= radix[i];
  }
}

inline std::size_t encode(std::span<const std::size_t> digits,
                          std::span<const std::size_t> radix) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) index = index * radix[i] + digits[i];
  return index;
}

}  // namespace detail

/// Reorders the codomain factors: factor order[i] of f.cod lands in position i.
inline Kernel permute_codomain(const Kernel& f, const std::vector<std::size_t>& order) {
  const FinSpace& cod = f.cod();
  const std::size_t nf = cod.num_factors();
  std::vector<bool> seen(nf, false);
  if (order.size() != nf)
    throw InvalidArgument("permute_codomain: order must list every factor once");
  for (auto i : order) {
    if (i >= nf || seen[i])
      throw InvalidArgument("permute_codomain: order must list every factor once");
    seen[i] = true;
  }
  const auto radix = detail::factor_sizes(cod);
  std::vector<FinSpace> out_factors;
  std::vector<std::size_t> out_radix;
  for (auto i : order) {
    out_factors.push_back(cod.factor(i));
    out_radix.push_back(radix[i]);
  }
  const FinSpace out_cod = FinSpace::product(out_factors);
  std::vector<std::size_t> digits(nf), permuted(nf);
  std::vector<std::size_t> target(cod.size());
  for (std::size_t c = 0; c < cod.size(); ++c) {
    detail::decode(c, radix, digits);
    for (std::size_t i = 0; i < nf; ++i) permuted[i] = digits[order[i]];
    target[c] = detail::encode(permuted, out_radix);
  }
  std::vector<double> out(f.rows() * out_cod.size(), 0.0);
  for (std::size_t a = 0; a < f.rows(); ++a)
    for (std::size_t c = 0; c < cod.size(); ++c)
      out[a * out_cod.size() + target[c]] = f.at(a, c);
  return Kernel(f.dom(), out_cod, std::move(out));
}

/// Discards every codomain factor not listed in `keep`. Kept factors retain
/// their relative order.
inline Kernel marginal(const Kernel& f, std::vector<std::size_t> keep) {
  const FinSpace& cod = f.cod();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto i : keep)
    if (i >= cod.num_factors())
      throw InvalidArgument("marginal: factor index " + std::to_string(i) +
                            " out of range for " + cod.describe());
  const auto radix = detail::factor_sizes(cod);
  std::vector<FinSpace> kept;
  std::vector<std::size_t> kept_radix;
  for (auto i : keep) {
    kept.push_back(cod.factor(i));
    kept_radix.push_back(radix[i]);
  }
  const FinSpace out_cod = FinSpace::product(kept);
  std::vector<std::size_t> digits(radix.size()), sub(keep.size());
  std::vector<double> out(f.rows() * out_cod.size(), 0.0);
  for (std::size_t c = 0; c < cod.size(); ++c) {
    detail::decode(c, radix, digits);
    for (std::size_t k = 0; k < keep.size(); ++k) sub[k] = digits[keep[k]];
    const std::size_t target = detail::encode(sub, kept_radix);
    for (std::size_t a = 0; a < f.rows(); ++a)
      out[a * out_cod.size() + target] += f.at(a, c);
  }
  return Kernel(f.dom(), out_cod, std::move(out));
}

/// Splits f.cod into X (the first `given_factors` factors) and Y (the rest)
/// and returns f_{|X} : X (x) A -> Y. Rows whose X-marginal vanishes are
/// filled with the uniform distribution on Y.
inline Kernel conditional(const Kernel& f, std::size_t given_factors) {
  const FinSpace& cod = f.cod();
  if (given_factors > cod.num_factors())
    throw InvalidArgument("conditional: " + std::to_string(given_factors) +
                          " given factors but codomain " + cod.describe() + " has " +
                          std::to_string(cod.num_factors()));
  std::vector<FinSpace> xs, ys;
  for (std::size_t i = 0; i < cod.num_factors(); ++i)
    (i < given_factors ? xs : ys).push_back(cod.factor(i));
  const FinSpace x_space = FinSpace::product(xs);
  const FinSpace y_space = FinSpace::product(ys);
  const std::size_t nx = x_space.size(), ny = y_space.size(), na = f.rows();
  const FinSpace dom = FinSpace::tensor(x_space, f.dom());

  std::vector<double> out(nx * na * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t a = 0; a < na; ++a) {
      double mass = 0.0;
      for (std::size_t y = 0; y < ny; ++y) mass += f.at(a, x * ny + y);
      double* row = out.data() + (x * na + a) * ny;
      if (mass > 0.0) {
        for (std::size_t y = 0; y < ny; ++y) row[y] = f.at(a, x * ny + y) / mass;
      } else {
        std::fill(row, row + ny, 1.0 / static_cast<double>(ny));
      }
    }
  }
  return Kernel(dom, y_space, std::move(out));
}

/// Posterior kernel X -> A of f : A -> X under the prior m : I -> A, taken as
/// the conditional of the joint (f (x) id) . copy . m with respect to X.
inline Kernel bayesian_inverse(const Kernel& f, const Kernel& m) {
  if (!m.is_state())
    throw DomainMismatch("bayesian_inverse: prior must be a state", m.dom().describe(),
                         "I");
  if (!(m.cod() == f.dom()))
    throw DomainMismatch("bayesian_inverse: prior space differs from domain of f",
                         m.cod().describe(), f.dom().describe());
  const FinSpace& a_space = f.dom();
  const FinSpace x_flat = f.cod().flatten();
  const FinSpace a_flat = a_space.flatten();
  const Kernel f_flat = f.relabel(a_flat, x_flat);
  const Kernel m_flat = m.relabel(FinSpace::unit(), a_flat);
  const Kernel joint =
      compose(tensor(f_flat, identity(a_flat)), compose(copy(a_flat), m_flat));
  return conditional(joint, 1).relabel(f.cod(), a_space);
}

// ---------------------------------------------------------------------------
// Predicates

/// Entrywise comparison of two kernels with the same shape.
inline EqReport compare(const Kernel& lhs, const Kernel& rhs, double tol) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw DomainMismatch("compare: shape mismatch",
                         lhs.dom().describe() + " -> " + lhs.cod().describe(),
                         rhs.dom().describe() + " -> " + rhs.cod().describe());
  EqReport report;
  report.tolerance = tol;
  for (std::size_t a = 0; a < lhs.rows(); ++a)
    for (std::size_t x = 0; x < lhs.cols(); ++x) {
      const double d = std::abs(lhs.at(a, x) - rhs.at(a, x));
      if (d > report.max_deviation) {
        report.max_deviation = d;
        report.witness = std::make_pair(a, x);
      }
    }
  report.holds = report.max_deviation <= tol;
  return report;
}

/// copy . f == (f (x) f) . copy.
inline EqReport is_deterministic(const Kernel& f, double tol = kPredicateTol) {
  const Kernel lhs = compose(copy(f.cod()), f);
  const Kernel rhs = compose(tensor(f, f), copy(f.dom()));
  return compare(lhs, rhs, tol);
}

/// (id (x) f) . copy . m == (id (x) g) . copy . m for m : Theta -> A.
/// The witness is reported as (a, x).
inline EqReport as_equal(const Kernel& m, const Kernel& f, const Kernel& g,
                         double tol = kPredicateTol) {
  if (!(m.cod() == f.dom()))
    throw DomainMismatch("as_equal: reference measure does not land in dom f",
                         m.cod().describe(), f.dom().describe());
  if (!(f.dom() == g.dom()) || f.cod().size() != g.cod().size())
    throw DomainMismatch("as_equal: f and g have different shapes",
                         f.dom().describe() + " -> " + f.cod().describe(),
                         g.dom().describe() + " -> " + g.cod().describe());
  const Kernel g_as_f = g.relabel(f.dom(), f.cod());
  const Kernel copied = compose(copy(m.cod()), m);
  const Kernel id_a = identity(m.cod());
  const Kernel lhs = compose(tensor(id_a, f), copied);
  const Kernel rhs = compose(tensor(id_a, g_as_f), copied);
  EqReport report = compare(lhs, rhs, tol);
  if (report.witness) {
    const std::size_t col = report.witness->second, nx = f.cols();
    report.note = "theta=" + std::to_string(report.witness->first);
    report.witness = std::make_pair(col / nx, col % nx);
  }
  return report;
}

/// m-almost-sure determinism: copy . f =_m (f (x) f) . copy.
inline EqReport as_deterministic(const Kernel& m, const Kernel& f,
                                 double tol = kPredicateTol) {
  const Kernel lhs = compose(copy(f.cod()), f);
  const Kernel rhs = compose(tensor(f, f), copy(f.dom()));
  return as_equal(m, lhs, rhs, tol);
}

struct InvariantObservableReport {
  /// f =_p f . t^dagger
  EqReport hypothesis;
  /// f =_p f . t
  EqReport conclusion;
  /// The implication hypothesis => conclusion.
  bool holds = true;
  /// Number of zero-evidence rows of t^dagger filled uniformly.
  std::size_t filled_rows = 0;
};

/// For a stationary p (t . p = p) and a p-a.s. deterministic observable f,
/// checks that invariance under the time reversal t^dagger entails invariance
/// under t.
inline InvariantObservableReport check_invariant_observable(const Kernel& p,
                                                            const Kernel& t,
                                                            const Kernel& f,
                                                            double tol = kPredicateTol) {
  using Kind = PreconditionViolation::Kind;
  if (!p.is_state() || !(t.dom() == p.cod()) || !(t.cod() == p.cod()) ||
      !(f.dom() == p.cod()))
    throw PreconditionViolation(Kind::ShapeMismatch,
                                "check_invariant_observable: expected p: I -> T, "
                                "t: T -> T, f: T -> X",
                                0.0);
  const EqReport stationary = compare(compose(t, p), p, tol);
  if (!stationary.holds)
    throw PreconditionViolation(Kind::NotStationary,
                                "check_invariant_observable: t . p != p",
                                stationary.max_deviation);
  const EqReport det = as_deterministic(p, f, tol);
  if (!det.holds)
    throw PreconditionViolation(Kind::NotAlmostSurelyDeterministic,
                                "check_invariant_observable: f is not p-a.s. "
                                "deterministic",
                                det.max_deviation);

  const Kernel t_dagger = bayesian_inverse(t, p);
  InvariantObservableReport report;
  for (std::size_t x = 0; x < p.cols(); ++x) {
    double evidence = 0.0;
    for (std::size_t a = 0; a < p.cols(); ++a) evidence += t.at(a, x) * p.at(0, a);
    if (evidence == 0.0) ++report.filled_rows;
  }
  report.hypothesis = as_equal(p, f, compose(f, t_dagger), tol);
  report.conclusion = as_equal(p, f, compose(f, t), tol);
  if (report.filled_rows)
    report.hypothesis.note += " zero-evidence rows of t-dagger filled uniformly: " +
                              std::to_string(report.filled_rows);
  report.holds = !report.hypothesis.holds || report.conclusion.holds;
  return report;
}

/// Largest |row sum - 1| over all rows.
inline double max_row_sum_deviation(const Kernel& f) {
  double worst = 0.0;
  for (std::size_t a = 0; a < f.rows(); ++a) {
    const auto r = f.row(a);
    worst = std::max(worst, std::abs(std::accumulate(r.begin(), r.end(), 0.0) - 1.0));
  }
  return worst;
}

}  // namespace markovdf
