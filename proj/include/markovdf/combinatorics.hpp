#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "markovdf/error.hpp"

namespace markovdf {

/// Symbol multiplicities of a finite sequence over a k-letter alphabet.
using Counts = std::vector<std::size_t>;

inline std::size_t total(const Counts& c) {
  std::size_t n = 0;
  for (auto v : c) n += v;
  return n;
}

/// All count vectors of length k summing to n, starting at (n, 0, ..., 0)
/// and ending at (0, ..., 0, n).
inline std::vector<Counts> compositions(std::size_t n, std::size_t k) {
  std::vector<Counts> out;
  if (k == 0) return out;
  Counts c(k, 0);
  c[0] = n;
  while (true) {
    out.push_back(c);
    if (k == 1 || c[k - 1] == n) break;
    // Next in reverse-lexicographic order: move one unit out of the
    // rightmost nonzero non-final slot and gather the tail behind it.
    const std::size_t tail = c[k - 1];
    c[k - 1] = 0;
    std::size_t j = k - 2;
    while (c[j] == 0) --j;
    --c[j];
    c[j + 1] = tail + 1;
  }
  return out;
}

inline double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_multinomial(const Counts& c) {
  double out = log_factorial(total(c));
  for (auto v : c) out -= log_factorial(v);
  return out;
}

/// Number of sequences with the given counts.
inline double multinomial(const Counts& c) {
  std::size_t n = total(c);
  if (n <= 20) {
    // Exact in integers for small n.
    unsigned long long num = 1;
    std::size_t used = 0;
    for (auto v : c)
      for (std::size_t i = 1; i <= v; ++i) {
        ++used;
        num = num * used / i;
      }
    return static_cast<double>(num);
  }
  return std::exp(log_multinomial(c));
}

inline double binomial(std::size_t n, std::size_t j) {
  if (j > n) return 0.0;
  return multinomial(Counts{n - j, j});
}

inline Counts counts_of(const std::vector<std::size_t>& seq, std::size_t k) {
  Counts c(k, 0);
  for (auto s : seq) {
    if (s >= k) throw InvalidArgument("symbol " + std::to_string(s) + " outside alphabet");
    ++c[s];
  }
  return c;
}

/// "c0,c1,..." as used in family files.
inline std::string counts_key(const Counts& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out;
}

inline Counts parse_counts_key(const std::string& key, std::size_t k) {
  Counts c;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = key.find(',', pos);
    const std::string part =
        key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("malformed count vector '" + key + "'");
    c.push_back(std::stoul(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (c.size() != k)
    throw InvalidArgument("count vector '" + key + "' has " + std::to_string(c.size()) +
                          " entries, alphabet has " + std::to_string(k));
  return c;
}

/// k^n, or 0 when it exceeds `cap`.
inline std::size_t bounded_power(std::size_t k, std::size_t n, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (out > cap / k) return 0;
    out *= k;
  }
  return out <= cap ? out : 0;
}

}  // namespace markovdf
