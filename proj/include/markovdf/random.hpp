#pragma once

// Seeded generators of random kernels for property suites.

#include <cstdint>
#include <random>
#include <vector>

#include "markovdf/finstoch.hpp"

namespace markovdf {

using Rng = std::mt19937_64;

/// Random probability vector (flat Dirichlet); each coordinate is zeroed
/// with probability `zero_fraction`, keeping at least one positive entry.
inline std::vector<double> random_distribution(std::size_t n, Rng& rng,
                                               double zero_fraction = 0.0) {
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution zero(zero_fraction);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& v : p) {
    v = zero(rng) ? 0.0 : expo(rng);
    sum += v;
  }
  if (sum == 0.0) {
    p[pick(rng)] = 1.0;
    return p;
  }
  for (auto& v : p) v /= sum;
  return p;
}

inline Kernel random_kernel(const FinSpace& dom, const FinSpace& cod, Rng& rng,
                            double zero_fraction = 0.0) {
  std::vector<double> e;
  e.reserve(dom.size() * cod.size());
  for (std::size_t a = 0; a < dom.size(); ++a) {
    const auto row = random_distribution(cod.size(), rng, zero_fraction);
    e.insert(e.end(), row.begin(), row.end());
  }
  return Kernel(dom, cod, std::move(e));
}

inline Kernel random_state(const FinSpace& x, Rng& rng, double zero_fraction = 0.0) {
  return random_kernel(FinSpace::unit(), x, rng, zero_fraction);
}

/// Random 0/1 kernel.
inline Kernel random_function(const FinSpace& dom, const FinSpace& cod, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, cod.size() - 1);
  std::vector<std::size_t> image(dom.size());
  for (auto& v : image) v = pick(rng);
  return Kernel::deterministic(dom, cod, [&](std::size_t a) { return image[a]; });
}

}  // namespace markovdf
