#pragma once

// Random well-typed terms and equality-preserving rewrites, for soundness
// suites.

#include <algorithm>
#include <random>
#include <vector>

#include "markovdf/diagram/axioms.hpp"
#include "markovdf/diagram/evaluate.hpp"
#include "markovdf/diagram/normal_form.hpp"
#include "markovdf/diagram/term.hpp"
#include "markovdf/random.hpp"

namespace markovdf::diagram {

struct RandomTermOptions {
  std::size_t layers = 3;
  std::size_t max_wires = 4;
  double state_probability = 0.15;
};

namespace detail {

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// One parallel layer covering `wires`.
inline Term random_layer(const Signature& sig, const ObjectList& wires, Rng& rng,
                         const RandomTermOptions& opt) {
  std::vector<Term> parts;
  std::size_t width = wires.size();
  std::vector<const Generator*> nullary;
  for (const auto& g : sig.generators())
    if (g.dom.empty()) nullary.push_back(&g);

  auto maybe_state = [&] {
    if (!nullary.empty() && width < opt.max_wires && coin(rng, opt.state_probability)) {
      const Generator* g = nullary[pick(rng, nullary.size())];
      parts.push_back(Term::generator(*g));
      width += g->cod.size();
    }
  };

  std::size_t pos = 0;
  while (pos < wires.size()) {
    maybe_state();
    std::vector<Term> options{Term::id({wires[pos]})};
    if (width < opt.max_wires) options.push_back(Term::copy(wires[pos]));
    if (width > 1) options.push_back(Term::discard(wires[pos]));
    if (pos + 1 < wires.size()) options.push_back(Term::swap(wires[pos], wires[pos + 1]));
    for (const auto& g : sig.generators()) {
      if (g.dom.empty() || pos + g.dom.size() > wires.size()) continue;
      if (!std::equal(g.dom.begin(), g.dom.end(), wires.begin() + static_cast<long>(pos)))
        continue;
      if (width - g.dom.size() + g.cod.size() > opt.max_wires) continue;
      // Generators are favoured so terms carry boxes.
      options.push_back(Term::generator(g));
      options.push_back(Term::generator(g));
    }
    const Term chosen = options[pick(rng, options.size())];
    width = width - chosen.dom().size() + chosen.cod().size();
    pos += chosen.dom().size();
    parts.push_back(chosen);
  }
  maybe_state();
  return par_all(parts);
}

}  // namespace detail

inline Term random_term(const Signature& sig, const ObjectList& dom, Rng& rng,
                        const RandomTermOptions& opt = {}) {
  Term t = Term::id(dom);
  for (std::size_t l = 0; l < opt.layers; ++l)
    t = Term::seq(t, detail::random_layer(sig, t.cod(), rng, opt));
  return t;
}

/// Random object list of length 1..max_len.
inline ObjectList random_objects(const Signature& sig, Rng& rng, std::size_t max_len) {
  ObjectList out(1 + detail::pick(rng, max_len));
  for (auto& o : out) o = sig.objects()[detail::pick(rng, sig.objects().size())];
  return out;
}

/// A term equal to `t` in the free Markov category, obtained by inserting
/// axiom instances and re-associating at random positions.
inline Term random_rewrite(const Term& t, const Signature& sig, Rng& rng,
                           std::size_t depth = 0) {
  using detail::coin;
  using detail::pick;
  if (depth < 4 && (t.kind() == TermKind::Seq || t.kind() == TermKind::Par) &&
      coin(rng, 0.6)) {
    const Term l = random_rewrite(t.left(), sig, rng, depth + 1);
    const Term r = random_rewrite(t.right(), sig, rng, depth + 1);
    return t.kind() == TermKind::Seq ? Term::seq(l, r) : Term::par(l, r);
  }
  const ObjectList& cod = t.cod();
  switch (pick(rng, 7)) {
    case 0:
      return Term::seq(t, Term::id(cod));
    case 1:
      return readback(normalize(t));
    case 2: {  // counit on one output wire
      if (cod.empty()) return t;
      const std::size_t p = pick(rng, cod.size());
      const std::string& x = cod[p];
      const Term unit = coin(rng, 0.5)
                            ? Term::seq(Term::copy(x), Term::par(Term::id({x}), Term::discard(x)))
                            : Term::seq(Term::copy(x), Term::par(Term::discard(x), Term::id({x})));
      return Term::seq(t, par_all({Term::id(ObjectList(cod.begin(), cod.begin() + static_cast<long>(p))),
                                   unit,
                                   Term::id(ObjectList(cod.begin() + static_cast<long>(p) + 1, cod.end()))}));
    }
    case 3: {  // cocommutativity followed by a counit
      if (cod.empty()) return t;
      const std::size_t p = pick(rng, cod.size());
      const std::string& x = cod[p];
      const Term unit = seq_all({Term::copy(x), Term::swap(x, x),
                                 Term::par(Term::discard(x), Term::id({x}))});
      return Term::seq(t, par_all({Term::id(ObjectList(cod.begin(), cod.begin() + static_cast<long>(p))),
                                   unit,
                                   Term::id(ObjectList(cod.begin() + static_cast<long>(p) + 1, cod.end()))}));
    }
    case 4: {  // a discarded random subcomputation on the inputs
      const ObjectList& dom = t.dom();
      const Term garbage = random_term(sig, dom, rng, {2, 4, 0.2});
      return Term::seq(copy_list(dom),
                       Term::par(t, Term::seq(garbage, discard_list(garbage.cod()))));
    }
    case 5: {  // swap twice
      if (cod.size() < 2) return t;
      const std::size_t p = pick(rng, cod.size() - 1);
      ObjectList swapped = cod;
      std::swap(swapped[p], swapped[p + 1]);
      return seq_all({t, transposition(cod, p), transposition(swapped, p)});
    }
    default: {  // interchange: (a*b) as (a*id);(id*b)
      if (t.kind() != TermKind::Par) return Term::seq(Term::id(t.dom()), t);
      const Term a = t.left(), b = t.right();
      return Term::seq(Term::par(a, Term::id(b.dom())), Term::par(Term::id(a.cod()), b));
    }
  }
}

/// Object X -> 2 elements, Y -> 3 elements; random kernels for generators.
inline Interpretation random_interpretation(const Signature& sig, Rng& rng,
                                            double zero_fraction = 0.0) {
  Interpretation interp;
  std::size_t size = 2;
  for (const auto& o : sig.objects()) {
    interp.objects.emplace(o, FinSpace::range(size));
    size = size == 2 ? 3 : 2;
  }
  for (const auto& g : sig.generators())
    interp.generators.emplace(
        g.name, random_kernel(interp.space(g.dom), interp.space(g.cod), rng, zero_fraction));
  return interp;
}

}  // namespace markovdf::diagram
