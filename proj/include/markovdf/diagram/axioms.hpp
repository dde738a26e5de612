#pragma once

// Built-in instances of the Markov category axioms, stated as term pairs.

#include <string>
#include <vector>

#include "markovdf/diagram/normal_form.hpp"
#include "markovdf/diagram/term.hpp"

namespace markovdf::diagram {

struct AxiomInstance {
  std::string name;
  Term lhs;
  Term rhs;
  /// False for instances the free category must NOT identify.
  bool expect_equal = true;
};

/// objects {X, Y}; f: X -> Y, g: Y -> X, h: X,Y -> Y, k: X -> X,X, s: I -> X,
/// e: Y -> I.
inline Signature default_signature() {
  Signature sig;
  sig.add_object("X");
  sig.add_object("Y");
  sig.add_generator({"f", {"X"}, {"Y"}});
  sig.add_generator({"g", {"Y"}, {"X"}});
  sig.add_generator({"h", {"X", "Y"}, {"Y"}});
  sig.add_generator({"k", {"X"}, {"X", "X"}});
  sig.add_generator({"s", {}, {"X"}});
  sig.add_generator({"e", {"Y"}, {}});
  return sig;
}

/// All object lists over `objects` of length <= max_len, shortest first.
inline std::vector<ObjectList> object_lists(const std::vector<std::string>& objects,
                                            std::size_t max_len) {
  std::vector<ObjectList> out{{}};
  std::vector<ObjectList> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<ObjectList> next;
    for (const auto& l : frontier)
      for (const auto& o : objects) {
        auto e = l;
        e.push_back(o);
        next.push_back(e);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline ObjectList concat(ObjectList a, const ObjectList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::vector<AxiomInstance> axiom_instances(const Signature& sig,
                                                  std::size_t max_len = 3) {
  std::vector<AxiomInstance> out;
  const auto lists = object_lists(sig.objects(), max_len);
  for (const auto& a : lists) {
    const std::string tag = "[" + format_objects(a) + "]";
    const Term id = Term::id(a), cp = copy_list(a), del = discard_list(a);
    out.push_back({"counit-left" + tag, Term::seq(cp, par_all({del, id})), id});
    out.push_back({"counit-right" + tag, Term::seq(cp, par_all({id, del})), id});
    out.push_back({"coassociativity" + tag, Term::seq(cp, par_all({cp, id})),
                   Term::seq(cp, par_all({id, cp}))});
    out.push_back({"cocommutativity" + tag, Term::seq(cp, swap_lists(a, a)), cp});
  }
  for (const auto& a : lists)
    for (const auto& b : lists) {
      if (a.size() + b.size() > max_len) continue;
      const std::string tag = "[" + format_objects(a) + "|" + format_objects(b) + "]";
      const ObjectList ab = concat(a, b);
      out.push_back({"copy-multiplicativity" + tag, copy_list(ab),
                     Term::seq(par_all({copy_list(a), copy_list(b)}),
                               par_all({Term::id(a), swap_lists(a, b), Term::id(b)}))});
      out.push_back({"discard-multiplicativity" + tag, discard_list(ab),
                     par_all({discard_list(a), discard_list(b)})});
      out.push_back({"swap-involution" + tag,
                     Term::seq(swap_lists(a, b), swap_lists(b, a)), Term::id(ab)});
    }
  for (const auto& g : sig.generators()) {
    const Term gt = Term::generator(g);
    out.push_back({"terminality[" + g.name + "]", Term::seq(gt, discard_list(g.cod)),
                   discard_list(g.dom)});
    if (!g.dom.empty() && !g.cod.empty())
      out.push_back({"copy-naturality[" + g.name + "]",
                     Term::seq(copy_list(g.dom), par_all({gt, gt})),
                     Term::seq(gt, copy_list(g.cod)), false});
    for (const auto& h : sig.generators()) {
      const Term ht = Term::generator(h);
      out.push_back({"swap-naturality[" + g.name + "," + h.name + "]",
                     Term::seq(par_all({gt, ht}), swap_lists(g.cod, h.cod)),
                     Term::seq(swap_lists(g.dom, h.dom), par_all({ht, gt}))});
    }
  }
  return out;
}

struct AxiomCheck {
  AxiomInstance instance;
  bool decided_equal = false;
  bool passed() const { return decided_equal == instance.expect_equal; }
};

inline std::vector<AxiomCheck> check_axioms(const Signature& sig, std::size_t max_len = 3) {
  std::vector<AxiomCheck> out;
  for (auto& inst : axiom_instances(sig, max_len)) {
    const bool eq = equal(inst.lhs, inst.rhs);
    out.push_back({std::move(inst), eq});
  }
  return out;
}

}  // namespace markovdf::diagram
