#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "markovdf/diagram/normal_form.hpp"
#include "markovdf/diagram/term.hpp"
#include "markovdf/finstoch.hpp"

namespace markovdf::diagram {

/// Semantics in FinStoch: objects go to finite spaces, generators to kernels.
struct Interpretation {
  std::map<std::string, FinSpace> objects;
  std::map<std::string, Kernel> generators;

  FinSpace space(const ObjectList& objs) const {
    FinSpace out;
    for (const auto& o : objs) {
      const auto it = objects.find(o);
      if (it == objects.end())
        throw InvalidArgument("evaluate: object '" + o + "' has no interpretation");
      out = FinSpace::tensor(out, it->second);
    }
    return out;
  }

  /// size of space(objs), without building labels.
  double cardinality(const ObjectList& objs) const {
    double n = 1.0;
    for (const auto& o : objs) {
      const auto it = objects.find(o);
      if (it == objects.end())
        throw InvalidArgument("evaluate: object '" + o + "' has no interpretation");
      n *= static_cast<double>(it->second.size());
    }
    return n;
  }
};

inline Kernel evaluate(const Term& t, const Interpretation& interp) {
  switch (t.kind()) {
    case TermKind::Generator: {
      const auto it = interp.generators.find(t.name());
      if (it == interp.generators.end())
        throw InvalidArgument("evaluate: generator '" + t.name() +
                              "' has no interpretation");
      const FinSpace dom = interp.space(t.dom()), cod = interp.space(t.cod());
      const Kernel& k = it->second;
      if (k.rows() != dom.size() || k.cols() != cod.size())
        throw DomainMismatch("evaluate: kernel for '" + t.name() + "' has wrong shape",
                             std::to_string(k.rows()) + "x" + std::to_string(k.cols()),
                             dom.describe() + " -> " + cod.describe());
      return k.relabel(dom, cod);
    }
    case TermKind::Id:
      return identity(interp.space(t.args()));
    case TermKind::Copy:
      return copy(interp.space(t.args()));
    case TermKind::Discard:
      return discard(interp.space(t.args()));
    case TermKind::Swap:
      return swap(interp.space({t.args()[0]}), interp.space({t.args()[1]}));
    case TermKind::Seq:
      return compose(evaluate(t.right(), interp), evaluate(t.left(), interp));
    case TermKind::Par:
      return tensor(evaluate(t.left(), interp), evaluate(t.right(), interp));
  }
  throw InvalidArgument("evaluate: unknown term kind");
}

/// Largest matrix (in entries) built while evaluating `t`.
inline double evaluation_size(const Term& t, const Interpretation& interp) {
  const double own = interp.cardinality(t.dom()) * interp.cardinality(t.cod());
  if (t.kind() != TermKind::Seq && t.kind() != TermKind::Par) return own;
  return std::max({own, evaluation_size(t.left(), interp), evaluation_size(t.right(), interp)});
}

inline Kernel evaluate(const NormalForm& nf, const Interpretation& interp) {
  return evaluate(readback(nf), interp);
}

}  // namespace markovdf::diagram
