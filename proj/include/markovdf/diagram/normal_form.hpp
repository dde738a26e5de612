#pragma once

// Port-DAG normal form for free Markov category morphisms.
//
// A term is read as a hypergraph: every wire has exactly one source (an
// input port or a box output) and any number of sinks. Fan-out absorbs the
// comonoid laws (counit, coassociativity, cocommutativity) and symmetric
// monoidal coherence; boxes with no path to an output are deleted, which is
// terminality of the unit. Since every surviving box reaches an output, a
// depth-first walk from the ordered outputs through ordered box inputs
// visits every box in a deterministic order, and numbering boxes in post
// order yields a canonical, topologically sorted representative.

#include <cstddef>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "markovdf/diagram/term.hpp"

namespace markovdf::diagram {

struct Source {
  static constexpr std::size_t kInput = std::numeric_limits<std::size_t>::max();

  /// Box index, or kInput for an input port.
  std::size_t box = kInput;
  /// Output index of the box, or input port index.
  std::size_t port = 0;

  bool is_input() const noexcept { return box == kInput; }
  bool operator==(const Source&) const = default;
  auto operator<=>(const Source&) const = default;
};

struct Box {
  std::string generator;
  ObjectList dom;
  ObjectList cod;
  std::vector<Source> inputs;
};

struct NormalForm {
  ObjectList dom;
  ObjectList cod;
  /// Topologically sorted; box i only reads inputs and boxes j < i.
  std::vector<Box> boxes;
  std::vector<Source> outputs;

  /// Deterministic text form; equal iff the normal forms are equal.
  std::string serialize() const {
    std::ostringstream os;
    auto src = [&](const Source& s) {
      if (s.is_input()) {
        os << "i" << s.port;
      } else {
        os << "b" << s.box << "." << s.port;
      }
    };
    os << "dom [" << format_objects(dom) << "]\n";
    os << "cod [" << format_objects(cod) << "]\n";
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      os << "b" << b << " = " << boxes[b].generator << "(";
      for (std::size_t k = 0; k < boxes[b].inputs.size(); ++k) {
        if (k) os << ",";
        src(boxes[b].inputs[k]);
      }
      os << ")\n";
    }
    os << "out (";
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      if (k) os << ",";
      src(outputs[k]);
    }
    os << ")\n";
    return os.str();
  }

  bool operator==(const NormalForm& other) const {
    return serialize() == other.serialize();
  }
};

namespace detail {

struct GraphBuilder {
  std::vector<Box> boxes;

  std::vector<Source> build(const Term& t, const std::vector<Source>& in) {
    switch (t.kind()) {
      case TermKind::Generator: {
        const std::size_t id = boxes.size();
        boxes.push_back({t.name(), t.dom(), t.cod(), in});
        std::vector<Source> out;
        for (std::size_t j = 0; j < t.cod().size(); ++j) out.push_back({id, j});
        return out;
      }
      case TermKind::Id:
        return in;
      case TermKind::Copy:
        return {in[0], in[0]};
      case TermKind::Discard:
        return {};
      case TermKind::Swap:
        return {in[1], in[0]};
      case TermKind::Seq:
        return build(t.right(), build(t.left(), in));
      case TermKind::Par: {
        const Term l = t.left(), r = t.right();
        const auto split = in.begin() + static_cast<long>(l.dom().size());
        auto out = build(l, std::vector<Source>(in.begin(), split));
        auto rest = build(r, std::vector<Source>(split, in.end()));
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
      }
    }
    return {};
  }
};

struct Canonicalizer {
  const std::vector<Box>& raw;
  std::vector<std::size_t> new_id;
  std::vector<Box> ordered;

  explicit Canonicalizer(const std::vector<Box>& boxes)
      : raw(boxes), new_id(boxes.size(), Source::kInput) {}

  // Iterative post-order walk; recursion depth would track box count.
  void visit(const Source& root) {
    if (root.is_input() || new_id[root.box] != Source::kInput) return;
    struct Frame {
      std::size_t box;
      std::size_t next_input;
    };
    std::vector<Frame> stack{{root.box, 0}};
    std::vector<bool> on_stack(raw.size(), false);
    on_stack[root.box] = true;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const Box& b = raw[f.box];
      if (f.next_input < b.inputs.size()) {
        const Source s = b.inputs[f.next_input++];
        if (!s.is_input() && new_id[s.box] == Source::kInput && !on_stack[s.box]) {
          on_stack[s.box] = true;
          stack.push_back({s.box, 0});
        }
        continue;
      }
      new_id[f.box] = ordered.size();
      ordered.push_back(b);
      stack.pop_back();
    }
  }

  Source remap(const Source& s) const {
    return s.is_input() ? s : Source{new_id[s.box], s.port};
  }
};

}  // namespace detail

inline NormalForm normalize(const Term& t) {
  detail::GraphBuilder builder;
  std::vector<Source> inputs;
  for (std::size_t i = 0; i < t.dom().size(); ++i) inputs.push_back({Source::kInput, i});
  const std::vector<Source> outputs = builder.build(t, inputs);

  detail::Canonicalizer canon(builder.boxes);
  for (const auto& s : outputs) canon.visit(s);

  NormalForm nf;
  nf.dom = t.dom();
  nf.cod = t.cod();
  nf.boxes = std::move(canon.ordered);
  for (auto& b : nf.boxes)
    for (auto& s : b.inputs) s = canon.remap(s);
  for (const auto& s : outputs) nf.outputs.push_back(canon.remap(s));
  return nf;
}

/// A term whose normal form is `nf`: one box per layer, with wiring layers
/// carrying every source that is still needed downstream.
inline Term readback(const NormalForm& nf) {
  std::vector<Source> wires;
  ObjectList types = nf.dom;
  for (std::size_t i = 0; i < nf.dom.size(); ++i) wires.push_back({Source::kInput, i});

  auto index_of = [&](const Source& s) {
    for (std::size_t i = 0; i < wires.size(); ++i)
      if (wires[i] == s) return i;
    throw InvalidArgument("readback: dangling source in normal form");
  };

  std::vector<Term> steps;
  for (std::size_t b = 0; b < nf.boxes.size(); ++b) {
    const Box& box = nf.boxes[b];
    std::set<Source> later(nf.outputs.begin(), nf.outputs.end());
    for (std::size_t c = b + 1; c < nf.boxes.size(); ++c)
      later.insert(nf.boxes[c].inputs.begin(), nf.boxes[c].inputs.end());

    std::vector<std::size_t> sources;
    for (const auto& s : box.inputs) sources.push_back(index_of(s));
    std::vector<Source> kept;
    ObjectList kept_types;
    for (std::size_t i = 0; i < wires.size(); ++i)
      if (later.count(wires[i])) {
        sources.push_back(i);
        kept.push_back(wires[i]);
        kept_types.push_back(types[i]);
      }
    steps.push_back(wiring(types, sources));
    steps.push_back(
        par_all({Term::generator({box.generator, box.dom, box.cod}), Term::id(kept_types)}));

    wires.clear();
    types = box.cod;
    for (std::size_t j = 0; j < box.cod.size(); ++j) wires.push_back({b, j});
    wires.insert(wires.end(), kept.begin(), kept.end());
    types.insert(types.end(), kept_types.begin(), kept_types.end());
  }
  std::vector<std::size_t> sources;
  for (const auto& s : nf.outputs) sources.push_back(index_of(s));
  steps.push_back(wiring(types, sources));
  return tidy(seq_all(steps));
}

/// Decides equality in the free Markov category.
inline bool equal(const Term& a, const Term& b) {
  if (a.dom() != b.dom() || a.cod() != b.cod())
    throw TypeError("cannot compare " + a.signature() + " with " + b.signature());
  return normalize(a).serialize() == normalize(b).serialize();
}

}  // namespace markovdf::diagram
