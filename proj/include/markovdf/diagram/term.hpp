#pragma once

// Syntax of the free Markov category over a signature: terms built from
// generators, identities, copy, discard, swap, sequential and parallel
// composition. Every term is typed at construction.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "markovdf/error.hpp"

namespace markovdf::diagram {

using ObjectList = std::vector<std::string>;

inline std::string format_objects(const ObjectList& objs) {
  if (objs.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (i) out += ",";
    out += objs[i];
  }
  return out;
}

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;

  std::string describe() const {
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
  }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourceLocation loc)
      : Error("syntax error at " + loc.describe() + ": " + what), loc_(loc) {}
  const SourceLocation& location() const noexcept { return loc_; }

 private:
  SourceLocation loc_;
};

class TypeError : public Error {
 public:
  TypeError(const std::string& what, SourceLocation loc = {})
      : Error(loc.line ? "type error at " + loc.describe() + ": " + what
                       : "type error: " + what),
        loc_(loc) {}
  const SourceLocation& location() const noexcept { return loc_; }

 private:
  SourceLocation loc_;
};

struct Generator {
  std::string name;
  ObjectList dom;
  ObjectList cod;
};

inline bool is_reserved(const std::string& name) {
  static const char* const kReserved[] = {"id",  "copy", "discard", "swap",
                                          "object", "gen", "def",  "I"};
  return std::any_of(std::begin(kReserved), std::end(kReserved),
                     [&](const char* r) { return name == r; });
}

class Signature {
 public:
  void add_object(const std::string& name) {
    if (is_reserved(name)) throw TypeError("'" + name + "' is a reserved word");
    if (has_object(name)) throw TypeError("object '" + name + "' declared twice");
    objects_.push_back(name);
  }

  void add_generator(Generator g) {
    if (is_reserved(g.name)) throw TypeError("'" + g.name + "' is a reserved word");
    if (find_generator(g.name) || has_object(g.name))
      throw TypeError("name '" + g.name + "' declared twice");
    for (const auto* list : {&g.dom, &g.cod})
      for (const auto& o : *list)
        if (!has_object(o))
          throw TypeError("generator '" + g.name + "' uses undeclared object '" + o +
                          "'");
    generators_.push_back(std::move(g));
  }

  bool has_object(const std::string& name) const {
    return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
  }

  const Generator* find_generator(const std::string& name) const {
    for (const auto& g : generators_)
      if (g.name == name) return &g;
    return nullptr;
  }

  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }

 private:
  std::vector<std::string> objects_;
  std::vector<Generator> generators_;
};

enum class TermKind { Generator, Id, Copy, Discard, Swap, Seq, Par };

/// Immutable, cheaply copyable handle to a typed syntax tree.
class Term {
 public:
  static Term generator(const Generator& g) {
    return Term(Node{TermKind::Generator, g.name, {}, g.dom, g.cod, {}, {}});
  }

  static Term id(ObjectList objs) {
    return Term(Node{TermKind::Id, {}, objs, objs, objs, {}, {}});
  }

  static Term copy(const std::string& x) {
    return Term(Node{TermKind::Copy, {}, {x}, {x}, {x, x}, {}, {}});
  }

  static Term discard(const std::string& x) {
    return Term(Node{TermKind::Discard, {}, {x}, {x}, {}, {}, {}});
  }

  static Term swap(const std::string& x, const std::string& y) {
    return Term(Node{TermKind::Swap, {}, {x, y}, {x, y}, {y, x}, {}, {}});
  }

  /// `first ; second`: first runs, then second.
  static Term seq(const Term& first, const Term& second, SourceLocation loc = {}) {
    if (first.cod() != second.dom())
      throw TypeError("cannot compose " + first.signature() + " with " +
                          second.signature() + ": codomain [" +
                          format_objects(first.cod()) + "] does not match domain [" +
                          format_objects(second.dom()) + "]",
                      loc);
    return Term(Node{TermKind::Seq, {}, {}, first.dom(), second.cod(), first.node_,
                     second.node_});
  }

  static Term par(const Term& left, const Term& right) {
    ObjectList dom = left.dom(), cod = left.cod();
    dom.insert(dom.end(), right.dom().begin(), right.dom().end());
    cod.insert(cod.end(), right.cod().begin(), right.cod().end());
    return Term(Node{TermKind::Par, {}, {}, std::move(dom), std::move(cod), left.node_,
                     right.node_});
  }

  TermKind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  const ObjectList& args() const noexcept { return node_->args; }
  const ObjectList& dom() const noexcept { return node_->dom; }
  const ObjectList& cod() const noexcept { return node_->cod; }
  Term left() const { return Term(node_->left); }
  Term right() const { return Term(node_->right); }

  std::string signature() const {
    return "[" + format_objects(dom()) + "] -> [" + format_objects(cod()) + "]";
  }

  /// Number of generator occurrences.
  std::size_t box_count() const {
    switch (kind()) {
      case TermKind::Generator:
        return 1;
      case TermKind::Seq:
      case TermKind::Par:
        return left().box_count() + right().box_count();
      default:
        return 0;
    }
  }

  /// DSL text that parses back to the same tree.
  std::string to_string() const {
    switch (kind()) {
      case TermKind::Generator:
        return name();
      case TermKind::Id:
        return "id[" + join(args()) + "]";
      case TermKind::Copy:
        return "copy[" + args()[0] + "]";
      case TermKind::Discard:
        return "discard[" + args()[0] + "]";
      case TermKind::Swap:
        return "swap[" + args()[0] + "," + args()[1] + "]";
      case TermKind::Seq: {
        const Term r = right();
        const std::string rs = r.kind() == TermKind::Seq ? "(" + r.to_string() + ")"
                                                         : r.to_string();
        return left().to_string() + " ; " + rs;
      }
      case TermKind::Par: {
        const Term l = left(), r = right();
        const std::string ls =
            l.kind() == TermKind::Seq ? "(" + l.to_string() + ")" : l.to_string();
        const std::string rs = (r.kind() == TermKind::Seq || r.kind() == TermKind::Par)
                                   ? "(" + r.to_string() + ")"
                                   : r.to_string();
        return ls + " * " + rs;
      }
    }
    return {};
  }

  bool same_tree(const Term& other) const { return to_string() == other.to_string(); }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    ObjectList args;
    ObjectList dom;
    ObjectList cod;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Term(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::string join(const ObjectList& objs) {
    std::string out;
    for (std::size_t i = 0; i < objs.size(); ++i) {
      if (i) out += ",";
      out += objs[i];
    }
    return out;
  }

  std::shared_ptr<const Node> node_;
};

/// (domain objects, codomain objects).
inline std::pair<ObjectList, ObjectList> interface(const Term& t) {
  return {t.dom(), t.cod()};
}

// ---------------------------------------------------------------------------
// Combinators on object lists. Structural maps on a list are built from the
// single-object ones; identities on I are dropped from parallel products.

inline bool is_unit_id(const Term& t) {
  return t.kind() == TermKind::Id && t.args().empty();
}

inline Term par_all(const std::vector<Term>& parts) {
  std::vector<Term> kept;
  for (const auto& p : parts)
    if (!is_unit_id(p)) kept.push_back(p);
  if (kept.empty()) return Term::id({});
  Term out = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;) out = Term::par(kept[i], out);
  return out;
}

inline Term seq_all(const std::vector<Term>& steps) {
  if (steps.empty()) throw InvalidArgument("seq_all: empty sequence");
  Term out = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i) out = Term::seq(out, steps[i]);
  return out;
}

/// Drops identity steps and merges adjacent identities; same morphism.
inline Term tidy(const Term& t) {
  if (t.kind() == TermKind::Seq) {
    const Term l = tidy(t.left()), r = tidy(t.right());
    if (r.kind() == TermKind::Id) return l;
    if (l.kind() == TermKind::Id) return r;
    return Term::seq(l, r);
  }
  if (t.kind() == TermKind::Par) {
    const Term l = tidy(t.left()), r = tidy(t.right());
    if (is_unit_id(l)) return r;
    if (is_unit_id(r)) return l;
    if (l.kind() == TermKind::Id && r.kind() == TermKind::Id) {
      ObjectList objs = l.args();
      objs.insert(objs.end(), r.args().begin(), r.args().end());
      return Term::id(objs);
    }
    return Term::par(l, r);
  }
  return t;
}

inline Term discard_list(const ObjectList& objs) {
  std::vector<Term> parts;
  for (const auto& o : objs) parts.push_back(Term::discard(o));
  return par_all(parts);
}

/// Adjacent transposition at position `pos` of `objs`.
inline Term transposition(const ObjectList& objs, std::size_t pos) {
  const ObjectList before(objs.begin(), objs.begin() + static_cast<long>(pos));
  const ObjectList after(objs.begin() + static_cast<long>(pos) + 2, objs.end());
  return par_all({Term::id(before), Term::swap(objs[pos], objs[pos + 1]), Term::id(after)});
}

/// Wiring from `inputs` that places input sources[j] on output wire j,
/// using only copy, discard, swap and identities. Inputs not mentioned in
/// `sources` are discarded.
inline Term wiring(const ObjectList& inputs, const std::vector<std::size_t>& sources) {
  std::vector<std::size_t> uses(inputs.size(), 0);
  for (auto s : sources) {
    if (s >= inputs.size()) throw InvalidArgument("wiring: source out of range");
    ++uses[s];
  }
  std::vector<Term> fan;
  std::vector<std::size_t> layout;  // input index on each wire after fan-out
  ObjectList layout_types;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& x = inputs[i];
    if (uses[i] == 0) {
      fan.push_back(Term::discard(x));
      continue;
    }
    Term t = Term::id({x});
    for (std::size_t k = 1; k < uses[i]; ++k)
      t = Term::seq(t, par_all({Term::copy(x), Term::id(ObjectList(k - 1, x))}));
    fan.push_back(t);
    for (std::size_t k = 0; k < uses[i]; ++k) {
      layout.push_back(i);
      layout_types.push_back(x);
    }
  }
  std::vector<Term> steps{par_all(fan)};

  // Assign each output to a distinct fanned-out wire, then bubble into place.
  std::vector<std::size_t> position_of_output(sources.size());
  std::vector<bool> taken(layout.size(), false);
  for (std::size_t j = 0; j < sources.size(); ++j)
    for (std::size_t p = 0; p < layout.size(); ++p)
      if (!taken[p] && layout[p] == sources[j]) {
        taken[p] = true;
        position_of_output[j] = p;
        break;
      }
  // rank[p] = output index that wire p must reach
  std::vector<std::size_t> rank(layout.size());
  for (std::size_t j = 0; j < sources.size(); ++j) rank[position_of_output[j]] = j;
  for (std::size_t pass = 0; pass < rank.size(); ++pass)
    for (std::size_t p = 0; p + 1 < rank.size(); ++p)
      if (rank[p] > rank[p + 1]) {
        steps.push_back(transposition(layout_types, p));
        std::swap(rank[p], rank[p + 1]);
        std::swap(layout_types[p], layout_types[p + 1]);
      }
  return seq_all(steps);
}

inline Term copy_list(const ObjectList& objs) {
  std::vector<std::size_t> sources;
  for (int round = 0; round < 2; ++round)
    for (std::size_t i = 0; i < objs.size(); ++i) sources.push_back(i);
  return wiring(objs, sources);
}

/// A ++ B -> B ++ A.
inline Term swap_lists(const ObjectList& a, const ObjectList& b) {
  ObjectList ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < b.size(); ++i) sources.push_back(a.size() + i);
  for (std::size_t i = 0; i < a.size(); ++i) sources.push_back(i);
  return wiring(ab, sources);
}

}  // namespace markovdf::diagram
