#pragma once

// Recursive-descent parser for the diagram DSL.
//
//   program := stmt*
//   stmt    := "object" NAME ("," NAME)*
//            | "gen" NAME ":" sig "->" sig
//            | "def" NAME "=" expr
//            | expr                      (the main expression, at most one)
//   sig     := "I" | NAME ("," NAME)*
//   expr    := par (";" par)*            (";" binds looser than "*")
//   par     := atom ("*" atom)*
//   atom    := NAME | "id[" objs "]" | "copy[" NAME "]" | "discard[" NAME "]"
//            | "swap[" NAME "," NAME "]" | "(" expr ")"
//   objs    := "" | "I" | NAME ("," NAME)*
//
// `#` starts a comment running to the end of the line. A NAME in an
// expression refers to a generator or an earlier `def`.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "markovdf/diagram/term.hpp"

namespace markovdf::diagram {

struct Script {
  Signature signature;
  std::vector<std::pair<std::string, Term>> definitions;
  std::optional<Term> main;

  const Term* find(const std::string& name) const {
    for (const auto& [n, t] : definitions)
      if (n == name) return &t;
    return nullptr;
  }
};

namespace detail {

enum class Tok { Name, Semi, Star, LParen, RParen, LBracket, RBracket, Comma, Colon,
                 Arrow, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    const SourceLocation loc{line, col};
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Name, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", loc});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case ';': kind = Tok::Semi; break;
      case '*': kind = Tok::Star; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case ':': kind = Tok::Colon; break;
      case '=': kind = Tok::Equals; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", loc);
    }
    out.push_back({kind, std::string(1, c), loc});
    advance(1);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::Name: return "a name";
    case Tok::Semi: return "';'";
    case Tok::Star: return "'*'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view src, Script initial = {})
      : toks_(tokenize(src)), script_(std::move(initial)) {}

  Script parse_program() {
    Script script = std::move(script_);
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::Name && t.text == "object") {
        next();
        do {
          const Token& name = expect(Tok::Name);
          guard(name, [&] { script.signature.add_object(name.text); });
        } while (accept(Tok::Comma));
      } else if (t.kind == Tok::Name && t.text == "gen") {
        next();
        const Token& name = expect(Tok::Name);
        expect(Tok::Colon);
        ObjectList dom = parse_sig(script.signature);
        expect(Tok::Arrow);
        ObjectList cod = parse_sig(script.signature);
        guard(name, [&] {
          script.signature.add_generator({name.text, std::move(dom), std::move(cod)});
        });
      } else if (t.kind == Tok::Name && t.text == "def") {
        next();
        const Token& name = expect(Tok::Name);
        if (is_reserved(name.text) || script.find(name.text) ||
            script.signature.find_generator(name.text) ||
            script.signature.has_object(name.text))
          throw TypeError("name '" + name.text + "' already in use", name.loc);
        expect(Tok::Equals);
        script.definitions.emplace_back(name.text, parse_expr(script));
      } else {
        if (script.main)
          throw ParseError("more than one main expression", t.loc);
        script.main = parse_expr(script);
      }
    }
    return script;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok k) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + describe(k) + ", found " +
                           (peek().kind == Tok::Name ? "'" + peek().text + "'"
                                                     : describe(peek().kind)),
                       peek().loc);
    return next();
  }

  template <typename Fn>
  static void guard(const Token& at, Fn&& fn) {
    try {
      fn();
    } catch (const TypeError& e) {
      if (e.location().line) throw;
      throw TypeError(std::string(e.what()).substr(std::string("type error: ").size()),
                      at.loc);
    }
  }

  const Token& expect_object(const Signature& sig) {
    const Token& t = expect(Tok::Name);
    if (!sig.has_object(t.text))
      throw TypeError("unknown object '" + t.text + "'", t.loc);
    return t;
  }

  ObjectList parse_sig(const Signature& sig) {
    if (peek().kind == Tok::Name && peek().text == "I") {
      next();
      return {};
    }
    ObjectList out{expect_object(sig).text};
    while (accept(Tok::Comma)) out.push_back(expect_object(sig).text);
    return out;
  }

  ObjectList parse_objs(const Signature& sig) {
    if (peek().kind == Tok::RBracket) return {};
    return parse_sig(sig);
  }

  Term parse_expr(const Script& script) {
    Term lhs = parse_par(script);
    while (peek().kind == Tok::Semi) {
      const SourceLocation at = next().loc;
      Term rhs = parse_par(script);
      lhs = Term::seq(lhs, rhs, at);
    }
    return lhs;
  }

  Term parse_par(const Script& script) {
    Term lhs = parse_atom(script);
    while (accept(Tok::Star)) lhs = Term::par(lhs, parse_atom(script));
    return lhs;
  }

  Term parse_atom(const Script& script) {
    const Token& t = peek();
    if (accept(Tok::LParen)) {
      Term inner = parse_expr(script);
      expect(Tok::RParen);
      return inner;
    }
    const Token& name = expect(Tok::Name);
    const Signature& sig = script.signature;
    if (name.text == "id") {
      expect(Tok::LBracket);
      ObjectList objs = parse_objs(sig);
      expect(Tok::RBracket);
      return Term::id(std::move(objs));
    }
    if (name.text == "copy" || name.text == "discard") {
      expect(Tok::LBracket);
      const std::string x = expect_object(sig).text;
      expect(Tok::RBracket);
      return name.text == "copy" ? Term::copy(x) : Term::discard(x);
    }
    if (name.text == "swap") {
      expect(Tok::LBracket);
      const std::string x = expect_object(sig).text;
      expect(Tok::Comma);
      const std::string y = expect_object(sig).text;
      expect(Tok::RBracket);
      return Term::swap(x, y);
    }
    if (is_reserved(name.text))
      throw ParseError("unexpected keyword '" + name.text + "'", t.loc);
    if (const Generator* g = sig.find_generator(name.text)) return Term::generator(*g);
    if (const Term* d = script.find(name.text)) return *d;
    throw TypeError("unknown generator or definition '" + name.text + "'", name.loc);
  }

  std::vector<Token> toks_;
  Script script_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Script parse_script(std::string_view text) {
  return detail::Parser(text).parse_program();
}

/// Parses a program and returns its main expression.
inline Term parse(std::string_view text) {
  Script s = parse_script(text);
  if (!s.main) throw ParseError("program has no main expression", {1, 1});
  return *s.main;
}

/// Parses statements against an existing signature and returns the main
/// expression.
inline Term parse_expression(const Signature& sig, std::string_view text) {
  Script s = detail::Parser(text, Script{sig, {}, {}}).parse_program();
  if (!s.main) throw ParseError("no expression", {1, 1});
  return *s.main;
}

}  // namespace markovdf::diagram
