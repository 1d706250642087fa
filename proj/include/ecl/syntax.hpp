#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "formula.hpp"

namespace ecl {

// Concrete syntax:
//   formula := impl
//   impl    := disj ("->" impl | "<->" impl)?
//   disj    := conj ("|" conj)*
//   conj    := unary ("&" unary)*
//   unary   := "~" unary | "K" unary | box unary | atom | "(" formula ")"
//   box     := "[" assigns "]" | "[" formula "!" "]"
//   assigns := (IDENT "=" IDENT ("," IDENT "=" IDENT)*)?
//   atom    := IDENT "=" IDENT
// "|", "->" and "<->" are rewritten to "~" and "&" while parsing.

namespace detail {

enum class Tok { Ident, Eq, Tilde, Amp, Bar, Arrow, DArrow, LParen, RParen, LBrack, RBrack, Comma, Bang, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t p = i;
    if (ident_start(c) || std::isdigit(static_cast<unsigned char>(c))) {
      // Values such as 0 and 1 are names too.
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(p, i - p)), p});
      continue;
    }
    if (s.compare(i, 3, "<->") == 0) { out.push_back({Tok::DArrow, "<->", p}); i += 3; continue; }
    if (s.compare(i, 2, "->") == 0) { out.push_back({Tok::Arrow, "->", p}); i += 2; continue; }
    Tok k;
    switch (c) {
      case '=': k = Tok::Eq; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case ',': k = Tok::Comma; break;
      case '!': k = Tok::Bang; break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", p);
    }
    out.push_back({k, std::string(1, c), p});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : toks_(tokenize(s)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

  Assignment parse_assignment_all() {
    bool bracket = accept(Tok::LBrack);
    Assignment a;
    if (peek().kind == Tok::Ident) a = assigns();
    if (bracket) expect(Tok::RBrack, "']'");
    if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
    return a;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      throw SyntaxError(std::string("expected ") + what + ", got " + got, peek().pos);
    }
    return toks_[i_++];
  }

  Formula formula() { return impl(); }

  Formula impl() {
    Formula l = disj();
    if (accept(Tok::Arrow)) return implies(l, impl());
    if (accept(Tok::DArrow)) return iff(l, impl());
    return l;
  }

  Formula disj() {
    std::vector<Formula> ds{conj_()};
    while (accept(Tok::Bar)) ds.push_back(conj_());
    if (ds.size() == 1) return ds[0];
    Formula inner = neg(ds[0]);
    for (std::size_t k = 1; k < ds.size(); ++k) inner = conj(inner, neg(ds[k]));
    return neg(inner);
  }

  Formula conj_() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = conj(f, unary());
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde: ++i_; return neg(unary());
      case Tok::LParen: {
        ++i_;
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::LBrack: return box_();
      case Tok::Ident:
        if (t.text == "K" && peek(1).kind != Tok::Eq) {
          ++i_;
          return know(unary());
        }
        return atom_();
      default: {
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError("expected formula, got " + got, t.pos);
      }
    }
  }

  Formula atom_() {
    Atom a;
    a.var = expect(Tok::Ident, "variable").text;
    expect(Tok::Eq, "'='");
    a.val = expect(Tok::Ident, "value").text;
    return Formula::atom(a);
  }

  Assignment assigns() {
    Assignment out;
    do {
      Atom a;
      a.var = expect(Tok::Ident, "variable").text;
      expect(Tok::Eq, "'='");
      a.val = expect(Tok::Ident, "value").text;
      out.push_back(a);
    } while (accept(Tok::Comma));
    return out;
  }

  Formula box_() {
    std::size_t open = peek().pos;
    expect(Tok::LBrack, "'['");
    if (accept(Tok::RBrack)) return box({}, unary());
    bool is_assign = peek().kind == Tok::Ident && peek(1).kind == Tok::Eq && peek(2).kind == Tok::Ident &&
                     (peek(3).kind == Tok::Comma || peek(3).kind == Tok::RBrack);
    if (is_assign) {
      Assignment a = assigns();
      expect(Tok::RBrack, "']'");
      for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = x + 1; y < a.size(); ++y)
          if (a[x].var == a[y].var) throw SyntaxError("duplicate variable '" + a[x].var + "' in intervention", open);
      return box(std::move(a), unary());
    }
    Formula alpha = formula();
    expect(Tok::Bang, "'!'");
    expect(Tok::RBrack, "']'");
    return bang(std::move(alpha), unary());
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace detail

// Parse without resolving names.
inline Formula parse_unbound(std::string_view text) { return detail::Parser(text).parse_all(); }

inline Formula parse(std::string_view text, const Signature& sig) { return bind(parse_unbound(text), sig); }

// "X=x, Y=y" or "[X=x, Y=y]".
inline Assignment parse_assignment(std::string_view text, const Signature& sig) {
  return bind_assignment(detail::Parser(text).parse_assignment_all(), sig);
}

inline std::string to_string(const Assignment& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += a[i].var + "=" + a[i].val;
  }
  return s + "]";
}

namespace detail {
inline void print_formula(const Formula& f, std::string& out);

inline void print_unary(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Atom: out += f.as_atom().var + "=" + f.as_atom().val; return;
    case Op::Not: out += "~"; print_unary(f.arg(), out); return;
    case Op::Know: out += "K "; print_unary(f.arg(), out); return;
    case Op::Intervene:
      out += to_string(f.assignment()) + " ";
      print_unary(f.arg(), out);
      return;
    case Op::Announce:
      out += "[";
      print_formula(f.announced(), out);
      out += " !] ";
      print_unary(f.arg(), out);
      return;
    case Op::And:
      out += "(";
      print_formula(f, out);
      out += ")";
      return;
  }
}

inline void print_formula(const Formula& f, std::string& out) {
  if (f.op() != Op::And) return print_unary(f, out);
  print_formula(f.left(), out);
  out += " & ";
  print_unary(f.right(), out);
}
}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_formula(f, out);
  return out;
}

}  // namespace ecl
