#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "s2star/abc_poly.hpp"
#include "s2star/free_poly.hpp"
#include "s2star/group.hpp"
#include "s2star/pbw.hpp"

namespace s2star {

namespace expr {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex(const std::string &src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Tok::Int, src.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
    case '+': k = Tok::Plus; break;
    case '-': k = Tok::Minus; break;
    case '*': k = Tok::Star; break;
    case '/': k = Tok::Slash; break;
    case '^': k = Tok::Caret; break;
    case '(': k = Tok::LParen; break;
    case ')': k = Tok::RParen; break;
    case ',': k = Tok::Comma; break;
    default:
      throw ParseError(i, "operator, literal or identifier",
                       "unexpected character '" + std::string(1, c) + "' at position " +
                           std::to_string(i));
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

/// Small expression AST shared by every surface grammar.
struct Node {
  enum class Kind { Int, Ident, Neg, Add, Sub, Mul, Div, Pow } kind;
  Int value;              // Int
  std::string name;       // Ident
  std::size_t pos = 0;    // Ident (for error reporting)
  unsigned exponent = 0;  // Pow
  std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

/// expr  := term (('+'|'-') term)*
/// term  := factor (('*'|'/')? factor)*     (juxtaposition multiplies)
/// factor:= ['-'] base ('^' nat)?
/// base  := INT | IDENT | '(' expr ')'
class Parser {
public:
  explicit Parser(const std::string &src) : toks_(lex(src)) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    expect(Tok::End, "end of input");
    return e;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      Tok op = next().kind;
      NodePtr rhs = parse_term();
      lhs = binary(op == Tok::Plus ? Node::Kind::Add : Node::Kind::Sub, std::move(lhs),
                   std::move(rhs));
    }
    return lhs;
  }

  const Token &peek() const { return toks_[idx_]; }

private:
  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      Tok k = peek().kind;
      if (k == Tok::Star || k == Tok::Slash) {
        Tok op = next().kind;
        NodePtr rhs = parse_factor();
        lhs = binary(op == Tok::Star ? Node::Kind::Mul : Node::Kind::Div, std::move(lhs),
                     std::move(rhs));
      } else if (k == Tok::Int || k == Tok::Ident || k == Tok::LParen) {
        NodePtr rhs = parse_factor();
        lhs = binary(Node::Kind::Mul, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (peek().kind == Tok::Minus) {
      next();
      NodePtr inner = parse_factor();
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::Neg;
      n->a = std::move(inner);
      return n;
    }
    NodePtr base = parse_base();
    if (peek().kind == Tok::Caret) {
      next();
      Token t = expect(Tok::Int, "exponent");
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::Pow;
      n->exponent = static_cast<unsigned>(std::stoul(t.text));
      n->a = std::move(base);
      return n;
    }
    return base;
  }

  NodePtr parse_base() {
    Token t = peek();
    if (t.kind == Tok::Int) {
      next();
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::Int;
      n->value = Int(t.text);
      return n;
    }
    if (t.kind == Tok::Ident) {
      next();
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::Ident;
      n->name = t.text;
      n->pos = t.pos;
      return n;
    }
    if (t.kind == Tok::LParen) {
      next();
      NodePtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    throw ParseError(t.pos, "literal, identifier or '('",
                     "expected literal, identifier or '(' at position " +
                         std::to_string(t.pos));
  }

  NodePtr binary(Node::Kind kind, NodePtr a, NodePtr b) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  Token next() { return toks_[idx_++]; }
  Token expect(Tok k, const std::string &what) {
    if (peek().kind != k)
      throw ParseError(peek().pos, what,
                       "expected " + what + " at position " + std::to_string(peek().pos));
    return next();
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

inline void collect_idents(const Node &n, std::set<std::string> &out) {
  if (n.kind == Node::Kind::Ident)
    out.insert(n.name);
  if (n.a)
    collect_idents(*n.a, out);
  if (n.b)
    collect_idents(*n.b, out);
}

/// Evaluate the AST over an algebra: Value needs +, -, *, unary -, an
/// integer embedding, a power, and optional division through a callback.
template <class Value, class Atom, class FromInt, class Mul, class DivFn, class PowFn>
Value eval_node(const Node &n, const Atom &atom, const FromInt &from_int, const Mul &mul,
                const DivFn &div, const PowFn &pw) {
  switch (n.kind) {
  case Node::Kind::Int:
    return from_int(n.value);
  case Node::Kind::Ident:
    return atom(n.name, n.pos);
  case Node::Kind::Neg:
    return -eval_node<Value>(*n.a, atom, from_int, mul, div, pw);
  case Node::Kind::Add:
    return eval_node<Value>(*n.a, atom, from_int, mul, div, pw) +
           eval_node<Value>(*n.b, atom, from_int, mul, div, pw);
  case Node::Kind::Sub:
    return eval_node<Value>(*n.a, atom, from_int, mul, div, pw) -
           eval_node<Value>(*n.b, atom, from_int, mul, div, pw);
  case Node::Kind::Mul:
    return mul(eval_node<Value>(*n.a, atom, from_int, mul, div, pw),
               eval_node<Value>(*n.b, atom, from_int, mul, div, pw));
  case Node::Kind::Div:
    return div(eval_node<Value>(*n.a, atom, from_int, mul, div, pw),
               eval_node<Value>(*n.b, atom, from_int, mul, div, pw));
  case Node::Kind::Pow:
    return pw(eval_node<Value>(*n.a, atom, from_int, mul, div, pw), n.exponent);
  }
  throw ParseError(0, "expression", "unreachable");
}

} // namespace expr

/// Scalar expressions over atoms h and i; this grammar covers the canonical
/// "(poly)/(poly)" form and plain Gaussian-rational literals.
inline Scalar parse_scalar(const std::string &src) {
  expr::Parser p(src);
  auto ast = p.parse();
  auto atom = [](const std::string &name, std::size_t pos) -> Scalar {
    if (name == "h")
      return Scalar::h();
    if (name == "i")
      return Scalar::i();
    throw ParseError(pos, "h, i or a literal",
                     "unknown identifier '" + name + "' in scalar expression");
  };
  return expr::eval_node<Scalar>(
      *ast, atom, [](const Int &v) { return Scalar(GaussRat(Rat(v))); },
      [](const Scalar &a, const Scalar &b) { return a * b; },
      [](const Scalar &a, const Scalar &b) { return a / b; },
      [](const Scalar &a, unsigned e) {
        Scalar r = Scalar::one();
        for (unsigned k = 0; k < e; ++k)
          r *= a;
        return r;
      });
}

/// A Gaussian-rational literal: a constant scalar expression.
inline GaussRat parse_gauss(const std::string &src) {
  Scalar s = parse_scalar(src);
  if (!s.is_constant())
    throw ParseError(0, "constant literal", "expected a constant Gaussian rational");
  return s.constant();
}

/// Enveloping-algebra expressions over Y, H, X (noncommutative, normal
/// ordered on the fly) with scalar coefficients in h and i.
inline EnvElement parse_env(const std::string &src) {
  expr::Parser p(src);
  auto ast = p.parse();
  auto atom = [](const std::string &name, std::size_t pos) -> EnvElement {
    if (name == "Y")
      return EnvElement::gen(Gen::Y);
    if (name == "H")
      return EnvElement::gen(Gen::H);
    if (name == "X")
      return EnvElement::gen(Gen::X);
    if (name == "h")
      return EnvElement::one().scaled(Scalar::h());
    if (name == "i")
      return EnvElement::one().scaled(Scalar::i());
    throw ParseError(pos, "Y, H, X, h, i or a literal",
                     "unknown identifier '" + name + "' in enveloping-algebra expression");
  };
  auto as_scalar = [](const EnvElement &e) -> std::optional<Scalar> {
    if (e.is_zero())
      return Scalar::zero();
    if (e.terms().size() == 1) {
      auto &[m, c] = *e.terms().begin();
      if (m == Mono3{0, 0, 0})
        return c;
    }
    return std::nullopt;
  };
  return expr::eval_node<EnvElement>(
      *ast, atom, [](const Int &v) { return EnvElement::one().scaled(Scalar(GaussRat(Rat(v)))); },
      [](const EnvElement &a, const EnvElement &b) { return pbw_mul(a, b); },
      [&as_scalar](const EnvElement &a, const EnvElement &b) -> EnvElement {
        auto s = as_scalar(b);
        if (!s)
          throw ParseError(0, "scalar divisor", "division by a non-scalar element");
        return a.scaled(Scalar::one() / *s);
      },
      [](const EnvElement &a, unsigned e) { return pbw_pow(a, e); });
}

/// Group element "(u, v)" with Gaussian-rational component literals.
inline GroupElement parse_group(const std::string &src) {
  auto toks = expr::lex(src);
  if (toks.empty() || toks.front().kind != expr::Tok::LParen)
    throw ParseError(0, "'('", "group element must look like (u, v)");
  // Split on the top-level comma and reuse the scalar parser.
  int depth = 0;
  std::size_t comma = std::string::npos;
  for (auto &t : toks) {
    if (t.kind == expr::Tok::LParen)
      ++depth;
    else if (t.kind == expr::Tok::RParen)
      --depth;
    else if (t.kind == expr::Tok::Comma && depth == 1) {
      comma = t.pos;
      break;
    }
  }
  if (comma == std::string::npos)
    throw ParseError(src.size(), "','", "group element must look like (u, v)");
  std::size_t close = src.rfind(')');
  if (close == std::string::npos || close < comma)
    throw ParseError(src.size(), "')'", "group element must look like (u, v)");
  GaussRat u = parse_gauss(src.substr(1, comma - 1));
  GaussRat v = parse_gauss(src.substr(comma + 1, close - comma - 1));
  return GroupElement(u, v);
}

/// Result of the polynomial surface grammar: invariant when only A, B, C
/// appear, otherwise a free four-generator polynomial.
using ParsedPoly = std::variant<InvariantPoly, FreePoly>;

inline ParsedPoly parse_poly_expr(const std::string &src) {
  expr::Parser p(src);
  auto ast = p.parse();
  std::set<std::string> idents;
  expr::collect_idents(*ast, idents);
  bool uses_free = false;
  for (auto &id : idents) {
    if (id == "U" || id == "Ubar" || id == "V" || id == "Vbar")
      uses_free = true;
    else if (id != "A" && id != "B" && id != "C" && id != "h" && id != "i")
      throw ParseError(0, "A, B, C, U, Ubar, V, Vbar, h or i",
                       "unknown identifier '" + id + "' in polynomial expression");
  }
  auto scalar_div = [](const auto &a, const auto &b, auto as_scalar) {
    auto s = as_scalar(b);
    if (!s)
      throw ParseError(0, "scalar divisor", "division by a non-scalar polynomial");
    return a.scaled(Scalar::one() / *s);
  };
  if (!uses_free) {
    auto atom = [](const std::string &name, std::size_t) -> AbcPoly {
      if (name == "A")
        return AbcPoly::A();
      if (name == "B")
        return AbcPoly::B();
      if (name == "C")
        return AbcPoly::C();
      if (name == "h")
        return AbcPoly::one().scaled(Scalar::h());
      return AbcPoly::one().scaled(Scalar::i());
    };
    auto as_scalar = [](const AbcPoly &p) -> std::optional<Scalar> {
      if (p.is_zero())
        return Scalar::zero();
      if (p.terms().size() == 1 && p.terms().begin()->first == MonoAbc{})
        return p.terms().begin()->second;
      return std::nullopt;
    };
    AbcPoly value = expr::eval_node<AbcPoly>(
        *ast, atom, [](const Int &v) { return AbcPoly::one().scaled(Scalar(GaussRat(Rat(v)))); },
        [](const AbcPoly &a, const AbcPoly &b) { return a * b; },
        [&](const AbcPoly &a, const AbcPoly &b) { return scalar_div(a, b, as_scalar); },
        [](const AbcPoly &a, unsigned e) { return a.pow(e); });
    return reduce_invariant(value);
  }
  auto atom = [](const std::string &name, std::size_t) -> FreePoly {
    if (name == "U")
      return FreePoly::U();
    if (name == "Ubar")
      return FreePoly::Ubar();
    if (name == "V")
      return FreePoly::V();
    if (name == "Vbar")
      return FreePoly::Vbar();
    if (name == "A")
      return embed_free(AbcPoly::A());
    if (name == "B")
      return embed_free(AbcPoly::B());
    if (name == "C")
      return embed_free(AbcPoly::C());
    if (name == "h")
      return FreePoly::one().scaled(Scalar::h());
    return FreePoly::one().scaled(Scalar::i());
  };
  auto as_scalar = [](const FreePoly &p) -> std::optional<Scalar> {
    if (p.is_zero())
      return Scalar::zero();
    if (p.terms().size() == 1 && p.terms().begin()->first == Mono4{})
      return p.terms().begin()->second;
    return std::nullopt;
  };
  FreePoly value = expr::eval_node<FreePoly>(
      *ast, atom, [](const Int &v) { return FreePoly::one().scaled(Scalar(GaussRat(Rat(v)))); },
      [](const FreePoly &a, const FreePoly &b) { return a * b; },
      [&](const FreePoly &a, const FreePoly &b) { return scalar_div(a, b, as_scalar); },
      [](const FreePoly &a, unsigned e) { return a.pow(e); });
  return value;
}

/// Canonical text of an enveloping-algebra element.
inline std::string to_string(const EnvElement &e) {
  if (e.is_zero())
    return "(0)/(1)";
  std::string out;
  for (auto &[m, c] : e.terms()) {
    if (!out.empty())
      out += " + ";
    out += to_string(c);
    auto app = [&out](const char *name, unsigned deg) {
      if (!deg)
        return;
      out += std::string("*") + name;
      if (deg > 1)
        out += "^" + std::to_string(deg);
    };
    app("Y", m.a);
    app("H", m.b);
    app("X", m.c);
  }
  return out;
}

} // namespace s2star
