#include <cctype>
#include <sstream>

#include "ojac/dsl.hpp"

namespace ojac::dsl {

DslError::DslError(Pos p, const std::string& msg)
    : Error("line " + std::to_string(p.line) + ", column " + std::to_string(p.col) + ": " + msg), pos(p) {}

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && number == o.number && name == o.name && power == o.power && args == o.args;
}

namespace {

const char* const kKinds[] = {"oddjacobi", "schouten", "qmanifold", "quasiq", "exactqs", "algebroid"};

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Pos pos;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  Pos p;
  std::size_t i = 0;
  const auto advance = [&] {
    if (src[i] == '\n') {
      ++p.line;
      p.col = 1;
    } else {
      ++p.col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token t{Token::Kind::Ident, {}, p};
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
      out.push_back(std::move(t));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Token t{Token::Kind::Number, {}, p};
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t.text += src[i];
        advance();
      }
      if (i + 1 < src.size() && src[i] == '/' && std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
        t.text += '/';
        advance();
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
          t.text += src[i];
          advance();
        }
      }
      out.push_back(std::move(t));
    } else if (std::string_view("{}()[]:;,=+-*^").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), p});
      advance();
    } else {
      throw DslError(p, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::End, {}, p});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Model file() {
    Model m;
    while (!at_end()) {
      const Token& t = peek();
      if (is_word("chart"))
        m.charts.push_back(chart());
      else if (is_word("structure"))
        m.structures.push_back(structure());
      else if (is_word("check") || is_word("bracket") || is_word("convert"))
        m.directives.push_back(directive());
      else
        throw DslError(t.pos, "expected chart, structure, check, bracket or convert, found " + describe(t));
    }
    return m;
  }

  Expr whole_expr() {
    Expr e = expr();
    if (!at_end()) throw DslError(peek().pos, "unexpected " + describe(peek()) + " after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  bool is_word(std::string_view w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }
  bool is_punct(char c, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Punct && peek(k).text[0] == c;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::End: return "end of input";
      case Token::Kind::Number: return "number '" + t.text + "'";
      default: return "'" + t.text + "'";
    }
  }

  const Token& expect_punct(char c) {
    if (!is_punct(c)) throw DslError(peek().pos, std::string("expected '") + c + "', found " + describe(peek()));
    return next();
  }
  const Token& expect_word(std::string_view w) {
    if (!is_word(w)) throw DslError(peek().pos, "expected '" + std::string(w) + "', found " + describe(peek()));
    return next();
  }
  const Token& ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) throw DslError(peek().pos, std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  // NAME | P[qname] | d[qname]
  std::string qname() {
    const Token& t = ident("a name");
    if ((t.text == "P" || t.text == "d") && is_punct('[')) {
      next();
      std::string inner = qname();
      expect_punct(']');
      return t.text + "[" + inner + "]";
    }
    return t.text;
  }

  Rational number(const Token& t) {
    const auto slash = t.text.find('/');
    if (slash != std::string::npos && t.text.find_first_not_of('0', slash + 1) == std::string::npos)
      throw DslError(t.pos, "zero denominator in '" + t.text + "'");
    Rational q(t.text);
    q.canonicalize();
    return q;
  }

  long integer(bool allow_sign) {
    bool neg = false;
    if (allow_sign && is_punct('-')) {
      next();
      neg = true;
    }
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find('/') != std::string::npos)
      throw DslError(t.pos, "expected an integer, found " + describe(t));
    next();
    if (t.text.size() > 9) throw DslError(t.pos, "integer '" + t.text + "' is too large");
    const long v = std::stol(t.text);
    return neg ? -v : v;
  }

  ChartDecl chart() {
    ChartDecl c;
    c.pos = expect_word("chart").pos;
    c.name = ident("a chart name").text;
    expect_punct('{');
    while (!is_punct('}')) {
      CoordDecl d;
      d.pos = expect_word("coord").pos;
      d.name = qname();
      expect_punct(':');
      if (is_word("even")) {
        d.parity = Parity::Even;
      } else if (is_word("odd")) {
        d.parity = Parity::Odd;
      } else {
        throw DslError(peek().pos, "expected 'even' or 'odd', found " + describe(peek()));
      }
      next();
      if (is_word("weight")) {
        next();
        d.weight = static_cast<int>(integer(true));
      }
      expect_punct(';');
      c.coords.push_back(std::move(d));
    }
    next();
    return c;
  }

  StructureDecl structure() {
    StructureDecl s;
    s.pos = expect_word("structure").pos;
    const Token& k = ident("a structure kind");
    bool known = false;
    for (const char* kind : kKinds) known = known || k.text == kind;
    if (!known)
      throw DslError(k.pos, "unknown structure kind '" + k.text +
                                "' (expected oddjacobi, schouten, qmanifold, quasiq, exactqs or algebroid)");
    s.kind = k.text;
    s.name = ident("a structure name").text;
    expect_word("on");
    s.chart = ident("a chart name").text;
    expect_punct('{');
    while (!is_punct('}')) {
      FieldDecl f;
      const Token& t = ident("a field name");
      f.pos = t.pos;
      f.name = t.text;
      if (is_punct('[')) {
        next();
        f.indices.push_back(qname());
        while (is_punct(',')) {
          next();
          f.indices.push_back(qname());
        }
        expect_punct(']');
      }
      expect_punct('=');
      f.value = expr();
      expect_punct(';');
      s.fields.push_back(std::move(f));
    }
    next();
    return s;
  }

  Directive directive() {
    Directive d;
    const Token& k = next();
    d.pos = k.pos;
    d.target = ident("a structure name").text;
    if (k.text == "check") {
      d.kind = Directive::Kind::Check;
    } else if (k.text == "bracket") {
      d.kind = Directive::Kind::Bracket;
      expect_punct('(');
      d.args.push_back(expr());
      expect_punct(',');
      d.args.push_back(expr());
      expect_punct(')');
    } else {
      d.kind = Directive::Kind::Convert;
      expect_word("via");
      d.via = ident("a conversion name").text;
    }
    expect_punct(';');
    return d;
  }

  static Expr node(Expr::Kind k, Pos pos, std::vector<Expr> args) {
    Expr e;
    e.kind = k;
    e.pos = pos;
    e.args = std::move(args);
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (is_punct('+') || is_punct('-')) {
      const Token& op = next();
      Expr rhs = term();
      lhs = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, op.pos, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_punct('*')) {
      const Token& op = next();
      Expr rhs = unary();
      lhs = node(Expr::Kind::Mul, op.pos, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr unary() {
    if (is_punct('-')) {
      const Pos p = next().pos;
      return node(Expr::Kind::Neg, p, {unary()});
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (is_punct('^')) {
      const Pos p = next().pos;
      const long k = integer(false);
      Expr e = node(Expr::Kind::Pow, p, {std::move(base)});
      e.power = static_cast<unsigned>(k);
      return e;
    }
    return base;
  }

  Expr primary() {
    const Token& t = peek();
    Expr e;
    e.pos = t.pos;
    if (t.kind == Token::Kind::Number) {
      next();
      e.kind = Expr::Kind::Number;
      e.number = number(t);
      return e;
    }
    if (is_punct('(')) {
      next();
      Expr inner = expr();
      expect_punct(')');
      return inner;
    }
    if (t.kind == Token::Kind::Ident && t.text == "exp" && is_punct('(', 1)) {
      next();
      next();
      bool neg = false;
      if (is_punct('-')) {
        next();
        neg = true;
      }
      const Token& r = peek();
      if (r.kind != Token::Kind::Number) throw DslError(r.pos, "expected a rate, found " + describe(r));
      next();
      e.kind = Expr::Kind::Exp;
      e.number = neg ? Rational(-number(r)) : number(r);
      expect_punct('*');
      e.name = qname();
      expect_punct(')');
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      e.kind = Expr::Kind::Name;
      e.name = qname();
      return e;
    }
    throw DslError(t.pos, "expected an expression, found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

void render_to(std::ostream& os, const Expr& e);

void operand(std::ostream& os, const Expr& e, bool parens) {
  if (parens) os << '(';
  render_to(os, e);
  if (parens) os << ')';
}

void render_to(std::ostream& os, const Expr& e) {
  const int p = precedence(e);
  switch (e.kind) {
    case Expr::Kind::Number: os << to_string(e.number); break;
    case Expr::Kind::Name: os << e.name; break;
    case Expr::Kind::Exp: os << "exp(" << to_string(e.number) << '*' << e.name << ')'; break;
    case Expr::Kind::Neg:
      os << '-';
      operand(os, e.args[0], precedence(e.args[0]) <= p);
      break;
    case Expr::Kind::Pow:
      operand(os, e.args[0], precedence(e.args[0]) <= p);
      os << '^' << e.power;
      break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
      operand(os, e.args[0], precedence(e.args[0]) < p);
      os << (e.kind == Expr::Kind::Add ? " + " : e.kind == Expr::Kind::Sub ? " - " : "*");
      operand(os, e.args[1], precedence(e.args[1]) <= p);
      break;
  }
}

}  // namespace

Model parse(std::string_view source) { return Parser(source).file(); }

Expr parse_expr(std::string_view source) { return Parser(source).whole_expr(); }

std::string render(const Expr& e) {
  std::ostringstream os;
  render_to(os, e);
  return os.str();
}

std::string render(const Directive& d) {
  switch (d.kind) {
    case Directive::Kind::Check: return "check " + d.target + ";";
    case Directive::Kind::Bracket:
      return "bracket " + d.target + "(" + render(d.args[0]) + ", " + render(d.args[1]) + ");";
    case Directive::Kind::Convert: return "convert " + d.target + " via " + d.via + ";";
  }
  return {};
}

std::string render(const Model& m) {
  std::ostringstream os;
  bool gap = false;
  const auto separate = [&] {
    if (gap) os << '\n';
    gap = true;
  };
  for (const auto& c : m.charts) {
    separate();
    os << "chart " << c.name << " {\n";
    for (const auto& d : c.coords) {
      os << "  coord " << d.name << " : " << to_string(d.parity);
      if (d.weight != 0) os << " weight " << d.weight;
      os << ";\n";
    }
    os << "}\n";
  }
  for (const auto& s : m.structures) {
    separate();
    os << "structure " << s.kind << ' ' << s.name << " on " << s.chart << " {\n";
    for (const auto& f : s.fields) {
      os << "  " << f.name;
      if (!f.indices.empty()) {
        os << '[';
        for (std::size_t i = 0; i < f.indices.size(); ++i) os << (i ? ", " : "") << f.indices[i];
        os << ']';
      }
      os << " = " << render(f.value) << ";\n";
    }
    os << "}\n";
  }
  if (!m.directives.empty()) separate();
  for (const auto& d : m.directives) os << render(d) << '\n';
  return os.str();
}

}  // namespace ojac::dsl
