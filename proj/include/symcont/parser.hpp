#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcont/combine.hpp"
#include "symcont/piecewise.hpp"

namespace symcont {

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                           message),
        line(line),
        column(column) {}
  int line;
  int column;
};

enum class CheckKind { SC, WC, WSC, All, Bounded };

inline const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::SC: return "sc";
    case CheckKind::WC: return "wc";
    case CheckKind::WSC: return "wsc";
    case CheckKind::All: return "all";
    case CheckKind::Bounded: return "bounded";
  }
  return "?";
}

struct CheckDirective {
  std::string fn;
  CheckKind kind = CheckKind::All;
  FieldElement point;
  int line = 0;
};

struct Program {
  int radicand = kDefaultRadicand;
  std::map<std::string, StructuredSet> sets;
  std::map<std::string, PiecewiseFn> fns;
  std::vector<std::string> fn_order;
  std::map<std::string, FnFamily> families;
  std::map<std::string, UniformContinuityCert> uc_certs;
  std::vector<CheckDirective> checks;

  const PiecewiseFn& fn(const std::string& name) const {
    auto it = fns.find(name);
    if (it == fns.end()) throw std::out_of_range("unknown function " + name);
    return it->second;
  }
};

namespace parse_detail {

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else {
      static const char* two[] = {"->", "<=", ">=", "!="};
      t.kind = Token::Kind::Sym;
      t.text = std::string(1, c);
      for (const char* s : two)
        if (src.compare(i, 2, s) == 0) t.text = s;
      if (std::string("(){}[],=&<>+-*/^!").find(c) == std::string::npos)
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      if (t.text == "!") throw ParseError(line, col, "expected '!='");
      advance(t.text.size());
    }
    out.push_back(t);
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Program run() {
    while (!at_end()) statement();
    return std::move(prog_);
  }

 private:
  // Token helpers.
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool is_word(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == s;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(peek(), msg); }
  std::string describe(const Token& t) const {
    return t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "', found " + describe(peek()));
    next();
  }
  void expect_word(const char* s) {
    if (!is_word(s)) fail(std::string("expected '") + s + "', found " + describe(peek()));
    next();
  }
  const Token& ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  long integer(const char* what) {
    if (peek().kind != Token::Kind::Int) fail(std::string("expected ") + what + ", found " + describe(peek()));
    const Token& t = next();
    try {
      return std::stol(t.text);
    } catch (const std::exception&) {
      fail(t, "integer too large");
    }
  }

  void statement() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a statement, found " + describe(t));
    if (t.text == "radicand") return radicand_stmt();
    if (t.text == "set") return set_stmt();
    if (t.text == "fn") return fn_stmt();
    if (t.text == "family") return family_stmt();
    if (t.text == "uc") return uc_stmt();
    if (t.text == "check") return check_stmt();
    fail("unknown statement '" + t.text + "'");
  }

  void radicand_stmt() {
    const Token& kw = next();
    if (used_radicand_ || radicand_set_) fail(kw, "radicand must be declared once, before any use of rt");
    const Token& v = peek();
    const long d = integer("a radicand");
    if (d < 2 || d > 1000000 || !is_squarefree_radicand(static_cast<int>(d)))
      fail(v, "radicand must be a squarefree integer > 1");
    prog_.radicand = static_cast<int>(d);
    radicand_set_ = true;
  }

  void set_stmt() {
    next();
    const Token& name = ident("a set name");
    if (prog_.sets.count(name.text)) fail(name, "set '" + name.text + "' is already defined");
    expect_sym("=");
    prog_.sets[name.text] = set_expr();
  }

  void fn_stmt() {
    next();
    const Token& name = ident("a function name");
    if (prog_.fns.count(name.text) || prog_.families.count(name.text))
      fail(name, "'" + name.text + "' is already defined");
    PiecewiseFn f;
    if (is_word("on")) {
      next();
      StructuredSet dom = set_expr();
      expect_sym("=");
      f = piecewise(dom, false, name);
    } else {
      expect_sym("=");
      f = combinator_expr();
    }
    prog_.fns[name.text] = f;
    prog_.fn_order.push_back(name.text);
  }

  void family_stmt() {
    next();
    const Token& name = ident("a family name");
    if (prog_.fns.count(name.text) || prog_.families.count(name.text))
      fail(name, "'" + name.text + "' is already defined");
    expect_word("on");
    StructuredSet dom = set_expr();
    expect_sym("=");
    FnFamily fam;
    fam.body = piecewise(dom, true, name);
    prog_.families[name.text] = fam;
  }

  void uc_stmt() {
    next();
    const Token& name = ident("a function name");
    if (!prog_.fns.count(name.text)) fail(name, "unknown function '" + name.text + "'");
    UniformContinuityCert cert;
    const Token& kind = ident("lipschitz, sqrt or declared");
    if (kind.text == "lipschitz") {
      FieldElement c = constant_expr();
      StructuredSet scope = prog_.fns[name.text].domain();
      if (is_word("on")) {
        next();
        scope = set_expr();
      }
      cert.evidence = UniformContinuityCert::Lipschitz{c, scope};
    } else if (kind.text == "sqrt") {
      cert.evidence = UniformContinuityCert::SqrtOnNonnegatives{};
    } else if (kind.text == "declared") {
      cert.evidence = UniformContinuityCert::Declared{static_cast<int>(integer("a sampling budget"))};
    } else {
      fail(kind, "expected lipschitz, sqrt or declared");
    }
    prog_.uc_certs[name.text] = cert;
  }

  void check_stmt() {
    const Token& kw = next();
    const Token& name = ident("a function name");
    if (!prog_.fns.count(name.text)) fail(name, "unknown function '" + name.text + "'");
    const Token& what = ident("sc, wc, wsc, all or bounded");
    CheckDirective d;
    d.fn = name.text;
    d.line = kw.line;
    if (what.text == "sc") d.kind = CheckKind::SC;
    else if (what.text == "wc") d.kind = CheckKind::WC;
    else if (what.text == "wsc") d.kind = CheckKind::WSC;
    else if (what.text == "all") d.kind = CheckKind::All;
    else if (what.text == "bounded") d.kind = CheckKind::Bounded;
    else fail(what, "expected sc, wc, wsc, all or bounded");
    expect_word("at");
    const Token& at = peek();
    d.point = constant_expr();
    if (d.kind != CheckKind::Bounded && !prog_.fns[name.text].domain().contains(d.point))
      fail(at, "point " + d.point.to_string() + " is not in the domain of " + name.text);
    prog_.checks.push_back(d);
  }

  // Sets.
  StructuredSet set_expr() {
    StructuredSet s = set_term();
    while (is_word("union")) {
      next();
      s = s.unite(set_term());
    }
    return s;
  }

  StructuredSet set_term() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a set, found " + describe(t));
    if (t.text == "line") {
      next();
      return StructuredSet::line();
    }
    if (t.text == "seq" || t.text == "seqpos" || t.text == "seqneg") {
      next();
      expect_sym("(");
      const Token& at = peek();
      FieldElement c = constant_expr();
      expect_sym(")");
      if (c.is_zero()) fail(at, "generator scale must be nonzero");
      IndexRange r = t.text == "seq" ? IndexRange::All : t.text == "seqpos" ? IndexRange::Positive : IndexRange::Negative;
      return StructuredSet({GenSet::make(c, r)});
    }
    if (t.text == "points") {
      next();
      expect_sym("(");
      PointSet p;
      p.points.push_back(constant_expr());
      while (is_sym(",")) {
        next();
        p.points.push_back(constant_expr());
      }
      expect_sym(")");
      return StructuredSet({p});
    }
    if (t.text == "interval") {
      next();
      Interval iv;
      if (is_sym("[")) iv.lower_closed = true;
      else if (!is_sym("(")) fail("expected '[' or '(' after interval");
      next();
      iv.lower = endpoint(-1);
      expect_sym(",");
      iv.upper = endpoint(+1);
      if (is_sym("]")) iv.upper_closed = true;
      else if (!is_sym(")")) fail("expected ']' or ')' to close the interval");
      next();
      if (!iv.lower) iv.lower_closed = false;
      if (!iv.upper) iv.upper_closed = false;
      if (iv.lower && iv.upper && *iv.lower > *iv.upper) fail(t, "interval has lower endpoint above upper");
      return StructuredSet({iv});
    }
    auto it = prog_.sets.find(t.text);
    if (it == prog_.sets.end()) fail(t, "unknown set '" + t.text + "'");
    next();
    return it->second;
  }

  std::optional<FieldElement> endpoint(int infinite_sign) {
    if (is_word("inf") || (is_sym("-") && is_word("inf", 1))) {
      const Token& t = peek();
      const bool negative = is_sym("-");
      if (negative) next();
      next();
      if ((negative ? -1 : 1) != infinite_sign) fail(t, "infinite endpoint on the wrong side");
      return std::nullopt;
    }
    return constant_expr();
  }

  // Piecewise bodies.
  PiecewiseFn piecewise(const StructuredSet& dom, bool family, const Token& name) {
    expect_word("piecewise");
    expect_sym("{");
    std::vector<Branch> branches;
    bool saw_else = false;
    while (true) {
      const Token& start = peek();
      if (saw_else) fail(start, "else must be the last branch");
      Region r;
      if (is_word("else")) {
        next();
        saw_else = true;
      } else {
        r = guard();
      }
      expect_sym("->");
      allow_param_ = family;
      ExprPtr e = expr();
      allow_param_ = false;
      branches.push_back({std::move(r), std::move(e)});
      if (is_sym(",")) {
        next();
        continue;
      }
      expect_sym("}");
      break;
    }
    PiecewiseFn f(dom, std::move(branches));
    if (!f.syntactically_total())
      fail(name, "piecewise definition of '" + name.text + "' needs an else branch to be total on " +
                     dom.to_string());
    return f;
  }

  Region guard() {
    std::vector<RegionAtom> atoms;
    atoms.push_back(guard_atom());
    while (is_sym("&")) {
      next();
      atoms.push_back(guard_atom());
    }
    return Region(std::move(atoms));
  }

  RegionAtom guard_atom() {
    expect_word("x");
    if (is_word("in") || is_word("notin")) {
      const bool neg = next().text == "notin";
      return InSet{set_expr(), neg};
    }
    static const std::pair<const char*, CmpOp> ops[] = {{">=", CmpOp::Ge}, {"<=", CmpOp::Le}, {"!=", CmpOp::Ne},
                                                        {">", CmpOp::Gt},  {"<", CmpOp::Lt},  {"=", CmpOp::Eq}};
    for (const auto& [s, op] : ops) {
      if (is_sym(s)) {
        next();
        return Compare{op, constant_expr()};
      }
    }
    fail("expected in, notin or a comparison after x, found " + describe(peek()));
  }

  // Combinator declarations.
  PiecewiseFn combinator_expr() {
    const Token& head = ident("a combinator");
    expect_sym("(");
    auto fn_arg = [this]() -> const PiecewiseFn& {
      const Token& t = ident("a function name");
      auto it = prog_.fns.find(t.text);
      if (it == prog_.fns.end()) fail(t, "unknown function '" + t.text + "'");
      return it->second;
    };
    static const std::map<std::string, Combinator> unary{
        {"abs", Combinator::Abs}, {"recip", Combinator::Recip}, {"sqrt", Combinator::Sqrt}};
    static const std::map<std::string, Combinator> binary{
        {"add", Combinator::Add}, {"sub", Combinator::Sub},           {"max", Combinator::Max},
        {"min", Combinator::Min}, {"mul", Combinator::Mul},           {"quotient", Combinator::Quotient},
        {"compose", Combinator::Compose}};
    PiecewiseFn out;
    if (head.text == "instance") {
      const Token& t = ident("a family name");
      auto it = prog_.families.find(t.text);
      if (it == prog_.families.end()) fail(t, "unknown family '" + t.text + "'");
      expect_sym(",");
      const Token& kt = peek();
      const long k = integer("a family index");
      if (k < 1 || k > kMaxFamilyIndex)
        fail(kt, "family index must be between 1 and " + std::to_string(kMaxFamilyIndex));
      out = it->second.instantiate(static_cast<int>(k));
    } else if (head.text == "scale") {
      FieldElement c = constant_expr();
      expect_sym(",");
      out = combine_scale(c, fn_arg());
    } else if (auto u = unary.find(head.text); u != unary.end()) {
      out = combine(u->second, fn_arg());
    } else if (auto b = binary.find(head.text); b != binary.end()) {
      const PiecewiseFn& f = fn_arg();
      expect_sym(",");
      const PiecewiseFn& g = fn_arg();
      try {
        // compose(g, f) reads as g o f.
        out = b->second == Combinator::Compose ? combine_compose(f, g) : combine(b->second, f, g);
      } catch (const DomainMismatch& e) {
        fail(head, e.what());
      }
    } else {
      fail(head, "unknown combinator '" + head.text + "'");
    }
    expect_sym(")");
    return out;
  }

  // Expressions.
  FieldElement constant_expr() {
    const Token& start = peek();
    const bool saved = allow_param_;
    allow_param_ = false;
    allow_var_ = false;
    ExprPtr e = expr();
    allow_var_ = true;
    allow_param_ = saved;
    ExactValue v = evaluate_exact(e, FieldElement(0));
    if (!v.ok()) fail(start, "constant expression is not a field element");
    return v.value;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (is_sym("+") || is_sym("-")) {
      const bool plus = next().text == "+";
      ExprPtr r = term();
      e = plus ? expr::add(e, r) : expr::sub(e, r);
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (is_sym("*") || is_sym("/")) {
      const bool times = next().text == "*";
      ExprPtr r = unary();
      e = times ? expr::mul(e, r) : expr::div(e, r);
    }
    return e;
  }

  ExprPtr unary() {
    if (is_sym("-")) {
      next();
      return expr::neg(unary());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!is_sym("^")) return base;
    next();
    if (is_word("k")) {
      if (!allow_param_) fail("the index k is only available inside a family");
      next();
      return expr::pow(base, Expr::kParamExponent);
    }
    const Token& t = peek();
    const long n = integer("an exponent");
    if (n > kMaxFamilyIndex) fail(t, "exponent above " + std::to_string(kMaxFamilyIndex));
    return expr::pow(base, static_cast<int>(n));
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      next();
      return expr::constant(FieldElement(Rational::parse(t.text)));
    }
    if (is_sym("(")) {
      next();
      ExprPtr e = expr();
      expect_sym(")");
      return e;
    }
    if (t.kind != Token::Kind::Ident) fail("expected an expression, found " + describe(t));
    next();
    if (t.text == "x") {
      if (!allow_var_) fail(t, "x is not allowed in a constant");
      return expr::var();
    }
    if (t.text == "k") {
      if (!allow_param_) fail(t, "the index k is only available inside a family");
      return expr::param();
    }
    if (t.text == "rt") {
      int d = prog_.radicand;
      if (is_sym("(")) {
        next();
        const Token& dt = peek();
        const long v = integer("a radicand");
        expect_sym(")");
        if (radicand_set_ || used_radicand_) {
          if (v != prog_.radicand) fail(dt, "mixed radicands: rt(" + std::to_string(v) + ") in a program using rt(" +
                                               std::to_string(prog_.radicand) + ")");
        } else {
          if (v < 2 || !is_squarefree_radicand(static_cast<int>(v))) fail(dt, "radicand must be squarefree");
          prog_.radicand = static_cast<int>(v);
        }
        d = prog_.radicand;
      }
      used_radicand_ = true;
      return expr::constant(FieldElement::root(d));
    }
    if (t.text == "abs" || t.text == "sqrt") {
      expect_sym("(");
      ExprPtr e = expr();
      expect_sym(")");
      return t.text == "abs" ? expr::abs(e) : expr::sqrt(e);
    }
    fail(t, "unknown name '" + t.text + "' in expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program prog_;
  bool allow_param_ = false;
  bool allow_var_ = true;
  bool radicand_set_ = false;
  bool used_radicand_ = false;
};

}  // namespace parse_detail

inline Program parse_program(const std::string& text) { return parse_detail::Parser(text).run(); }

/// Parse a single expression in x; used by tests and the CLI.
inline ExprPtr parse_expr(const std::string& text) {
  Program p = parse_program("fn _e on line = piecewise { else -> " + text + " }");
  return p.fns.at("_e").branches().front().expr;
}

/// Parse a constant such as `1/2`, `-rt` or `3 - rt(5)` in the field of
/// the given radicand.
inline FieldElement parse_constant(const std::string& text, int radicand = 2) {
  const std::string prefix = radicand == 2 ? "" : "radicand " + std::to_string(radicand) + "\n";
  Program p = parse_program(prefix + "set _p = points(" + text + ")");
  const auto& atoms = p.sets.at("_p").atoms();
  const auto* pts = atoms.size() == 1 ? std::get_if<PointSet>(&atoms.front()) : nullptr;
  if (!pts || pts->points.size() != 1) throw ParseError(1, 1, "expected a single constant");
  return pts->points.front();
}

}  // namespace symcont
