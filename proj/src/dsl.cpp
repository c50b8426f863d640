#include "qmod/dsl.hpp"

#include <chrono>
#include <map>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "qmod/constructions.hpp"

namespace qmod::dsl {

namespace detail {

// ---------------------------------------------------------------- AST

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Num, Ident, Basis, Call, Neg, Add, Sub, Mul, Pow };
  Kind kind;
  SourcePos pos;
  Rational num;            // Num
  std::string name;        // Ident / Basis / Call
  std::vector<ExprP> args; // Call args; binary ops use args[0..1]; Neg/Pow args[0]
  unsigned exp = 0;        // Pow
};

struct CoordDecl {
  bool odd = false;
  std::string name;
};

struct Stmt {
  enum class Kind {
    ChartDecl, DerivedChart, FieldDef, LetDef, VolumeDef, Algebroid, Double,
    CheckHomological, Modular, Divergence, Bracket, Exact, Assert
  };
  struct ATerm {
    bool x_term = false;
    std::vector<std::string> tuple;
    std::string target;
    ExprP expr;
    SourcePos pos;
  };

  Kind kind;
  SourcePos pos;
  std::string name;                 // defined name / primary operand
  std::string arg1, arg2;           // secondary name operands
  std::string chart;                // `on CHART`
  std::string derived_kind;         // antitangent / cotangent / anticotangent
  std::optional<unsigned> trunc;    // ChartDecl override
  unsigned bound = 0;               // Exact
  Rational scale;                   // VolumeDef
  std::vector<CoordDecl> coords;    // ChartDecl coords / Algebroid fibres
  std::vector<ATerm> terms;         // Algebroid
  ExprP expr, expr2;
};

struct ScriptData {
  std::vector<Stmt> stmts;
  unsigned default_trunc = 8;
};

// ---------------------------------------------------------------- Lexer

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else if (c == '\n') {
        ++line_, col_ = 1, ++i_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++col_, ++i_;
      } else {
        break;
      }
    }
    tok_.pos = {line_, col_};
    if (i_ >= src_.size()) {
      tok_ = {Token::Kind::End, "<end of input>", tok_.pos};
      return;
    }
    char c = src_[i_];
    auto is_ident = [](char ch) {
      return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
             (ch >= '0' && ch <= '9') || ch == '_';
    };
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() && is_ident(src_[j])) ++j;
      tok_ = {Token::Kind::Ident, src_.substr(i_, j - i_), tok_.pos};
      col_ += static_cast<unsigned>(j - i_);
      i_ = j;
      return;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i_;
      while (j < src_.size() && src_[j] >= '0' && src_[j] <= '9') ++j;
      tok_ = {Token::Kind::Int, src_.substr(i_, j - i_), tok_.pos};
      col_ += static_cast<unsigned>(j - i_);
      i_ = j;
      return;
    }
    if (c == '=' && i_ + 1 < src_.size() && src_[i_ + 1] == '=') {
      tok_ = {Token::Kind::Punct, "==", tok_.pos};
      col_ += 2, i_ += 2;
      return;
    }
    static const std::string singles = "{}()[];:,=+-*^/@?";
    if (singles.find(c) != std::string::npos) {
      tok_ = {Token::Kind::Punct, std::string(1, c), tok_.pos};
      ++col_, ++i_;
      return;
    }
    throw ScriptError(tok_.pos, std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::size_t i_ = 0;
  unsigned line_ = 1, col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------- Parser

class Parser {
 public:
  Parser(const std::string& src, unsigned default_trunc) : lx_(src) {
    data_.default_trunc = default_trunc;
  }

  ScriptData run() {
    while (lx_.peek().kind != Token::Kind::End) data_.stmts.push_back(statement());
    return std::move(data_);
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ScriptError(t.pos, msg + " (got '" + t.text + "')");
  }

  Token expect_punct(const std::string& p) {
    Token t = lx_.take();
    if (t.kind != Token::Kind::Punct || t.text != p) fail(t, "expected '" + p + "'");
    return t;
  }

  std::string expect_ident() {
    Token t = lx_.take();
    if (t.kind != Token::Kind::Ident) fail(t, "expected identifier");
    return t.text;
  }

  void expect_keyword(const std::string& kw) {
    Token t = lx_.take();
    if (t.kind != Token::Kind::Ident || t.text != kw) fail(t, "expected '" + kw + "'");
  }

  unsigned expect_uint() {
    Token t = lx_.take();
    if (t.kind != Token::Kind::Int) fail(t, "expected a number");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  bool peek_ident(const std::string& kw) {
    return lx_.peek().kind == Token::Kind::Ident && lx_.peek().text == kw;
  }
  bool peek_punct(const std::string& p) {
    return lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == p;
  }

  Stmt statement() {
    Token t = lx_.peek();
    if (t.kind != Token::Kind::Ident) fail(t, "expected a statement keyword");
    const std::string& kw = t.text;
    if (kw == "chart") return chart_stmt();
    if (kw == "field" || kw == "let") return def_stmt(kw == "field");
    if (kw == "volume") return volume_stmt();
    if (kw == "algebroid") return algebroid_stmt();
    if (kw == "double") return double_stmt();
    if (kw == "check") return check_stmt();
    if (kw == "modular") return modular_stmt();
    if (kw == "divergence") return two_name_stmt(Stmt::Kind::Divergence);
    if (kw == "bracket") return two_name_stmt(Stmt::Kind::Bracket);
    if (kw == "exact") return exact_stmt();
    if (kw == "assert") return assert_stmt();
    fail(t, "unknown statement keyword");
  }

  Stmt chart_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("chart");
    s.name = expect_ident();
    if (peek_punct("=")) {
      s.kind = Stmt::Kind::DerivedChart;
      lx_.take();
      Token k = lx_.take();
      if (k.kind != Token::Kind::Ident ||
          (k.text != "antitangent" && k.text != "cotangent" && k.text != "anticotangent"))
        fail(k, "expected antitangent, cotangent or anticotangent");
      s.derived_kind = k.text;
      expect_keyword("of");
      s.arg1 = expect_ident();
      expect_punct(";");
      return s;
    }
    s.kind = Stmt::Kind::ChartDecl;
    if (peek_ident("truncation")) {
      lx_.take();
      s.trunc = expect_uint();
    }
    expect_punct("{");
    while (!peek_punct("}")) {
      Token k = lx_.take();
      if (k.kind != Token::Kind::Ident || (k.text != "even" && k.text != "odd"))
        fail(k, "expected 'even' or 'odd'");
      CoordDecl c;
      c.odd = k.text == "odd";
      c.name = expect_ident();
      expect_punct(";");
      s.coords.push_back(std::move(c));
    }
    lx_.take();  // }
    return s;
  }

  Stmt def_stmt(bool field) {
    Stmt s;
    s.pos = lx_.peek().pos;
    lx_.take();  // field | let
    s.kind = field ? Stmt::Kind::FieldDef : Stmt::Kind::LetDef;
    s.name = expect_ident();
    expect_keyword("on");
    s.chart = expect_ident();
    expect_punct("=");
    s.expr = expression();
    expect_punct(";");
    return s;
  }

  Stmt volume_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("volume");
    s.kind = Stmt::Kind::VolumeDef;
    s.name = expect_ident();
    expect_keyword("on");
    s.chart = expect_ident();
    expect_punct("=");
    s.scale = rational_literal();
    if (peek_punct("*")) {
      lx_.take();
      expect_keyword("exp");
      expect_punct("(");
      s.expr = expression();
      expect_punct(")");
    }
    expect_punct(";");
    return s;
  }

  Stmt algebroid_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("algebroid");
    s.kind = Stmt::Kind::Algebroid;
    s.name = expect_ident();
    expect_punct("{");
    expect_keyword("base");
    s.arg1 = expect_ident();
    expect_punct(";");
    while (peek_ident("fibre")) {
      lx_.take();
      Token k = lx_.take();
      if (k.kind != Token::Kind::Ident || (k.text != "even" && k.text != "odd"))
        fail(k, "expected 'even' or 'odd'");
      CoordDecl c;
      c.odd = k.text == "odd";
      c.name = expect_ident();
      expect_punct(";");
      s.coords.push_back(std::move(c));
    }
    while (!peek_punct("}")) {
      Token k = lx_.take();
      if (k.kind != Token::Kind::Ident || (k.text != "x_term" && k.text != "f_term"))
        fail(k, "expected x_term, f_term or '}'");
      Stmt::ATerm term;
      term.pos = k.pos;
      term.x_term = k.text == "x_term";
      expect_punct("[");
      if (!peek_punct("]")) {
        term.tuple.push_back(expect_ident());
        while (peek_punct(",")) {
          lx_.take();
          term.tuple.push_back(expect_ident());
        }
      }
      expect_punct("]");
      term.target = expect_ident();
      expect_punct(":");
      term.expr = expression();
      expect_punct(";");
      s.terms.push_back(std::move(term));
    }
    lx_.take();  // }
    return s;
  }

  Stmt double_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("double");
    s.kind = Stmt::Kind::Double;
    s.name = expect_ident();
    expect_keyword("of");
    s.arg1 = expect_ident();
    expect_punct(";");
    return s;
  }

  Stmt check_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("check");
    expect_keyword("homological");
    s.kind = Stmt::Kind::CheckHomological;
    s.arg1 = expect_ident();
    expect_punct(";");
    return s;
  }

  Stmt modular_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("modular");
    s.kind = Stmt::Kind::Modular;
    s.arg1 = expect_ident();
    if (peek_ident("with")) {
      lx_.take();
      expect_keyword("volume");
      s.arg2 = expect_ident();
    }
    expect_punct(";");
    return s;
  }

  Stmt two_name_stmt(Stmt::Kind kind) {
    Stmt s;
    s.pos = lx_.peek().pos;
    lx_.take();  // keyword
    s.kind = kind;
    s.arg1 = expect_ident();
    s.arg2 = expect_ident();
    expect_punct(";");
    return s;
  }

  Stmt exact_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("exact");
    expect_punct("?");
    s.kind = Stmt::Kind::Exact;
    s.expr = expression();
    expect_keyword("by");
    s.arg1 = expect_ident();
    expect_keyword("bound");
    s.bound = expect_uint();
    expect_punct(";");
    return s;
  }

  Stmt assert_stmt() {
    Stmt s;
    s.pos = lx_.peek().pos;
    expect_keyword("assert");
    s.kind = Stmt::Kind::Assert;
    expect_keyword("on");
    s.chart = expect_ident();
    expect_punct(":");
    s.expr = expression();
    expect_punct("==");
    s.expr2 = expression();
    expect_punct(";");
    return s;
  }

  Rational rational_literal() {
    Token t = lx_.take();
    if (t.kind != Token::Kind::Int) fail(t, "expected a rational literal");
    Rational r(t.text);
    if (peek_punct("/")) {
      lx_.take();
      Token d = lx_.take();
      if (d.kind != Token::Kind::Int) fail(d, "expected a denominator");
      Rational den(d.text);
      if (den == 0) throw ScriptError(d.pos, "zero denominator");
      r /= den;
    }
    return r;
  }

  // expr := term (('+'|'-') term)*
  ExprP expression() {
    ExprP lhs = term();
    while (peek_punct("+") || peek_punct("-")) {
      Token op = lx_.take();
      auto e = std::make_shared<Expr>();
      e->kind = op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      e->pos = op.pos;
      e->args = {lhs, term()};
      lhs = std::move(e);
    }
    return lhs;
  }

  // term := factor ('*' factor)*
  ExprP term() {
    ExprP lhs = factor();
    while (peek_punct("*")) {
      Token op = lx_.take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Mul;
      e->pos = op.pos;
      e->args = {lhs, factor()};
      lhs = std::move(e);
    }
    return lhs;
  }

  // factor := '-' factor | power
  ExprP factor() {
    if (peek_punct("-")) {
      Token op = lx_.take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Neg;
      e->pos = op.pos;
      e->args = {factor()};
      return e;
    }
    return power();
  }

  // power := atom ['^' INT]
  ExprP power() {
    ExprP base = atom();
    if (peek_punct("^")) {
      Token op = lx_.take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->pos = op.pos;
      e->args = {base};
      e->exp = expect_uint();
      return e;
    }
    return base;
  }

  ExprP atom() {
    Token t = lx_.peek();
    if (t.kind == Token::Kind::Int) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Num;
      e->pos = t.pos;
      e->num = rational_literal();
      return e;
    }
    if (t.kind == Token::Kind::Punct && t.text == "@") {
      lx_.take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Basis;
      e->pos = t.pos;
      e->name = expect_ident();
      return e;
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      lx_.take();
      ExprP inner = expression();
      expect_punct(")");
      return inner;
    }
    if (t.kind == Token::Kind::Ident) {
      lx_.take();
      auto e = std::make_shared<Expr>();
      e->pos = t.pos;
      e->name = t.text;
      if (peek_punct("(")) {
        e->kind = Expr::Kind::Call;
        lx_.take();
        if (!peek_punct(")")) {
          e->args.push_back(expression());
          while (peek_punct(",")) {
            lx_.take();
            e->args.push_back(expression());
          }
        }
        expect_punct(")");
      } else {
        e->kind = Expr::Kind::Ident;
      }
      return e;
    }
    fail(t, "expected an expression");
  }

  Lexer lx_;
  ScriptData data_;
};

// ---------------------------------------------------------------- Printer

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

void print_expr(std::ostream& os, const ExprP& e, int need) {
  const bool parens = precedence(e->kind) < need;
  if (parens) os << '(';
  switch (e->kind) {
    case Expr::Kind::Num:
      os << to_string(e->num);
      break;
    case Expr::Kind::Ident:
      os << e->name;
      break;
    case Expr::Kind::Basis:
      os << '@' << e->name;
      break;
    case Expr::Kind::Call:
      os << e->name << '(';
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, e->args[i], 0);
      }
      os << ')';
      break;
    case Expr::Kind::Neg:
      os << '-';
      print_expr(os, e->args[0], 3);
      break;
    case Expr::Kind::Add:
      print_expr(os, e->args[0], 1);
      os << " + ";
      print_expr(os, e->args[1], 2);
      break;
    case Expr::Kind::Sub:
      print_expr(os, e->args[0], 1);
      os << " - ";
      print_expr(os, e->args[1], 2);
      break;
    case Expr::Kind::Mul:
      print_expr(os, e->args[0], 2);
      os << '*';
      print_expr(os, e->args[1], 3);
      break;
    case Expr::Kind::Pow:
      print_expr(os, e->args[0], 5);
      os << '^' << e->exp;
      break;
  }
  if (parens) os << ')';
}

std::string expr_text(const ExprP& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

void print_stmt(std::ostream& os, const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::ChartDecl:
      os << "chart " << s.name;
      if (s.trunc) os << " truncation " << *s.trunc;
      os << " {\n";
      for (const auto& c : s.coords)
        os << "  " << (c.odd ? "odd " : "even ") << c.name << ";\n";
      os << "}\n";
      break;
    case Stmt::Kind::DerivedChart:
      os << "chart " << s.name << " = " << s.derived_kind << " of " << s.arg1 << ";\n";
      break;
    case Stmt::Kind::FieldDef:
      os << "field " << s.name << " on " << s.chart << " = " << expr_text(s.expr) << ";\n";
      break;
    case Stmt::Kind::LetDef:
      os << "let " << s.name << " on " << s.chart << " = " << expr_text(s.expr) << ";\n";
      break;
    case Stmt::Kind::VolumeDef:
      os << "volume " << s.name << " on " << s.chart << " = " << to_string(s.scale);
      if (s.expr) os << " * exp(" << expr_text(s.expr) << ")";
      os << ";\n";
      break;
    case Stmt::Kind::Algebroid:
      os << "algebroid " << s.name << " {\n  base " << s.arg1 << ";\n";
      for (const auto& c : s.coords)
        os << "  fibre " << (c.odd ? "odd " : "even ") << c.name << ";\n";
      for (const auto& t : s.terms) {
        os << "  " << (t.x_term ? "x_term" : "f_term") << " [";
        for (std::size_t i = 0; i < t.tuple.size(); ++i) {
          if (i) os << ", ";
          os << t.tuple[i];
        }
        os << "] " << t.target << " : " << expr_text(t.expr) << ";\n";
      }
      os << "}\n";
      break;
    case Stmt::Kind::Double:
      os << "double " << s.name << " of " << s.arg1 << ";\n";
      break;
    case Stmt::Kind::CheckHomological:
      os << "check homological " << s.arg1 << ";\n";
      break;
    case Stmt::Kind::Modular:
      os << "modular " << s.arg1;
      if (!s.arg2.empty()) os << " with volume " << s.arg2;
      os << ";\n";
      break;
    case Stmt::Kind::Divergence:
      os << "divergence " << s.arg1 << " " << s.arg2 << ";\n";
      break;
    case Stmt::Kind::Bracket:
      os << "bracket " << s.arg1 << " " << s.arg2 << ";\n";
      break;
    case Stmt::Kind::Exact:
      os << "exact? " << expr_text(s.expr) << " by " << s.arg1 << " bound " << s.bound
         << ";\n";
      break;
    case Stmt::Kind::Assert:
      os << "assert on " << s.chart << " : " << expr_text(s.expr) << " == "
         << expr_text(s.expr2) << ";\n";
      break;
  }
}

// ---------------------------------------------------------------- Environment

struct AlgebroidHandle {
  std::shared_ptr<const AlgebroidData> data;
};

using Value = std::variant<Chart, GradedElem, VectorField, BerezinVolume, AlgebroidHandle>;

const char* kind_name(const Value& v) {
  switch (v.index()) {
    case 0: return "chart";
    case 1: return "element";
    case 2: return "field";
    case 3: return "volume";
    default: return "algebroid";
  }
}

class Env {
 public:
  void define(SourcePos pos, const std::string& name, Value v) {
    if (names_.count(name))
      throw ScriptError(pos, "'" + name + "' is already defined");
    names_.emplace(name, std::move(v));
  }

  const Value& lookup(SourcePos pos, const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) throw ScriptError(pos, "unknown identifier '" + name + "'");
    return it->second;
  }

  bool has(const std::string& name) const { return names_.count(name) != 0; }

  template <class T>
  const T& get(SourcePos pos, const std::string& name, const char* want) const {
    const Value& v = lookup(pos, name);
    const T* p = std::get_if<T>(&v);
    if (!p)
      throw ScriptError(pos, "'" + name + "' is a " + kind_name(v) +
                                 ", expected a " + want);
    return *p;
  }

  /// The chart a name denotes in a chart position: a chart itself, or an
  /// algebroid's total chart.
  Chart chart_of(SourcePos pos, const std::string& name) const {
    const Value& v = lookup(pos, name);
    if (const Chart* c = std::get_if<Chart>(&v)) return *c;
    if (const AlgebroidHandle* a = std::get_if<AlgebroidHandle>(&v))
      return a->data->total();
    throw ScriptError(pos, "'" + name + "' is a " + kind_name(v) + ", expected a chart");
  }

 private:
  std::map<std::string, Value> names_;
};

// -------------------------------------------------- Expression evaluation

// Mixed scalar/field value during evaluation: a field plus a scalar part
// (scalars are fields' coefficients' world, so keep them separate).
struct EvalValue {
  bool is_field = false;
  GradedElem scalar;     // valid when !is_field
  VectorField field;     // valid when is_field
  Chart chart;
};

EvalValue scalar_value(GradedElem g) {
  EvalValue v;
  v.chart = g.chart();
  v.scalar = std::move(g);
  return v;
}

EvalValue field_value(VectorField f) {
  EvalValue v;
  v.is_field = true;
  v.chart = f.chart();
  v.field = std::move(f);
  return v;
}

class Evaluator {
 public:
  explicit Evaluator(const Env& env) : env_(env) {}

  /// Evaluates e in the context of `chart`; every value must land on it.
  EvalValue eval(const ExprP& e, const Chart& chart) {
    EvalValue v = eval_any(e, chart);
    if (v.chart != chart)
      throw ScriptError(e->pos, "value lives on a different chart than the context");
    return v;
  }

  GradedElem eval_scalar(const ExprP& e, const Chart& chart) {
    EvalValue v = eval(e, chart);
    if (v.is_field) throw ScriptError(e->pos, "expected a function, got a vector field");
    return v.scalar;
  }

  VectorField eval_field(const ExprP& e, const Chart& chart) {
    EvalValue v = eval(e, chart);
    if (!v.is_field) {
      if (v.scalar.is_zero()) return VectorField::zero(chart);
      throw ScriptError(e->pos, "expected a vector field, got a function");
    }
    return v.field;
  }

 private:
  EvalValue eval_any(const ExprP& e, const Chart& chart) {
    switch (e->kind) {
      case Expr::Kind::Num:
        return scalar_value(GradedElem::constant(chart, e->num));
      case Expr::Kind::Basis: {
        auto i = chart.index_of(e->name);
        if (!i) throw ScriptError(e->pos, "unknown coordinate '@" + e->name + "'");
        VectorField f(chart);
        f.set_component(*i, GradedElem::constant(chart, 1));
        return field_value(std::move(f));
      }
      case Expr::Kind::Ident: {
        if (auto i = chart.index_of(e->name))
          return scalar_value(GradedElem::coordinate(chart, *i));
        const Value& v = env_.lookup(e->pos, e->name);
        if (const GradedElem* g = std::get_if<GradedElem>(&v)) return scalar_value(*g);
        if (const VectorField* f = std::get_if<VectorField>(&v)) return field_value(*f);
        throw ScriptError(e->pos, "'" + e->name + "' is a " + kind_name(v) +
                                      " and cannot appear in an expression");
      }
      case Expr::Kind::Neg: {
        EvalValue a = eval(e->args[0], chart);
        if (a.is_field) return field_value(-a.field);
        return scalar_value(-a.scalar);
      }
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        EvalValue a = eval(e->args[0], chart);
        EvalValue b = eval(e->args[1], chart);
        const bool sub = e->kind == Expr::Kind::Sub;
        // A zero scalar may stand in for the zero field.
        if (a.is_field != b.is_field) {
          EvalValue& s = a.is_field ? b : a;
          if (!s.is_field && s.scalar.is_zero()) s = field_value(VectorField::zero(chart));
          else throw ScriptError(e->pos, "cannot add a function and a vector field");
        }
        if (a.is_field)
          return field_value(sub ? a.field - b.field : a.field + b.field);
        return scalar_value(sub ? a.scalar - b.scalar : a.scalar + b.scalar);
      }
      case Expr::Kind::Mul: {
        EvalValue a = eval(e->args[0], chart);
        EvalValue b = eval(e->args[1], chart);
        if (a.is_field && b.is_field)
          throw ScriptError(e->pos, "cannot multiply two vector fields");
        if (b.is_field) return field_value(a.scalar * b.field);
        if (a.is_field)
          throw ScriptError(e->pos,
                            "write the coefficient to the left of a basis vector");
        return scalar_value(a.scalar * b.scalar);
      }
      case Expr::Kind::Pow: {
        EvalValue a = eval(e->args[0], chart);
        if (a.is_field) throw ScriptError(e->pos, "cannot raise a vector field to a power");
        return scalar_value(a.scalar.pow(e->exp));
      }
      case Expr::Kind::Call:
        return call(e, chart);
    }
    throw ScriptError(e->pos, "internal: unhandled expression kind");
  }

  void expect_arity(const ExprP& e, std::size_t n) {
    if (e->args.size() != n)
      throw ScriptError(e->pos, "'" + e->name + "' expects " + std::to_string(n) +
                                    " argument(s)");
  }

  /// Name argument of a call (a chart, algebroid, field or volume by name).
  const std::string& name_arg(const ExprP& e, std::size_t i) {
    if (e->args[i]->kind != Expr::Kind::Ident)
      throw ScriptError(e->args[i]->pos, "'" + e->name + "' expects a name here");
    return e->args[i]->name;
  }

  EvalValue call(const ExprP& e, const Chart& chart) {
    const std::string& fn = e->name;
    if (fn == "local_rep") {
      expect_arity(e, 1);
      return scalar_value(local_rep(eval_field(e->args[0], chart)));
    }
    if (fn == "divergence") {
      expect_arity(e, 2);
      const BerezinVolume& rho =
          env_.get<BerezinVolume>(e->pos, name_arg(e, 1), "volume");
      return scalar_value(divergence(eval_field(e->args[0], chart), rho));
    }
    if (fn == "bracket") {
      expect_arity(e, 2);
      return field_value(
          bracket(eval_field(e->args[0], chart), eval_field(e->args[1], chart)));
    }
    if (fn == "apply") {
      expect_arity(e, 2);
      return scalar_value(
          eval_field(e->args[0], chart).apply(eval_scalar(e->args[1], chart)));
    }
    if (fn == "assemble" || fn == "formula") {
      expect_arity(e, 1);
      const AlgebroidHandle& a =
          env_.get<AlgebroidHandle>(e->pos, name_arg(e, 0), "algebroid");
      if (fn == "assemble") return field_value(lie_algebroid(*a.data));
      return scalar_value(l_infinity_local_rep_formula(*a.data));
    }
    if (fn == "de_rham") {
      expect_arity(e, 1);
      return field_value(de_rham(env_.chart_of(e->pos, name_arg(e, 0))));
    }
    if (fn == "interior" || fn == "lie_lift") {
      expect_arity(e, 1);
      const VectorField& f = env_.get<VectorField>(e->pos, name_arg(e, 0), "field");
      return field_value(fn == "interior" ? interior(f) : lie_derivative_lift(f));
    }
    throw ScriptError(e->pos, "unknown function '" + fn + "'");
  }

  const Env& env_;
};

// -------------------------------------------------- Static kind checking

// Mirrors Evaluator on kinds and charts without computing any value.
class StaticChecker {
 public:
  struct Entry {
    enum class Kind { ChartK, ElemK, FieldK, VolumeK, AlgebroidK } kind;
    Chart chart;        // the value's chart (total chart for algebroids)
    Chart base;         // algebroid base
  };

  explicit StaticChecker(unsigned default_trunc) : default_trunc_(default_trunc) {}

  void run(const std::vector<Stmt>& stmts) {
    for (const Stmt& s : stmts) statement(s);
  }

 private:
  void define(SourcePos pos, const std::string& name, Entry e) {
    if (env_.count(name)) throw ScriptError(pos, "'" + name + "' is already defined");
    env_.emplace(name, std::move(e));
  }

  const Entry& lookup(SourcePos pos, const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) throw ScriptError(pos, "unknown identifier '" + name + "'");
    return it->second;
  }

  const Entry& expect(SourcePos pos, const std::string& name, Entry::Kind k,
                      const char* want) const {
    const Entry& e = lookup(pos, name);
    if (e.kind != k) throw ScriptError(pos, "'" + name + "' is not a " + want);
    return e;
  }

  Chart chart_of(SourcePos pos, const std::string& name) const {
    const Entry& e = lookup(pos, name);
    if (e.kind == Entry::Kind::ChartK || e.kind == Entry::Kind::AlgebroidK) return e.chart;
    throw ScriptError(pos, "'" + name + "' is not a chart");
  }

  enum class EKind { Scalar, Field };

  EKind check_expr(const ExprP& e, const Chart& chart) {
    switch (e->kind) {
      case Expr::Kind::Num:
        return EKind::Scalar;
      case Expr::Kind::Basis:
        if (!chart.index_of(e->name))
          throw ScriptError(e->pos, "unknown coordinate '@" + e->name + "'");
        return EKind::Field;
      case Expr::Kind::Ident: {
        if (chart.index_of(e->name)) return EKind::Scalar;
        const Entry& en = lookup(e->pos, e->name);
        if (en.kind == Entry::Kind::ElemK || en.kind == Entry::Kind::FieldK) {
          if (en.chart != chart)
            throw ScriptError(e->pos,
                              "'" + e->name + "' lives on a different chart");
          return en.kind == Entry::Kind::ElemK ? EKind::Scalar : EKind::Field;
        }
        throw ScriptError(e->pos, "'" + e->name + "' cannot appear in an expression");
      }
      case Expr::Kind::Neg:
        return check_expr(e->args[0], chart);
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        EKind a = check_expr(e->args[0], chart);
        EKind b = check_expr(e->args[1], chart);
        // A literal zero may stand in for the zero field; statically we
        // accept mixed sums only when one side is a bare number.
        if (a != b) {
          bool zeroish = e->args[0]->kind == Expr::Kind::Num ||
                         e->args[1]->kind == Expr::Kind::Num;
          if (!zeroish)
            throw ScriptError(e->pos, "cannot add a function and a vector field");
          return EKind::Field;
        }
        return a;
      }
      case Expr::Kind::Mul: {
        EKind a = check_expr(e->args[0], chart);
        EKind b = check_expr(e->args[1], chart);
        if (a == EKind::Field && b == EKind::Field)
          throw ScriptError(e->pos, "cannot multiply two vector fields");
        if (a == EKind::Field)
          throw ScriptError(e->pos,
                            "write the coefficient to the left of a basis vector");
        return b;
      }
      case Expr::Kind::Pow:
        if (check_expr(e->args[0], chart) == EKind::Field)
          throw ScriptError(e->pos, "cannot raise a vector field to a power");
        return EKind::Scalar;
      case Expr::Kind::Call:
        return check_call(e, chart);
    }
    throw ScriptError(e->pos, "internal: unhandled expression kind");
  }

  EKind check_call(const ExprP& e, const Chart& chart) {
    auto arity = [&](std::size_t n) {
      if (e->args.size() != n)
        throw ScriptError(e->pos, "'" + e->name + "' expects " + std::to_string(n) +
                                      " argument(s)");
    };
    auto name_arg = [&](std::size_t i) -> const std::string& {
      if (e->args[i]->kind != Expr::Kind::Ident)
        throw ScriptError(e->args[i]->pos, "'" + e->name + "' expects a name here");
      return e->args[i]->name;
    };
    const std::string& fn = e->name;
    auto require_field_arg = [&](std::size_t i) {
      if (check_expr(e->args[i], chart) != EKind::Field)
        throw ScriptError(e->args[i]->pos, "'" + fn + "' expects a vector field");
    };
    if (fn == "local_rep") {
      arity(1);
      require_field_arg(0);
      return EKind::Scalar;
    }
    if (fn == "divergence") {
      arity(2);
      require_field_arg(0);
      const Entry& v = expect(e->pos, name_arg(1), Entry::Kind::VolumeK, "volume");
      if (v.chart != chart)
        throw ScriptError(e->pos, "volume lives on a different chart");
      return EKind::Scalar;
    }
    if (fn == "bracket") {
      arity(2);
      require_field_arg(0);
      require_field_arg(1);
      return EKind::Field;
    }
    if (fn == "apply") {
      arity(2);
      require_field_arg(0);
      if (check_expr(e->args[1], chart) != EKind::Scalar)
        throw ScriptError(e->args[1]->pos, "'apply' expects a function here");
      return EKind::Scalar;
    }
    if (fn == "assemble" || fn == "formula") {
      arity(1);
      const Entry& a = expect(e->pos, name_arg(0), Entry::Kind::AlgebroidK, "algebroid");
      if (a.chart != chart)
        throw ScriptError(e->pos, "algebroid lives on a different chart");
      return fn == "assemble" ? EKind::Field : EKind::Scalar;
    }
    if (fn == "de_rham") {
      arity(1);
      Chart base = chart_of(e->pos, name_arg(0));
      if (antitangent(base) != chart)
        throw ScriptError(e->pos, "de_rham lives on the antitangent chart of its base");
      return EKind::Field;
    }
    if (fn == "interior" || fn == "lie_lift") {
      arity(1);
      const Entry& f = expect(e->pos, name_arg(0), Entry::Kind::FieldK, "field");
      if (antitangent(f.chart) != chart)
        throw ScriptError(e->pos, "'" + fn + "' lives on the antitangent chart");
      return EKind::Field;
    }
    throw ScriptError(e->pos, "unknown function '" + fn + "'");
  }

  Chart build_chart(const Stmt& s) {
    std::vector<Coord> coords;
    for (const auto& c : s.coords)
      coords.push_back({c.name, c.odd ? Parity::Odd : Parity::Even, {}});
    try {
      return Chart::make(std::move(coords), s.trunc.value_or(default_trunc_));
    } catch (const Error& err) {
      throw ScriptError(s.pos, err.what());
    }
  }

  void statement(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::ChartDecl:
        define(s.pos, s.name, {Entry::Kind::ChartK, build_chart(s), {}});
        break;
      case Stmt::Kind::DerivedChart: {
        Chart base = chart_of(s.pos, s.arg1);
        Chart derived = s.derived_kind == "antitangent" ? antitangent(base)
                        : s.derived_kind == "cotangent" ? cotangent(base).chart
                                                        : anticotangent(base).chart;
        define(s.pos, s.name, {Entry::Kind::ChartK, std::move(derived), {}});
        break;
      }
      case Stmt::Kind::FieldDef:
      case Stmt::Kind::LetDef: {
        Chart chart = chart_of(s.pos, s.chart);
        EKind k = check_expr(s.expr, chart);
        const bool want_field = s.kind == Stmt::Kind::FieldDef;
        // A scalar rhs is allowed for a field only if it is the literal 0.
        if (want_field && k != EKind::Field && s.expr->kind != Expr::Kind::Num)
          throw ScriptError(s.pos, "field definition needs '@coord' basis terms");
        if (!want_field && k != EKind::Scalar)
          throw ScriptError(s.pos, "'let' defines a function, not a vector field");
        define(s.pos, s.name,
               {want_field ? Entry::Kind::FieldK : Entry::Kind::ElemK, chart, {}});
        break;
      }
      case Stmt::Kind::VolumeDef: {
        Chart chart = chart_of(s.pos, s.chart);
        if (s.scale <= 0) throw ScriptError(s.pos, "volume scale must be positive");
        if (s.expr && check_expr(s.expr, chart) != EKind::Scalar)
          throw ScriptError(s.pos, "log-density must be a function");
        define(s.pos, s.name, {Entry::Kind::VolumeK, chart, {}});
        break;
      }
      case Stmt::Kind::Algebroid: {
        Chart base = chart_of(s.pos, s.arg1);
        std::vector<Coord> fibres;
        for (const auto& c : s.coords)
          fibres.push_back({c.name, c.odd ? Parity::Odd : Parity::Even, {}});
        AlgebroidData data(base, fibres);
        const Chart& total = data.total();
        for (const auto& t : s.terms) {
          for (const auto& xi : t.tuple) {
            auto i = total.index_of(xi);
            if (!i || *i < base.size())
              throw ScriptError(t.pos, "'" + xi + "' is not a fibre coordinate");
          }
          auto ti = (t.x_term ? base : total).index_of(t.target);
          if (!ti || (!t.x_term && *ti < base.size()))
            throw ScriptError(t.pos, "bad target coordinate '" + t.target + "'");
          if (t.x_term && !base.index_of(t.target))
            throw ScriptError(t.pos, "bad target coordinate '" + t.target + "'");
          if (check_expr(t.expr, base) != EKind::Scalar)
            throw ScriptError(t.pos, "structure coefficient must be a function");
        }
        define(s.pos, s.name, {Entry::Kind::AlgebroidK, total, base});
        break;
      }
      case Stmt::Kind::Double: {
        const Entry& a = expect(s.pos, s.arg1, Entry::Kind::AlgebroidK, "algebroid");
        // The double chart: antitangent of the weighted total chart; weights
        // do not change names/parities, so build the unweighted shape here.
        std::vector<Coord> coords = a.chart.coords();
        std::vector<BiWeight> ws;
        for (std::size_t i = 0; i < coords.size(); ++i)
          coords[i].weight = i < a.base.size() ? BiWeight{0, 0} : BiWeight{0, 1};
        Chart weighted = Chart::make(std::move(coords), a.chart.truncation());
        Chart dchart = antitangent(weighted);
        define(s.pos, s.name, {Entry::Kind::ChartK, dchart, {}});
        define(s.pos, s.name + "_q01", {Entry::Kind::FieldK, dchart, {}});
        define(s.pos, s.name + "_q10", {Entry::Kind::FieldK, dchart, {}});
        break;
      }
      case Stmt::Kind::CheckHomological:
        expect(s.pos, s.arg1, Entry::Kind::FieldK, "field");
        break;
      case Stmt::Kind::Modular: {
        const Entry& f = expect(s.pos, s.arg1, Entry::Kind::FieldK, "field");
        if (!s.arg2.empty()) {
          const Entry& v = expect(s.pos, s.arg2, Entry::Kind::VolumeK, "volume");
          if (v.chart != f.chart)
            throw ScriptError(s.pos, "volume lives on a different chart");
        }
        break;
      }
      case Stmt::Kind::Divergence: {
        const Entry& f = expect(s.pos, s.arg1, Entry::Kind::FieldK, "field");
        const Entry& v = expect(s.pos, s.arg2, Entry::Kind::VolumeK, "volume");
        if (v.chart != f.chart)
          throw ScriptError(s.pos, "volume lives on a different chart");
        break;
      }
      case Stmt::Kind::Bracket: {
        const Entry& f = expect(s.pos, s.arg1, Entry::Kind::FieldK, "field");
        const Entry& g = expect(s.pos, s.arg2, Entry::Kind::FieldK, "field");
        if (f.chart != g.chart)
          throw ScriptError(s.pos, "fields live on different charts");
        break;
      }
      case Stmt::Kind::Exact: {
        const Entry& q = expect(s.pos, s.arg1, Entry::Kind::FieldK, "field");
        if (check_expr(s.expr, q.chart) != EKind::Scalar)
          throw ScriptError(s.pos, "'exact?' queries a function");
        break;
      }
      case Stmt::Kind::Assert: {
        Chart chart = chart_of(s.pos, s.chart);
        EKind a = check_expr(s.expr, chart);
        EKind b = check_expr(s.expr2, chart);
        bool zeroish = s.expr->kind == Expr::Kind::Num ||
                       s.expr2->kind == Expr::Kind::Num;
        if (a != b && !zeroish)
          throw ScriptError(s.pos, "assert compares values of different kinds");
        break;
      }
    }
  }

  unsigned default_trunc_;
  std::map<std::string, Entry> env_;
};

// ---------------------------------------------------------------- Executor

class Executor {
 public:
  Report run(const ScriptData& data) {
    Report report;
    for (const Stmt& s : data.stmts) statement(s, report);
    return report;
  }

 private:
  static std::string render(const EvalValue& v) {
    return v.is_field ? v.field.to_string() : v.scalar.to_string();
  }

  template <class F>
  void record(Report& report, const std::string& query, const std::string& inputs,
              bool is_assertion, F&& body) {
    Record rec;
    rec.query = query;
    rec.inputs = inputs;
    rec.is_assertion = is_assertion;
    auto t0 = std::chrono::steady_clock::now();
    body(rec);
    rec.ms = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
    report.records.push_back(std::move(rec));
  }

  void statement(const Stmt& s, Report& report) {
    Evaluator ev(env_);
    switch (s.kind) {
      case Stmt::Kind::ChartDecl: {
        std::vector<Coord> coords;
        for (const auto& c : s.coords)
          coords.push_back({c.name, c.odd ? Parity::Odd : Parity::Even, {}});
        env_.define(s.pos, s.name,
                    Chart::make(std::move(coords), s.trunc.value_or(default_trunc_)));
        break;
      }
      case Stmt::Kind::DerivedChart: {
        Chart base = env_.chart_of(s.pos, s.arg1);
        Chart derived = s.derived_kind == "antitangent" ? antitangent(base)
                        : s.derived_kind == "cotangent" ? cotangent(base).chart
                                                        : anticotangent(base).chart;
        env_.define(s.pos, s.name, std::move(derived));
        break;
      }
      case Stmt::Kind::FieldDef: {
        Chart chart = env_.chart_of(s.pos, s.chart);
        env_.define(s.pos, s.name, ev.eval_field(s.expr, chart));
        break;
      }
      case Stmt::Kind::LetDef: {
        Chart chart = env_.chart_of(s.pos, s.chart);
        env_.define(s.pos, s.name, ev.eval_scalar(s.expr, chart));
        break;
      }
      case Stmt::Kind::VolumeDef: {
        Chart chart = env_.chart_of(s.pos, s.chart);
        GradedElem g = s.expr ? ev.eval_scalar(s.expr, chart) : GradedElem::zero(chart);
        env_.define(s.pos, s.name, BerezinVolume(chart, s.scale, std::move(g)));
        break;
      }
      case Stmt::Kind::Algebroid: {
        Chart base = env_.chart_of(s.pos, s.arg1);
        std::vector<Coord> fibres;
        for (const auto& c : s.coords)
          fibres.push_back({c.name, c.odd ? Parity::Odd : Parity::Even, {}});
        auto data = std::make_shared<AlgebroidData>(base, fibres);
        for (const auto& t : s.terms) {
          std::vector<std::size_t> tuple;
          for (const auto& xi : t.tuple) {
            auto i = data->total().index_of(xi);
            if (!i || *i < base.size())
              throw ScriptError(t.pos, "'" + xi + "' is not a fibre coordinate");
            tuple.push_back(*i - base.size());
          }
          GradedElem coeff = ev.eval_scalar(t.expr, base);
          if (t.x_term) {
            auto bi = base.index_of(t.target);
            if (!bi) throw ScriptError(t.pos, "bad target coordinate '" + t.target + "'");
            data->add_x_term(tuple, *bi, std::move(coeff));
          } else {
            auto fi = data->total().index_of(t.target);
            if (!fi || *fi < base.size())
              throw ScriptError(t.pos, "bad target coordinate '" + t.target + "'");
            data->add_f_term(tuple, *fi - base.size(), std::move(coeff));
          }
        }
        env_.define(s.pos, s.name, AlgebroidHandle{std::move(data)});
        break;
      }
      case Stmt::Kind::Double: {
        const AlgebroidHandle& a =
            env_.get<AlgebroidHandle>(s.pos, s.arg1, "algebroid");
        DoubleStructure d = double_from_algebroid(*a.data);
        env_.define(s.pos, s.name, d.chart);
        env_.define(s.pos, s.name + "_q01", d.q01);
        env_.define(s.pos, s.name + "_q10", d.q10);
        break;
      }
      case Stmt::Kind::CheckHomological: {
        const VectorField& f = env_.get<VectorField>(s.pos, s.arg1, "field");
        record(report, "check homological", s.arg1, false, [&](Record& rec) {
          rec.value = is_homological(f) ? "homological" : "not homological";
        });
        break;
      }
      case Stmt::Kind::Modular: {
        const VectorField& f = env_.get<VectorField>(s.pos, s.arg1, "field");
        BerezinVolume rho = s.arg2.empty()
                                ? BerezinVolume::coordinate(f.chart())
                                : env_.get<BerezinVolume>(s.pos, s.arg2, "volume");
        std::string inputs = s.arg2.empty() ? s.arg1 : s.arg1 + " with volume " + s.arg2;
        record(report, "modular", inputs, false, [&](Record& rec) {
          rec.value = modular_rep(f, rho).to_string();
        });
        break;
      }
      case Stmt::Kind::Divergence: {
        const VectorField& f = env_.get<VectorField>(s.pos, s.arg1, "field");
        const BerezinVolume& rho = env_.get<BerezinVolume>(s.pos, s.arg2, "volume");
        record(report, "divergence", s.arg1 + " " + s.arg2, false, [&](Record& rec) {
          rec.value = divergence(f, rho).to_string();
        });
        break;
      }
      case Stmt::Kind::Bracket: {
        const VectorField& f = env_.get<VectorField>(s.pos, s.arg1, "field");
        const VectorField& g = env_.get<VectorField>(s.pos, s.arg2, "field");
        record(report, "bracket", s.arg1 + " " + s.arg2, false, [&](Record& rec) {
          rec.value = bracket(f, g).to_string();
        });
        break;
      }
      case Stmt::Kind::Exact: {
        const VectorField& q = env_.get<VectorField>(s.pos, s.arg1, "field");
        GradedElem f = ev.eval_scalar(s.expr, q.chart());
        std::string inputs =
            expr_text(s.expr) + " by " + s.arg1 + " bound " + std::to_string(s.bound);
        record(report, "exact?", inputs, false, [&](Record& rec) {
          ExactnessVerdict v = solve_exactness(f, q, s.bound);
          rec.value = v.exact ? "exact"
                     : v.complete ? "not exact (complete verdict)"
                                  : "not exact within bound (incomplete verdict)";
          if (v.witness) rec.witness = v.witness->to_string();
        });
        break;
      }
      case Stmt::Kind::Assert: {
        Chart chart = env_.chart_of(s.pos, s.chart);
        std::string inputs = expr_text(s.expr) + " == " + expr_text(s.expr2);
        record(report, "assert", inputs, true, [&](Record& rec) {
          EvalValue a = ev.eval(s.expr, chart);
          EvalValue b = ev.eval(s.expr2, chart);
          // Promote a zero scalar to the zero field when kinds mix.
          if (a.is_field != b.is_field) {
            EvalValue& sc = a.is_field ? b : a;
            if (!sc.is_field && sc.scalar.is_zero())
              sc = field_value(VectorField::zero(chart));
          }
          bool equal = a.is_field == b.is_field &&
                       (a.is_field ? a.field == b.field : a.scalar == b.scalar);
          rec.passed = equal;
          rec.value = equal ? "pass"
                            : "fail: " + render(a) + "  !=  " + render(b);
        });
        break;
      }
    }
  }

  unsigned default_trunc_ = 8;
  Env env_;

 public:
  explicit Executor(unsigned default_trunc) : default_trunc_(default_trunc) {}
};

}  // namespace detail

// ---------------------------------------------------------------- API

Script parse(const std::string& source, unsigned default_truncation) {
  detail::Parser p(source, default_truncation);
  auto data = std::make_shared<detail::ScriptData>(p.run());
  return Script{std::move(data)};
}

std::string format(const Script& s) {
  std::ostringstream os;
  for (const auto& st : s.data->stmts) detail::print_stmt(os, st);
  return os.str();
}

void static_check(const Script& s) {
  detail::StaticChecker sc(s.data->default_trunc);
  sc.run(s.data->stmts);
}

Report execute(const Script& s) {
  detail::Executor ex(s.data->default_trunc);
  return ex.run(*s.data);
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& rec : r.records) {
    os << (rec.passed ? "[ok]   " : "[FAIL] ") << rec.query << "  " << rec.inputs
       << "  ->  " << rec.value;
    if (rec.witness) os << "  (witness: " << *rec.witness << ")";
    os << "\n";
    if (!rec.passed) ++failed;
  }
  os << r.records.size() << " record(s), " << failed << " failure(s)\n";
  return os.str();
}

std::string to_json(const Report& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["passed"] = r.all_passed();
  j["records"] = nlohmann::json::array();
  for (const auto& rec : r.records) {
    nlohmann::json jr;
    jr["query"] = rec.query;
    jr["inputs"] = rec.inputs;
    jr["value"] = rec.value;
    jr["assertion"] = rec.is_assertion;
    jr["passed"] = rec.passed;
    if (rec.witness) jr["witness"] = *rec.witness;
    jr["ms"] = rec.ms;
    j["records"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

}  // namespace qmod::dsl
