#include "einlab/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>

namespace einlab {

namespace {

std::string position_message(const std::string& msg, int line, int column, const std::string& token) {
  std::string out = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
  if (!token.empty()) out += " (at '" + token + "')";
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& msg, int line_no, int column_no, std::string token_text)
    : error(position_message(msg, line_no, column_no, token_text)),
      line(line_no),
      column(column_no),
      token(std::move(token_text)) {}

struct Expr {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double number = 0.0;
  int var = 0;  // 0-based coordinate index
  std::string func;
  ExprPtr a;
  ExprPtr b;
};

namespace {

constexpr std::array<const char*, 6> kFunctions = {"sin", "cos", "exp", "sinh", "cosh", "sqrt"};

bool is_function(const std::string& name) {
  for (const char* f : kFunctions)
    if (name == f) return true;
  return false;
}

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  TokKind kind = TokKind::End;
  double value = 0.0;
  std::string text;
  int column = 1;
};

class Lexer {
 public:
  Lexer(const std::string& src, int line) : src_(src), line_(line) { next(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    next();
    return t;
  }
  int line() const { return line_; }

 private:
  [[noreturn]] void fail(const std::string& msg, int column, const std::string& token) const {
    throw ParseError(msg, line_, column, token);
  }

  void next() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    tok_ = Token{};
    tok_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= src_.size()) {
      tok_.kind = TokKind::End;
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = TokKind::Plus; break;
      case '-': tok_.kind = TokKind::Minus; break;
      case '*': tok_.kind = TokKind::Star; break;
      case '/': tok_.kind = TokKind::Slash; break;
      case '^': tok_.kind = TokKind::Caret; break;
      case '(': tok_.kind = TokKind::LParen; break;
      case ')': tok_.kind = TokKind::RParen; break;
      case ',': tok_.kind = TokKind::Comma; break;
      default:
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
          lex_number();
          return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          lex_ident();
          return;
        }
        fail("unexpected character", tok_.column, std::string(1, c));
    }
    tok_.text = std::string(1, c);
    ++pos_;
  }

  void lex_number() {
    const size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t probe = pos_ + 1;
      if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
      if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
        pos_ = probe;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    tok_.kind = TokKind::Number;
    tok_.text = src_.substr(start, pos_ - start);
    tok_.value = std::strtod(tok_.text.c_str(), nullptr);
  }

  void lex_ident() {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    tok_.kind = TokKind::Ident;
    tok_.text = src_.substr(start, pos_ - start);
  }

  const std::string& src_;
  int line_;
  size_t pos_ = 0;
  Token tok_;
};

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPow = 4;

class Parser {
 public:
  Parser(const std::string& src, int n_vars, int line) : lex_(src, line), n_vars_(n_vars) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr(kPrecAdd);
    if (lex_.peek().kind != TokKind::End)
      fail("unexpected token after expression", lex_.peek());
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& tok) {
    throw ParseError(msg, lex_.line(), tok.column, tok.text);
  }

  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr parse_expr(int min_prec) {
    ExprPtr lhs = parse_unary();
    for (;;) {
      const TokKind k = lex_.peek().kind;
      int prec = 0;
      bool right_assoc = false;
      Expr::Kind op = Expr::Kind::Add;
      switch (k) {
        case TokKind::Plus: prec = kPrecAdd; op = Expr::Kind::Add; break;
        case TokKind::Minus: prec = kPrecAdd; op = Expr::Kind::Sub; break;
        case TokKind::Star: prec = kPrecMul; op = Expr::Kind::Mul; break;
        case TokKind::Slash: prec = kPrecMul; op = Expr::Kind::Div; break;
        case TokKind::Caret: prec = kPrecPow; op = Expr::Kind::Pow; right_assoc = true; break;
        default: return lhs;
      }
      if (prec < min_prec) return lhs;
      lex_.take();
      ExprPtr rhs = parse_expr(right_assoc ? prec : prec + 1);
      Expr e;
      e.kind = op;
      e.a = std::move(lhs);
      e.b = std::move(rhs);
      lhs = make(std::move(e));
    }
  }

  ExprPtr parse_unary() {
    if (lex_.peek().kind == TokKind::Minus) {
      lex_.take();
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.a = parse_expr(kPrecUnary);
      return make(std::move(e));
    }
    return parse_atom();
  }

  ExprPtr parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case TokKind::Number: {
        Expr e;
        e.kind = Expr::Kind::Number;
        e.number = t.value;
        return make(std::move(e));
      }
      case TokKind::LParen: {
        ExprPtr inner = parse_expr(kPrecAdd);
        const Token& close = lex_.peek();
        if (close.kind != TokKind::RParen) {
          if (close.kind == TokKind::End) fail("unclosed parenthesis", close);
          fail("expected ')'", close);
        }
        lex_.take();
        return inner;
      }
      case TokKind::Ident: {
        if (is_function(t.text)) return parse_call(t);
        return parse_var(t);
      }
      case TokKind::End:
        fail("unexpected end of expression", t);
      default:
        fail("expected a number, coordinate, function, or '('", t);
    }
  }

  ExprPtr parse_call(const Token& name) {
    if (lex_.peek().kind != TokKind::LParen)
      fail("function '" + name.text + "' must be followed by '('", lex_.peek());
    lex_.take();
    ExprPtr arg = parse_expr(kPrecAdd);
    const Token& close = lex_.peek();
    if (close.kind == TokKind::Comma)
      fail("function '" + name.text + "' expects exactly one argument", close);
    if (close.kind != TokKind::RParen) {
      if (close.kind == TokKind::End) fail("unclosed parenthesis", close);
      fail("expected ')'", close);
    }
    lex_.take();
    Expr e;
    e.kind = Expr::Kind::Call;
    e.func = name.text;
    e.a = std::move(arg);
    return make(std::move(e));
  }

  ExprPtr parse_var(const Token& name) {
    const std::string& s = name.text;
    if (s.size() >= 2 && s[0] == 'x') {
      bool digits = true;
      for (size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
      if (digits) {
        const long idx = std::strtol(s.c_str() + 1, nullptr, 10);
        if (idx >= 1 && idx <= n_vars_) {
          Expr e;
          e.kind = Expr::Kind::Var;
          e.var = static_cast<int>(idx - 1);
          return make(std::move(e));
        }
        fail("unknown identifier '" + s + "' (coordinates are x1..x" + std::to_string(n_vars_) + ")",
             name);
      }
    }
    fail("unknown identifier '" + s + "'", name);
  }

  Lexer lex_;
  int n_vars_;
};

int node_prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return kPrecAdd;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return kPrecMul;
    case Expr::Kind::Neg: return kPrecUnary;
    case Expr::Kind::Pow: return kPrecPow;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void print_node(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, bool parens) {
    if (parens) out += '(';
    print_node(c, out);
    if (parens) out += ')';
  };
  switch (e.kind) {
    case Expr::Kind::Number:
      out += format_number(e.number);
      return;
    case Expr::Kind::Var:
      out += 'x';
      out += std::to_string(e.var + 1);
      return;
    case Expr::Kind::Neg:
      out += '-';
      child(*e.a, node_prec(*e.a) < kPrecUnary);
      return;
    case Expr::Kind::Call:
      out += e.func;
      out += '(';
      print_node(*e.a, out);
      out += ')';
      return;
    case Expr::Kind::Pow:
      // Right associative: parenthesize a left child of equal precedence.
      child(*e.a, node_prec(*e.a) <= kPrecPow);
      out += '^';
      child(*e.b, node_prec(*e.b) < kPrecPow);
      return;
    default: {
      const int p = node_prec(e);
      char opch = '+';
      if (e.kind == Expr::Kind::Sub) opch = '-';
      if (e.kind == Expr::Kind::Mul) opch = '*';
      if (e.kind == Expr::Kind::Div) opch = '/';
      child(*e.a, node_prec(*e.a) < p);
      out += opch;
      // Left associative: parenthesize a right child of equal precedence.
      child(*e.b, node_prec(*e.b) <= p);
      return;
    }
  }
}

bool tree_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number: return a.number == b.number;
    case Expr::Kind::Var: return a.var == b.var;
    case Expr::Kind::Neg: return tree_equal(*a.a, *b.a);
    case Expr::Kind::Call: return a.func == b.func && tree_equal(*a.a, *b.a);
    default: return tree_equal(*a.a, *b.a) && tree_equal(*a.b, *b.b);
  }
}

double eval_node(const Expr& e, std::span<const double> coords) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number;
    case Expr::Kind::Var:
      if (e.var < 0 || static_cast<size_t>(e.var) >= coords.size())
        throw error("coordinate x" + std::to_string(e.var + 1) + " is out of range for a point of dimension " +
                    std::to_string(coords.size()));
      return coords[static_cast<size_t>(e.var)];
    case Expr::Kind::Neg: return -eval_node(*e.a, coords);
    case Expr::Kind::Add: return eval_node(*e.a, coords) + eval_node(*e.b, coords);
    case Expr::Kind::Sub: return eval_node(*e.a, coords) - eval_node(*e.b, coords);
    case Expr::Kind::Mul: return eval_node(*e.a, coords) * eval_node(*e.b, coords);
    case Expr::Kind::Div: return eval_node(*e.a, coords) / eval_node(*e.b, coords);
    case Expr::Kind::Pow: return std::pow(eval_node(*e.a, coords), eval_node(*e.b, coords));
    case Expr::Kind::Call: {
      const double x = eval_node(*e.a, coords);
      if (e.func == "sin") return std::sin(x);
      if (e.func == "cos") return std::cos(x);
      if (e.func == "exp") return std::exp(x);
      if (e.func == "sinh") return std::sinh(x);
      if (e.func == "cosh") return std::cosh(x);
      return std::sqrt(x);
    }
  }
  throw error("corrupt expression tree");
}

bool blank(const std::string& s) {
  for (char c : s)
    if (c != ' ' && c != '\t') return false;
  return true;
}

}  // namespace

MetricExpression::MetricExpression(ExprPtr ast, std::string source, int n_vars)
    : ast_(std::move(ast)), source_(std::move(source)), n_vars_(n_vars) {}

MetricExpression MetricExpression::parse(const std::string& source, int n_vars, int line) {
  if (n_vars < 1) throw error("expression parsing needs at least one coordinate");
  if (blank(source)) throw ParseError("empty expression", line, 1, "");
  Parser p(source, n_vars, line);
  return MetricExpression(p.parse(), source, n_vars);
}

double MetricExpression::eval(std::span<const double> coords) const {
  return eval_node(*ast_, coords);
}

std::string MetricExpression::print() const {
  std::string out;
  print_node(*ast_, out);
  return out;
}

bool operator==(const MetricExpression& a, const MetricExpression& b) {
  return tree_equal(*a.ast_, *b.ast_);
}

std::vector<MetricExpression> parse_metric(const std::vector<std::string>& sources, int n_vars) {
  std::vector<MetricExpression> out;
  out.reserve(sources.size());
  for (size_t i = 0; i < sources.size(); ++i)
    out.push_back(MetricExpression::parse(sources[i], n_vars, static_cast<int>(i + 1)));
  return out;
}

}  // namespace einlab
