#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

namespace ovp {

namespace {

enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };

const std::map<std::string, Fn, std::less<>>& fn_table() {
  static const std::map<std::string, Fn, std::less<>> t = {
      {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan},
      {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh}, {"tanh", Fn::Tanh},
      {"exp", Fn::Exp},   {"log", Fn::Log},   {"sqrt", Fn::Sqrt},
      {"abs", Fn::Abs}};
  return t;
}

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Tan: return "tan";
    case Fn::Sinh: return "sinh";
    case Fn::Cosh: return "cosh";
    case Fn::Tanh: return "tanh";
    case Fn::Exp: return "exp";
    case Fn::Log: return "log";
    case Fn::Sqrt: return "sqrt";
    case Fn::Abs: return "abs";
  }
  return "?";
}

std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

struct Expr::Node {
  enum class Kind { Num, Var, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double value = 0;  // Num
  Fn fn = Fn::Sin;   // Call
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;
using P = std::shared_ptr<const Node>;

P mk_num(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  n->value = v;
  return n;
}

P mk_leaf(Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

P mk1(Kind k, P a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

P mk2(Kind k, P a, P b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

P mk_call(Fn f, P a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->fn = f;
  n->a = std::move(a);
  return n;
}

// precedence: 1 additive, 2 multiplicative, 3 unary minus, 4 power, 5 atom
int prec(const Node* n) {
  switch (n->kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    default: return 5;
  }
}

void node_str(const Node* n, std::string& out) {
  auto wrapped = [&out](const Node* c, bool need) {
    if (need) out += '(';
    node_str(c, out);
    if (need) out += ')';
  };
  switch (n->kind) {
    case Kind::Num: out += num_str(n->value); return;
    case Kind::Var: out += 'r'; return;
    case Kind::Pi: out += "pi"; return;
    case Kind::Neg:
      out += '-';
      wrapped(n->a.get(), prec(n->a.get()) < 4);
      return;
    case Kind::Add:
    case Kind::Sub:
      wrapped(n->a.get(), prec(n->a.get()) < 1);
      out += n->kind == Kind::Add ? '+' : '-';
      // right operand re-parses into the left-assoc chain unless wrapped
      wrapped(n->b.get(), prec(n->b.get()) <= 1);
      return;
    case Kind::Mul:
    case Kind::Div:
      wrapped(n->a.get(), prec(n->a.get()) < 2);
      out += n->kind == Kind::Mul ? '*' : '/';
      wrapped(n->b.get(), prec(n->b.get()) <= 2);
      return;
    case Kind::Pow:
      wrapped(n->a.get(), prec(n->a.get()) < 5);
      out += '^';
      wrapped(n->b.get(), prec(n->b.get()) < 4);
      return;
    case Kind::Call:
      out += fn_name(n->fn);
      out += '(';
      node_str(n->a.get(), out);
      out += ')';
      return;
  }
}

std::string node_str(const Node* n) {
  std::string s;
  node_str(n, s);
  return s;
}

[[noreturn]] void domain_fail(const Node* n, const std::string& what) {
  throw Error(ErrorCode::Domain, what + " in '" + node_str(n) + "'");
}

double eval_node(const Node* n, double r) {
  double v;
  switch (n->kind) {
    case Kind::Num: return n->value;
    case Kind::Var: return r;
    case Kind::Pi: return M_PI;
    case Kind::Neg: return -eval_node(n->a.get(), r);
    case Kind::Add: v = eval_node(n->a.get(), r) + eval_node(n->b.get(), r); break;
    case Kind::Sub: v = eval_node(n->a.get(), r) - eval_node(n->b.get(), r); break;
    case Kind::Mul: v = eval_node(n->a.get(), r) * eval_node(n->b.get(), r); break;
    case Kind::Div: {
      double den = eval_node(n->b.get(), r);
      if (den == 0) domain_fail(n, "division by zero");
      v = eval_node(n->a.get(), r) / den;
      break;
    }
    case Kind::Pow: {
      double base = eval_node(n->a.get(), r);
      double e = eval_node(n->b.get(), r);
      if (base < 0 && e != std::floor(e))
        domain_fail(n, "negative base with non-integer exponent");
      if (base == 0 && e < 0) domain_fail(n, "zero base with negative exponent");
      v = std::pow(base, e);
      break;
    }
    case Kind::Call: {
      double x = eval_node(n->a.get(), r);
      switch (n->fn) {
        case Fn::Sin: v = std::sin(x); break;
        case Fn::Cos: v = std::cos(x); break;
        case Fn::Tan: v = std::tan(x); break;
        case Fn::Sinh: v = std::sinh(x); break;
        case Fn::Cosh: v = std::cosh(x); break;
        case Fn::Tanh: v = std::tanh(x); break;
        case Fn::Exp: v = std::exp(x); break;
        case Fn::Log:
          if (x <= 0) domain_fail(n, "log of a non-positive value");
          v = std::log(x);
          break;
        case Fn::Sqrt:
          if (x < 0) domain_fail(n, "sqrt of a negative value");
          v = std::sqrt(x);
          break;
        case Fn::Abs: v = std::fabs(x); break;
        default: v = 0;
      }
      break;
    }
    default: return 0;
  }
  if (!std::isfinite(v)) domain_fail(n, "non-finite value");
  return v;
}

bool contains_var(const Node* n) {
  if (n->kind == Kind::Var) return true;
  if (n->a && contains_var(n->a.get())) return true;
  if (n->b && contains_var(n->b.get())) return true;
  return false;
}

bool is_num(const P& n, double v) { return n->kind == Kind::Num && n->value == v; }

// constant folding plus 0/1 identities, bottom-up
P fold(const P& n) {
  if (!n->a) return n;
  P a = fold(n->a);
  P b = n->b ? fold(n->b) : nullptr;
  auto foldable = [](const P& c) {
    return c->kind == Kind::Num || c->kind == Kind::Pi;
  };
  P out = b ? mk2(n->kind, a, b) : mk1(n->kind, a);
  if (n->kind == Kind::Call) out = mk_call(n->fn, a);
  if (foldable(a) && (!b || foldable(b))) {
    try {
      return mk_num(eval_node(out.get(), 0));
    } catch (const Error&) {
      // keep the unfolded tree; evaluation will report the domain error
    }
  }
  switch (n->kind) {
    case Kind::Neg:
      if (a->kind == Kind::Neg) return a->a;
      break;
    case Kind::Add:
      if (is_num(a, 0)) return b;
      if (is_num(b, 0)) return a;
      break;
    case Kind::Sub:
      if (is_num(b, 0)) return a;
      if (is_num(a, 0)) return fold(mk1(Kind::Neg, b));
      break;
    case Kind::Mul:
      if (is_num(a, 0) || is_num(b, 0)) return mk_num(0);
      if (is_num(a, 1)) return b;
      if (is_num(b, 1)) return a;
      break;
    case Kind::Div:
      if (is_num(a, 0)) return mk_num(0);
      if (is_num(b, 1)) return a;
      break;
    case Kind::Pow:
      if (is_num(b, 1)) return a;
      if (is_num(b, 0)) return mk_num(1);
      break;
    default: break;
  }
  return out;
}

P diff(const P& n);

P diff_call(const P& n) {
  const P& u = n->a;
  P du = diff(u);
  switch (n->fn) {
    case Fn::Sin: return mk2(Kind::Mul, mk_call(Fn::Cos, u), du);
    case Fn::Cos: return mk1(Kind::Neg, mk2(Kind::Mul, mk_call(Fn::Sin, u), du));
    case Fn::Tan:
      return mk2(Kind::Div, du, mk2(Kind::Pow, mk_call(Fn::Cos, u), mk_num(2)));
    case Fn::Sinh: return mk2(Kind::Mul, mk_call(Fn::Cosh, u), du);
    case Fn::Cosh: return mk2(Kind::Mul, mk_call(Fn::Sinh, u), du);
    case Fn::Tanh:
      return mk2(Kind::Div, du, mk2(Kind::Pow, mk_call(Fn::Cosh, u), mk_num(2)));
    case Fn::Exp: return mk2(Kind::Mul, mk_call(Fn::Exp, u), du);
    case Fn::Log: return mk2(Kind::Div, du, u);
    case Fn::Sqrt:
      return mk2(Kind::Div, du, mk2(Kind::Mul, mk_num(2), mk_call(Fn::Sqrt, u)));
    case Fn::Abs:
      // sign factor away from 0; at 0 evaluation reports division by zero
      return mk2(Kind::Mul, mk2(Kind::Div, u, mk_call(Fn::Abs, u)), du);
  }
  return mk_num(0);
}

P diff(const P& n) {
  switch (n->kind) {
    case Kind::Num:
    case Kind::Pi: return mk_num(0);
    case Kind::Var: return mk_num(1);
    case Kind::Neg: return mk1(Kind::Neg, diff(n->a));
    case Kind::Add: return mk2(Kind::Add, diff(n->a), diff(n->b));
    case Kind::Sub: return mk2(Kind::Sub, diff(n->a), diff(n->b));
    case Kind::Mul:
      return mk2(Kind::Add, mk2(Kind::Mul, diff(n->a), n->b),
                 mk2(Kind::Mul, n->a, diff(n->b)));
    case Kind::Div:
      return mk2(Kind::Div,
                 mk2(Kind::Sub, mk2(Kind::Mul, diff(n->a), n->b),
                     mk2(Kind::Mul, n->a, diff(n->b))),
                 mk2(Kind::Pow, n->b, mk_num(2)));
    case Kind::Pow: {
      if (!contains_var(n->b.get())) {
        // c * a^(c-1) * a'; keeps integer powers of negative bases valid
        P c = n->b;
        P cm1 = mk2(Kind::Sub, c, mk_num(1));
        return mk2(Kind::Mul,
                   mk2(Kind::Mul, c, mk2(Kind::Pow, n->a, cm1)), diff(n->a));
      }
      // a^b * (b' log a + b a'/a)
      P t1 = mk2(Kind::Mul, diff(n->b), mk_call(Fn::Log, n->a));
      P t2 = mk2(Kind::Mul, n->b, mk2(Kind::Div, diff(n->a), n->a));
      return mk2(Kind::Mul, mk2(Kind::Pow, n->a, n->b), mk2(Kind::Add, t1, t2));
    }
    case Kind::Call: return diff_call(n);
  }
  return mk_num(0);
}

bool same_node(const Node* x, const Node* y) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Num: return x->value == y->value;
    case Kind::Call:
      if (x->fn != y->fn) return false;
      break;
    default: break;
  }
  if (!!x->a != !!y->a || !!x->b != !!y->b) return false;
  if (x->a && !same_node(x->a.get(), y->a.get())) return false;
  if (x->b && !same_node(x->b.get(), y->b.get())) return false;
  return true;
}

// ---- parser ----

struct Token {
  enum class Kind { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
  Kind kind;
  size_t offset;
  double value = 0;
  std::string text;
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
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.offset = pos_;
    tok_.text.clear();
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = Token::Kind::Plus; ++pos_; return;
      case '-': tok_.kind = Token::Kind::Minus; ++pos_; return;
      case '*': tok_.kind = Token::Kind::Star; ++pos_; return;
      case '/': tok_.kind = Token::Kind::Slash; ++pos_; return;
      case '^': tok_.kind = Token::Kind::Caret; ++pos_; return;
      case '(': tok_.kind = Token::Kind::LParen; ++pos_; return;
      case ')': tok_.kind = Token::Kind::RParen; ++pos_; return;
      case ',': tok_.kind = Token::Kind::Comma; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      bool digits = false;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        digits = true;
      }
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          ++pos_;
          digits = true;
        }
      }
      if (!digits)
        throw Error(ErrorCode::Parse,
                    "syntax error at byte " + std::to_string(start) + ": stray '.'",
                    static_cast<long>(start));
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        size_t mark = pos_;
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        } else {
          pos_ = mark;  // 'e' belongs to a following identifier, not this literal
        }
      }
      tok_.kind = Token::Kind::Num;
      tok_.text = src_.substr(start, pos_ - start);
      tok_.value = std::stod(tok_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    throw Error(ErrorCode::Parse,
                "syntax error at byte " + std::to_string(pos_) + ": unexpected character '" +
                    std::string(1, c) + "'",
                static_cast<long>(pos_));
  }

  const std::string& src_;
  size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  P parse() {
    P e = expr();
    expect(Token::Kind::End, "end of input");
    return e;
  }

 private:
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::End: return "end of input";
      case Token::Kind::Num: return "'" + t.text + "'";
      case Token::Kind::Ident: return "'" + t.text + "'";
      default: break;
    }
    const char* ops = "+-*/^(),";
    const int idx = static_cast<int>(t.kind) - static_cast<int>(Token::Kind::Plus);
    return std::string("'") + ops[idx] + "'";
  }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = lex_.peek();
    throw Error(ErrorCode::Parse,
                "syntax error at byte " + std::to_string(t.offset) + ": expected " + expected +
                    "; found " + describe(t),
                static_cast<long>(t.offset));
  }

  void expect(Token::Kind k, const std::string& what) {
    if (lex_.peek().kind != k) fail(what);
    lex_.take();
  }

  P expr() {
    P e = term();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Kind::Plus || k == Token::Kind::Minus) {
        lex_.take();
        e = mk2(k == Token::Kind::Plus ? Kind::Add : Kind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  P term() {
    P e = factor();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Kind::Star || k == Token::Kind::Slash) {
        lex_.take();
        e = mk2(k == Token::Kind::Star ? Kind::Mul : Kind::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  // unary minus binds looser than ^, so -r^2 is -(r^2)
  P factor() {
    if (lex_.peek().kind == Token::Kind::Minus) {
      lex_.take();
      return mk1(Kind::Neg, factor());
    }
    return power();
  }

  P power() {
    P base = atom();
    if (lex_.peek().kind == Token::Kind::Caret) {
      lex_.take();
      return mk2(Kind::Pow, base, factor());  // right-associative exponent
    }
    return base;
  }

  P atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Num: {
        Token n = lex_.take();
        return mk_num(n.value);
      }
      case Token::Kind::LParen: {
        lex_.take();
        P e = expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Ident: {
        Token id = lex_.take();
        // one-variable language; angular expressions read better with theta
        if (id.text == "r" || id.text == "theta") return mk_leaf(Kind::Var);
        if (id.text == "pi") return mk_leaf(Kind::Pi);
        if (id.text == "pow") {
          expect(Token::Kind::LParen, "'(' after 'pow'");
          P a = expr();
          expect(Token::Kind::Comma, "',' between the two arguments of 'pow'");
          P b = expr();
          expect(Token::Kind::RParen, "')'");
          return mk2(Kind::Pow, a, b);
        }
        auto it = fn_table().find(id.text);
        if (it == fn_table().end())
          throw Error(ErrorCode::Parse,
                      "unknown identifier '" + id.text + "' at byte " + std::to_string(id.offset),
                      static_cast<long>(id.offset));
        expect(Token::Kind::LParen, "'(' after '" + id.text + "'");
        P a = expr();
        expect(Token::Kind::RParen, "')'");
        return mk_call(it->second, a);
      }
      default:
        fail("a number, 'r', 'theta', 'pi', a function name, '(' or '-'");
    }
  }

  Lexer lex_;
};

}  // namespace

Expr Expr::parse(const std::string& src) {
  Parser p(src);
  return Expr(p.parse());
}

Expr Expr::number(double v) { return Expr(mk_num(v)); }

double Expr::eval(double r) const {
  if (!root_) throw Error(ErrorCode::Invalid, "empty expression");
  return eval_node(root_.get(), r);
}

Expr Expr::derivative() const {
  if (!root_) throw Error(ErrorCode::Invalid, "empty expression");
  return Expr(fold(diff(root_)));
}

std::string Expr::str() const {
  if (!root_) return "";
  return node_str(root_.get());
}

bool Expr::same_tree(const Expr& other) const {
  if (!root_ || !other.root_) return root_ == other.root_;
  return same_node(root_.get(), other.root_.get());
}

bool Expr::is_constant(double* value) const {
  if (!root_) return false;
  if (contains_var(root_.get())) return false;
  if (value) {
    try {
      *value = eval_node(root_.get(), 0);
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace ovp
