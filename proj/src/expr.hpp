#pragma once

#include <memory>
#include <string>

#include "error.hpp"

namespace ovp {

// Immutable scalar expression in one variable.
//
// Grammar: numeric literals, the variable (spelled r or theta), pi, binary
// + - * / ^ (^ right-associative, binds tighter than unary -), unary -, and
// the functions sin cos tan sinh cosh tanh exp log sqrt abs pow(a,b).
class Expr {
 public:
  Expr() = default;

  // Throws Error(Parse) with a byte offset on malformed input.
  static Expr parse(const std::string& src);
  static Expr number(double v);

  bool empty() const { return root_ == nullptr; }

  // Throws Error(Domain) on log/sqrt/division/power domain violations and on
  // any non-finite intermediate value; the message names the subexpression.
  double eval(double r) const;

  // Exact symbolic derivative, simplified by constant folding and 0/1
  // identities only. abs differentiates to the sign factor (undefined at 0,
  // where evaluation reports a domain error).
  Expr derivative() const;

  // Serialization; parsing it back yields a structurally identical tree.
  std::string str() const;

  bool same_tree(const Expr& other) const;

  // True when no variable occurs; *value receives the folded value when the
  // constant evaluates cleanly.
  bool is_constant(double* value = nullptr) const;

  struct Node;  // defined in the implementation file only

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace ovp
