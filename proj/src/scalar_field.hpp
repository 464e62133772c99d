#pragma once

#include <string>
#include <vector>

#include "expr.hpp"

namespace ovp {

// Real function of r. Expression-backed fields carry an exact symbolic
// derivative; table-backed fields (sampled data) interpolate with a
// shape-preserving cubic and differentiate the interpolant.
class ScalarField {
 public:
  ScalarField() = default;

  static ScalarField from_expr(Expr e);
  static ScalarField parse(const std::string& src);
  static ScalarField constant(double v);
  static ScalarField table(std::vector<double> r, std::vector<double> y);

  double operator()(double r) const;
  double derivative(double r) const;

  bool symbolic() const { return !expr_.empty(); }
  const Expr& expr() const;

  // domain covered by a table-backed field
  double table_lo() const;
  double table_hi() const;

  std::string str() const;

 private:
  Expr expr_, dexpr_;
  std::vector<double> tx_, ty_, tm_;

  size_t segment(double r) const;
};

}  // namespace ovp
