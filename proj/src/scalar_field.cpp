#include "scalar_field.hpp"

#include <algorithm>
#include <cmath>

#include "interp.hpp"

namespace ovp {

ScalarField ScalarField::from_expr(Expr e) {
  ScalarField f;
  f.dexpr_ = e.derivative();
  f.expr_ = std::move(e);
  return f;
}

ScalarField ScalarField::parse(const std::string& src) {
  return from_expr(Expr::parse(src));
}

ScalarField ScalarField::constant(double v) { return from_expr(Expr::number(v)); }

ScalarField ScalarField::table(std::vector<double> r, std::vector<double> y) {
  if (r.size() != y.size() || r.size() < 2)
    throw Error(ErrorCode::Invalid, "table field needs matching arrays of length >= 2");
  for (size_t i = 0; i + 1 < r.size(); ++i)
    if (!(r[i] < r[i + 1]))
      throw Error(ErrorCode::Invalid, "table field abscissae must be strictly increasing");
  ScalarField f;
  f.tm_ = pchip_slopes(r, y);
  f.tx_ = std::move(r);
  f.ty_ = std::move(y);
  return f;
}

size_t ScalarField::segment(double r) const {
  const double span = tx_.back() - tx_.front();
  if (r < tx_.front() - 1e-9 * span || r > tx_.back() + 1e-9 * span)
    throw Error(ErrorCode::Domain,
                "r = " + std::to_string(r) + " outside the tabulated range [" +
                    std::to_string(tx_.front()) + ", " + std::to_string(tx_.back()) + "]");
  auto it = std::upper_bound(tx_.begin(), tx_.end(), r);
  size_t i = it == tx_.begin() ? 0 : static_cast<size_t>(it - tx_.begin()) - 1;
  return std::min(i, tx_.size() - 2);
}

double ScalarField::operator()(double r) const {
  if (symbolic()) return expr_.eval(r);
  if (tx_.empty()) throw Error(ErrorCode::Invalid, "empty field");
  size_t i = segment(r);
  return hermite(r, tx_[i], tx_[i + 1], ty_[i], ty_[i + 1], tm_[i], tm_[i + 1]);
}

double ScalarField::derivative(double r) const {
  if (symbolic()) return dexpr_.eval(r);
  if (tx_.empty()) throw Error(ErrorCode::Invalid, "empty field");
  size_t i = segment(r);
  return hermite_deriv(r, tx_[i], tx_[i + 1], ty_[i], ty_[i + 1], tm_[i], tm_[i + 1]);
}

const Expr& ScalarField::expr() const {
  if (!symbolic()) throw Error(ErrorCode::Invalid, "field is not expression-backed");
  return expr_;
}

double ScalarField::table_lo() const {
  if (symbolic() || tx_.empty()) throw Error(ErrorCode::Invalid, "field is not table-backed");
  return tx_.front();
}

double ScalarField::table_hi() const {
  if (symbolic() || tx_.empty()) throw Error(ErrorCode::Invalid, "field is not table-backed");
  return tx_.back();
}

std::string ScalarField::str() const {
  if (symbolic()) return expr_.str();
  if (tx_.empty()) return "";
  return "table[" + std::to_string(tx_.size()) + " points on " + std::to_string(tx_.front()) +
         ".." + std::to_string(tx_.back()) + "]";
}

}  // namespace ovp
