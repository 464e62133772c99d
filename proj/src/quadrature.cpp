#include "quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>

#include "interp.hpp"

namespace ovp {

namespace {

// 15-point Kronrod / 7-point Gauss abscissae and weights
constexpr double kXgk[8] = {
    .991455371120812639206854697526329, .949107912342758524526189684047851,
    .864864423359769072789712788640926, .741531185599394439863864773280788,
    .586087235467691130294144838258730, .405845151377397166906606412076961,
    .207784955007898467600689403773245, 0.};
constexpr double kWgk[8] = {
    .022935322010529224963732008058970, .063092092629978553290700663189204,
    .104790010322250183839876322541518, .140653259715525918745189590510238,
    .169004726639267902826583426598550, .190350578064785409913256402421014,
    .204432940075298892414161999234649, .209482141084727828012999174891714};
constexpr double kWg[4] = {
    .129484966168869693270611432679082, .279705391489276667901467771423780,
    .381830050505118944950369775488975, .417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kXgk[j];
    fv1[j] = f(centr - absc);
    fv2[j] = f(centr + absc);
    const double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  const double dhlgth = std::fabs(hlgth);
  resabs *= dhlgth;
  resasc *= dhlgth;
  double err = std::fabs((resk - resg) * hlgth);
  if (resasc != 0 && err != 0)
    err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
  if (resabs > DBL_MIN / (50 * DBL_EPSILON))
    err = std::max(DBL_EPSILON * 50 * resabs, err);
  return {a, b, resk * hlgth, err};
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_subdiv) {
  std::priority_queue<Panel> queue;
  Panel p0 = gk15(f, a, b);
  double total = p0.value, err = p0.error;
  queue.push(p0);
  int n = 0;
  const double min_width = 8 * DBL_EPSILON * std::max({std::fabs(a), std::fabs(b), 1.0});
  while (err > tol * (1 + std::fabs(total))) {
    const Panel worst = queue.top();
    if (n >= max_subdiv || worst.b - worst.a < min_width)
      throw Error(ErrorCode::NoConvergence,
                  "quadrature stalled after " + std::to_string(n) +
                      " subdivisions; best estimate " + std::to_string(total) +
                      " with error estimate " + std::to_string(err));
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel l = gk15(f, worst.a, mid);
    Panel r = gk15(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    queue.push(l);
    queue.push(r);
    ++n;
  }
  // deterministic left-to-right resummation of the surviving panels
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  total = 0;
  err = 0;
  for (const Panel& p : panels) {
    total += p.value;
    err += p.error;
  }
  return {total, err, n};
}

int substitution_order(double alpha) {
  return static_cast<int>(std::ceil(2.0 / (1.0 + alpha)));
}

// map the left-singular integrand onto s in [0,1] via t = a + (b-a) s^p
std::function<double(double)> desingularized_left(std::function<double(double)> g,
                                                  double a, double b, int p) {
  const double len = b - a;
  return [g = std::move(g), a, len, p](double s) {
    if (s <= 0) return 0.0;
    const double sp1 = std::pow(s, p - 1);
    return g(a + len * sp1 * s) * p * sp1 * len;
  };
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, double tol,
                           int max_subdiv) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::Invalid, "integration requires finite a < b");
  if (!(tol >= 1e-13))
    throw Error(ErrorCode::Invalid, "quadrature tolerance must be >= 1e-13");
  for (auto alpha : {f.singular_left, f.singular_right})
    if (alpha && *alpha <= -1)
      throw Error(ErrorCode::Domain,
                  "endpoint exponent " + std::to_string(*alpha) +
                      " <= -1 is not integrable");

  const bool left = f.singular_left && *f.singular_left < 0;
  const bool right = f.singular_right && *f.singular_right < 0;
  if (left && right) {
    const double mid = 0.5 * (a + b);
    Integrand fl{f.g, f.singular_left, std::nullopt};
    Integrand fr{f.g, std::nullopt, f.singular_right};
    QuadratureResult rl = integrate(fl, a, mid, tol / 2, max_subdiv);
    QuadratureResult rr = integrate(fr, mid, b, tol / 2, max_subdiv);
    return {rl.value + rr.value, rl.error + rr.error,
            rl.subdivisions + rr.subdivisions};
  }
  if (left) {
    const int p = substitution_order(*f.singular_left);
    return adaptive(desingularized_left(f.g, a, b, p), 0, 1, tol, max_subdiv);
  }
  if (right) {
    const int p = substitution_order(*f.singular_right);
    auto flipped = [g = f.g, a, b](double t) { return g(a + b - t); };
    return adaptive(desingularized_left(flipped, a, b, p), 0, 1, tol, max_subdiv);
  }
  return adaptive(f.g, a, b, tol, max_subdiv);
}

QuadratureResult integrate(const std::function<double(double)>& g, double a,
                           double b, double tol) {
  return integrate(Integrand{g, std::nullopt, std::nullopt}, a, b, tol);
}

double estimate_left_exponent(const ScalarField& f, double scale) {
  const double t1 = 1e-6 * scale, t2 = 1e-5 * scale;
  double y1, y2;
  try {
    y1 = std::fabs(f(t1));
    y2 = std::fabs(f(t2));
  } catch (const Error&) {
    return 0.0;  // not a clean power law; let integration surface any problem
  }
  if (!(y1 > 1e-300) || !(y2 > 1e-300)) return 0.0;
  return std::log(y2 / y1) / std::log(t2 / t1);
}

QuadratureResult integrate_weighted_h(const Manifold& m, const ScalarField& f,
                                      double a, double b, double tol) {
  const int N = m.dim();
  auto g = [&m, &f, N](double t) { return std::pow(m.h(t), N - 1) * f(t); };
  Integrand w{g, std::nullopt, std::nullopt};
  if (a == 0) {
    const double alpha_f = estimate_left_exponent(f, std::max(b, 1e-6));
    const double combined = (N - 1) + alpha_f;
    if (combined <= -1 + 1e-9)
      throw Error(ErrorCode::Domain,
                  "weighted integrand behaves like t^" + std::to_string(combined) +
                      " near 0 and is not integrable");
    if (combined < -1e-3) w.singular_left = combined;
  }
  return integrate(w, a, b, tol);
}

std::vector<double> graded_nodes(double a, double b, int n, double grade,
                                 bool dense_at_a) {
  std::vector<double> x(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double u = std::pow(static_cast<double>(i) / n, grade);
    x[i] = dense_at_a ? a + (b - a) * u : b - (b - a) * u;
  }
  if (!dense_at_a) std::reverse(x.begin(), x.end());
  x.front() = a;
  x.back() = b;
  return x;
}

CumulativeTable::CumulativeTable(std::function<double(double)> g, double a,
                                 double b, int n, double grade,
                                 std::optional<double> alpha_left)
    : g_(std::move(g)), alpha_(alpha_left) {
  if (!(a < b)) throw Error(ErrorCode::Invalid, "cumulative table requires a < b");
  if (n < 8) throw Error(ErrorCode::Invalid, "cumulative table requires n >= 8");
  x_ = graded_nodes(a, b, n, grade);
  y_.resize(x_.size());
  m_.resize(x_.size());
  y_[0] = 0;
  const bool singular = alpha_ && *alpha_ < 0;
  first_segment_singular_ = singular;
  {
    Integrand seg0{g_, singular ? alpha_ : std::nullopt, std::nullopt};
    y_[1] = integrate(seg0, x_[0], x_[1], 1e-13).value;
  }
  for (size_t i = 2; i < x_.size(); ++i)
    y_[i] = y_[i - 1] + integrate(g_, x_[i - 1], x_[i], 1e-13).value;
  if (singular) {
    m_[0] = std::nan("");
  } else {
    try {
      m_[0] = g_(x_[0]);
    } catch (const Error&) {
      m_[0] = std::nan("");
      first_segment_singular_ = true;
    }
  }
  for (size_t i = 1; i < x_.size(); ++i) m_[i] = g_(x_[i]);
}

double CumulativeTable::value(double r) const {
  const double span = x_.back() - x_.front();
  if (r < x_.front() - 1e-12 * span || r > x_.back() + 1e-12 * span)
    throw Error(ErrorCode::Domain, "r = " + std::to_string(r) +
                                       " outside tabulated range");
  r = std::clamp(r, x_.front(), x_.back());
  auto it = std::upper_bound(x_.begin(), x_.end(), r);
  size_t i = it == x_.begin() ? 0 : static_cast<size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  if (i == 0 && first_segment_singular_) {
    if (r == x_.front()) return 0.0;
    if (r == x_[1]) return y_[1];
    Integrand seg{g_, alpha_, std::nullopt};
    return integrate(seg, x_.front(), r, 1e-13).value;
  }
  double m0 = m_[i], m1 = m_[i + 1];
  monotone_clamp(x_[i], x_[i + 1], y_[i], y_[i + 1], m0, m1);
  return hermite(r, x_[i], x_[i + 1], y_[i], y_[i + 1], m0, m1);
}

}  // namespace ovp
