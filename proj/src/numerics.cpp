#include "qfc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <Eigen/Dense>

namespace qfc::num {

namespace {

// QUADPACK dqk15 nodes and weights. xgk holds the positive Kronrod abscissae,
// odd indices are the embedded 7-point Gauss nodes.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Complex value;
  double err;
  double resabs;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<Complex(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Complex fc = f(c);
  Complex kron = wgk[7] * fc;
  Complex gauss = wg[3] * fc;
  double resabs = wgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    Complex f1 = f(c - h * xgk[j]);
    Complex f2 = f(c + h * xgk[j]);
    kron += wgk[j] * (f1 + f2);
    resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kron * h;
  p.resabs = resabs * h;
  p.err = std::abs(kron - gauss) * h;
  // sharpen the raw difference the way QUADPACK does
  if (p.err != 0.0) {
    double scale = std::pow(200.0 * p.err / (std::abs(p.value) + 1e-300), 1.5);
    if (scale < 1.0) p.err = p.err * scale;
  }
  return p;
}

}  // namespace

QuadResult integrate(const std::function<Complex(double)>& f, double a, double b,
                     const QuadOptions& opt) {
  QuadResult res;
  if (!(b > a)) return res;

  std::size_t n0 = 1;
  if (opt.max_panel_width > 0.0)
    n0 = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / opt.max_panel_width)));
  n0 = std::min(n0, opt.max_intervals);

  std::priority_queue<Panel> heap;
  Complex total{0.0, 0.0};
  double toterr = 0.0;
  double totabs = 0.0;
  const double w = (b - a) / static_cast<double>(n0);
  for (std::size_t i = 0; i < n0; ++i) {
    Panel p = eval_panel(f, a + w * static_cast<double>(i),
                         (i + 1 == n0) ? b : a + w * static_cast<double>(i + 1));
    total += p.value;
    toterr += p.err;
    totabs += p.resabs;
    heap.push(p);
  }
  res.evaluations = 15 * n0;

  // 50 eps * int|f| is the round-off floor; finer subdivision cannot help.
  auto target = [&]() {
    return std::max({opt.abs_tol, opt.rel_tol * std::abs(total),
                     50.0 * 2.220446049250313e-16 * totabs});
  };

  std::size_t intervals = n0;
  while (toterr > target()) {
    if (intervals >= opt.max_intervals || heap.empty()) {
      res.outcome = QuadOutcome::BudgetExhausted;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    toterr -= worst.err;
    totabs -= worst.resabs;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at rounding limit
      total += worst.value;
      toterr += worst.err;
      totabs += worst.resabs;
      res.outcome = QuadOutcome::BudgetExhausted;
      break;
    }
    Panel left = eval_panel(f, worst.a, mid);
    Panel right = eval_panel(f, mid, worst.b);
    total += left.value + right.value;
    toterr += left.err + right.err;
    totabs += left.resabs + right.resabs;
    heap.push(left);
    heap.push(right);
    ++intervals;
    res.evaluations += 30;
  }

  res.value = total;
  res.error_estimate = toterr;
  res.abs_integral = totabs;
  return res;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& y) {
  if (columns.empty()) throw std::invalid_argument("least_squares: no basis columns");
  const auto m = y.size();
  const auto n = columns.size();
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs(static_cast<long>(i)) = y[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != m) throw std::invalid_argument("least_squares: ragged columns");
    for (std::size_t i = 0; i < m; ++i) A(static_cast<long>(i), static_cast<long>(j)) = columns[j][i];
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(c.data(), c.data() + n);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = f.intercept + f.slope * x[i];
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r_squared = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace qfc::num
