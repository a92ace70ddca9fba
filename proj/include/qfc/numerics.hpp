#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qfc::num {

using Complex = std::complex<double>;

enum class QuadOutcome { Converged, BudgetExhausted };

struct QuadResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;   // absolute, from Kronrod-Gauss differences
  double abs_integral = 0.0;     // int |f|, sets the attainable round-off floor
  std::size_t evaluations = 0;
  QuadOutcome outcome = QuadOutcome::Converged;

  bool converged() const { return outcome == QuadOutcome::Converged; }
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;          // pure relative target by default
  std::size_t max_intervals = 200000;
  double max_panel_width = 0.0;  // 0 = no pre-split; else initial panels <= this
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] for a complex-valued integrand of a
// real variable. Panels are pre-split to max_panel_width (oscillatory
// integrands), then the worst panel is bisected until the summed error
// estimate meets tol or the interval budget runs out.
QuadResult integrate(const std::function<Complex(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// Ordinary least squares for y ~ sum_j c_j * basis_j(x). Returns coefficients.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& y);

// Slope/intercept fit y = intercept + slope * x with R^2.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qfc::num
