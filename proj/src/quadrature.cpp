#include "drbd/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "drbd/errors.hpp"

namespace drbd {

namespace {

double eval_checked(const std::function<double(double)>& f, double x) {
  double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "integrand is not finite at x = " << x;
    throw NumericError(os.str());
  }
  return v;
}

struct Panel {
  double value;
  double error;
  bool converged;
};

// One level of the classic adaptive Simpson recursion: accept the halved
// panels when the Richardson estimate |S_left + S_right - S| / 15 meets
// the per-panel tolerance.
Panel refine(const std::function<double(double)>& f, double a, double m, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = eval_checked(f, lm);
  double frm = eval_checked(f, rm);
  double h = b - a;
  double left = h / 12.0 * (fa + 4.0 * flm + fm);
  double right = h / 12.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return {left + right + delta / 15.0, std::abs(delta) / 15.0, true};
  }
  if (depth <= 0) {
    return {left + right + delta / 15.0, std::abs(delta) / 15.0, false};
  }
  Panel pl = refine(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1);
  Panel pr = refine(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
  return {pl.value + pr.value, pl.error + pr.error, pl.converged && pr.converged};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                     int max_depth) {
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (!(a <= b)) throw std::invalid_argument("integration bounds must satisfy a <= b");
  if (a == b) return {0.0, 0.0};

  double m = 0.5 * (a + b);
  double fa = eval_checked(f, a);
  double fm = eval_checked(f, m);
  double fb = eval_checked(f, b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Panel p = refine(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
  if (!p.converged) {
    std::ostringstream os;
    os << "quadrature did not converge to tolerance " << tol << " (achieved error estimate "
       << p.error << ")";
    throw NumericError(os.str());
  }
  return {p.value, p.error};
}

}  // namespace drbd
