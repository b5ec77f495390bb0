#pragma once

// Adaptive Simpson quadrature with Richardson correction. This is the one
// integration engine used for every density integral in the library.

#include <cmath>
#include <cstdint>

#include "qho/errors.hpp"

namespace qho {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_depth = 48;
  // The interval is first cut into this many equal panels so that narrow
  // features cannot hide between the five initial Simpson nodes.
  int initial_panels = 8;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
  const F& f;
  int max_depth;
  std::int64_t evaluations = 0;
  bool depth_exceeded = false;
  double error = 0.0;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= max_depth) {
      if (depth >= max_depth && std::abs(delta) > 15.0 * tol) depth_exceeded = true;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance `options.abs_tol`.
// Throws ConvergenceError (carrying the best estimate) if any panel needs more
// than `max_depth` bisections.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureOptions& options = {}) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw ValidationError("interval", "bounds must be finite");
  if (!(options.abs_tol > 0.0)) throw ValidationError("abs_tol", "must be positive");
  if (options.initial_panels < 1) throw ValidationError("initial_panels", "must be at least 1");
  if (a == b) return {};

  detail::SimpsonState<F> state{f, options.max_depth};
  const int panels = options.initial_panels;
  const double width = (b - a) / panels;
  const double panel_tol = options.abs_tol / panels;

  double total = 0.0;
  double fa = state.eval(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + width * i;
    const double hi = i + 1 == panels ? b : a + width * (i + 1);
    const double mid = 0.5 * (lo + hi);
    const double fm = state.eval(mid);
    const double fb = state.eval(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += state.refine(lo, hi, fa, fm, fb, whole, panel_tol, 0);
    fa = fb;
  }

  if (state.depth_exceeded) {
    throw ConvergenceError("adaptive Simpson exceeded depth limit", total);
  }
  return {total, state.error, state.evaluations};
}

}  // namespace qho
