#pragma once

#include <cmath>

namespace mcvd::num {

// std::erfc is sub-ulp on glibc but underflows to garbage territory past the
// double range. Arguments beyond 27 sit under 1e-318, call that zero.
inline double erfc_capped(double x) {
  if (x > 27.0) return 0.0;
  return std::erfc(x);
}

// inverse standard normal cdf. Acklam's rational approximation polished with
// one Halley step through erfc, good to full double precision on (0, 1).
double probit(double p);

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// adaptive Simpson with Richardson correction, absolute tolerance
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-10,
                        int max_depth = 40) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace mcvd::num
