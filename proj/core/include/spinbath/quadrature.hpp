#ifndef SPINBATH_QUADRATURE_HPP
#define SPINBATH_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spinbath/errors.hpp"

// Thin wrappers around Boost.Math quadrature with the error handling used
// throughout this library. Integrands may return double or complex<double>.

namespace spinbath::quad {

inline constexpr unsigned default_max_depth = 15;

/// Adaptive Gauss-Kronrod on [a, b]. The segment is mapped to unit width
/// first; Boost's subdivision criterion compares a normalized-frame error
/// against the physical-frame estimate, which over-refines narrow segments.
template <class F>
auto integrate(F&& f, double a, double b, double rel_tol = 1e-12,
               double* err_out = nullptr) {
  using boost::math::quadrature::gauss_kronrod;
  const double len = b - a;
  auto g = [&f, a, len](double s) { return f(a + s * len); };
  double err = 0.0;
  auto v = gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, default_max_depth,
                                                rel_tol, &err);
  if (err_out) *err_out = err * std::abs(len);
  return v * len;
}

/// Adaptive integration over [pts.front(), pts.back()] split at interior
/// breakpoints. Breakpoints mark scales the integrand is known to vary on.
template <class F>
auto integrate_segments(F&& f, std::span<const double> pts, double rel_tol = 1e-12,
                        double* err_out = nullptr) {
  using R = decltype(f(0.0));
  R total{};
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double e = 0.0;
    total += integrate(f, pts[i], pts[i + 1], rel_tol, &e);
    err_total += e;
  }
  if (err_out) *err_out = err_total;
  return total;
}

/// Integral over [a, inf) of a decaying integrand via the map w = a/t,
/// t in (0, 1]. The mapped integrand must stay bounded as t -> 0.
template <class F>
auto integrate_tail(F&& f, double a, double rel_tol = 1e-12, double* err_out = nullptr) {
  auto mapped = [&f, a](double t) {
    double w = a / t;
    return f(w) * (w / t);
  };
  return integrate(mapped, 0.0, 1.0, rel_tol, err_out);
}

/// Segments plus the [pts.back(), inf) tail; throws NumericError when the
/// combined error estimate misses the tolerance by orders of magnitude.
template <class F>
auto integrate_to_inf(F&& f, std::span<const double> pts, double rel_tol = 1e-12) {
  double e1 = 0.0, e2 = 0.0;
  auto body = integrate_segments(f, pts, rel_tol, &e1);
  auto tail = integrate_tail(f, pts.back(), rel_tol, &e2);
  auto total = body + tail;
  double abs_total = std::abs(total);
  double err = e1 + e2;
  if (abs_total > 0.0 && err > 1e4 * rel_tol * abs_total && err > 1e-14) {
    throw NumericError("semi-infinite quadrature did not reach tolerance",
                       std::abs(total), err);
  }
  return total;
}

}  // namespace spinbath::quad

#endif
