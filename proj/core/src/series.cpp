#include "spinbath/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"
#include "spinbath/specfun.hpp"

namespace spinbath::series {

namespace {

constexpr double kPi = 3.14159265358979323846;

// iterated pairwise averaging (Euler / van Wijngaarden) of the last k
// partial sums; geometric convergence for smooth alternating tails
complex average_tail(const std::vector<complex>& partials, std::size_t k) {
  k = std::min(k, partials.size());
  std::vector<complex> s(partials.end() - k, partials.end());
  while (s.size() > 1) {
    for (std::size_t j = 0; j + 1 < s.size(); ++j) s[j] = 0.5 * (s[j] + s[j + 1]);
    s.pop_back();
  }
  return s.front();
}

}  // namespace

GArgument::GArgument(complex y_) : y(y_) {
  if (!(std::isfinite(y.real()) && std::isfinite(y.imag()) && y.real() > 0.0))
    throw DomainError("GArgument: require finite y with Re y > 0");
}

std::pair<GArgument, GArgument> GArgument::pair_from_bath(const OhmicBath& bath,
                                                          double theta) {
  if (!(theta > 0.0)) throw DomainError("GArgument: theta must be > 0");
  auto rt = susceptibility::roots(bath);
  const double scale = 1.0 / (bath.omega0 * theta);
  return {GArgument(rt.z * scale), GArgument(rt.z_star * scale)};
}

complex g_arctan(const GArgument& y, double rel_tol) {
  const complex yy = y.y;
  auto integrand = [yy](double x) -> complex {
    return std::atan(complex(x, 0.0) / yy) / (std::exp(x) + 1.0);
  };
  static const double pts[] = {0.0, 1.0, 5.0, 15.0, 45.0};
  double err = 0.0;
  complex v = quad::integrate_segments(integrand, pts, rel_tol, &err);
  if (!(err <= 100.0 * rel_tol * std::max(std::abs(v), 1e-30)) && err > 1e-14)
    throw NumericError("g_arctan: quadrature did not converge", std::abs(v), err);
  return -v / kPi;
}

SeriesEval g_lowT(const GArgument& y, int n_max, double rel_tol) {
  if (!(std::abs(y.y) > 1.0))
    throw DomainError("g_lowT: expansion requires |y| > 1");
  SeriesEval out;
  // largest n with Gamma(2n+2) representable
  const int n_cap = std::min(n_max, 84);
  complex ypow = y.y;  // y^(2n+1)
  double prev_mag = std::numeric_limits<double>::infinity();
  double tail = 0.0;
  for (int n = 0; n <= n_cap; ++n) {
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n+1)
    const complex t =
        sign * specfun::fermi_integral(2 * n + 1) / ((2.0 * n + 1.0) * ypow) / kPi;
    const double mag = std::abs(t);
    if (mag > prev_mag || n == n_cap || n == n_max) {
      // asymptotic series: stop at the smallest term
      tail = mag;
      break;
    }
    out.terms.push_back(t);
    out.value += t;
    prev_mag = mag;
    ypow *= y.y * y.y;
  }
  out.order = static_cast<int>(out.terms.size());
  out.tail_estimate = tail;
  out.converged = tail <= rel_tol * std::abs(out.value);
  return out;
}

SeriesEval cv_lowT(const OhmicBath& bath, double theta, int order, double rel_tol) {
  if (!(theta > 0.0)) throw DomainError("cv_lowT: theta must be > 0");
  if (order < 1) throw DomainError("cv_lowT: order must be >= 1");
  auto rt = susceptibility::roots(bath);
  const complex zh = rt.z / bath.omega0;
  const complex zhs = rt.z_star / bath.omega0;
  SeriesEval out;
  const int n_cap = std::min(order, 84);
  double prev_mag = std::numeric_limits<double>::infinity();
  double tail = 0.0;
  for (int n = 0; n <= n_cap; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
    const int m = 2 * n + 1;
    const double coeff = sign * (2.0 * n + 2.0) * specfun::zeta_int(2 * n + 2) *
                         specfun::gamma_int(2 * n + 2) *
                         (1.0 - std::pow(2.0, -m)) / kPi;
    const complex zsum = std::pow(zh, m) + std::pow(zhs, m);
    const complex t = coeff * std::pow(theta, m) * zsum;
    const double mag = std::abs(t);
    if (n == n_cap || mag > prev_mag) {
      tail = mag;
      if (mag > prev_mag && n < n_cap) out.note = "truncated at smallest term";
      break;
    }
    out.terms.push_back(t);
    out.value += t;
    prev_mag = mag;
  }
  out.order = static_cast<int>(out.terms.size());
  out.tail_estimate = tail;
  out.converged = tail <= rel_tol * std::abs(out.value);
  return out;
}

SeriesEval g_highT_cisi(const GArgument& y, int n_max, double tol) {
  SeriesEval out;
  out.note = "alternating sum over aux_f(n y)/n, Euler-accelerated";
  std::vector<complex> terms, partials;
  complex sum = 0.0;
  int n = 0;
  int target = std::min(n_max, 256);
  for (;;) {
    bool terms_exhausted = false;
    while (n < target) {
      ++n;
      const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n-1)
      const complex t = -sign * specfun::aux_f(static_cast<double>(n) * y.y) /
                        (kPi * static_cast<double>(n));
      sum += t;
      terms.push_back(t);
      partials.push_back(sum);
      if (std::abs(t) < 1e-18 * std::max(1.0, std::abs(sum))) {
        terms_exhausted = true;
        break;
      }
    }
    out.value = average_tail(partials, 96);
    // residual: sensitivity of the accelerated value to the newest term
    complex v_prev = out.value;
    if (partials.size() > 1) {
      std::vector<complex> without_last(partials.begin(), partials.end() - 1);
      v_prev = average_tail(without_last, 96);
    }
    out.tail_estimate = std::abs(out.value - v_prev);
    const double floor_ = 1e-16 * std::max(1.0, std::abs(out.value));
    out.converged = partials.size() >= 8 &&
                    out.tail_estimate <= tol * std::abs(out.value) + floor_;
    if (out.converged || terms_exhausted || n >= n_max) break;
    target = std::min(n_max, target * 2);
  }
  out.order = n;
  out.terms = std::move(terms);
  if (!out.converged)
    throw NumericError("g_highT_cisi: acceleration residual above tolerance",
                       std::abs(out.value), out.tail_estimate);
  return out;
}

HighTLeadingCv cv_highT_leading(const OhmicBath& bath, double theta) {
  if (!(theta > 0.0)) throw DomainError("cv_highT_leading: theta must be > 0");
  const double r = bath.ratio();
  HighTLeadingCv out;
  out.equilibrium_factor = 0.25 / (theta * theta);
  out.dynamical_factor = (8.0 - 2.0 * kPi) / kPi * (r * r - 2.0);
  out.value = out.equilibrium_factor * out.dynamical_factor;
  return out;
}

SeriesEval free_energy_highT(const OhmicBath& bath, double theta) {
  if (!(theta > 0.0)) throw DomainError("free_energy_highT: theta must be > 0");
  const double r = bath.ratio();
  const double ge = specfun::euler_gamma();
  SeriesEval out;
  out.note = "divergent n-sums eta-regularized: eta(-1)=1/4, eta(-2)=0, eta(-3)=-1/8";
  // F = theta + (ge-2) r/pi + (4-pi)(r^2-2)/(16 pi theta)
  //     - (8+pi)(r^4-4r^2+2)/(384 pi theta^3)
  out.terms = {
      complex(theta, 0.0),                                            // y^0
      complex((ge - 2.0) * r / kPi, 0.0),                             // y^1
      complex((4.0 - kPi) * (r * r - 2.0) / (16.0 * kPi * theta), 0.0),  // y^2
      complex(0.0, 0.0),                                              // y^3 (eta(-2)=0)
      complex(-(8.0 + kPi) * (r * r * r * r - 4.0 * r * r + 2.0) /
                  (384.0 * kPi * theta * theta * theta),
              0.0),                                                   // y^4
  };
  for (const auto& t : out.terms) out.value += t;
  out.order = static_cast<int>(out.terms.size());
  out.converged = true;
  out.tail_estimate = 0.0;
  return out;
}

SeriesEval cv_highT_regularized(const OhmicBath& bath, double theta) {
  if (!(theta > 0.0)) throw DomainError("cv_highT_regularized: theta must be > 0");
  const double r = bath.ratio();
  SeriesEval out;
  out.note = "Cv = -theta F'' of the eta-regularized high-T free energy";
  const double t2 = -(4.0 - kPi) * (r * r - 2.0) / (8.0 * kPi * theta * theta);
  const double t4 = (8.0 + kPi) * (r * r * r * r - 4.0 * r * r + 2.0) /
                    (32.0 * kPi * std::pow(theta, 4));
  out.terms = {complex(t2, 0.0), complex(t4, 0.0)};
  out.value = complex(t2 + t4, 0.0);
  out.order = 2;
  out.converged = true;
  return out;
}

double free_energy_dual(const OhmicBath& bath, double theta, double rel_tol) {
  auto [y, ys] = GArgument::pair_from_bath(bath, theta);
  return theta * (g_arctan(y, rel_tol) + g_arctan(ys, rel_tol)).real();
}

}  // namespace spinbath::series
