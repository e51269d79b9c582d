#include "spinbath/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"

namespace spinbath::thermo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// scaled spectral weight, w in units of omega0
double weight_scaled(double w, double r) {
  const double w2 = w * w;
  const double d = w2 - 1.0;
  return r * (w2 + 1.0) / (d * d + r * r * w2);
}

// mode functions of u = omega/T
double mode_f_u(double u) { return -std::log1p(std::exp(-u)); }  // f / theta

double mode_s_u(double u) {
  if (u > 700.0) return 0.0;
  return std::log1p(std::exp(-u)) + u / (std::exp(u) + 1.0);
}

double mode_cv_u(double u) {
  const double h = 0.5 * u;
  if (h > 350.0) return 0.0;
  const double q = h / std::cosh(h);
  return q * q;
}

// Integration breakpoints in scaled frequency. The integrand varies on the
// root scales (resonance bump or the two overdamped Lorentzians) and on the
// thermal scale theta.
std::vector<double> breakpoints(const OhmicBath& bath, double theta) {
  const double r = bath.ratio();
  auto rt = susceptibility::roots(bath);
  const double z1 = std::abs(rt.z) / bath.omega0;
  const double z2 = std::abs(rt.z_star) / bath.omega0;

  std::vector<double> pts;
  auto push_scales = [&pts](double s) {
    if (s > 0.0) {
      pts.push_back(0.5 * s);
      pts.push_back(s);
      pts.push_back(2.0 * s);
    }
  };
  push_scales(z1);
  push_scales(z2);
  push_scales(1.0);
  push_scales(r);
  for (double m : {1.0, 5.0, 15.0, 40.0}) pts.push_back(m * theta);
  if (r < 2.0) {
    // resonance bump of halfwidth ~r/2 around w = 1
    for (double m : {1.0, 3.0, 10.0}) {
      const double d = 0.5 * m * r;
      if (d < 1.0) pts.push_back(1.0 - d);
      pts.push_back(1.0 + d);
    }
  }
  pts.push_back(4.0 * std::max(1.0, r));
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.push_back(0.0);
  for (double p : pts) {
    if (p > out.back() * (1.0 + 1e-12) && p > 1e-300) out.push_back(p);
  }
  return out;
}

template <class ModeFn>
double weighted_integral(ModeFn&& mode, const OhmicBath& bath, double theta,
                         double rel_tol = 1e-13) {
  const double r = bath.ratio();
  auto pts = breakpoints(bath, theta);
  auto integrand = [&](double w) { return mode(w / theta) * weight_scaled(w, r); };
  return quad::integrate_to_inf(integrand, pts, rel_tol) / kPi;
}

}  // namespace

ReducedTemperature::ReducedTemperature(double t) : theta(t) {
  if (!(std::isfinite(theta) && theta > 0.0))
    throw DomainError("ReducedTemperature: theta must be finite and > 0");
}

ScanGrid::ScanGrid(double theta_min_, double theta_max_, int points_, Spacing spacing_)
    : theta_min(theta_min_), theta_max(theta_max_), points(points_), spacing(spacing_) {
  if (!(theta_min > 0.0 && std::isfinite(theta_max) && theta_min < theta_max))
    throw DomainError("ScanGrid: require 0 < theta_min < theta_max");
  if (points < 2) throw DomainError("ScanGrid: require points >= 2");
}

std::vector<double> ScanGrid::nodes() const {
  std::vector<double> out(points);
  if (spacing == Spacing::linear) {
    const double step = (theta_max - theta_min) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = theta_min + step * i;
  } else {
    const double la = std::log(theta_min), lb = std::log(theta_max);
    const double step = (lb - la) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = std::exp(la + step * i);
  }
  out.front() = theta_min;
  out.back() = theta_max;
  return out;
}

double fermi_mode_f(double omega, ReducedTemperature theta) {
  if (omega < 0.0) throw DomainError("fermi_mode_f: require omega >= 0");
  return theta.theta * mode_f_u(omega / theta.theta);
}

double fermi_mode_s(double omega, ReducedTemperature theta) {
  if (omega < 0.0) throw DomainError("fermi_mode_s: require omega >= 0");
  return mode_s_u(omega / theta.theta);
}

double fermi_mode_cv(double omega, ReducedTemperature theta) {
  if (omega < 0.0) throw DomainError("fermi_mode_cv: require omega >= 0");
  return mode_cv_u(omega / theta.theta);
}

double free_energy(const OhmicBath& bath, ReducedTemperature theta) {
  return theta.theta * weighted_integral(mode_f_u, bath, theta.theta);
}

double entropy(const OhmicBath& bath, ReducedTemperature theta) {
  return weighted_integral(mode_s_u, bath, theta.theta);
}

double specific_heat(const OhmicBath& bath, ReducedTemperature theta) {
  return weighted_integral(mode_cv_u, bath, theta.theta);
}

double single_spin_energy(ReducedTemperature theta) {
  return -0.5 * std::tanh(0.5 / theta.theta);
}

double single_spin_cv(ReducedTemperature theta) {
  return fermi_mode_cv(1.0, theta);
}

std::vector<ThermoPoint> thermo_scan(const OhmicBath& bath, const ScanGrid& grid,
                                     int threads) {
  const auto nodes = grid.nodes();
  std::vector<ThermoPoint> out(nodes.size());
  std::vector<std::exception_ptr> failures(nodes.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < nodes.size(); i += stride) {
      try {
        ReducedTemperature t(nodes[i]);
        out[i] = ThermoPoint{nodes[i], free_energy(bath, t), entropy(bath, t),
                             specific_heat(bath, t)};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  unsigned n = threads > 0 ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, nodes.size());
  if (n <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work, t, n);
    for (auto& th : pool) th.join();
  }
  // report the first failing node with its temperature attached
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const NumericError& e) {
      throw NumericError("thermo_scan: failure at theta = " + std::to_string(nodes[i]) +
                             ": " + e.what(),
                         e.estimate(), e.error_bound());
    } catch (const std::exception& e) {
      throw NumericError("thermo_scan: failure at theta = " + std::to_string(nodes[i]) +
                             ": " + e.what(),
                         0.0, 0.0);
    }
  }
  return out;
}

TransitionPoint transition_temperature(const OhmicBath& bath, const SearchWindow& window) {
  if (!(window.theta_lo > 0.0 && window.theta_lo < window.theta_hi))
    throw DomainError("transition_temperature: invalid window");
  const int n = std::max(window.coarse_points, 8);
  const double la = std::log(window.theta_lo), lb = std::log(window.theta_hi);
  std::vector<double> cv(n);
  auto cv_at_log = [&](double x) {
    return specific_heat(bath, ReducedTemperature(std::exp(x)));
  };
  for (int i = 0; i < n; ++i) cv[i] = cv_at_log(la + (lb - la) * i / (n - 1));

  constexpr double invphi = 0.6180339887498949;
  bool found = false;
  TransitionPoint best{0.0, -1.0};
  for (int i = 1; i + 1 < n; ++i) {
    if (!(cv[i] >= cv[i - 1] && cv[i] >= cv[i + 1])) continue;
    found = true;
    // golden-section in log theta over the bracketing nodes
    double a = la + (lb - la) * (i - 1) / (n - 1);
    double b = la + (lb - la) * (i + 1) / (n - 1);
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = cv_at_log(x1), f2 = cv_at_log(x2);
    while (b - a > 0.5 * window.rel_tol) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = cv_at_log(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = cv_at_log(x1);
      }
    }
    const double xm = 0.5 * (a + b);
    const double theta_r = std::exp(xm);
    const double peak = cv_at_log(xm);
    if (peak > best.cv_peak || (peak == best.cv_peak && theta_r < best.theta_r)) {
      best = TransitionPoint{theta_r, peak};
    }
  }
  if (!found)
    throw BracketError("transition_temperature: no interior Cv maximum in the window");
  return best;
}

}  // namespace spinbath::thermo
