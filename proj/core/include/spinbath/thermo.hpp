#ifndef SPINBATH_THERMO_HPP
#define SPINBATH_THERMO_HPP

#include <vector>

#include "spinbath/susceptibility.hpp"

// Exact (quadrature) thermodynamics of the dissipative spin: free energy,
// entropy and specific heat as weighted integrals of single-mode functions,
// the single-spin reference, temperature scans and the transition
// temperature.
//
// Units: hbar = k_B = 1, theta = T/omega0; energies in units of omega0
// ("hbar omega0"), entropy and specific heat in units of k_B. Mode
// frequencies passed to the fermi_mode_* functions are in units of omega0.

namespace spinbath::thermo {

using susceptibility::OhmicBath;

/// Dimensionless temperature theta = T/omega0, > 0 and finite.
struct ReducedTemperature {
  ReducedTemperature(double t);  // implicit by design
  double theta;
};

struct ThermoPoint {
  double theta;
  double free_energy;
  double entropy;
  double cv;
};

enum class Spacing { linear, logarithmic };

struct ScanGrid {
  ScanGrid(double theta_min_, double theta_max_, int points_,
           Spacing spacing_ = Spacing::logarithmic);
  double theta_min;
  double theta_max;
  int points;
  Spacing spacing;
  std::vector<double> nodes() const;
};

/// Free energy of one fermionic mode, f = -theta ln(1 + e^{-omega/theta}).
double fermi_mode_f(double omega, ReducedTemperature theta);

/// Entropy of one mode, -df/dtheta = ln(1+e^{-u}) + u/(e^u+1), u = omega/theta.
double fermi_mode_s(double omega, ReducedTemperature theta);

/// Schottky heat capacity of one mode, (u/2)^2 sech^2(u/2), u = omega/theta.
double fermi_mode_cv(double omega, ReducedTemperature theta);

/// F(theta) = (1/pi) int_0^inf f(omega, theta) W(omega) domega (adaptive
/// quadrature, relative accuracy ~1e-10). Negative for theta > 0.
double free_energy(const OhmicBath& bath, ReducedTemperature theta);

/// Entropy and specific heat by differentiating the mode free energy under
/// the integral sign (no numerical differentiation of F).
double entropy(const OhmicBath& bath, ReducedTemperature theta);
double specific_heat(const OhmicBath& bath, ReducedTemperature theta);

/// Isolated spin-1/2 reference: E = -(1/2) tanh(1/(2 theta)) and its
/// theta-derivative, the two-level Schottky heat capacity.
double single_spin_energy(ReducedTemperature theta);
double single_spin_cv(ReducedTemperature theta);

/// One ThermoPoint per grid node. Nodes are computed independently and may
/// be evaluated on `threads` threads (0 = hardware concurrency); the result
/// does not depend on the thread count.
std::vector<ThermoPoint> thermo_scan(const OhmicBath& bath, const ScanGrid& grid,
                                     int threads = 1);

struct TransitionPoint {
  double theta_r;   ///< argmax of Cv(theta)
  double cv_peak;   ///< Cv(theta_r)
};

struct SearchWindow {
  double theta_lo = 1e-3;
  double theta_hi = 1e3;
  int coarse_points = 200;   ///< log-spaced bracketing grid
  double rel_tol = 1e-4;     ///< golden-section relative tolerance on theta
};

/// Location and height of the global maximum of Cv(theta) in the window.
/// Every interior local maximum of the coarse grid is refined by golden
/// section and the highest refined peak wins (overdamped baths have two
/// nearly degenerate peaks). Throws BracketError when no interior maximum
/// exists in the window.
TransitionPoint transition_temperature(const OhmicBath& bath,
                                       const SearchWindow& window = {});

}  // namespace spinbath::thermo

#endif
