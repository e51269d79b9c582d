#ifndef SPINBATH_SERIES_HPP
#define SPINBATH_SERIES_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "spinbath/susceptibility.hpp"

// Analytic machinery for the free energy: the g(y) reduction evaluated by
// quadrature, the low-temperature zeta series for g and Cv, and the
// high-temperature series built on the Ci/Si auxiliary function, including
// the saturation-truncated leading Cv term.
//
// The g-family functions return values in units of k_B T: multiply by theta
// to get energies in units of hbar omega0. F(theta) = theta (g(y) + g(y*)).

namespace spinbath::series {

using susceptibility::OhmicBath;
using complex = std::complex<double>;

/// y = z/(omega0 theta) with Re y > 0; the partner y* completes the pair
/// with y y* = 1/theta^2 and y + y* = (gamma0/omega0)/theta.
struct GArgument {
  explicit GArgument(complex y_);
  complex y;

  /// The (y, y*) pair for a bath at reduced temperature theta. In the
  /// overdamped regime both members are real and are not complex conjugates.
  static std::pair<GArgument, GArgument> pair_from_bath(const OhmicBath& bath,
                                                        double theta);
};

/// Truncated-expansion result with per-term diagnostics.
struct SeriesEval {
  complex value{};
  int order = 0;                 ///< number of terms included in value
  std::vector<complex> terms;    ///< per-order contributions
  bool converged = false;        ///< tail_estimate <= tol * |value|
  double tail_estimate = 0.0;    ///< magnitude of first omitted term / residual
  std::string note;
  double real_value() const { return value.real(); }
};

/// g(y)/KT = -(1/pi) int_0^inf arctan(x/y)/(e^x+1) dx, the partial-integration
/// form, by adaptive quadrature with the continuous arctan branch.
complex g_arctan(const GArgument& y, double rel_tol = 1e-12);

/// Low-temperature asymptotic series, valid |y| > 1:
/// g(y)/KT = (1/pi) sum_n (-1)^{n+1} F_{2n+1} / ((2n+1) y^{2n+1}),
/// F_m the Fermi-Dirac integral. Truncates at the smallest term if that
/// occurs before n_max.
SeriesEval g_lowT(const GArgument& y, int n_max, double rel_tol = 1e-10);

/// Low-temperature specific heat series; `order` terms of the general sum.
/// order = 3 reproduces the closed three-term form
/// Cv/K = (pi/6) theta r + (7 pi^3/30) theta^3 (3r - r^3)
///        + (31 pi^5/42) theta^5 (r^5 - 5 r^3 + 5 r),  r = gamma0/omega0.
SeriesEval cv_lowT(const OhmicBath& bath, double theta, int order = 3,
                   double rel_tol = 1e-10);

/// High-temperature evaluation of the same g(y) through the alternating sum
/// g(y)/KT = -(1/pi) sum_{n>=1} (-1)^{n-1} f(n y)/n, f the Ci/Si auxiliary
/// function, accelerated by iterated averaging of the partial sums.
SeriesEval g_highT_cisi(const GArgument& y, int n_max = 4096, double tol = 1e-10);

/// Saturation-truncated leading high-temperature Cv term,
/// Cv/K = [(1/4) theta^-2] [(8-2pi)/pi ((gamma0/omega0)^2 - 2)].
/// The equilibrium factor equals the single-spin leading term; the dynamical
/// factor changes sign at gamma0/omega0 = sqrt(2) and the product can be
/// negative where the exact Cv is nonnegative -- reported as stated, never
/// blended with the quadrature result.
struct HighTLeadingCv {
  double value;
  double equilibrium_factor;  ///< (1/4) theta^-2
  double dynamical_factor;    ///< (8-2pi)/pi (r^2 - 2)
};
HighTLeadingCv cv_highT_leading(const OhmicBath& bath, double theta);

/// High-temperature free energy with the divergent n-sums replaced by their
/// Abel / Dirichlet-eta values (eta(-1)=1/4, eta(-2)=0, eta(-3)=-1/8).
/// terms[k] is the contribution of the y^k order, k = 0..4.
SeriesEval free_energy_highT(const OhmicBath& bath, double theta);

/// Cv = -theta d^2F/dtheta^2 of the regularized high-temperature free
/// energy; two terms (theta^-2 and theta^-4). The leading term is -1/4 of
/// cv_highT_leading -- the regularization discrepancy left as in the source
/// expressions.
SeriesEval cv_highT_regularized(const OhmicBath& bath, double theta);

/// Convenience: F(theta) = theta (g(y) + g(y*)) via g_arctan.
double free_energy_dual(const OhmicBath& bath, double theta, double rel_tol = 1e-12);

}  // namespace spinbath::series

#endif
