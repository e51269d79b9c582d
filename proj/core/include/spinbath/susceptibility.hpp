#ifndef SPINBATH_SUSCEPTIBILITY_HPP
#define SPINBATH_SUSCEPTIBILITY_HPP

#include <complex>
#include <vector>

// Dynamical response of the Ohmically damped system: susceptibility, the
// spectral weight acting as density of states in the free-energy integral,
// its complex roots, and the discrete-bath susceptibility.
//
// Units: reduced throughout, hbar = k_B = 1; frequencies in units of omega0
// where convenient.

namespace spinbath::susceptibility {

using complex = std::complex<double>;

/// Ohmic dissipation model: system frequency and frequency-independent
/// friction constant, both > 0.
struct OhmicBath {
  OhmicBath(double omega0_, double gamma0_);
  double omega0;
  double gamma0;
  double ratio() const { return gamma0 / omega0; }
};

/// Roots of the inverse susceptibility: z = gamma0/2 + i omega1 and its
/// partner, with z + z* = gamma0 and z z* = omega0^2. In the overdamped
/// regime omega1 is stored as a negative imaginary value so that z and z*
/// are the two real positive roots with z >= z*.
struct ComplexRoots {
  complex z;
  complex z_star;
  complex omega1;
};

/// Finite list of bath modes (frequency, coupling) as seen by the response
/// calculator. Frequencies strictly increasing, couplings >= 0.
struct DiscreteCoupling {
  DiscreteCoupling() = default;
  DiscreteCoupling(std::vector<double> omega_k_, std::vector<double> c_k_);
  std::vector<double> omega_k;
  std::vector<double> c_k;
};

ComplexRoots roots(const OhmicBath& bath);

/// kappa(omega) = [-omega^2 + omega0^2 - i omega gamma0]^-1.
complex kappa(double omega, const OhmicBath& bath);

/// W(omega) = Im[d/domega ln kappa] = gamma0 (omega^2 + omega0^2) /
/// ((omega^2 - omega0^2)^2 + gamma0^2 omega^2); nonnegative, equal to the
/// two-Lorentzian partial-fraction form in the roots.
double spectral_weight(double omega, const OhmicBath& bath);

/// (1/pi) int_0^inf W domega, evaluated from the partial fractions: each
/// term contributes pi/2, so the result is exactly 1 for every valid bath.
double weight_normalization(const OhmicBath& bath);

/// Inverse of the discrete-bath susceptibility,
/// 1/kappa = -(omega^2 - omega0^2) + sum_k (c_k^2/omega_k^2) omega^2/(omega^2 - omega_k^2).
/// Useful directly for normal-mode root finding.
double kappa_discrete_inverse(double omega, double omega0, const DiscreteCoupling& coupling);

/// Discrete-bath susceptibility; throws SingularEvaluation exactly at a bath
/// frequency (pole of the sum) or at a normal mode (zero of 1/kappa).
double kappa_discrete(double omega, double omega0, const DiscreteCoupling& coupling);

}  // namespace spinbath::susceptibility

#endif
