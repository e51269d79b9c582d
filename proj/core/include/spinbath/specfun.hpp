#ifndef SPINBATH_SPECFUN_HPP
#define SPINBATH_SPECFUN_HPP

#include <complex>

// Special functions needed by the series expansions: integer-argument
// Riemann zeta and Gamma, Fermi-Dirac integrals, Euler's constant, and the
// sine/cosine integrals Si/Ci extended to complex argument together with
// their auxiliary function f(x) = Ci(x) sin(x) + cos(x) (pi/2 - Si(x)).

namespace spinbath::specfun {

using complex = std::complex<double>;

/// Euler-Mascheroni constant to double precision.
double euler_gamma();

/// zeta(s) for integer s >= 2, accurate to >= 12 significant digits.
double zeta_int(int s);

/// Gamma(n) = (n-1)! for 1 <= n <= 171 (largest n before double overflow).
double gamma_int(int n);

/// Fermi-Dirac integral  int_0^inf x^m/(e^x+1) dx = (1-2^-m) zeta(m+1) Gamma(m+1),
/// m >= 1.
double fermi_integral(int m);

struct AuxCiSi {
  complex ci;     ///< cosine integral Ci(x)
  complex si;     ///< sine integral Si(x)
  complex aux_f;  ///< Ci(x) sin(x) + cos(x) (pi/2 - Si(x))
};

/// Ci, Si and the auxiliary function for Re x > 0 (or real x > 0).
/// The auxiliary function is evaluated in scaled form and stays finite
/// where Ci and Si individually overflow.
AuxCiSi cisi(complex x);

/// Just the auxiliary function f(x); the workhorse of the high-temperature
/// free-energy series.
complex aux_f(complex x);

/// Principal-branch exponential integral E1(w), |arg w| < pi.
complex exp1(complex w);

/// Scaled exponential integral e^w E1(w); free of overflow/underflow in the
/// exponential factor.
complex exp1_scaled(complex w);

}  // namespace spinbath::specfun

#endif
