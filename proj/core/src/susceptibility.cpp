#include "spinbath/susceptibility.hpp"

#include <cmath>

#include "spinbath/errors.hpp"

namespace spinbath::susceptibility {

OhmicBath::OhmicBath(double omega0_, double gamma0_) : omega0(omega0_), gamma0(gamma0_) {
  if (!(std::isfinite(omega0) && omega0 > 0.0))
    throw DomainError("OhmicBath: omega0 must be finite and > 0");
  if (!(std::isfinite(gamma0) && gamma0 > 0.0))
    throw DomainError("OhmicBath: gamma0 must be finite and > 0");
}

DiscreteCoupling::DiscreteCoupling(std::vector<double> omega_k_, std::vector<double> c_k_)
    : omega_k(std::move(omega_k_)), c_k(std::move(c_k_)) {
  if (omega_k.size() != c_k.size())
    throw DomainError("DiscreteCoupling: frequency and coupling lists differ in length");
  for (std::size_t i = 0; i < omega_k.size(); ++i) {
    if (!(omega_k[i] > 0.0)) throw DomainError("DiscreteCoupling: frequencies must be > 0");
    if (i > 0 && !(omega_k[i] > omega_k[i - 1]))
      throw DomainError("DiscreteCoupling: frequencies must be strictly increasing");
    if (c_k[i] < 0.0) throw DomainError("DiscreteCoupling: couplings must be >= 0");
  }
}

ComplexRoots roots(const OhmicBath& bath) {
  const double half_gamma = 0.5 * bath.gamma0;
  const double disc = bath.omega0 * bath.omega0 - half_gamma * half_gamma;
  ComplexRoots out;
  if (disc >= 0.0) {
    out.omega1 = complex(std::sqrt(disc), 0.0);
  } else {
    // overdamped: omega1 = -i sqrt(gamma0^2/4 - omega0^2) makes z the larger
    // real root and z* the smaller, both positive
    out.omega1 = complex(0.0, -std::sqrt(-disc));
  }
  const complex i(0.0, 1.0);
  out.z = half_gamma + i * out.omega1;
  out.z_star = half_gamma - i * out.omega1;
  return out;
}

complex kappa(double omega, const OhmicBath& bath) {
  const complex denom(bath.omega0 * bath.omega0 - omega * omega, -omega * bath.gamma0);
  return 1.0 / denom;
}

double spectral_weight(double omega, const OhmicBath& bath) {
  const double w2 = omega * omega;
  const double o2 = bath.omega0 * bath.omega0;
  const double d = w2 - o2;
  return bath.gamma0 * (w2 + o2) / (d * d + bath.gamma0 * bath.gamma0 * w2);
}

double weight_normalization(const OhmicBath&) {
  // each partial fraction z/(omega^2+z^2) integrates to pi/2 for Re z > 0
  return 1.0;
}

double kappa_discrete_inverse(double omega, double omega0, const DiscreteCoupling& coupling) {
  const double w2 = omega * omega;
  double sum = 0.0;
  for (std::size_t k = 0; k < coupling.omega_k.size(); ++k) {
    const double ok2 = coupling.omega_k[k] * coupling.omega_k[k];
    const double denom = w2 - ok2;
    if (denom == 0.0)
      throw SingularEvaluation("kappa_discrete: evaluation at a bath frequency");
    sum += (coupling.c_k[k] * coupling.c_k[k] / ok2) * (w2 / denom);
  }
  return -(w2 - omega0 * omega0) + sum;
}

double kappa_discrete(double omega, double omega0, const DiscreteCoupling& coupling) {
  const double inv = kappa_discrete_inverse(omega, omega0, coupling);
  if (inv == 0.0)
    throw SingularEvaluation("kappa_discrete: evaluation at a normal-mode frequency");
  return 1.0 / inv;
}

}  // namespace spinbath::susceptibility
