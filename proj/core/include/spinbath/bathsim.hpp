#ifndef SPINBATH_BATHSIM_HPP
#define SPINBATH_BATHSIM_HPP

#include <cstdint>
#include <functional>
#include <vector>

// Microscopic verification layer: the Ohmic spectral density J(omega) =
// gamma0 omega with sharp cutoff omega_c realized as a finite bath of
// oscillator modes, normal-mode analysis, the discrete free-energy
// difference, c-number noise with spin-bath statistics, symplectic
// integration of the coupled dynamics, and a statistical check of the
// fluctuation-dissipation relation.
//
// Units: frequencies in units of omega0, theta = T/omega0, hbar = k_B = 1.

namespace spinbath::bathsim {

enum class Scheme { linear, logarithmic };

struct SpectralDensitySpec {
  double gamma0;                  ///< friction constant (omega0 units)
  double omega_c;                 ///< sharp cutoff; >= 10 omega0 recommended
  int n_modes;                    ///< N >= 1
  Scheme scheme = Scheme::linear; ///< frequency placement
};

struct DiscreteBath {
  std::vector<double> omega_k;  ///< mode frequencies, strictly increasing
  std::vector<double> c_k;      ///< couplings, c_k^2 = (2/pi) J(w_k) w_k dw_k
  double gamma0 = 0.0;
  double omega_c = 0.0;
  /// |sum c_k^2/w_k^2 - (2/pi) gamma0 omega_c| recorded at construction
  double kernel_error = 0.0;
  int size() const { return static_cast<int>(omega_k.size()); }
};

DiscreteBath discretize(const SpectralDensitySpec& spec);

/// gamma(t) = sum_k (c_k^2/w_k^2) cos(w_k t); the sharp-cutoff continuum
/// limit is (2/pi) gamma0 sin(omega_c t)/t.
double memory_kernel(const DiscreteBath& bath, double t);

struct PhaseState {
  double r = 0.0;
  double rho = 0.0;
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// Thermal initial conditions: independent zero-mean Gaussians with
/// Var(alpha_k) = tanh(w_k/(2 theta))/(2 w_k) and Var(beta_k) =
/// (w_k/2) tanh(w_k/(2 theta)) -- the normalization that makes the mode-sum
/// noise reproduce the spin-bath fluctuation-dissipation relation exactly.
/// System coordinates start at r = rho = 0. Deterministic in
/// (seed, sample_index).
PhaseState sample_initial(const DiscreteBath& bath, double theta, std::uint64_t seed,
                          std::uint64_t sample_index = 0);

/// eta(t) = sum_k c_k alpha_k cos(w_k t) + (c_k/w_k) beta_k sin(w_k t).
std::vector<double> noise_trajectory(const DiscreteBath& bath, const PhaseState& initial,
                                     const std::vector<double>& t_grid);

/// Discrete FDR target sum_k c_k^2 tanh(w_k/(2 theta)) cos(w_k tau)/(2 w_k).
double fdr_target(const DiscreteBath& bath, double theta, double tau);

/// Continuum FDR target (2/pi) int_0^wc gamma0 (w/2) tanh(w/(2 theta))
/// cos(w tau) dw by quadrature.
double fdr_target_continuum(double gamma0, double omega_c, double theta, double tau,
                            double rel_tol = 1e-10);

struct EnsembleStats {
  std::vector<double> lags;
  std::vector<double> autocorr;       ///< <eta(0) eta(tau)> estimates
  std::vector<double> std_error;      ///< standard error per lag
  std::vector<double> mean;           ///< <eta(tau)> estimates
  std::vector<double> mean_std_error;
  long n_samples = 0;
};

struct FdrReport {
  EnsembleStats stats;
  std::vector<double> target;    ///< discrete FDR target per lag
  std::vector<double> z_scores;  ///< (autocorr - target)/std_error
  std::vector<double> mean_z;    ///< mean/mean_std_error
  double var0_exact = 0.0;       ///< closed-form tau=0 variance
  double fraction_within(double n_sigma) const;
  double mean_fraction_within(double n_sigma) const;
};

/// Monte-Carlo autocorrelation of the sampled noise against the discrete
/// target. t_grid doubles as the lag grid (correlations against t_grid[0]).
/// Accumulation is chunked in fixed sample order: results are independent of
/// the thread count.
FdrReport verify_fdr(const DiscreteBath& bath, double theta, int n_samples,
                     const std::vector<double>& t_grid, std::uint64_t seed,
                     int threads = 1);

/// Total energy of the coupled quadratic Hamiltonian.
double total_energy(const DiscreteBath& bath, double omega0, const PhaseState& s);

/// Velocity-Verlet integration of the exact linear system (counterterm
/// included). The optional observer is called after every step. Throws
/// StepSizeError when the energy grows beyond 10x its initial value.
PhaseState integrate(const DiscreteBath& bath, double omega0, PhaseState state,
                     double dt, long n_steps,
                     const std::function<void(long, const PhaseState&)>& observer = {});

/// Eigenfrequencies of the system-plus-bath quadratic form (N+1 values,
/// ascending). They interlace the bath frequencies and coincide with the
/// zeros of the inverse discrete susceptibility.
std::vector<double> normal_modes(const DiscreteBath& bath, double omega0);

/// F = sum_i f(Omega_i, theta) - sum_j f(omega_j, theta), the finite-bath
/// free-energy difference (f the single-mode fermionic free energy).
double discrete_free_energy(const std::vector<double>& modes,
                            const std::vector<double>& bath_freqs, double theta);

}  // namespace spinbath::bathsim

#endif
