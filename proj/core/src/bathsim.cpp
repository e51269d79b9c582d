#include "spinbath/bathsim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <Eigen/Dense>

#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"
#include "spinbath/thermo.hpp"

namespace spinbath::bathsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Counter-based deterministic RNG: splitmix64 streams keyed on
// (seed, sample index), so parallel sample generation cannot change results.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) {
    state = (seed + 4) ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    next();
    next();
  }
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // (0, 1]
    return (next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }
};

// Box-Muller pair
struct GaussianStream {
  SplitMix64 rng;
  bool have_spare = false;
  double spare = 0.0;
  GaussianStream(std::uint64_t seed, std::uint64_t stream) : rng(seed, stream) {}
  double next() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare = m * std::sin(a);
    have_spare = true;
    return m * std::cos(a);
  }
};

void check_bath(const DiscreteBath& bath) {
  if (bath.omega_k.size() != bath.c_k.size())
    throw DomainError("DiscreteBath: frequency and coupling lists differ in length");
}

struct Accelerations {
  double r;
  std::vector<double> alpha;
};

// r'' = -(w0^2 + sum c^2/w^2) r + sum c alpha ;  alpha_k'' = -w_k^2 alpha_k + c_k r
void accelerations(const DiscreteBath& bath, double omega0, const PhaseState& s,
                   double counterterm, Accelerations& out) {
  const std::size_t n = bath.omega_k.size();
  double coupling = 0.0;
  for (std::size_t k = 0; k < n; ++k) coupling += bath.c_k[k] * s.alpha[k];
  out.r = -(omega0 * omega0 + counterterm) * s.r + coupling;
  out.alpha.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.alpha[k] = -bath.omega_k[k] * bath.omega_k[k] * s.alpha[k] + bath.c_k[k] * s.r;
}

}  // namespace

DiscreteBath discretize(const SpectralDensitySpec& spec) {
  if (spec.n_modes < 1) throw DomainError("discretize: n_modes must be >= 1");
  if (!(spec.gamma0 > 0.0)) throw DomainError("discretize: gamma0 must be > 0");
  if (!(spec.omega_c > 0.0)) throw DomainError("discretize: omega_c must be > 0");
  const int n = spec.n_modes;
  DiscreteBath bath;
  bath.gamma0 = spec.gamma0;
  bath.omega_c = spec.omega_c;
  bath.omega_k.resize(n);
  bath.c_k.resize(n);
  std::vector<double> edges(n + 1);
  if (spec.scheme == Scheme::linear) {
    for (int i = 0; i <= n; ++i) edges[i] = spec.omega_c * i / n;
    for (int k = 0; k < n; ++k) bath.omega_k[k] = 0.5 * (edges[k] + edges[k + 1]);
  } else {
    // geometric bins; the floor at omega_c/(2N) makes the missing [0, floor)
    // kernel mass shrink like 1/N
    const double lo = spec.omega_c / (2.0 * n);
    const double ratio = std::pow(spec.omega_c / lo, 1.0 / n);
    edges[0] = lo;
    for (int i = 1; i <= n; ++i) edges[i] = edges[i - 1] * ratio;
    edges[n] = spec.omega_c;
    for (int k = 0; k < n; ++k)
      bath.omega_k[k] = std::sqrt(edges[k] * edges[k + 1]);
  }
  for (int k = 0; k < n; ++k) {
    const double dw = edges[k + 1] - edges[k];
    const double j = spec.gamma0 * bath.omega_k[k];  // Ohmic J(w) = gamma0 w
    bath.c_k[k] = std::sqrt((2.0 / kPi) * j * bath.omega_k[k] * dw);
  }
  const double target = (2.0 / kPi) * spec.gamma0 * spec.omega_c;
  bath.kernel_error = std::abs(memory_kernel(bath, 0.0) - target);
  return bath;
}

double memory_kernel(const DiscreteBath& bath, double t) {
  check_bath(bath);
  double sum = 0.0;
  for (std::size_t k = 0; k < bath.omega_k.size(); ++k) {
    const double w = bath.omega_k[k];
    sum += bath.c_k[k] * bath.c_k[k] / (w * w) * std::cos(w * t);
  }
  return sum;
}

PhaseState sample_initial(const DiscreteBath& bath, double theta, std::uint64_t seed,
                          std::uint64_t sample_index) {
  check_bath(bath);
  if (!(theta > 0.0)) throw DomainError("sample_initial: theta must be > 0");
  GaussianStream g(seed, sample_index);
  const std::size_t n = bath.omega_k.size();
  PhaseState s;
  s.alpha.resize(n);
  s.beta.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = bath.omega_k[k];
    const double th = std::tanh(w / (2.0 * theta));
    s.alpha[k] = std::sqrt(th / (2.0 * w)) * g.next();
    s.beta[k] = std::sqrt(0.5 * w * th) * g.next();
  }
  return s;
}

std::vector<double> noise_trajectory(const DiscreteBath& bath, const PhaseState& initial,
                                     const std::vector<double>& t_grid) {
  check_bath(bath);
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw DomainError("noise_trajectory: t_grid must be increasing");
  std::vector<double> eta(t_grid.size(), 0.0);
  const std::size_t n = bath.omega_k.size();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = bath.omega_k[k];
      sum += bath.c_k[k] * (initial.alpha[k] * std::cos(w * t_grid[i]) +
                            initial.beta[k] / w * std::sin(w * t_grid[i]));
    }
    eta[i] = sum;
  }
  return eta;
}

double fdr_target(const DiscreteBath& bath, double theta, double tau) {
  check_bath(bath);
  double sum = 0.0;
  for (std::size_t k = 0; k < bath.omega_k.size(); ++k) {
    const double w = bath.omega_k[k];
    sum += bath.c_k[k] * bath.c_k[k] / (2.0 * w) * std::tanh(w / (2.0 * theta)) *
           std::cos(w * tau);
  }
  return sum;
}

double fdr_target_continuum(double gamma0, double omega_c, double theta, double tau,
                            double rel_tol) {
  auto integrand = [=](double w) {
    return gamma0 * 0.5 * w * std::tanh(w / (2.0 * theta)) * std::cos(w * tau);
  };
  return (2.0 / kPi) * quad::integrate(integrand, 0.0, omega_c, rel_tol);
}

double FdrReport::fraction_within(double n_sigma) const {
  std::size_t ok = 0, n = 0;
  for (std::size_t i = 0; i < z_scores.size(); ++i) {
    if (stats.lags[i] == 0.0) continue;  // tau = 0 is covered by var0_exact
    ++n;
    if (std::abs(z_scores[i]) <= n_sigma) ++ok;
  }
  return n == 0 ? 1.0 : static_cast<double>(ok) / n;
}

double FdrReport::mean_fraction_within(double n_sigma) const {
  std::size_t ok = 0, n = 0;
  for (std::size_t i = 0; i < mean_z.size(); ++i) {
    if (stats.lags[i] == 0.0) continue;
    ++n;
    if (std::abs(mean_z[i]) <= n_sigma) ++ok;
  }
  return n == 0 ? 1.0 : static_cast<double>(ok) / n;
}

FdrReport verify_fdr(const DiscreteBath& bath, double theta, int n_samples,
                     const std::vector<double>& t_grid, std::uint64_t seed,
                     int threads) {
  check_bath(bath);
  if (n_samples < 100) throw DomainError("verify_fdr: require n_samples >= 100");
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw DomainError("verify_fdr: t_grid must start at 0");
  const std::size_t n_lags = t_grid.size();
  const std::size_t n_modes = bath.omega_k.size();

  // mode tables: eta(t_i) = sum_k A_k cc[i][k] + B_k ss[i][k]
  std::vector<double> cc(n_lags * n_modes), ss(n_lags * n_modes);
  for (std::size_t i = 0; i < n_lags; ++i) {
    for (std::size_t k = 0; k < n_modes; ++k) {
      const double w = bath.omega_k[k];
      cc[i * n_modes + k] = bath.c_k[k] * std::cos(w * t_grid[i]);
      ss[i * n_modes + k] = bath.c_k[k] / w * std::sin(w * t_grid[i]);
    }
  }

  // fixed-size chunks accumulated in sample order: thread-count independent
  constexpr int chunk_size = 256;
  const int n_chunks = (n_samples + chunk_size - 1) / chunk_size;
  struct Partial {
    std::vector<double> sum_eta, sum_eta2, sum_prod, sum_prod2;
  };
  std::vector<Partial> partials(n_chunks);

  auto run_chunk = [&](int chunk) {
    Partial p;
    p.sum_eta.assign(n_lags, 0.0);
    p.sum_eta2.assign(n_lags, 0.0);
    p.sum_prod.assign(n_lags, 0.0);
    p.sum_prod2.assign(n_lags, 0.0);
    std::vector<double> eta(n_lags);
    const int begin = chunk * chunk_size;
    const int end = std::min(n_samples, begin + chunk_size);
    for (int m = begin; m < end; ++m) {
      PhaseState st = sample_initial(bath, theta, seed, static_cast<std::uint64_t>(m));
      for (std::size_t i = 0; i < n_lags; ++i) {
        double s = 0.0;
        const double* ci = &cc[i * n_modes];
        const double* si = &ss[i * n_modes];
        for (std::size_t k = 0; k < n_modes; ++k)
          s += st.alpha[k] * ci[k] + st.beta[k] * si[k];
        eta[i] = s;
      }
      for (std::size_t i = 0; i < n_lags; ++i) {
        const double prod = eta[0] * eta[i];
        p.sum_eta[i] += eta[i];
        p.sum_eta2[i] += eta[i] * eta[i];
        p.sum_prod[i] += prod;
        p.sum_prod2[i] += prod * prod;
      }
    }
    partials[chunk] = std::move(p);
  };

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, n_chunks);
  if (n_threads <= 1) {
    for (int c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t]() {
        for (int c = static_cast<int>(t); c < n_chunks; c += n_threads) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> sum_eta(n_lags, 0.0), sum_eta2(n_lags, 0.0),
      sum_prod(n_lags, 0.0), sum_prod2(n_lags, 0.0);
  for (const auto& p : partials) {
    for (std::size_t i = 0; i < n_lags; ++i) {
      sum_eta[i] += p.sum_eta[i];
      sum_eta2[i] += p.sum_eta2[i];
      sum_prod[i] += p.sum_prod[i];
      sum_prod2[i] += p.sum_prod2[i];
    }
  }

  const double M = static_cast<double>(n_samples);
  FdrReport rep;
  rep.stats.lags = t_grid;
  rep.stats.n_samples = n_samples;
  rep.stats.autocorr.resize(n_lags);
  rep.stats.std_error.resize(n_lags);
  rep.stats.mean.resize(n_lags);
  rep.stats.mean_std_error.resize(n_lags);
  rep.target.resize(n_lags);
  rep.z_scores.resize(n_lags);
  rep.mean_z.resize(n_lags);
  for (std::size_t i = 0; i < n_lags; ++i) {
    const double mean_prod = sum_prod[i] / M;
    const double var_prod = std::max(0.0, sum_prod2[i] / M - mean_prod * mean_prod);
    const double se_prod = std::sqrt(var_prod / (M - 1.0));
    const double mean_eta = sum_eta[i] / M;
    const double var_eta = std::max(0.0, sum_eta2[i] / M - mean_eta * mean_eta);
    const double se_eta = std::sqrt(var_eta / (M - 1.0));
    rep.stats.autocorr[i] = mean_prod;
    rep.stats.std_error[i] = se_prod;
    rep.stats.mean[i] = mean_eta;
    rep.stats.mean_std_error[i] = se_eta;
    rep.target[i] = fdr_target(bath, theta, t_grid[i]);
    rep.z_scores[i] = se_prod > 0.0 ? (mean_prod - rep.target[i]) / se_prod : 0.0;
    rep.mean_z[i] = se_eta > 0.0 ? mean_eta / se_eta : 0.0;
  }
  rep.var0_exact = fdr_target(bath, theta, 0.0);
  return rep;
}

double total_energy(const DiscreteBath& bath, double omega0, const PhaseState& s) {
  check_bath(bath);
  double e = 0.5 * s.rho * s.rho + 0.5 * omega0 * omega0 * s.r * s.r;
  for (std::size_t k = 0; k < bath.omega_k.size(); ++k) {
    const double w = bath.omega_k[k];
    const double d = s.alpha[k] - bath.c_k[k] / (w * w) * s.r;
    e += 0.5 * s.beta[k] * s.beta[k] + 0.5 * w * w * d * d;
  }
  return e;
}

PhaseState integrate(const DiscreteBath& bath, double omega0, PhaseState state,
                     double dt, long n_steps,
                     const std::function<void(long, const PhaseState&)>& observer) {
  check_bath(bath);
  const std::size_t n = bath.omega_k.size();
  if (state.alpha.size() != n || state.beta.size() != n)
    throw DomainError("integrate: state size does not match bath size");
  if (!(dt > 0.0)) throw DomainError("integrate: dt must be > 0");

  double counterterm = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    counterterm += bath.c_k[k] * bath.c_k[k] / (bath.omega_k[k] * bath.omega_k[k]);

  const double e0 = total_energy(bath, omega0, state);
  const double e_limit = 10.0 * std::max(e0, 1e-30);

  Accelerations acc;
  accelerations(bath, omega0, state, counterterm, acc);
  for (long step = 0; step < n_steps; ++step) {
    // velocity Verlet
    state.r += dt * state.rho + 0.5 * dt * dt * acc.r;
    for (std::size_t k = 0; k < n; ++k)
      state.alpha[k] += dt * state.beta[k] + 0.5 * dt * dt * acc.alpha[k];
    const double prev_ar = acc.r;
    std::vector<double> prev_aa = acc.alpha;
    accelerations(bath, omega0, state, counterterm, acc);
    state.rho += 0.5 * dt * (prev_ar + acc.r);
    for (std::size_t k = 0; k < n; ++k)
      state.beta[k] += 0.5 * dt * (prev_aa[k] + acc.alpha[k]);

    if ((step & 0xff) == 0xff && !(total_energy(bath, omega0, state) <= e_limit))
      throw StepSizeError("integrate: energy grew beyond 10x initial, reduce dt");
    if (observer) observer(step + 1, state);
  }
  return state;
}

std::vector<double> normal_modes(const DiscreteBath& bath, double omega0) {
  check_bath(bath);
  const int n = bath.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  double counterterm = 0.0;
  for (int k = 0; k < n; ++k)
    counterterm += bath.c_k[k] * bath.c_k[k] / (bath.omega_k[k] * bath.omega_k[k]);
  m(0, 0) = omega0 * omega0 + counterterm;
  for (int k = 0; k < n; ++k) {
    m(0, k + 1) = m(k + 1, 0) = -bath.c_k[k];
    m(k + 1, k + 1) = bath.omega_k[k] * bath.omega_k[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("normal_modes: eigensolver failed", 0.0, 0.0);
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double ev = solver.eigenvalues()[i];
    if (ev < -1e-10 * m(0, 0))
      throw NumericError("normal_modes: negative eigenvalue of a PSD form", ev, 0.0);
    out[i] = std::sqrt(std::max(ev, 0.0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double discrete_free_energy(const std::vector<double>& modes,
                            const std::vector<double>& bath_freqs, double theta) {
  if (modes.size() != bath_freqs.size() + 1)
    throw DomainError("discrete_free_energy: need |modes| = |bath| + 1");
  thermo::ReducedTemperature t(theta);
  double f = 0.0;
  for (double w : modes) f += thermo::fermi_mode_f(w, t);
  for (double w : bath_freqs) f -= thermo::fermi_mode_f(w, t);
  return f;
}

}  // namespace spinbath::bathsim
