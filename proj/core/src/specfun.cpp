#include "spinbath/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "spinbath/errors.hpp"

namespace spinbath::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kPi = 3.14159265358979323846;

// zeta(2)..zeta(20)
constexpr std::array<double, 19> kZetaTable = {
    1.6449340668482264365,  // zeta(2)
    1.2020569031595942854,
    1.0823232337111381916,
    1.0369277551433699263,
    1.0173430619844491397,
    1.0083492773819228268,
    1.0040773561979443394,
    1.0020083928260822144,
    1.0009945751278180853,
    1.0004941886041194646,
    1.0002460865533080483,
    1.0001227133475784891,
    1.0000612481350587048,
    1.0000305882363070205,
    1.0000152822594086519,
    1.0000076371976378998,
    1.0000038172932649998,
    1.0000019082127165539,
    1.0000009539620338728,  // zeta(20)
};

// Ein(w) = sum_{k>=1} (-1)^{k+1} w^k / (k k!), entire. Loses digits to
// cancellation only in the right half-plane, where it is used for |w| <= 4;
// near the negative real axis the terms stop alternating and the series is
// benign up to overflow.
complex ein_series(complex w) {
  complex sum = 0.0;
  complex term = 1.0;
  for (int k = 1; k <= 2000; ++k) {
    term *= -w / static_cast<double>(k);
    complex add = -term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

complex exp1_series(complex w) {
  return -kEulerGamma - std::log(w) + ein_series(w);
}

// Modified Lentz continued fraction for e^w E1(w).
// Converges off the negative real axis; slows as arg w -> pi.
bool exp1_cf(complex w, complex& out) {
  constexpr double tiny = 1e-300;
  complex b = w + 1.0;
  complex c = 1.0 / tiny;
  complex d = 1.0 / b;
  complex f = d;
  for (int i = 1; i <= 20000; ++i) {
    double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (c == complex(0.0)) c = tiny;
    if (d == complex(0.0)) d = tiny;
    complex delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      out = f;
      return true;
    }
  }
  return false;
}

// e^w E1(w) ~ (1/w) sum (-1)^k k!/w^k, truncated at the smallest term.
complex exp1_asymptotic(complex w) {
  complex sum = 0.0;
  complex term = 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 400; ++k) {
    if (k > 0) term *= -static_cast<double>(k) / w;
    double mag = std::abs(term);
    if (mag > best) break;
    best = mag;
    sum += term;
  }
  return sum / w;
}

constexpr double kThreeQuarterPi = 2.3561944901923449288;

complex exp1_scaled_impl(complex w) {
  double aw = std::abs(w);
  if (aw <= 4.0) return std::exp(w) * exp1_series(w);
  if (std::abs(std::arg(w)) <= kThreeQuarterPi) {
    complex f;
    if (exp1_cf(w, f)) return f;
  }
  // near the negative real axis the series stays benign (same-sign terms)
  if (aw < 32.0) return std::exp(w) * exp1_series(w);
  return exp1_asymptotic(w);
}

// i*x and -i*x as limits from Re x -> 0+, so that an argument landing on the
// negative real axis carries the correct side of the branch cut.
complex rotate_up(complex x) {  // i*x, +i0 side
  if (x.real() == 0.0) return complex(-x.imag(), +0.0);
  return complex(-x.imag(), x.real());
}
complex rotate_down(complex x) {  // -i*x, -i0 side
  if (x.real() == 0.0) return complex(x.imag(), -0.0);
  return complex(x.imag(), -x.real());
}

void check_cisi_domain(complex x) {
  if (x == complex(0.0)) throw DomainError("cisi/aux_f: x = 0 (Ci log-singular)");
  if (x.real() < 0.0) throw DomainError("cisi/aux_f: require Re x >= 0");
  if (x.real() == 0.0 && std::abs(x.imag()) >= 32.0)
    throw NumericError(
        "cisi/aux_f: purely imaginary argument too large for stable evaluation",
        0.0, 1.0);
}

}  // namespace

double euler_gamma() { return kEulerGamma; }

double zeta_int(int s) {
  if (s < 2) throw DomainError("zeta_int: require s >= 2");
  if (s - 2 < static_cast<int>(kZetaTable.size())) return kZetaTable[s - 2];
  // direct sum with an Euler-Maclaurin tail estimate
  double sum = 1.0;
  const double sd = static_cast<double>(s);
  int k = 2;
  for (; k <= 64; ++k) {
    double t = std::pow(static_cast<double>(k), -sd);
    sum += t;
    if (t < 1e-18 * sum) break;
  }
  const double n = static_cast<double>(k + 1);
  sum += std::pow(n, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(n, -sd);
  return sum;
}

double gamma_int(int n) {
  if (n < 1) throw DomainError("gamma_int: require n >= 1");
  if (n > 171) throw DomainError("gamma_int: (n-1)! overflows double for n > 171");
  double v = 1.0;
  for (int k = 2; k < n; ++k) v *= static_cast<double>(k);
  return v;
}

double fermi_integral(int m) {
  if (m < 1) throw DomainError("fermi_integral: require m >= 1");
  return (1.0 - std::pow(2.0, -static_cast<double>(m))) * zeta_int(m + 1) *
         gamma_int(m + 1);
}

complex exp1(complex w) {
  if (w == complex(0.0)) throw DomainError("exp1: w = 0 is log-singular");
  return std::exp(-w) * exp1_scaled_impl(w);
}

complex exp1_scaled(complex w) {
  if (w == complex(0.0)) throw DomainError("exp1_scaled: w = 0 is log-singular");
  return exp1_scaled_impl(w);
}

complex aux_f(complex x) {
  check_cisi_domain(x);
  // f(x) = i/2 [e^{ix} E1(ix) - e^{-ix} E1(-ix)], evaluated in scaled form
  const complex i(0.0, 1.0);
  return 0.5 * i * (exp1_scaled_impl(rotate_up(x)) - exp1_scaled_impl(rotate_down(x)));
}

AuxCiSi cisi(complex x) {
  check_cisi_domain(x);
  const complex i(0.0, 1.0);
  complex wp = rotate_up(x), wm = rotate_down(x);
  complex sp = exp1_scaled_impl(wp), sm = exp1_scaled_impl(wm);
  complex e1p = std::exp(-wp) * sp;  // E1(ix) = -Ci(x) - i (pi/2 - Si(x))
  complex e1m = std::exp(-wm) * sm;
  AuxCiSi out;
  out.ci = -0.5 * (e1p + e1m);
  out.si = 0.5 * kPi - 0.5 * i * (e1p - e1m);
  out.aux_f = 0.5 * i * (sp - sm);
  return out;
}

}  // namespace spinbath::specfun
