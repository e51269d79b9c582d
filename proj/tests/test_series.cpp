#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/series.hpp"
#include "spinbath/specfun.hpp"
#include "spinbath/thermo.hpp"

using namespace spinbath;
using namespace spinbath::series;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("GArgument invariants and validation") {
  CHECK_THROWS_AS(GArgument(complex(-0.1, 1.0)), DomainError);
  CHECK_THROWS_AS(GArgument(complex(0.0, 1.0)), DomainError);
  for (double r : {0.5, 4.0}) {
    OhmicBath b(1.0, r);
    const double th = 0.7;
    auto [y, ys] = GArgument::pair_from_bath(b, th);
    CHECK((y.y * ys.y).real() == doctest::Approx(1.0 / (th * th)).epsilon(1e-12));
    CHECK((y.y + ys.y).real() == doctest::Approx(r / th).epsilon(1e-12));
    CHECK(std::abs((y.y * ys.y).imag()) < 1e-12 / (th * th));
  }
}

TEST_CASE("g_arctan basics") {
  SUBCASE("conjugate pair sums to a real value") {
    OhmicBath b(1.0, 0.4);
    auto [y, ys] = GArgument::pair_from_bath(b, 1.3);
    const complex s = g_arctan(y) + g_arctan(ys);
    CHECK(std::abs(s.imag()) <= 1e-12 * std::abs(s.real()));
    CHECK(s.real() < 0.0);
  }
  SUBCASE("large real y: leading 1/y asymptote") {
    GArgument y(complex(100.0, 0.0));
    const double lead = -(1.0 / kPi) * (kPi * kPi / 12.0) / 100.0;
    CHECK(g_arctan(y).real() == doctest::Approx(lead).epsilon(1e-3));
  }
}

TEST_CASE("g_lowT asymptotic series") {
  SUBCASE("order-0 term is the n=0 closed form") {
    GArgument y(complex(30.0, 0.0));
    auto ev = g_lowT(y, 1);
    const double want = -(1.0 / kPi) * specfun::fermi_integral(1) / 30.0;
    CHECK(ev.terms.size() == 1);
    CHECK(ev.value.real() == doctest::Approx(want).epsilon(1e-13));
  }
  SUBCASE("matches the quadrature g at low temperature") {
    OhmicBath b(1.0, 0.1);
    const double th = 0.01;
    auto [y, ys] = GArgument::pair_from_bath(b, th);
    const complex exact = g_arctan(y) + g_arctan(ys);
    const complex ser = g_lowT(y, 3).value + g_lowT(ys, 3).value;
    CHECK(std::abs(ser - exact) <= 1e-6 * std::abs(exact));
  }
  SUBCASE("term magnitudes decrease in the validity regime") {
    GArgument y(complex(50.0, 0.0));
    auto ev = g_lowT(y, 4);
    REQUIRE(ev.terms.size() == 4);
    for (std::size_t i = 1; i < ev.terms.size(); ++i)
      CHECK(std::abs(ev.terms[i]) < std::abs(ev.terms[i - 1]));
  }
  SUBCASE("domain error for |y| <= 1") {
    CHECK_THROWS_AS(g_lowT(GArgument(complex(0.5, 0.5)), 3), DomainError);
  }
}

TEST_CASE("cv_lowT three-term closed form") {
  SUBCASE("coefficient audit: order 1 reduces to (pi/6) theta r") {
    oracle::Rand rng(5);
    for (int i = 0; i < 50; ++i) {
      const double r = rng.log_uniform(0.01, 5.0);
      const double th = rng.log_uniform(1e-3, 0.05);
      OhmicBath b(1.0, r);
      auto ev = cv_lowT(b, th, 1);
      CHECK(ev.real_value() == doctest::Approx(kPi / 6.0 * th * r).epsilon(1e-12));
    }
  }
  SUBCASE("matches the literal three-bracket expression") {
    for (double r : {0.1, 0.5, 1.0, 3.0}) {
      for (double th : {0.005, 0.01, 0.02}) {
        OhmicBath b(1.0, r);
        const double t1 = (kPi / 6.0) * th * r;
        const double t3 = (7.0 * std::pow(kPi, 3) / 30.0) * std::pow(th, 3) *
                          (3.0 * r - std::pow(r, 3));
        const double t5 = (31.0 * std::pow(kPi, 5) / 42.0) * std::pow(th, 5) *
                          (std::pow(r, 5) - 5.0 * std::pow(r, 3) + 5.0 * r);
        auto ev = cv_lowT(b, th, 3);
        CHECK(ev.real_value() == doctest::Approx(t1 + t3 + t5).epsilon(1e-11));
      }
    }
  }
  SUBCASE("spot value and cross-check against the quadrature") {
    OhmicBath b(1.0, 0.1);
    auto ev = cv_lowT(b, 0.01, 3);
    CHECK(ev.real_value() == doctest::Approx(5.2577e-4).epsilon(1e-3));
    CHECK(thermo::specific_heat(b, 0.01) == doctest::Approx(ev.real_value()).epsilon(0.01));
  }
  SUBCASE("vanishes with the coupling") {
    const double th = 0.01;
    double prev = cv_lowT(OhmicBath(1.0, 1e-1), th, 3).real_value();
    for (double r : {1e-2, 1e-3, 1e-4}) {
      const double cur = cv_lowT(OhmicBath(1.0, r), th, 3).real_value();
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev == doctest::Approx(kPi / 6.0 * th * 1e-4).epsilon(1e-4));
  }
  SUBCASE("leading term is linear in theta") {
    OhmicBath b(1.0, 0.1);
    const double c1 = cv_lowT(b, 1e-4, 3).real_value();
    const double c2 = cv_lowT(b, 2e-4, 3).real_value();
    CHECK(c2 / c1 == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("g_highT_cisi agrees with g_arctan") {
  SUBCASE("real y") {
    for (double yr : {0.1, 1.0, 10.0}) {
      GArgument y(complex(yr, 0.0));
      const complex a = g_arctan(y);
      const complex c = g_highT_cisi(y).value;
      CHECK(std::abs(a - c) <= 1e-8 * std::abs(a));
    }
  }
  SUBCASE("complex pair from gamma0/omega0 = 0.1, theta = 1") {
    OhmicBath b(1.0, 0.1);
    auto [y, ys] = GArgument::pair_from_bath(b, 1.0);
    const complex pair_sum = g_highT_cisi(y).value + g_highT_cisi(ys).value;
    const complex exact = g_arctan(y) + g_arctan(ys);
    CHECK(std::abs(pair_sum.imag()) <= 1e-10 * std::abs(pair_sum.real()));
    CHECK(std::abs(pair_sum - exact) <= 1e-8 * std::abs(exact));
  }
  SUBCASE("randomized dual evaluation over the sector") {
    oracle::Rand rng(23);
    for (int i = 0; i < 100; ++i) {
      const double mag = rng.log_uniform(0.05, 50.0);
      const double ang = rng.uniform(-kPi / 2 + 0.1, kPi / 2 - 0.1);
      GArgument y(std::polar(mag, ang));
      const complex a = g_arctan(y);
      const complex c = g_highT_cisi(y).value;
      CHECK(std::abs(a - c) <= 1e-8 * std::abs(a));
    }
  }
  SUBCASE("late terms fall off like aux_f(n y)/n") {
    GArgument y(complex(2.0, 0.0));
    auto ev = g_highT_cisi(y);
    REQUIRE(ev.terms.size() >= 64);
    for (std::size_t n : {8u, 16u, 31u}) {
      const double expected = std::abs(specfun::aux_f((double(n + 1)) * y.y)) /
                              (kPi * double(n + 1));
      CHECK(std::abs(ev.terms[n]) == doctest::Approx(expected).epsilon(1e-10));
    }
    // aux_f ~ 1/(n|y|) makes the terms a 1/n^2 envelope
    CHECK(std::abs(ev.terms[63]) / std::abs(ev.terms[31]) ==
          doctest::Approx(0.25).epsilon(0.1));
  }
}

TEST_CASE("cv_highT_leading") {
  OhmicBath weak(1.0, 0.1);
  SUBCASE("equilibrium factor is the single-spin leading term") {
    auto v = cv_highT_leading(weak, 10.0);
    CHECK(v.equilibrium_factor == doctest::Approx(2.5e-3).epsilon(1e-12));
  }
  SUBCASE("dynamical factor sign flips at r = sqrt(2)") {
    CHECK(cv_highT_leading(OhmicBath(1.0, 1.0), 5.0).dynamical_factor < 0.0);
    CHECK(cv_highT_leading(OhmicBath(1.0, 2.0), 5.0).dynamical_factor > 0.0);
    const double at_sqrt2 =
        cv_highT_leading(OhmicBath(1.0, std::sqrt(2.0)), 5.0).value;
    CHECK(std::abs(at_sqrt2) < 1e-14);
  }
  SUBCASE("pure theta^-2 scaling") {
    auto a = cv_highT_leading(weak, 7.0);
    auto b = cv_highT_leading(weak, 14.0);
    CHECK(b.value / a.value == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("free_energy_highT regularized expansion") {
  OhmicBath b(1.0, 0.7);
  const double th = 20.0;
  auto ev = free_energy_highT(b, th);
  REQUIRE(ev.terms.size() == 5);
  SUBCASE("theta-linear and theta-constant orders contribute nothing to Cv") {
    // -theta d^2/dtheta^2 annihilates terms[0] (prop. theta) and terms[1] (const)
    auto ev2 = free_energy_highT(b, 2.0 * th);
    CHECK(ev.terms[0].real() * 2.0 == doctest::Approx(ev2.terms[0].real()).epsilon(1e-13));
    CHECK(ev.terms[1].real() == doctest::Approx(ev2.terms[1].real()).epsilon(1e-13));
    CHECK(ev.terms[3].real() == 0.0);  // eta(-2) = 0 kills the y^3 order
  }
  SUBCASE("regularized Cv leading term is -1/4 of the saturation-truncated form") {
    auto cv_reg = cv_highT_regularized(b, th);
    auto lead = cv_highT_leading(b, th);
    CHECK(cv_reg.terms[0].real() / lead.value == doctest::Approx(-0.25).epsilon(1e-12));
  }
  SUBCASE("regularized Cv matches finite differences of the regularized F") {
    const double d = 1e-3 * th;
    auto f = [&](double t) { return free_energy_highT(b, t).real_value(); };
    const double cv_fd = -th * (f(th + d) - 2.0 * f(th) + f(th - d)) / (d * d);
    CHECK(cv_highT_regularized(b, th).real_value() ==
          doctest::Approx(cv_fd).epsilon(1e-6));
  }
  SUBCASE("regularization note is surfaced") {
    CHECK(ev.note.find("eta") != std::string::npos);
  }
}

TEST_CASE("triple agreement at low temperature") {
  for (double r : {0.1, 0.5, 1.0}) {
    OhmicBath b(1.0, r);
    for (double th : {0.01, 0.02}) {
      const double quad_cv = thermo::specific_heat(b, th);
      const double ser_cv = cv_lowT(b, th, 3).real_value();
      const double d = 1e-3 * th;
      auto f = [&](double t) { return series::free_energy_dual(b, t, 1e-13); };
      const double fd_cv = -th * (f(th + d) - 2.0 * f(th) + f(th - d)) / (d * d);
      CHECK(std::abs(quad_cv - ser_cv) <= 0.01 * quad_cv);
      CHECK(std::abs(fd_cv - quad_cv) <= 0.01 * quad_cv);
    }
  }
}

TEST_CASE("reality of the pair sum including overdamped") {
  for (double r : {0.5, 2.0, 4.0, 20.0}) {
    OhmicBath b(1.0, r);
    for (double th : {0.3, 3.0}) {
      auto [y, ys] = GArgument::pair_from_bath(b, th);
      const complex s = g_arctan(y) + g_arctan(ys);
      CHECK(std::abs(s.imag()) <= 1e-12 * std::abs(s.real()));
    }
  }
}
