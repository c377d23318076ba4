// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "wmfie/mie.hpp"

using namespace wmfie;

TEST_CASE("spherical Bessel functions match closed forms")
{
  for (double x : {0.05, 0.7, 3.0, 25.0, 400.0})
  {
    std::vector<double> j, y;
    spherical_bessel(6, x, j, y);
    const double s = std::sin(x), c = std::cos(x);
    CHECK(j[0] == doctest::Approx(s / x).epsilon(1e-12));
    CHECK(y[0] == doctest::Approx(-c / x).epsilon(1e-12));
    const double j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
    const double y2 = -(3.0 / (x * x) - 1.0) * c / x - 3.0 * s / (x * x);
    CHECK(std::abs(j[2] - j2) < 1e-10 * (std::abs(j2) + std::abs(j[0])));
    CHECK(std::abs(y[2] - y2) < 1e-10 * std::abs(y2) + 1e-14);
    // Wronskian j_n y_{n-1} - j_{n-1} y_n = 1 / x^2
    for (int n = 1; n <= 6; n++)
      CHECK(j[n] * y[n - 1] - j[n - 1] * y[n] == doctest::Approx(1.0 / (x * x)).epsilon(1e-8));
  }
  std::vector<double> j, y;
  CHECK_THROWS_AS(spherical_bessel(3, 0.0, j, y), Error);
}

TEST_CASE("small sphere follows the Rayleigh limit")
{
  // PEC sphere: sigma_sca -> (10 pi / 3) k^4 a^6
  const double a = 0.01, k = 1.0;
  const MieSolution s = mie_coefficients(a, k);
  const double rayleigh = 10.0 * pi / 3.0 * std::pow(k, 4) * std::pow(a, 6);
  CHECK(mie_scattering_cross_section(s) == doctest::Approx(rayleigh).epsilon(1e-3));
  // Backscatter dominates forward scatter by 9 : 1 in power.
  const FarFieldCut f = mie_far_field(s, PlaneWave{}, {{0.0, 0.0}, {180.0, 0.0}});
  CHECK(std::norm(f.e_theta[1]) / std::norm(f.e_theta[0]) == doctest::Approx(9.0).epsilon(1e-3));
}

TEST_CASE("large sphere tends to twice the geometric cross section")
{
  const double a = 1.0, k = 60.0;
  CHECK_THROWS_AS(mie_coefficients(a, k), Error);  // default truncation too short at ka = 60
  const MieSolution s = mie_coefficients(a, k, 110);
  CHECK(mie_extinction_cross_section(s) / (pi * a * a) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("default truncation grows with size")
{
  CHECK(default_mie_order(0.1) == 16);
  CHECK(default_mie_order(10.0) == 25);
}

TEST_CASE("backscatter of a PEC sphere at ka = 1 matches the tabulated value")
{
  // sigma_b / (pi a^2) at ka = 1 is 3.6442 (monostatic PEC sphere curve).
  const MieSolution s = mie_coefficients(1.0, 1.0);
  const FarFieldCut f = mie_far_field(s, PlaneWave{}, {{180.0, 0.0}});
  const double sigma = 4.0 * pi * (std::norm(f.e_theta[0]) + std::norm(f.e_phi[0]));
  CHECK(sigma / pi == doctest::Approx(3.6442).epsilon(2e-3));
}

TEST_CASE("rotated incidence rotates the pattern")
{
  const MieSolution s = mie_coefficients(0.5, 4.0);
  PlaneWave w;
  w.direction = Vec3(1, 0, 0);
  w.polarization = CVec3(0, 0, 1);
  // Forward direction of the rotated wave is theta = 90, phi = 0; E along -theta_hat there.
  const FarFieldCut rot = mie_far_field(s, w, {{90.0, 0.0}});
  const FarFieldCut ref = mie_far_field(s, PlaneWave{}, {{0.0, 0.0}});
  CHECK(std::abs(std::abs(rot.e_theta[0]) - std::abs(ref.e_theta[0])) < 1e-10);
  CHECK(std::abs(rot.e_phi[0]) < 1e-10);
}

TEST_CASE("near field is rejected inside the sphere")
{
  const MieSolution s = mie_coefficients(0.5, 4.0);
  CHECK_THROWS_AS(mie_near_field(s, PlaneWave{}, {Vec3(0.1, 0, 0)}), Error);
}
