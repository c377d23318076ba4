// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "wmfie/quadrature.hpp"

using namespace wmfie;

namespace
{

const std::array<Vec3, 3> kTri = {Vec3(0.1, -0.2, 0.0), Vec3(1.3, 0.1, 0.0), Vec3(0.4, 0.9, 0.0)};

// Brute-force midpoint integration over a fine subdivision of the triangle.
template <typename F>
auto brute(const std::array<Vec3, 3> &t, int n, F f)
{
  using R = decltype(f(t[0]));
  R sum = 0.0 * f(t[0]);
  const double area = 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm() / (n * n);
  const auto rule = gauss_rule(7);
  for (int i = 0; i < n; i++)
    for (int j = 0; i + j < n; j++)
    {
      auto add = [&](const Vec3 &a, const Vec3 &b, const Vec3 &c)
      {
        for (std::size_t q = 0; q < rule.size(); q++)
          sum += rule.weights[q] * area * f(rule.map({a, b, c}, q));
      };
      const Vec3 u = (t[1] - t[0]) / n, v = (t[2] - t[0]) / n;
      const Vec3 p = t[0] + i * u + j * v;
      add(p, p + u, p + v);
      if (i + j + 1 < n)
        add(p + u, p + u + v, p + v);
    }
  return sum;
}

}  // namespace

TEST_CASE("triangle rules integrate polynomials of their degree")
{
  // int over the unit right triangle of x^a y^b = a! b! / (a + b + 2)!
  auto exact = [](int a, int b) { return std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3); };
  const std::array<Vec3, 3> unit = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  for (int deg : {1, 2, 3, 5, 7})
  {
    const TriangleRule &r = gauss_rule(deg);
    double wsum = 0.0;
    for (double w : r.weights)
    {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int a = 0; a <= deg; a++)
      for (int b = 0; a + b <= deg; b++)
      {
        double s = 0.0;
        for (std::size_t q = 0; q < r.size(); q++)
        {
          const Vec3 p = r.map(unit, q);
          s += 0.5 * r.weights[q] * std::pow(p.x(), a) * std::pow(p.y(), b);
        }
        CHECK(s == doctest::Approx(exact(a, b)).epsilon(1e-12));
      }
  }
  CHECK_THROWS(gauss_rule(4));
}

TEST_CASE("static potentials match brute force off the plane")
{
  for (const Vec3 &r : {Vec3(0.5, 0.3, 0.7), Vec3(2.0, -1.0, 0.2), Vec3(0.4, 0.2, 0.05)})
  {
    const StaticPotentials p = static_potentials(kTri, r);
    const double inv = brute(kTri, 60, [&](const Vec3 &s) { return 1.0 / (r - s).norm(); });
    const Vec3 rr = brute(kTri, 60, [&](const Vec3 &s) -> Vec3 { return s / (r - s).norm(); });
    const Vec3 g = brute(kTri, 60, [&](const Vec3 &s) -> Vec3 { return -(r - s) / std::pow((r - s).norm(), 3); });
    CHECK(p.inv_r == doctest::Approx(inv).epsilon(1e-6));
    CHECK((p.r_inv_r - rr).norm() < 1e-6 * rr.norm());
    CHECK((p.grad - g).norm() < 1e-4 * g.norm());
  }
}

TEST_CASE("in-plane potential is finite at a vertex and in the interior")
{
  const StaticPotentials c = static_potentials(kTri, (kTri[0] + kTri[1] + kTri[2]) / 3.0);
  const StaticPotentials v = static_potentials(kTri, kTri[1]);
  CHECK(std::isfinite(c.inv_r));
  CHECK(std::isfinite(v.inv_r));
  CHECK(c.inv_r > v.inv_r);
  CHECK(std::abs(c.grad.z()) < 1e-12);
}

TEST_CASE("self-term double integral of 1/R has the closed form")
{
  // Closed form against the analytic inner integral with a refined outer rule.
  const double self = integrate_static_singular(kTri, kTri);
  double outer = 0.0;
  const TriangleRule &r = gauss_rule(7);
  const double area = 0.5 * (kTri[1] - kTri[0]).cross(kTri[2] - kTri[0]).norm();
  const Vec3 m01 = 0.5 * (kTri[0] + kTri[1]), m12 = 0.5 * (kTri[1] + kTri[2]), m20 = 0.5 * (kTri[2] + kTri[0]);
  for (const auto &sub : {std::array<Vec3, 3>{kTri[0], m01, m20}, std::array<Vec3, 3>{m01, kTri[1], m12},
                          std::array<Vec3, 3>{m20, m12, kTri[2]}, std::array<Vec3, 3>{m01, m12, m20}})
  {
    for (std::size_t q = 0; q < r.size(); q++)
      outer += r.weights[q] * area / 4.0 * static_potentials(kTri, r.map(sub, q)).inv_r / (4.0 * pi);
  }
  CHECK(self == doctest::Approx(outer).epsilon(2e-3));
  CHECK(self > 0.0);
}

TEST_CASE("smooth Green remainder is regular at R = 0")
{
  const double k = 2.0;
  for (double R : {1e-6, 1e-3, 0.5, 2.0})
  {
    const cplx expect = green(k, R) - 1.0 / (4.0 * pi * R);
    CHECK(std::abs(smooth_green(k, R) - expect) < 1e-8 * (1.0 + std::abs(expect)));
  }
  CHECK(std::abs(smooth_green(k, 1e-12) - cplx(0.0, -k / (4.0 * pi))) < 1e-9);
}
