// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

// Closed-form potential integrals of flat triangles for the static 1/R kernel.

#include <algorithm>
#include <cmath>

#include "wmfie/quadrature.hpp"

namespace wmfie
{

StaticPotentials static_potentials(const std::array<Vec3, 3> &tri, const Vec3 &r)
{
  Vec3 n_hat = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
  n_hat.normalize();
  const double scale = std::max({(tri[1] - tri[0]).norm(), (tri[2] - tri[1]).norm(), (tri[0] - tri[2]).norm()});
  const double tiny = 1e-12 * scale;

  double d = n_hat.dot(r - tri[0]);
  if (std::abs(d) < tiny)
  {
    d = 0.0;  // in-plane observer: principal value
  }
  const double abs_d = std::abs(d);
  const Vec3 rho = r - d * n_hat;

  StaticPotentials out{0.0, Vec3::Zero(), Vec3::Zero()};
  Vec3 in_plane = Vec3::Zero();  // int (rho' - rho) / R
  double beta_sum = 0.0;
  for (int i = 0; i < 3; i++)
  {
    const Vec3 &pm = tri[i];
    const Vec3 &pp = tri[(i + 1) % 3];
    const Vec3 l_hat = (pp - pm).normalized();
    const Vec3 u_hat = l_hat.cross(n_hat);  // outward in-plane edge normal
    const double l_plus = (pp - rho).dot(l_hat);
    const double l_minus = (pm - rho).dot(l_hat);
    const double p0 = (pm - rho).dot(u_hat);
    const double r0_sq = p0 * p0 + d * d;
    const double r0 = std::sqrt(r0_sq);
    const double r_plus = std::sqrt(r0_sq + l_plus * l_plus);
    const double r_minus = std::sqrt(r0_sq + l_minus * l_minus);

    double f;
    if (r0 > tiny)
    {
      f = std::asinh(l_plus / r0) - std::asinh(l_minus / r0);
    }
    else if (l_minus > 0.0 && l_plus > 0.0)
    {
      f = std::log(l_plus / l_minus);
    }
    else if (l_minus < 0.0 && l_plus < 0.0)
    {
      f = std::log(l_minus / l_plus);
    }
    else
    {
      f = 0.0;  // observer on the edge itself: log singularity, weight p0 = 0
    }

    double beta = 0.0;
    if (std::abs(p0) > tiny)
    {
      beta = std::atan(p0 * l_plus / (r0_sq + abs_d * r_plus)) -
             std::atan(p0 * l_minus / (r0_sq + abs_d * r_minus));
    }
    beta_sum += beta;
    out.inv_r += p0 * f - abs_d * beta;
    in_plane += 0.5 * (r0_sq * f + l_plus * r_plus - l_minus * r_minus) * u_hat;
    out.grad -= f * u_hat;
  }
  const double sgn_d = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  out.grad -= sgn_d * beta_sum * n_hat;
  out.r_inv_r = rho * out.inv_r + in_plane;
  return out;
}

namespace
{

// int_T int_T 1/R for identical flat triangles with side lengths a, b, c.
double self_double_integral(const std::array<Vec3, 3> &tri)
{
  const double a = (tri[1] - tri[2]).norm();
  const double b = (tri[2] - tri[0]).norm();
  const double c = (tri[0] - tri[1]).norm();
  const double area = 0.5 * (tri[1] - tri[0]).cross(tri[2] - tri[0]).norm();
  auto term = [](double x, double y, double z)
  { return std::log(((x + y) * (x + y) - z * z) / (y * y - (z - x) * (z - x))) / x; };
  return 4.0 * area * area / 3.0 * (term(a, b, c) + term(b, c, a) + term(c, a, b));
}

bool same_triangle(const std::array<Vec3, 3> &s, const std::array<Vec3, 3> &t)
{
  for (int k = 0; k < 3; k++)
  {
    bool found = false;
    for (int m = 0; m < 3; m++)
    {
      found = found || (s[k] - t[m]).squaredNorm() == 0.0;
    }
    if (!found)
    {
      return false;
    }
  }
  return true;
}

}  // namespace

double integrate_static_singular(const std::array<Vec3, 3> &observer, const std::array<Vec3, 3> &source,
                                 int outer_degree)
{
  if (same_triangle(observer, source))
  {
    return self_double_integral(source) / (4.0 * pi);
  }
  const TriangleRule &rule = gauss_rule(outer_degree);
  const double area = 0.5 * (observer[1] - observer[0]).cross(observer[2] - observer[0]).norm();
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); q++)
  {
    acc += rule.weights[q] * static_potentials(source, rule.map(observer, q)).inv_r;
  }
  return acc * area / (4.0 * pi);
}

}  // namespace wmfie
