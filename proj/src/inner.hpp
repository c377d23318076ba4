// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

// Internal: inner (source-triangle) integrals shared by the pair integrator,
// the matrix assembly and the tests.

#ifndef WMFIE_SRC_INNER_HPP
#define WMFIE_SRC_INNER_HPP

#include <algorithm>
#include <array>

#include "wmfie/quadrature.hpp"

namespace wmfie::detail
{

struct TrianglePair
{
  TrianglePair(const std::array<Vec3, 3> &observer, const std::array<Vec3, 3> &source, const QuadConfig &config)
    : src(source)
  {
    auto max_edge = [](const std::array<Vec3, 3> &t)
    {
      return std::max({(t[1] - t[0]).norm(), (t[2] - t[1]).norm(), (t[0] - t[2]).norm()});
    };
    const Vec3 cm = (observer[0] + observer[1] + observer[2]) / 3.0;
    const Vec3 cn = (source[0] + source[1] + source[2]) / 3.0;
    near = (cm - cn).norm() < config.near_factor * std::max(max_edge(observer), max_edge(source));
    rule = &gauss_rule(near ? config.near_source_degree : config.far_source_degree);
    area = 0.5 * (source[1] - source[0]).cross(source[2] - source[0]).norm();
  }

  std::array<Vec3, 3> src;
  bool near;
  const TriangleRule *rule;
  double area;
};

// g0 = int G ds', g1 = int G r' ds', h = int grad_r G ds'.
struct InnerIntegrals
{
  cplx g0;
  CVec3 g1;
  CVec3 h;
};

inline InnerIntegrals inner_integrals(const TrianglePair &pair, const Vec3 &r, double k)
{
  InnerIntegrals out{0.0, CVec3::Zero(), CVec3::Zero()};
  const TriangleRule &rule = *pair.rule;
  if (!pair.near)
  {
    for (std::size_t i = 0; i < rule.size(); i++)
    {
      const Vec3 rp = rule.map(pair.src, i);
      const Vec3 d = r - rp;
      const double R = d.norm();
      const double w = rule.weights[i] * pair.area;
      const cplx e = std::exp(cplx(0.0, -k * R));
      const cplx g = e / (4.0 * pi * R);
      const cplx gr = -cplx(1.0, k * R) * g / (R * R);
      out.g0 += w * g;
      out.g1 += (w * g) * rp.cast<cplx>();
      out.h += (w * gr) * d.cast<cplx>();
    }
    return out;
  }
  const StaticPotentials sp = static_potentials(pair.src, r);
  constexpr double inv4pi = 1.0 / (4.0 * pi);
  out.g0 = sp.inv_r * inv4pi;
  out.g1 = (sp.r_inv_r * inv4pi).cast<cplx>();
  out.h = (sp.grad * inv4pi).cast<cplx>();
  for (std::size_t i = 0; i < rule.size(); i++)
  {
    const Vec3 rp = rule.map(pair.src, i);
    const Vec3 d = r - rp;
    const double R = d.norm();
    const double w = rule.weights[i] * pair.area;
    const cplx g = smooth_green(k, R);
    out.g0 += w * g;
    out.g1 += (w * g) * rp.cast<cplx>();
    out.h += (w * smooth_green_grad_over_r(k, R)) * d.cast<cplx>();
  }
  return out;
}

}  // namespace wmfie::detail

#endif  // WMFIE_SRC_INNER_HPP
