// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/quadrature.hpp"

#include <cmath>

#include "inner.hpp"

namespace wmfie
{

namespace
{

// Fully symmetric orbits: (a, a, 1-2a) and (a, b, 1-a-b).
void add_s21(TriangleRule &rule, double a, double w)
{
  const double b = 1.0 - 2.0 * a;
  rule.points.push_back({b, a, a});
  rule.points.push_back({a, b, a});
  rule.points.push_back({a, a, b});
  for (int i = 0; i < 3; i++)
  {
    rule.weights.push_back(w);
  }
}

void add_s111(TriangleRule &rule, double a, double b, double w)
{
  const double c = 1.0 - a - b;
  const double pts[6][3] = {{a, b, c}, {b, a, c}, {a, c, b}, {c, a, b}, {b, c, a}, {c, b, a}};
  for (const auto &p : pts)
  {
    rule.points.push_back({p[0], p[1], p[2]});
    rule.weights.push_back(w);
  }
}

TriangleRule make_rule(int degree)
{
  TriangleRule r;
  r.degree = degree;
  switch (degree)
  {
    case 1:
      r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      r.weights = {1.0};
      break;
    case 2:
      add_s21(r, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
      add_s21(r, 0.44594849091596488632, 0.22338158967801146570);
      add_s21(r, 0.09157621350977074346, 0.10995174365532186764);
      break;
    case 5:
      r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      r.weights = {0.225};
      add_s21(r, 0.47014206410511508977, 0.13239415278850618074);
      add_s21(r, 0.10128650732345633880, 0.12593918054482715260);
      break;
    case 7:
      add_s21(r, 0.05, 0.030531302017876712839);
      add_s21(r, 0.47416564787019450150, 0.066357856072451463626);
      add_s21(r, 0.24221477801526940714, 0.12696634981348963467);
      add_s111(r, 0.048233924768029120916, 0.22960593054890095271, 0.054738912714757761100);
      break;
    default:
      fail(ErrorCode::InvalidArgument,
           "unsupported triangle rule degree " + std::to_string(degree) + " (supported: 1, 2, 3, 5, 7)");
  }
  return r;
}

}  // namespace

const TriangleRule &gauss_rule(int degree)
{
  static const TriangleRule rules[] = {make_rule(1), make_rule(2), make_rule(3), make_rule(5),
                                       make_rule(7)};
  switch (degree)
  {
    case 1:
      return rules[0];
    case 2:
      return rules[1];
    case 3:
      return rules[2];
    case 5:
      return rules[3];
    case 7:
      return rules[4];
    default:
      break;
  }
  fail(ErrorCode::InvalidArgument,
       "unsupported triangle rule degree " + std::to_string(degree) + " (supported: 1, 2, 3, 5, 7)");
}

cplx smooth_green(double k, double R)
{
  const double x = k * R;
  if (x < 0.1)
  {
    // sum_{n>=1} (-jk)^n R^(n-1) / n!
    cplx term = cplx(0.0, -k);
    cplx sum = term;
    for (int n = 2; n <= 14; n++)
    {
      term *= cplx(0.0, -k) * R / static_cast<double>(n);
      sum += term;
    }
    return sum / (4.0 * pi);
  }
  return (std::exp(cplx(0.0, -x)) - 1.0) / (4.0 * pi * R);
}

cplx smooth_green_grad_over_r(double k, double R)
{
  if (R == 0.0)
  {
    return 0.0;
  }
  const double x = k * R;
  if (x < 0.1)
  {
    // f'(R) = sum_{n>=2} (-jk)^n (n-1) R^(n-2) / n!
    cplx pw = cplx(0.0, -k) * cplx(0.0, -k);  // (-jk)^n R^(n-2) for n = 2
    double fact = 2.0;
    cplx sum = pw / fact;
    for (int n = 3; n <= 15; n++)
    {
      pw *= cplx(0.0, -k) * R;
      fact *= n;
      sum += pw * static_cast<double>(n - 1) / fact;
    }
    return sum / (4.0 * pi * R);
  }
  const cplx e = std::exp(cplx(0.0, -x));
  const cplx deriv = (cplx(0.0, -x) * e - (e - 1.0)) / (4.0 * pi * R * R);
  return deriv / R;
}

cplx integrate_kernel_pair(KernelKind kind, const AffineField &f_m, const AffineField &f_n,
                           const std::array<Vec3, 3> &tri_m, const std::array<Vec3, 3> &tri_n, double k0,
                           const QuadConfig &config)
{
  if (kind != KernelKind::G && kind != KernelKind::GradGCross)
  {
    fail(ErrorCode::InvalidArgument, "integrate_kernel_pair: unknown kernel kind");
  }
  if (kind == KernelKind::GradGCross && !f_n.rotate_by.isZero())
  {
    fail(ErrorCode::InvalidArgument, "integrate_kernel_pair: rotated source fields are not supported for grad G x");
  }
  const detail::TrianglePair pair(tri_m, tri_n, config);
  const TriangleRule &outer = gauss_rule(pair.near ? config.near_observer_degree : config.far_observer_degree);
  const double area_m = 0.5 * (tri_m[1] - tri_m[0]).cross(tri_m[2] - tri_m[0]).norm();
  const Vec3 n_hat = f_n.rotate_by;
  cplx acc = 0.0;
  for (std::size_t q = 0; q < outer.size(); q++)
  {
    const Vec3 r = outer.map(tri_m, q);
    const auto inner = detail::inner_integrals(pair, r, k0);
    const Vec3 fm = f_m(r);
    CVec3 field;
    if (kind == KernelKind::G)
    {
      field = f_n.coef * (inner.g1 - inner.g0 * f_n.origin.cast<cplx>());
      if (!n_hat.isZero())
      {
        field = ccross(n_hat.cast<cplx>(), field);
      }
    }
    else
    {
      field = f_n.coef * ccross(inner.h, (r - f_n.origin).cast<cplx>());
    }
    acc += outer.weights[q] * area_m * fm.cast<cplx>().dot(field);
  }
  return acc;
}

}  // namespace wmfie
