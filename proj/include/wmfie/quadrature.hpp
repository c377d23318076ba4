// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_QUADRATURE_HPP
#define WMFIE_QUADRATURE_HPP

#include <array>
#include <functional>
#include <vector>

#include "wmfie/types.hpp"

namespace wmfie
{

/// Symmetric triangle rule in barycentric coordinates. Weights sum to one, so
/// an integral over a triangle of area A is A * sum(w_i f(p_i)).
struct TriangleRule
{
  int degree;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  Vec3 map(const std::array<Vec3, 3> &tri, std::size_t i) const
  {
    const auto &b = points[i];
    return b[0] * tri[0] + b[1] * tri[1] + b[2] * tri[2];
  }
};

// Supported degrees: 1, 2, 3, 5, 7. All rules have positive weights and
// interior points; the degree-3 request returns the 6-point rule, which is
// exact through degree 4.
const TriangleRule &gauss_rule(int degree);

// Closed-form potentials of a flat source triangle seen from an arbitrary
// observation point r (static kernel 1/R, no 1/(4 pi) factor):
//   inv_r   = int_T 1/R ds'
//   r_inv_r = int_T r' / R ds'
//   grad    = grad_r int_T 1/R ds'  (principal value: the solid-angle term is
//             dropped when r lies in the source plane)
struct StaticPotentials
{
  double inv_r;
  Vec3 r_inv_r;
  Vec3 grad;
};

StaticPotentials static_potentials(const std::array<Vec3, 3> &tri, const Vec3 &r);

// int_Tobs int_Tsrc 1/(4 pi R) ds' ds. Inner integral analytic; identical
// triangles use the exact double-integral closed form, other pairs an outer
// Gauss rule of the given degree.
double integrate_static_singular(const std::array<Vec3, 3> &observer, const std::array<Vec3, 3> &source,
                                 int outer_degree = 7);

struct QuadConfig
{
  int far_observer_degree = 3;
  int far_source_degree = 3;
  int near_observer_degree = 7;
  int near_source_degree = 7;
  // Pairs closer than near_factor * (largest edge of the two triangles),
  // measured between centroids, take the singularity-extraction path.
  double near_factor = 3.0;
};

// Basis evaluator on one triangle: f(r) = coef * (r - origin). RWG functions
// and their rotated counterparts are expressed through this affine form.
struct AffineField
{
  double coef;
  Vec3 origin;
  Vec3 rotate_by;  // zero: no rotation; otherwise alpha = rotate_by x f
  Vec3 operator()(const Vec3 &r) const
  {
    Vec3 f = coef * (r - origin);
    return rotate_by.isZero() ? f : Vec3(rotate_by.cross(f));
  }
};

enum class KernelKind
{
  G,
  GradGCross
};

// Pair integral for two affine fields:
//   G:          int int f_m(r) . G(r,r') f_n(r') ds' ds
//   GradGCross: int int f_m(r) . (grad G(r,r') x f_n(r')) ds' ds
// with G = exp(-j k R) / (4 pi R). Near pairs use static extraction; for
// GradGCross the self-plane contribution is the principal value.
cplx integrate_kernel_pair(KernelKind kind, const AffineField &f_m, const AffineField &f_n,
                           const std::array<Vec3, 3> &tri_m, const std::array<Vec3, 3> &tri_n, double k0,
                           const QuadConfig &config = {});

// Smooth remainder kernels (dynamic minus static), stable for small k R.
//   value: (exp(-jkR) - 1) / (4 pi R), limit -jk/(4 pi)
//   dvalue_dR divided by R: multiply by (r - r') for the gradient
cplx smooth_green(double k, double R);
cplx smooth_green_grad_over_r(double k, double R);

// Full kernel helpers.
inline cplx green(double k, double R) { return std::exp(cplx(0.0, -k * R)) / (4.0 * pi * R); }
// grad_r G = green_grad_over_r * (r - r')
inline cplx green_grad_over_r(double k, double R)
{
  return -cplx(1.0, k * R) * std::exp(cplx(0.0, -k * R)) / (4.0 * pi * R * R * R);
}

}  // namespace wmfie

#endif  // WMFIE_QUADRATURE_HPP
