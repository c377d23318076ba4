// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_RWG_HPP
#define WMFIE_RWG_HPP

#include <array>
#include <vector>

#include "wmfie/mesh.hpp"

namespace wmfie
{

// One RWG function on the triangle pair sharing mesh edge `edge`. With the
// classical normalization the function reads
//   beta(r) = +l / (2 A+) (r - free_plus)   on the plus triangle,
//   beta(r) = -l / (2 A-) (r - free_minus)  on the minus triangle,
// so its normal component across the shared edge is 1 and its surface
// divergence is +l/A+ and -l/A- respectively. Coefficients are in amperes.
struct RwgFunction
{
  int edge;
  int tri_plus, tri_minus;
  int free_plus, free_minus;  // vertex indices opposite to the shared edge
  double length;
  double area_plus, area_minus;
};

// A basis function restricted to one triangle: beta = scale * (r - vertex(local)).
struct LocalBasis
{
  int function;
  int local_vertex;  // 0..2 within the triangle
  double scale;      // +-l / (2A)
};

/// RWG space over a closed mesh: one function per edge, in the mesh's sorted
/// edge order, with the lower-index adjacent triangle as the plus side.
class RwgSpace
{
public:
  explicit RwgSpace(const TriangleMesh &mesh);

  const TriangleMesh &mesh() const { return *mesh_; }
  int size() const { return static_cast<int>(functions_.size()); }
  const RwgFunction &function(int n) const { return functions_[n]; }
  const std::array<LocalBasis, 3> &on_triangle(int t) const { return per_triangle_[t]; }

  // Constant surface divergence of function n on triangle t (zero off support).
  double divergence(int n, int t) const;

  Vec3 beta(int n, int t, const Vec3 &p) const;
  Vec3 alpha(int n, int t, const Vec3 &p) const;

private:
  void check_point(int t, const Vec3 &p) const;

  const TriangleMesh *mesh_;
  std::vector<RwgFunction> functions_;
  std::vector<std::array<LocalBasis, 3>> per_triangle_;
};

RwgSpace build_rwg_space(const TriangleMesh &mesh);

Vec3 eval_beta(const RwgSpace &space, int n, int tri, const Vec3 &p);
Vec3 eval_alpha(const RwgSpace &space, int n, int tri, const Vec3 &p);

struct ChargeDiagnostics
{
  CVector d;    // per-triangle surface divergence of the current (A/m^2)
  CVector rho;  // per-triangle surface charge (C/m^2), rho = (j / omega) d
};

ChargeDiagnostics charge_vector(const RwgSpace &space, const CVector &coefficients, double omega);

}  // namespace wmfie

#endif  // WMFIE_RWG_HPP
