// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/rwg.hpp"

#include <cmath>

namespace wmfie
{

namespace
{

int local_index(const TriangleMesh &mesh, int t, int vertex)
{
  const auto &tri = mesh.triangle(t);
  for (int k = 0; k < 3; k++)
  {
    if (tri[k] == vertex)
    {
      return k;
    }
  }
  return -1;
}

}  // namespace

RwgSpace::RwgSpace(const TriangleMesh &mesh) : mesh_(&mesh)
{
  const int ne = static_cast<int>(mesh.num_edges());
  functions_.reserve(ne);
  per_triangle_.assign(mesh.num_triangles(), {});
  std::vector<int> fill(mesh.num_triangles(), 0);
  for (int e = 0; e < ne; e++)
  {
    const Edge &edge = mesh.edges()[e];
    RwgFunction f;
    f.edge = e;
    f.tri_plus = edge.tri[0];
    f.tri_minus = edge.tri[1];
    f.length = mesh.edge_length(e);
    f.area_plus = mesh.area(f.tri_plus);
    f.area_minus = mesh.area(f.tri_minus);
    f.free_plus = f.free_minus = -1;
    for (int k = 0; k < 3; k++)
    {
      if (mesh.triangle_edge(f.tri_plus, k) == e)
      {
        f.free_plus = mesh.triangle(f.tri_plus)[k];
      }
      if (mesh.triangle_edge(f.tri_minus, k) == e)
      {
        f.free_minus = mesh.triangle(f.tri_minus)[k];
      }
    }
    const int n = static_cast<int>(functions_.size());
    functions_.push_back(f);
    per_triangle_[f.tri_plus][fill[f.tri_plus]++] = {
        n, local_index(mesh, f.tri_plus, f.free_plus), f.length / (2.0 * f.area_plus)};
    per_triangle_[f.tri_minus][fill[f.tri_minus]++] = {
        n, local_index(mesh, f.tri_minus, f.free_minus), -f.length / (2.0 * f.area_minus)};
  }
}

double RwgSpace::divergence(int n, int t) const
{
  const auto &f = functions_[n];
  if (t == f.tri_plus)
  {
    return f.length / f.area_plus;
  }
  if (t == f.tri_minus)
  {
    return -f.length / f.area_minus;
  }
  return 0.0;
}

void RwgSpace::check_point(int t, const Vec3 &p) const
{
  const auto c = mesh_->corners(t);
  const Vec3 &nrm = mesh_->normal(t);
  const double twice_area = 2.0 * mesh_->area(t);
  // Barycentric coordinates of the projection; the off-plane distance is
  // measured relative to the triangle size.
  std::array<double, 3> bary;
  for (int k = 0; k < 3; k++)
  {
    const Vec3 &a = c[(k + 1) % 3];
    const Vec3 &b = c[(k + 2) % 3];
    bary[k] = (b - a).cross(p - a).dot(nrm) / twice_area;
  }
  const double tol = 1e-10;
  const double height = std::abs(nrm.dot(p - c[0])) / std::sqrt(twice_area);
  if (bary[0] < -tol || bary[1] < -tol || bary[2] < -tol || height > tol)
  {
    fail(ErrorCode::InvalidArgument, "RWG evaluation point lies outside triangle " + std::to_string(t));
  }
}

Vec3 RwgSpace::beta(int n, int t, const Vec3 &p) const
{
  const auto &f = functions_[n];
  if (t != f.tri_plus && t != f.tri_minus)
  {
    return Vec3::Zero();
  }
  check_point(t, p);
  if (t == f.tri_plus)
  {
    return f.length / (2.0 * f.area_plus) * (p - mesh_->vertex(f.free_plus));
  }
  return f.length / (2.0 * f.area_minus) * (mesh_->vertex(f.free_minus) - p);
}

Vec3 RwgSpace::alpha(int n, int t, const Vec3 &p) const
{
  return mesh_->normal(t).cross(beta(n, t, p));
}

RwgSpace build_rwg_space(const TriangleMesh &mesh) { return RwgSpace(mesh); }

Vec3 eval_beta(const RwgSpace &space, int n, int tri, const Vec3 &p) { return space.beta(n, tri, p); }

Vec3 eval_alpha(const RwgSpace &space, int n, int tri, const Vec3 &p) { return space.alpha(n, tri, p); }

ChargeDiagnostics charge_vector(const RwgSpace &space, const CVector &coefficients, double omega)
{
  if (coefficients.size() != space.size())
  {
    fail(ErrorCode::InvalidArgument, "charge_vector: expected " + std::to_string(space.size()) +
                                         " coefficients, got " + std::to_string(coefficients.size()));
  }
  if (!(omega > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "charge_vector: omega must be positive");
  }
  const int nt = static_cast<int>(space.mesh().num_triangles());
  ChargeDiagnostics out;
  out.d = CVector::Zero(nt);
  for (int n = 0; n < space.size(); n++)
  {
    const auto &f = space.function(n);
    out.d[f.tri_plus] += coefficients[n] * (f.length / f.area_plus);
    out.d[f.tri_minus] -= coefficients[n] * (f.length / f.area_minus);
  }
  out.rho = (j_unit / omega) * out.d;
  return out;
}

}  // namespace wmfie
