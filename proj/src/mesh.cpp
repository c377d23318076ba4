// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace wmfie
{

namespace
{

constexpr double kMinArea = 1e-12;

struct HalfEdgeUse
{
  int tri;
  int from;  // directed edge from -> to as traversed by the triangle
  int to;
};

}  // namespace

TriangleMesh TriangleMesh::build(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
{
  if (triangles.empty())
  {
    fail(ErrorCode::Topology, "mesh has no triangles");
  }
  const int nv = static_cast<int>(vertices.size());
  for (std::size_t t = 0; t < triangles.size(); t++)
  {
    const auto &tri = triangles[t];
    for (int k = 0; k < 3; k++)
    {
      if (tri[k] < 0 || tri[k] >= nv)
      {
        fail(ErrorCode::Topology, "triangle " + std::to_string(t) + " references vertex " +
                                      std::to_string(tri[k]) + " out of range");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
    {
      fail(ErrorCode::Topology, "triangle " + std::to_string(t) + " repeats a vertex");
    }
  }
  TriangleMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  mesh.orient_and_index();
  return mesh;
}

void TriangleMesh::orient_and_index()
{
  const int nt = static_cast<int>(triangles_.size());

  // Edge table keyed by the sorted vertex pair.
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (int t = 0; t < nt; t++)
  {
    for (int k = 0; k < 3; k++)
    {
      int a = triangles_[t][(k + 1) % 3], b = triangles_[t][(k + 2) % 3];
      edge_tris[{std::min(a, b), std::max(a, b)}].push_back(t);
    }
  }
  for (const auto &[key, tris] : edge_tris)
  {
    if (tris.size() != 2)
    {
      std::ostringstream msg;
      msg << "non-manifold edge (" << key.first << ", " << key.second << ") shared by "
          << tris.size() << " triangle(s); a closed manifold surface needs exactly 2";
      fail(ErrorCode::Topology, msg.str());
    }
  }

  // Breadth-first winding propagation: neighbors must traverse a shared edge
  // in opposite directions.
  auto traverses = [&](int t, int a, int b)
  {
    const auto &tri = triangles_[t];
    for (int k = 0; k < 3; k++)
    {
      if (tri[k] == a && tri[(k + 1) % 3] == b)
      {
        return true;
      }
    }
    return false;
  };
  std::vector<int> component(nt, -1);
  int ncomp = 0;
  for (int seed = 0; seed < nt; seed++)
  {
    if (component[seed] >= 0)
    {
      continue;
    }
    std::queue<int> queue;
    queue.push(seed);
    component[seed] = ncomp;
    while (!queue.empty())
    {
      int t = queue.front();
      queue.pop();
      for (int k = 0; k < 3; k++)
      {
        int a = triangles_[t][k], b = triangles_[t][(k + 1) % 3];
        const auto &tris = edge_tris[{std::min(a, b), std::max(a, b)}];
        int u = tris[0] == t ? tris[1] : tris[0];
        if (component[u] < 0)
        {
          if (traverses(u, a, b))
          {
            std::swap(triangles_[u][1], triangles_[u][2]);
          }
          component[u] = ncomp;
          queue.push(u);
        }
        else if (traverses(u, a, b))
        {
          fail(ErrorCode::Topology,
               "surface is not orientable: triangles " + std::to_string(t) + " and " +
                   std::to_string(u) + " cannot be given a consistent winding");
        }
      }
    }
    ncomp++;
  }

  // Outward orientation per connected component.
  std::vector<double> comp_volume(ncomp, 0.0);
  for (int t = 0; t < nt; t++)
  {
    const auto &tri = triangles_[t];
    comp_volume[component[t]] +=
        vertices_[tri[0]].dot(vertices_[tri[1]].cross(vertices_[tri[2]])) / 6.0;
  }
  for (int t = 0; t < nt; t++)
  {
    if (comp_volume[component[t]] < 0.0)
    {
      std::swap(triangles_[t][1], triangles_[t][2]);
    }
  }
  for (int c = 0; c < ncomp; c++)
  {
    if (std::abs(comp_volume[c]) == 0.0)
    {
      fail(ErrorCode::Topology, "closed component encloses zero volume; orientation is undefined");
    }
  }

  normals_.resize(nt);
  centroids_.resize(nt);
  areas_.resize(nt);
  max_edges_.resize(nt);
  for (int t = 0; t < nt; t++)
  {
    const auto c = corners(t);
    Vec3 cr = (c[1] - c[0]).cross(c[2] - c[0]);
    double twice_area = cr.norm();
    areas_[t] = 0.5 * twice_area;
    if (areas_[t] <= kMinArea)
    {
      fail(ErrorCode::Topology, "degenerate triangle " + std::to_string(t) + " with area " +
                                    std::to_string(areas_[t]));
    }
    normals_[t] = cr / twice_area;
    centroids_[t] = (c[0] + c[1] + c[2]) / 3.0;
    max_edges_[t] = std::max({(c[1] - c[0]).norm(), (c[2] - c[1]).norm(), (c[0] - c[2]).norm()});
  }

  // Edges in sorted vertex-pair order; adjacent triangles in increasing order.
  edges_.clear();
  edges_.reserve(edge_tris.size());
  std::map<std::pair<int, int>, int> edge_index;
  for (const auto &[key, tris] : edge_tris)
  {
    Edge e;
    e.v = {key.first, key.second};
    e.tri = {std::min(tris[0], tris[1]), std::max(tris[0], tris[1])};
    edge_index[key] = static_cast<int>(edges_.size());
    edges_.push_back(e);
  }
  tri_edges_.assign(nt, {-1, -1, -1});
  for (int t = 0; t < nt; t++)
  {
    for (int k = 0; k < 3; k++)
    {
      int a = triangles_[t][(k + 1) % 3], b = triangles_[t][(k + 2) % 3];
      tri_edges_[t][k] = edge_index.at({std::min(a, b), std::max(a, b)});
    }
  }
}

double TriangleMesh::edge_length(int e) const
{
  return (vertices_[edges_[e].v[0]] - vertices_[edges_[e].v[1]]).norm();
}

double TriangleMesh::signed_volume() const
{
  double vol = 0.0;
  for (const auto &tri : triangles_)
  {
    vol += vertices_[tri[0]].dot(vertices_[tri[1]].cross(vertices_[tri[2]])) / 6.0;
  }
  return vol;
}

double TriangleMesh::volume_equivalent_radius() const
{
  return std::cbrt(3.0 * signed_volume() / (4.0 * pi));
}

MeshStats mesh_stats(const TriangleMesh &mesh)
{
  MeshStats s;
  s.triangle_count = mesh.num_triangles();
  s.edge_count = mesh.num_edges();
  s.vertex_count = mesh.num_vertices();
  double sum = 0.0;
  s.min_edge_length = mesh.num_edges() ? mesh.edge_length(0) : 0.0;
  for (std::size_t e = 0; e < mesh.num_edges(); e++)
  {
    double l = mesh.edge_length(static_cast<int>(e));
    sum += l;
    s.max_edge_length = std::max(s.max_edge_length, l);
    s.min_edge_length = std::min(s.min_edge_length, l);
  }
  s.mean_edge_length = mesh.num_edges() ? sum / static_cast<double>(mesh.num_edges()) : 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); t++)
  {
    s.total_area += mesh.area(static_cast<int>(t));
  }
  s.volume = mesh.signed_volume();
  return s;
}

}  // namespace wmfie
