// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_MESH_HPP
#define WMFIE_MESH_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "wmfie/types.hpp"

namespace wmfie
{

// A unique mesh edge; vertex indices are stored in increasing order and the
// two adjacent triangles in increasing order.
struct Edge
{
  std::array<int, 2> v;
  std::array<int, 2> tri;
};

struct MeshStats
{
  double mean_edge_length = 0.0;
  double max_edge_length = 0.0;
  double min_edge_length = 0.0;
  double total_area = 0.0;
  double volume = 0.0;
  std::size_t triangle_count = 0;
  std::size_t edge_count = 0;
  std::size_t vertex_count = 0;
};

/// Closed, manifold, outward-oriented triangle surface. Instances are immutable
/// once built; the only way to obtain one is through TriangleMesh::build, which
/// validates topology and repairs a consistent-but-inward or mixed winding.
class TriangleMesh
{
public:
  using Triangle = std::array<int, 3>;

  static TriangleMesh build(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

  const std::vector<Vec3> &vertices() const { return vertices_; }
  const std::vector<Triangle> &triangles() const { return triangles_; }
  const std::vector<Edge> &edges() const { return edges_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const Vec3 &vertex(int i) const { return vertices_[i]; }
  const Triangle &triangle(int t) const { return triangles_[t]; }
  // Edge index opposite to local vertex k of triangle t.
  int triangle_edge(int t, int k) const { return tri_edges_[t][k]; }

  const Vec3 &normal(int t) const { return normals_[t]; }
  double area(int t) const { return areas_[t]; }
  const Vec3 &centroid(int t) const { return centroids_[t]; }
  double max_edge(int t) const { return max_edges_[t]; }
  double edge_length(int e) const;

  std::array<Vec3, 3> corners(int t) const
  {
    const auto &tri = triangles_[t];
    return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
  }

  // Signed volume enclosed by the surface (positive for outward normals).
  double signed_volume() const;
  // Radius of the sphere with the same enclosed volume.
  double volume_equivalent_radius() const;

private:
  TriangleMesh() = default;
  void orient_and_index();

  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<Vec3> normals_;
  std::vector<Vec3> centroids_;
  std::vector<double> areas_;
  std::vector<double> max_edges_;
};

MeshStats mesh_stats(const TriangleMesh &mesh);

enum class MeshFormat
{
  GmshAscii,
  Off
};

TriangleMesh load_mesh(const std::filesystem::path &path, MeshFormat format);
TriangleMesh parse_off(std::istream &in);
TriangleMesh parse_gmsh(std::istream &in);
void write_off(const TriangleMesh &mesh, std::ostream &out);

struct GeneratorLimits
{
  std::size_t max_triangles = 200000;
};

// Icosahedron split into nu^2 triangles per face, nu the smallest frequency
// whose mean edge length is <= target_edge, projected onto the sphere.
TriangleMesh generate_sphere(double diameter, double target_edge, const GeneratorLimits &limits = {});
TriangleMesh generate_icosphere(double diameter, int frequency);

// Quasi-uniform sphere with an exact RWG count: a Fibonacci point set of
// (unknowns + 6) / 3 vertices and its convex hull. unknowns must be a
// multiple of 3.
TriangleMesh generate_sphere_by_unknowns(double diameter, int unknowns);

enum class CanonicalShape
{
  Cube,
  Pyramid,
  Wedge
};

// Shape parameters, in meters.
//   cube:    {side}
//   pyramid: {base side, height}
//   wedge:   {base width, height, length} - prism over an isosceles triangle,
//            apex edge along the extrusion direction
struct CanonicalDims
{
  std::vector<double> values;
};

TriangleMesh generate_canonical(CanonicalShape shape, const CanonicalDims &dims, double target_edge,
                                const GeneratorLimits &limits = {});

// Structured generator with explicit segment counts. For the cube and pyramid
// every coarse edge is split into `cross` segments; for the wedge the
// cross-section edges use `cross` and the extrusion edges `along`.
TriangleMesh generate_canonical_segments(CanonicalShape shape, const CanonicalDims &dims, int cross,
                                         int along);

}  // namespace wmfie

#endif  // WMFIE_MESH_HPP
