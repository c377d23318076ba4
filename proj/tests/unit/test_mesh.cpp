// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "doctest.h"
#include "wmfie/mesh.hpp"

using namespace wmfie;

namespace
{

TriangleMesh tetrahedron(bool flip)
{
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<TriangleMesh::Triangle> t = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  if (flip)
  {
    for (auto &tri : t)
      std::swap(tri[1], tri[2]);
  }
  return TriangleMesh::build(v, t);
}

}  // namespace

TEST_CASE("icosphere counts follow the subdivision")
{
  for (int nu : {1, 2, 5})
  {
    const TriangleMesh m = generate_icosphere(2.0, nu);
    CHECK(m.num_triangles() == 20u * nu * nu);
    CHECK(m.num_edges() == 30u * nu * nu);
    CHECK(m.num_vertices() - m.num_edges() + m.num_triangles() == 2u);
    for (const auto &p : m.vertices())
      CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("meshes are outward oriented and close to the sphere volume")
{
  const TriangleMesh m = generate_icosphere(1.0, 8);
  CHECK(m.signed_volume() > 0.0);
  CHECK(m.volume_equivalent_radius() == doctest::Approx(0.5).epsilon(5e-3));
  CHECK(m.volume_equivalent_radius() < 0.5);
  for (std::size_t t = 0; t < m.num_triangles(); t++)
    CHECK(m.normal(static_cast<int>(t)).dot(m.centroid(static_cast<int>(t))) > 0.0);
}

TEST_CASE("inward winding is repaired")
{
  const TriangleMesh a = tetrahedron(false), b = tetrahedron(true);
  CHECK(a.signed_volume() == doctest::Approx(1.0 / 6.0));
  CHECK(b.signed_volume() == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("open or non-manifold surfaces are rejected")
{
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<TriangleMesh::Triangle> open = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}};
  CHECK_THROWS_AS(TriangleMesh::build(v, open), Error);
  std::vector<TriangleMesh::Triangle> degenerate = {{0, 0, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  CHECK_THROWS_AS(TriangleMesh::build(v, degenerate), Error);
}

TEST_CASE("sphere by unknowns hits the requested count")
{
  for (int n : {126, 300, 999})
  {
    const TriangleMesh m = generate_sphere_by_unknowns(1.0, n);
    CHECK(m.num_edges() == static_cast<std::size_t>(n));
  }
  CHECK_THROWS(generate_sphere_by_unknowns(1.0, 100));
}

TEST_CASE("generate_sphere meets the edge target")
{
  const TriangleMesh m = generate_sphere(1.0, 0.1);
  CHECK(mesh_stats(m).mean_edge_length <= 0.1);
}

TEST_CASE("canonical shapes have their analytic volumes")
{
  const TriangleMesh cube = generate_canonical_segments(CanonicalShape::Cube, {{2.0}}, 3, 3);
  CHECK(cube.signed_volume() == doctest::Approx(8.0));
  CHECK(cube.num_edges() == 3u * 6u * 9u);
  const TriangleMesh pyr = generate_canonical_segments(CanonicalShape::Pyramid, {{1.0, 1.5}}, 4, 4);
  CHECK(pyr.signed_volume() == doctest::Approx(0.5));
  const TriangleMesh wedge = generate_canonical_segments(CanonicalShape::Wedge, {{0.4, 1.0, 0.36}}, 2, 5);
  CHECK(wedge.signed_volume() == doctest::Approx(0.5 * 0.4 * 1.0 * 0.36));
  const TriangleMesh g = generate_canonical(CanonicalShape::Cube, {{1.0}}, 0.2);
  CHECK(mesh_stats(g).mean_edge_length <= 0.2);
}

TEST_CASE("OFF round trip preserves the surface")
{
  const TriangleMesh m = generate_icosphere(1.0, 3);
  std::stringstream s;
  write_off(m, s);
  const TriangleMesh r = parse_off(s);
  CHECK(r.num_triangles() == m.num_triangles());
  CHECK(r.signed_volume() == doctest::Approx(m.signed_volume()).epsilon(1e-12));
}

TEST_CASE("malformed OFF and Gmsh input is a parse error")
{
  std::stringstream bad("OFF\n4 4 0\n0 0 0\n1 0 0\n");
  CHECK_THROWS_AS(parse_off(bad), Error);
  std::stringstream gmsh("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n2\n1 0 0 0\n");
  CHECK_THROWS_AS(parse_gmsh(gmsh), Error);
}

TEST_CASE("Gmsh ASCII 2 surface triangles are read")
{
  std::stringstream s("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n4\n1 0 0 0\n2 1 0 0\n3 0 1 0\n4 0 0 1\n"
                      "$EndNodes\n$Elements\n5\n1 15 2 0 1 1\n2 2 2 0 1 1 3 2\n3 2 2 0 1 1 2 4\n4 2 2 0 1 1 4 3\n"
                      "5 2 2 0 1 2 3 4\n$EndElements\n");
  const TriangleMesh m = parse_gmsh(s);
  CHECK(m.num_triangles() == 4u);
  CHECK(m.signed_volume() == doctest::Approx(1.0 / 6.0));
}
