// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "wmfie/mesh.hpp"

namespace wmfie
{

namespace
{

// Conforming structured subdivision of a coarse polyhedron made of triangles
// and quads. Points on a coarse edge are always computed from the lower-index
// endpoint so that neighboring faces produce bit-identical coordinates.
class StructuredBuilder
{
public:
  explicit StructuredBuilder(std::vector<Vec3> coarse) : coarse_(std::move(coarse))
  {
    for (std::size_t i = 0; i < coarse_.size(); i++)
    {
      ids_[{static_cast<int>(i), -1, -1, 0}] = add(coarse_[i]);
    }
  }

  void set_segments(int a, int b, int n) { segments_[{std::min(a, b), std::max(a, b)}] = n; }

  int segments(int a, int b) const
  {
    auto it = segments_.find({std::min(a, b), std::max(a, b)});
    if (it == segments_.end())
    {
      fail(ErrorCode::Internal, "structured mesh: missing segment count for coarse edge");
    }
    return it->second;
  }

  // Triangle face, all three edges must carry the same count.
  void add_triangle(int a, int b, int c)
  {
    const int nu = segments(a, b);
    if (segments(b, c) != nu || segments(a, c) != nu)
    {
      fail(ErrorCode::Internal, "structured mesh: triangle face needs equal segment counts");
    }
    const int face = face_count_++;
    auto point = [&](int i, int k) -> int
    {
      if (k == 0)
      {
        return edge_point(a, b, i, nu);
      }
      if (i == 0)
      {
        return edge_point(a, c, k, nu);
      }
      if (i + k == nu)
      {
        return edge_point(b, c, k, nu);
      }
      const double s = static_cast<double>(i) / nu, t = static_cast<double>(k) / nu;
      return interior(face, i, k, coarse_[a] + s * (coarse_[b] - coarse_[a]) + t * (coarse_[c] - coarse_[a]));
    };
    for (int i = 0; i < nu; i++)
    {
      for (int k = 0; i + k < nu; k++)
      {
        tris_.push_back({point(i, k), point(i + 1, k), point(i, k + 1)});
        if (i + k < nu - 1)
        {
          tris_.push_back({point(i + 1, k), point(i + 1, k + 1), point(i, k + 1)});
        }
      }
    }
  }

  // Planar quad a-b-c-d; a-b and d-c share one count, a-d and b-c the other.
  void add_quad(int a, int b, int c, int d)
  {
    const int nu = segments(a, b), nv = segments(a, d);
    if (segments(d, c) != nu || segments(b, c) != nv)
    {
      fail(ErrorCode::Internal, "structured mesh: quad face needs matching opposite counts");
    }
    const int face = face_count_++;
    auto point = [&](int i, int k) -> int
    {
      if (k == 0)
      {
        return edge_point(a, b, i, nu);
      }
      if (k == nv)
      {
        return edge_point(d, c, i, nu);
      }
      if (i == 0)
      {
        return edge_point(a, d, k, nv);
      }
      if (i == nu)
      {
        return edge_point(b, c, k, nv);
      }
      const double s = static_cast<double>(i) / nu, t = static_cast<double>(k) / nv;
      Vec3 p = (1 - s) * (1 - t) * coarse_[a] + s * (1 - t) * coarse_[b] + s * t * coarse_[c] +
               (1 - s) * t * coarse_[d];
      return interior(face, i, k, p);
    };
    for (int i = 0; i < nu; i++)
    {
      for (int k = 0; k < nv; k++)
      {
        tris_.push_back({point(i, k), point(i + 1, k), point(i + 1, k + 1)});
        tris_.push_back({point(i, k), point(i + 1, k + 1), point(i, k + 1)});
      }
    }
  }

  std::vector<Vec3> &points() { return points_; }
  std::vector<TriangleMesh::Triangle> &triangles() { return tris_; }

private:
  using Key = std::tuple<int, int, int, int>;

  int add(const Vec3 &p)
  {
    points_.push_back(p);
    return static_cast<int>(points_.size()) - 1;
  }

  int edge_point(int a, int b, int i, int n)
  {
    if (i == 0)
    {
      return ids_.at({a, -1, -1, 0});
    }
    if (i == n)
    {
      return ids_.at({b, -1, -1, 0});
    }
    int lo = a, hi = b, k = i;
    if (a > b)
    {
      lo = b;
      hi = a;
      k = n - i;
    }
    Key key{-2, lo, hi, k};
    auto it = ids_.find(key);
    if (it != ids_.end())
    {
      return it->second;
    }
    Vec3 p = coarse_[lo] + (static_cast<double>(k) / n) * (coarse_[hi] - coarse_[lo]);
    int id = add(p);
    ids_[key] = id;
    return id;
  }

  int interior(int face, int i, int k, const Vec3 &p)
  {
    Key key{-3 - face, i, k, 0};
    auto it = ids_.find(key);
    if (it != ids_.end())
    {
      return it->second;
    }
    int id = add(p);
    ids_[key] = id;
    return id;
  }

  std::vector<Vec3> coarse_;
  std::vector<Vec3> points_;
  std::vector<TriangleMesh::Triangle> tris_;
  std::map<Key, int> ids_;
  std::map<std::pair<int, int>, int> segments_;
  int face_count_ = 0;
};

void check_positive(const std::vector<double> &v, std::size_t expected, const char *what)
{
  if (v.size() != expected)
  {
    fail(ErrorCode::InvalidArgument, std::string(what) + ": expected " + std::to_string(expected) +
                                         " dimension value(s), got " + std::to_string(v.size()));
  }
  for (double x : v)
  {
    if (!(x > 0.0) || !std::isfinite(x))
    {
      fail(ErrorCode::InvalidArgument, std::string(what) + ": dimensions must be positive");
    }
  }
}

// Incremental convex hull for points in general position (all on the hull).
std::vector<TriangleMesh::Triangle> convex_hull(const std::vector<Vec3> &pts)
{
  const int n = static_cast<int>(pts.size());
  struct Face
  {
    std::array<int, 3> v;
    Vec3 normal;
    double offset;
    bool alive;
  };
  std::vector<Face> faces;
  std::map<std::pair<int, int>, int> directed;  // directed edge -> owning face

  double scale = 0.0;
  for (const auto &p : pts)
  {
    scale = std::max(scale, p.norm());
  }
  const double eps = 1e-12 * scale;

  // Initial tetrahedron: 0, farthest from 0, farthest from that line, farthest from the plane.
  int i0 = 0, i1 = 1, i2 = -1, i3 = -1;
  for (int i = 1; i < n; i++)
  {
    if ((pts[i] - pts[i0]).norm() > (pts[i1] - pts[i0]).norm())
    {
      i1 = i;
    }
  }
  double best = 0.0;
  for (int i = 0; i < n; i++)
  {
    double d = (pts[i] - pts[i0]).cross(pts[i1] - pts[i0]).norm();
    if (d > best)
    {
      best = d;
      i2 = i;
    }
  }
  best = 0.0;
  Vec3 nrm = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]);
  for (int i = 0; i < n; i++)
  {
    double d = std::abs(nrm.dot(pts[i] - pts[i0]));
    if (d > best)
    {
      best = d;
      i3 = i;
    }
  }
  if (i2 < 0 || i3 < 0 || best <= eps * scale * scale)
  {
    fail(ErrorCode::Numeric, "convex hull: point set is degenerate");
  }
  const Vec3 inside = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;

  auto add_face = [&](int a, int b, int c)
  {
    Vec3 nr = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    if (nr.dot(pts[a] - inside) < 0.0)
    {
      std::swap(b, c);
      nr = -nr;
    }
    nr.normalize();
    Face f{{a, b, c}, nr, nr.dot(pts[a]), true};
    int id = static_cast<int>(faces.size());
    faces.push_back(f);
    directed[{f.v[0], f.v[1]}] = id;
    directed[{f.v[1], f.v[2]}] = id;
    directed[{f.v[2], f.v[0]}] = id;
  };
  add_face(i0, i1, i2);
  add_face(i0, i1, i3);
  add_face(i0, i2, i3);
  add_face(i1, i2, i3);

  for (int p = 0; p < n; p++)
  {
    if (p == i0 || p == i1 || p == i2 || p == i3)
    {
      continue;
    }
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(faces.size()); f++)
    {
      if (faces[f].alive && faces[f].normal.dot(pts[p]) - faces[f].offset > eps)
      {
        visible.push_back(f);
      }
    }
    if (visible.empty())
    {
      fail(ErrorCode::Numeric, "convex hull: point " + std::to_string(p) + " is not extreme");
    }
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible)
    {
      faces[f].alive = false;
    }
    for (int f : visible)
    {
      const auto &v = faces[f].v;
      for (int k = 0; k < 3; k++)
      {
        int a = v[k], b = v[(k + 1) % 3];
        int twin = directed.at({b, a});
        if (faces[twin].alive)
        {
          horizon.push_back({a, b});
        }
      }
    }
    for (int f : visible)
    {
      const auto &v = faces[f].v;
      for (int k = 0; k < 3; k++)
      {
        directed.erase({v[k], v[(k + 1) % 3]});
      }
    }
    for (auto [a, b] : horizon)
    {
      Vec3 nr = (pts[b] - pts[a]).cross(pts[p] - pts[a]).normalized();
      Face f{{a, b, p}, nr, nr.dot(pts[a]), true};
      int id = static_cast<int>(faces.size());
      faces.push_back(f);
      directed[{a, b}] = id;
      directed[{b, p}] = id;
      directed[{p, a}] = id;
    }
  }
  std::vector<TriangleMesh::Triangle> out;
  for (const auto &f : faces)
  {
    if (f.alive)
    {
      out.push_back(f.v);
    }
  }
  return out;
}

}  // namespace

TriangleMesh generate_icosphere(double diameter, int frequency)
{
  if (!(diameter > 0.0) || frequency < 1)
  {
    fail(ErrorCode::InvalidArgument, "icosphere: diameter must be positive and frequency >= 1");
  }
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> ico = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                           {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                           {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                            {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                            {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                            {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  StructuredBuilder builder(ico);
  for (const auto &f : faces)
  {
    for (int k = 0; k < 3; k++)
    {
      builder.set_segments(f[k], f[(k + 1) % 3], frequency);
    }
  }
  for (const auto &f : faces)
  {
    builder.add_triangle(f[0], f[1], f[2]);
  }
  const double radius = 0.5 * diameter;
  for (auto &p : builder.points())
  {
    p *= radius / p.norm();
  }
  return TriangleMesh::build(std::move(builder.points()), std::move(builder.triangles()));
}

TriangleMesh generate_sphere(double diameter, double target_edge, const GeneratorLimits &limits)
{
  if (!(diameter > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "sphere: diameter must be positive");
  }
  if (!(target_edge > 0.0) || target_edge >= diameter)
  {
    fail(ErrorCode::InvalidArgument, "sphere: target edge must satisfy 0 < target_edge < diameter");
  }
  for (int nu = 1;; nu++)
  {
    if (20u * static_cast<std::size_t>(nu) * nu > limits.max_triangles)
    {
      fail(ErrorCode::InvalidArgument,
           "sphere: target edge " + std::to_string(target_edge) + " m needs more than " +
               std::to_string(limits.max_triangles) + " triangles");
    }
    auto mesh = generate_icosphere(diameter, nu);
    if (mesh_stats(mesh).mean_edge_length <= target_edge)
    {
      return mesh;
    }
  }
}

TriangleMesh generate_sphere_by_unknowns(double diameter, int unknowns)
{
  if (!(diameter > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "sphere: diameter must be positive");
  }
  if (unknowns < 6 || unknowns % 3 != 0)
  {
    fail(ErrorCode::InvalidArgument,
         "sphere: unknown count must be a multiple of 3 and at least 6 (edges = 3V - 6)");
  }
  const int nv = (unknowns + 6) / 3;
  const double radius = 0.5 * diameter;
  const double golden = pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> pts(nv);
  for (int i = 0; i < nv; i++)
  {
    double z = 1.0 - (2.0 * i + 1.0) / nv;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double ang = golden * i;
    pts[i] = radius * Vec3(r * std::cos(ang), r * std::sin(ang), z);
  }
  auto tris = convex_hull(pts);
  auto mesh = TriangleMesh::build(std::move(pts), std::move(tris));
  if (static_cast<int>(mesh.num_edges()) != unknowns)
  {
    fail(ErrorCode::Numeric, "sphere: hull produced " + std::to_string(mesh.num_edges()) +
                                 " edges instead of " + std::to_string(unknowns));
  }
  return mesh;
}

TriangleMesh generate_canonical_segments(CanonicalShape shape, const CanonicalDims &dims, int cross,
                                         int along)
{
  if (cross < 1 || along < 1)
  {
    fail(ErrorCode::InvalidArgument, "structured mesh: segment counts must be >= 1");
  }
  switch (shape)
  {
    case CanonicalShape::Cube:
    {
      check_positive(dims.values, 1, "cube");
      const double h = 0.5 * dims.values[0];
      std::vector<Vec3> c = {{-h, -h, -h}, {h, -h, -h}, {h, h, -h}, {-h, h, -h},
                             {-h, -h, h},  {h, -h, h},  {h, h, h},  {-h, h, h}};
      StructuredBuilder b(c);
      const int quads[6][4] = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                               {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
      for (const auto &q : quads)
      {
        for (int k = 0; k < 4; k++)
        {
          b.set_segments(q[k], q[(k + 1) % 4], cross);
        }
      }
      for (const auto &q : quads)
      {
        b.add_quad(q[0], q[1], q[2], q[3]);
      }
      return TriangleMesh::build(std::move(b.points()), std::move(b.triangles()));
    }
    case CanonicalShape::Pyramid:
    {
      check_positive(dims.values, 2, "pyramid");
      const double a = 0.5 * dims.values[0], h = dims.values[1];
      const double z0 = -0.25 * h;  // centroid of the solid at the origin
      std::vector<Vec3> c = {{-a, -a, z0}, {a, -a, z0}, {a, a, z0}, {-a, a, z0}, {0, 0, z0 + h}};
      StructuredBuilder b(c);
      for (int k = 0; k < 4; k++)
      {
        b.set_segments(k, (k + 1) % 4, cross);
        b.set_segments(k, 4, cross);
      }
      b.add_quad(0, 3, 2, 1);
      for (int k = 0; k < 4; k++)
      {
        b.add_triangle(k, (k + 1) % 4, 4);
      }
      return TriangleMesh::build(std::move(b.points()), std::move(b.triangles()));
    }
    case CanonicalShape::Wedge:
    {
      check_positive(dims.values, 3, "wedge");
      const double w = 0.5 * dims.values[0], h = dims.values[1], l = 0.5 * dims.values[2];
      const double zb = -h / 3.0, za = 2.0 * h / 3.0;  // cross-section centroid at the origin
      std::vector<Vec3> c = {{-w, -l, zb}, {w, -l, zb}, {0, -l, za},
                             {-w, l, zb},  {w, l, zb},  {0, l, za}};
      StructuredBuilder b(c);
      for (int k = 0; k < 3; k++)
      {
        b.set_segments(k, (k + 1) % 3, cross);
        b.set_segments(3 + k, 3 + (k + 1) % 3, cross);
        b.set_segments(k, k + 3, along);
      }
      b.add_triangle(0, 2, 1);
      b.add_triangle(3, 4, 5);
      b.add_quad(0, 1, 4, 3);
      b.add_quad(1, 2, 5, 4);
      b.add_quad(2, 0, 3, 5);
      return TriangleMesh::build(std::move(b.points()), std::move(b.triangles()));
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown canonical shape");
}

TriangleMesh generate_canonical(CanonicalShape shape, const CanonicalDims &dims, double target_edge,
                                const GeneratorLimits &limits)
{
  if (!(target_edge > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "canonical mesh: target edge must be positive");
  }
  // Validate the dimensions once through the coarse mesh.
  (void)generate_canonical_segments(shape, dims, 1, 1);

  auto too_many = [&](std::size_t tris)
  {
    if (tris > limits.max_triangles)
    {
      fail(ErrorCode::InvalidArgument,
           "canonical mesh: target edge " + std::to_string(target_edge) + " m needs more than " +
               std::to_string(limits.max_triangles) + " triangles");
    }
  };

  if (shape != CanonicalShape::Wedge)
  {
    for (int n = 1;; n++)
    {
      std::size_t tris = (shape == CanonicalShape::Cube ? 12u : 6u) * static_cast<std::size_t>(n) * n;
      too_many(tris);
      auto mesh = generate_canonical_segments(shape, dims, n, n);
      if (mesh_stats(mesh).mean_edge_length <= target_edge)
      {
        return mesh;
      }
    }
  }

  // Wedge: pick cross-section and extrusion counts from a common segment
  // length that shrinks until the mean edge meets the target.
  const double w = dims.values[0], h = dims.values[1], len = dims.values[2];
  const double slant = std::hypot(0.5 * w, h);
  const double longest = std::max(w, slant);
  int prev_cross = -1, prev_along = -1;
  for (double seg = 2.0 * std::max(longest, len);; seg *= 0.97)
  {
    int cross = std::max(1, static_cast<int>(std::ceil(longest / seg - 1e-9)));
    int along = std::max(1, static_cast<int>(std::ceil(len / seg - 1e-9)));
    if (cross == prev_cross && along == prev_along)
    {
      continue;
    }
    prev_cross = cross;
    prev_along = along;
    too_many(2u * cross * cross + 6u * static_cast<std::size_t>(cross) * along);
    auto mesh = generate_canonical_segments(shape, dims, cross, along);
    if (mesh_stats(mesh).mean_edge_length <= target_edge)
    {
      return mesh;
    }
  }
}

}  // namespace wmfie
