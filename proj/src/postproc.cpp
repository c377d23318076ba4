// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inner.hpp"

namespace wmfie
{

std::vector<Direction> theta_cut(double phi_deg, int count, double theta_start, double theta_stop)
{
  if (count < 1)
  {
    fail(ErrorCode::InvalidArgument, "theta_cut: count must be positive");
  }
  std::vector<Direction> out(count);
  for (int i = 0; i < count; i++)
  {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out[i] = {theta_start + t * (theta_stop - theta_start), phi_deg};
  }
  return out;
}

Vec3 direction_vector(const Direction &d)
{
  const double t = d.theta_deg * pi / 180.0, p = d.phi_deg * pi / 180.0;
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

Vec3 theta_hat(const Direction &d)
{
  const double t = d.theta_deg * pi / 180.0, p = d.phi_deg * pi / 180.0;
  return {std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), -std::sin(t)};
}

Vec3 phi_hat(const Direction &d)
{
  const double p = d.phi_deg * pi / 180.0;
  return {-std::sin(p), std::cos(p), 0.0};
}

namespace
{

void check_coefficients(const RwgSpace &space, const CVector &i, const CVector &v)
{
  if (i.size() != space.size() || (v.size() != 0 && v.size() != space.size()))
  {
    fail(ErrorCode::InvalidArgument, "coefficient vectors must have length " + std::to_string(space.size()));
  }
}

// Per-triangle current density as an affine field: J(r) = a r + b.
struct TriangleCurrent
{
  cplx a;
  CVec3 b;
  cplx div;  // surface divergence (constant)
};

std::vector<TriangleCurrent> triangle_currents(const RwgSpace &space, const CVector &coef)
{
  const TriangleMesh &mesh = space.mesh();
  std::vector<TriangleCurrent> out(mesh.num_triangles(), {0.0, CVec3::Zero(), 0.0});
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); t++)
  {
    const auto c = mesh.corners(t);
    for (const auto &lb : space.on_triangle(t))
    {
      const cplx w = coef[lb.function] * lb.scale;
      out[t].a += w;
      out[t].b -= w * c[lb.local_vertex].cast<cplx>();
      out[t].div += 2.0 * w;
    }
  }
  return out;
}

}  // namespace

FarFieldCut far_field(const RwgSpace &space, const CVector &i, const CVector &v, double k0,
                      const std::vector<Direction> &directions)
{
  check_coefficients(space, i, v);
  const TriangleMesh &mesh = space.mesh();
  const int nt = static_cast<int>(mesh.num_triangles());
  const auto ji = triangle_currents(space, i);
  const bool magnetic = v.size() != 0;
  const auto jv = magnetic ? triangle_currents(space, v) : std::vector<TriangleCurrent>{};
  const TriangleRule &rule = gauss_rule(7);
  // Quadrature points and weights, shared by all directions.
  std::vector<Vec3> pts;
  std::vector<double> wts;
  std::vector<int> tri;
  pts.reserve(nt * rule.size());
  for (int t = 0; t < nt; t++)
  {
    const auto c = mesh.corners(t);
    for (std::size_t q = 0; q < rule.size(); q++)
    {
      pts.push_back(rule.map(c, q));
      wts.push_back(rule.weights[q] * mesh.area(t));
      tri.push_back(t);
    }
  }
  FarFieldCut cut;
  cut.directions = directions;
  cut.e_theta.resize(directions.size());
  cut.e_phi.resize(directions.size());
  const double z0 = constants::Z0;
#pragma omp parallel for schedule(static)
  for (long d = 0; d < static_cast<long>(directions.size()); d++)
  {
    const Vec3 rhat = direction_vector(directions[d]);
    CVec3 nsum = CVec3::Zero(), lsum = CVec3::Zero();
    for (std::size_t q = 0; q < pts.size(); q++)
    {
      const cplx ph = wts[q] * std::exp(cplx(0.0, k0 * rhat.dot(pts[q])));
      const TriangleCurrent &c = ji[tri[q]];
      nsum += ph * (c.a * pts[q].cast<cplx>() + c.b);
      if (magnetic)
      {
        const TriangleCurrent &m = jv[tri[q]];
        lsum += ph * (m.a * pts[q].cast<cplx>() + m.b);
      }
    }
    const Vec3 th = theta_hat(directions[d]), ph = phi_hat(directions[d]);
    const cplx n_t = th.cast<cplx>().dot(nsum), n_p = ph.cast<cplx>().dot(nsum);
    const cplx l_t = th.cast<cplx>().dot(lsum), l_p = ph.cast<cplx>().dot(lsum);
    const cplx pre = cplx(0.0, -k0) / (4.0 * pi);
    cut.e_theta[d] = pre * (z0 * n_t + l_p);
    cut.e_phi[d] = pre * (z0 * n_p - l_t);
  }
  return cut;
}

double to_db20(double ratio) { return ratio > 0.0 ? std::max(kDbFloor, 20.0 * std::log10(ratio)) : kDbFloor; }

namespace
{
double to_db10(double v) { return v > 0.0 ? std::max(kDbFloor, 10.0 * std::log10(v)) : kDbFloor; }
}  // namespace

RcsValues bistatic_rcs(const FarFieldCut &cut, double e0_magnitude)
{
  if (!(e0_magnitude > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "bistatic_rcs: |E0| must be positive");
  }
  RcsValues out;
  const double e2 = e0_magnitude * e0_magnitude;
  for (std::size_t d = 0; d < cut.size(); d++)
  {
    out.sigma_theta_dbsm.push_back(to_db10(4.0 * pi * std::norm(cut.e_theta[d]) / e2));
    out.sigma_phi_dbsm.push_back(to_db10(4.0 * pi * std::norm(cut.e_phi[d]) / e2));
  }
  return out;
}

namespace
{

// Closest point on a triangle (Ericson, Real-Time Collision Detection 5.1.5).
Vec3 closest_point(const Vec3 &p, const Vec3 &a, const Vec3 &b, const Vec3 &c)
{
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0)
  {
    return a;
  }
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3)
  {
    return b;
  }
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
  {
    return a + (d1 / (d1 - d3)) * ab;
  }
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6)
  {
    return c;
  }
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
  {
    return a + (d2 / (d2 - d6)) * ac;
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
  {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

}  // namespace

double distance_to_surface(const TriangleMesh &mesh, const Vec3 &p)
{
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); t++)
  {
    const auto c = mesh.corners(t);
    best = std::min(best, (p - closest_point(p, c[0], c[1], c[2])).norm());
  }
  return best;
}

std::vector<NearFieldPoint> near_field(const RwgSpace &space, const CVector &i, const CVector &v, double k0,
                                       const std::vector<Vec3> &points)
{
  check_coefficients(space, i, v);
  if (!(k0 > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "near_field: k0 must be positive");
  }
  const TriangleMesh &mesh = space.mesh();
  const double guard = 1e-6 * mesh_stats(mesh).mean_edge_length;
  for (std::size_t p = 0; p < points.size(); p++)
  {
    if (distance_to_surface(mesh, points[p]) <= guard)
    {
      fail(ErrorCode::InvalidArgument, "near_field: point " + std::to_string(p) + " lies on the surface");
    }
  }
  const int nt = static_cast<int>(mesh.num_triangles());
  const auto ji = triangle_currents(space, i);
  const bool magnetic = v.size() != 0;
  const auto jv = magnetic ? triangle_currents(space, v) : std::vector<TriangleCurrent>{};
  const double z0 = constants::Z0;
  QuadConfig qc;
  qc.far_source_degree = 7;
  std::vector<NearFieldPoint> out(points.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long p = 0; p < static_cast<long>(points.size()); p++)
  {
    const Vec3 r = points[p];
    const std::array<Vec3, 3> obs = {r, r, r};
    CVec3 gj = CVec3::Zero(), hdj = CVec3::Zero(), cj = CVec3::Zero();
    CVec3 gm = CVec3::Zero(), hdm = CVec3::Zero(), cm = CVec3::Zero();
    for (int t = 0; t < nt; t++)
    {
      const detail::TrianglePair pair(obs, mesh.corners(t), qc);
      const auto in = detail::inner_integrals(pair, r, k0);
      // int G J = a g1 + b g0; int grad G x J = h x (a r + b)
      const TriangleCurrent &c = ji[t];
      gj += c.a * in.g1 + in.g0 * c.b;
      hdj += c.div * in.h;
      cj += ccross(in.h, c.a * r.cast<cplx>() + c.b);
      if (magnetic)
      {
        const TriangleCurrent &m = jv[t];
        gm += m.a * in.g1 + in.g0 * m.b;
        hdm += m.div * in.h;
        cm += ccross(in.h, m.a * r.cast<cplx>() + m.b);
      }
    }
    const cplx jk(0.0, k0);
    out[p].e = -jk * z0 * (gj + hdj / (k0 * k0)) - cm;
    out[p].h = cj - (jk / z0) * (gm + hdm / (k0 * k0));
  }
  return out;
}

ErrorReport relative_error_cut(const FarFieldCut &candidate, const FarFieldCut &reference)
{
  const std::size_t n = reference.size();
  if (candidate.size() != n || candidate.e_theta.size() != n || candidate.e_phi.size() != n ||
      reference.e_theta.size() != n || reference.e_phi.size() != n)
  {
    fail(ErrorCode::InvalidArgument, "relative_error_cut: direction grids differ in size");
  }
  for (std::size_t d = 0; d < n; d++)
  {
    if (std::abs(candidate.directions[d].theta_deg - reference.directions[d].theta_deg) > 1e-9 ||
        std::abs(candidate.directions[d].phi_deg - reference.directions[d].phi_deg) > 1e-9)
    {
      fail(ErrorCode::InvalidArgument, "relative_error_cut: direction grids differ at sample " + std::to_string(d));
    }
  }
  ErrorReport rep;
  if (n == 0)
  {
    return rep;
  }
  double norm = 0.0;
  for (std::size_t d = 0; d < n; d++)
  {
    norm = std::max({norm, std::abs(reference.e_theta[d]), std::abs(reference.e_phi[d])});
  }
  if (!(norm > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "relative_error_cut: reference field is identically zero");
  }
  double sum = 0.0;
  for (std::size_t d = 0; d < n; d++)
  {
    const double et = std::abs(reference.e_theta[d] - candidate.e_theta[d]) / norm;
    const double ep = std::abs(reference.e_phi[d] - candidate.e_phi[d]) / norm;
    rep.eps_theta.push_back(et);
    rep.eps_phi.push_back(ep);
    rep.eps_max = std::max({rep.eps_max, et, ep});
    sum += et + ep;
  }
  rep.eps_avg = sum / (2.0 * n);
  rep.eps_max_db = to_db20(rep.eps_max);
  rep.eps_avg_db = to_db20(rep.eps_avg);
  return rep;
}

double current_error(const CVector &candidate, const CVector &reference)
{
  if (candidate.size() != reference.size())
  {
    fail(ErrorCode::InvalidArgument, "current_error: vectors differ in length");
  }
  const double r2 = reference.squaredNorm();
  if (!(r2 > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "current_error: reference vector is zero");
  }
  return (candidate - reference).squaredNorm() / r2;
}

double near_field_error_db(const std::vector<NearFieldPoint> &candidate, const std::vector<NearFieldPoint> &reference)
{
  if (candidate.size() != reference.size() || reference.empty())
  {
    fail(ErrorCode::InvalidArgument, "near_field_error_db: point sets differ or are empty");
  }
  double norm = 0.0, sum = 0.0;
  for (const auto &p : reference)
  {
    norm = std::max(norm, p.e.norm());
  }
  if (!(norm > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "near_field_error_db: reference field is zero");
  }
  for (std::size_t k = 0; k < reference.size(); k++)
  {
    sum += (candidate[k].e - reference[k].e).norm();
  }
  return to_db20(sum / (norm * reference.size()));
}

std::vector<LfSample> lf_divergence_sweep(const RwgSpace &space, const FormulationConfig &config,
                                          const PlaneWave &wave, const std::vector<double> &frequencies,
                                          const LfSweepOptions &options)
{
  if (frequencies.size() < 2)
  {
    fail(ErrorCode::InvalidArgument, "lf_divergence_sweep: need at least two frequencies");
  }
  const auto [lo, hi] = std::minmax_element(frequencies.begin(), frequencies.end());
  if (!(*lo > 0.0) || *hi / *lo < 1e3 * (1.0 - 1e-9))
  {
    fail(ErrorCode::InvalidArgument, "lf_divergence_sweep: frequencies must be positive and span at least 3 decades");
  }
  std::vector<LfSample> out;
  for (double f : frequencies)
  {
    const OperatorSet ops = assemble(space, f, assembly_for({config.kind}, options.quad));
    const ExcitationVectors exc = excite_plane_wave(space, wave, f);
    const auto op = make_formulation(ops, exc, config);
    CVector x;
    int iterations = 0;
    if (options.solver == LinearSolver::Direct)
    {
      x = dense_solve(materialize(*op), op->rhs());
    }
    else
    {
      SolveReport rep = gmres(*op, op->rhs(), options.tol, options.maxit);
      if (!rep.converged)
      {
        fail(ErrorCode::NotConverged, "lf_divergence_sweep: GMRES did not converge at " + std::to_string(f) + " Hz");
      }
      x = std::move(rep.solution);
      iterations = rep.iterations;
    }
    const ChargeDiagnostics cd = charge_vector(space, x, 2.0 * pi * f);
    out.push_back({f, iterations, x.real().norm(), x.imag().norm(), cd.d.real().norm(), cd.d.imag().norm()});
  }
  return out;
}

}  // namespace wmfie
