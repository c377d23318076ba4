// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_POSTPROC_HPP
#define WMFIE_POSTPROC_HPP

#include <vector>

#include "wmfie/formulations.hpp"

namespace wmfie
{

struct Direction
{
  double theta_deg;
  double phi_deg;
};

/// Far-field amplitudes F with E_sca ~ F exp(-j k r) / r, phase reference at
/// the origin. Both polarizations are always present.
struct FarFieldCut
{
  std::vector<Direction> directions;
  std::vector<cplx> e_theta;
  std::vector<cplx> e_phi;

  std::size_t size() const { return directions.size(); }
};

// theta from theta_start to theta_stop (inclusive) in `count` samples at fixed phi.
std::vector<Direction> theta_cut(double phi_deg, int count, double theta_start = 0.0, double theta_stop = 180.0);

Vec3 direction_vector(const Direction &d);
Vec3 theta_hat(const Direction &d);
Vec3 phi_hat(const Direction &d);

// Electric coefficients i (A) and optional magnetic coefficients v (V, empty
// for none) on the same RWG space.
FarFieldCut far_field(const RwgSpace &space, const CVector &i, const CVector &v, double k0,
                      const std::vector<Direction> &directions);

struct RcsValues
{
  std::vector<double> sigma_theta_dbsm;
  std::vector<double> sigma_phi_dbsm;
};

// sigma = 4 pi |F|^2 / |E0|^2 in dBsm; zero fields map to the -200 dB floor.
RcsValues bistatic_rcs(const FarFieldCut &cut, double e0_magnitude);
inline constexpr double kDbFloor = -200.0;
double to_db20(double ratio);

struct NearFieldPoint
{
  CVec3 e;
  CVec3 h;
};

// Scattered fields radiated by the surface currents at points off the
// surface. Throws InvalidArgument when a point lies within 1e-6 mean edge
// lengths of the surface.
std::vector<NearFieldPoint> near_field(const RwgSpace &space, const CVector &i, const CVector &v, double k0,
                                       const std::vector<Vec3> &points);

double distance_to_surface(const TriangleMesh &mesh, const Vec3 &p);

struct ErrorReport
{
  std::vector<double> eps_theta;  // linear, per direction
  std::vector<double> eps_phi;
  double eps_max_db = kDbFloor;
  double eps_avg_db = kDbFloor;
  double eps_max = 0.0;
  double eps_avg = 0.0;
};

// eps = |F_ref - F| / max over all directions and both polarizations of |F_ref|.
ErrorReport relative_error_cut(const FarFieldCut &candidate, const FarFieldCut &reference);

// ||i - i_ref||^2 / ||i_ref||^2
double current_error(const CVector &candidate, const CVector &reference);

// Mean over points of |E - E_ref|, normalized by the largest |E_ref|; in dB.
double near_field_error_db(const std::vector<NearFieldPoint> &candidate, const std::vector<NearFieldPoint> &reference);

struct LfSample
{
  double frequency;
  int iterations;  // 0 for direct solves
  double re_i, im_i, re_d, im_d;
};

enum class LinearSolver
{
  Gmres,
  Direct
};

struct LfSweepOptions
{
  LinearSolver solver = LinearSolver::Direct;
  double tol = 1e-10;
  int maxit = 2000;
  QuadConfig quad;
};

// Solve the formulation at each frequency and report the norms of the real
// and imaginary parts of the coefficients and of their per-triangle divergence.
std::vector<LfSample> lf_divergence_sweep(const RwgSpace &space, const FormulationConfig &config,
                                          const PlaneWave &wave, const std::vector<double> &frequencies,
                                          const LfSweepOptions &options = {});

}  // namespace wmfie

#endif  // WMFIE_POSTPROC_HPP
