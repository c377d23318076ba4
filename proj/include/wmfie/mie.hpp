// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_MIE_HPP
#define WMFIE_MIE_HPP

#include <vector>

#include "wmfie/operators.hpp"
#include "wmfie/postproc.hpp"

namespace wmfie
{

/// Series solution for a plane wave scattered by a PEC sphere centred at the
/// origin. Coefficients follow the exp(j w t) convention:
///   a_n = psi_n'(ka) / zeta_n'(ka),  b_n = psi_n(ka) / zeta_n(ka)
/// with Riccati-Bessel psi_n = x j_n(x) and zeta_n = x h_n^(2)(x).
struct MieSolution
{
  double radius = 0.0;
  double k0 = 0.0;
  int order = 0;  // truncation L
  std::vector<cplx> a;  // index n = 1..L stored at n - 1
  std::vector<cplx> b;
};

int default_mie_order(double ka);

// order <= 0 selects ceil(ka) + 15. Throws InvalidArgument when the series
// has not decayed at the requested order.
MieSolution mie_coefficients(double radius, double k0, int order = 0);

// Spherical Bessel j_n and y_n for n = 0..nmax (downward recurrence for j).
void spherical_bessel(int nmax, double x, std::vector<double> &j, std::vector<double> &y);

FarFieldCut mie_far_field(const MieSolution &sol, const PlaneWave &wave, const std::vector<Direction> &directions);

// Scattered E and H at points outside the sphere.
std::vector<NearFieldPoint> mie_near_field(const MieSolution &sol, const PlaneWave &wave,
                                           const std::vector<Vec3> &points);

// Cross sections (m^2) for unit incident amplitude, from the coefficients.
double mie_extinction_cross_section(const MieSolution &sol);
double mie_scattering_cross_section(const MieSolution &sol);

}  // namespace wmfie

#endif  // WMFIE_MIE_HPP
