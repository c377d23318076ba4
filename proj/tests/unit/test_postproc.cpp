// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "wmfie/formulations.hpp"
#include "wmfie/mie.hpp"
#include "wmfie/postproc.hpp"

using namespace wmfie;

TEST_CASE("theta cuts and unit vectors")
{
  const auto cut = theta_cut(90.0, 181);
  CHECK(cut.size() == 181u);
  CHECK(cut.front().theta_deg == 0.0);
  CHECK(cut.back().theta_deg == 180.0);
  for (const auto &d : {Direction{30.0, 40.0}, Direction{120.0, 250.0}})
  {
    const Vec3 r = direction_vector(d), t = theta_hat(d), p = phi_hat(d);
    CHECK(r.cross(t).dot(p) == doctest::Approx(1.0));
    CHECK(std::abs(r.dot(t)) < 1e-15);
  }
}

TEST_CASE("error metric")
{
  FarFieldCut a;
  a.directions = theta_cut(0.0, 3);
  a.e_theta = {1.0, 2.0, 4.0};
  a.e_phi = {0.0, 0.0, 0.0};
  const ErrorReport same = relative_error_cut(a, a);
  CHECK(same.eps_max_db == kDbFloor);
  FarFieldCut b = a;
  b.e_theta[0] += 0.04;
  const ErrorReport r = relative_error_cut(b, a);
  CHECK(r.eps_max == doctest::Approx(0.01));
  CHECK(r.eps_max_db == doctest::Approx(-40.0));
  CHECK(r.eps_avg == doctest::Approx(0.01 / 6.0));
  CHECK(to_db20(0.0) == kDbFloor);
  FarFieldCut c = a;
  c.directions.pop_back();
  c.e_theta.pop_back();
  c.e_phi.pop_back();
  CHECK_THROWS_AS(relative_error_cut(c, a), Error);
  CHECK(current_error(CVector::Ones(4) * 1.1, CVector::Ones(4)) == doctest::Approx(0.01));
  CHECK(current_error(CVector::Ones(4) * 2.0, CVector::Ones(4)) == doctest::Approx(1.0));
}

TEST_CASE("bistatic RCS of a unit far field")
{
  FarFieldCut a;
  a.directions = {{0.0, 0.0}};
  a.e_theta = {cplx(0.0, 1.0)};
  a.e_phi = {0.0};
  const RcsValues r = bistatic_rcs(a, 1.0);
  CHECK(r.sigma_theta_dbsm[0] == doctest::Approx(10.0 * std::log10(4.0 * pi)));
  CHECK(r.sigma_phi_dbsm[0] == kDbFloor);
}

TEST_CASE("EFIE far field of a sphere converges to Mie")
{
  const double f = 150e6;
  const TriangleMesh m = generate_icosphere(1.0, 4);
  RwgSpace space(m);
  AssemblyOptions ao;
  ao.mfie = false;
  const OperatorSet ops = assemble(space, f, ao);
  const auto exc = excite_plane_wave(space, PlaneWave{}, f);
  auto efie = make_efie(ops, exc);
  const SolveReport rep = gmres(*efie, efie->rhs(), 1e-8, 500);
  auto dirs = theta_cut(0.0, 91);
  const FarFieldCut ff = far_field(space, rep.solution, CVector(), ops.k0, dirs);
  const FarFieldCut mie = mie_far_field(mie_coefficients(m.volume_equivalent_radius(), ops.k0), PlaneWave{}, dirs);
  CHECK(relative_error_cut(ff, mie).eps_max_db < -40.0);

  // Near field outside the body approaches the Mie near field.
  std::vector<Vec3> pts = {Vec3(0, 0, 1.5), Vec3(1.2, 0.3, 0.0), Vec3(-0.4, 0.9, -0.8)};
  const auto nf = near_field(space, rep.solution, CVector(), ops.k0, pts);
  const auto nref = mie_near_field(mie_coefficients(m.volume_equivalent_radius(), ops.k0), PlaneWave{}, pts);
  CHECK(near_field_error_db(nf, nref) < -30.0);
  CHECK(distance_to_surface(m, Vec3(0, 0, 1.5)) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("low-frequency sweep returns finite norms")
{
  const TriangleMesh m = generate_sphere_by_unknowns(1.0, 126);
  RwgSpace space(m);
  FormulationConfig c;
  c.kind = FormulationKind::MFIE;
  const auto s = lf_divergence_sweep(space, c, PlaneWave{}, {1e6, 1e4, 1e3});
  REQUIRE(s.size() == 3u);
  for (const auto &x : s)
  {
    CHECK(std::isfinite(x.re_d));
    CHECK(x.re_i > 0.0);
  }
  CHECK(s[2].re_d == doctest::Approx(s[1].re_d).epsilon(0.05));
  CHECK_THROWS_AS(lf_divergence_sweep(space, c, PlaneWave{}, {1e5, 1e4}), Error);
}
