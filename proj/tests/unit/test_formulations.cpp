// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "wmfie/formulations.hpp"
#include "wmfie/postproc.hpp"

using namespace wmfie;

namespace
{

struct Fixture
{
  TriangleMesh mesh = generate_icosphere(1.0, 2);
  RwgSpace space{mesh};
  OperatorSet ops;
  ExcitationVectors exc;
  Fixture()
  {
    AssemblyOptions ao;
    ao.k_beta = true;
    ops = assemble(space, 150e6, ao);
    exc = excite_plane_wave(space, PlaneWave{}, 150e6);
  }
};

CVector random_vector(int n, unsigned seed)
{
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  CVector x(n);
  for (int i = 0; i < n; i++)
    x[i] = cplx(g(rng), g(rng));
  return x;
}

FormulationConfig config(FormulationKind kind, double gamma = 0.5)
{
  FormulationConfig c;
  c.kind = kind;
  c.gamma = gamma;
  return c;
}

}  // namespace

TEST_CASE("formulation names")
{
  for (auto k : all_formulation_kinds())
    CHECK(parse_formulation_kind(to_string(k)) == k);
  CHECK(parse_formulation_kind("wmfie") == FormulationKind::WMFIE1);
  CHECK(parse_formulation_kind("cfie") == FormulationKind::CFIE);
  CHECK_THROWS_AS(parse_formulation_kind("nfie"), Error);
  CHECK(all_formulation_kinds().size() == 8u);
}

TEST_CASE("configuration ranges")
{
  FormulationConfig c = config(FormulationKind::WMFIE1, 0.0);
  CHECK_THROWS_AS(c.validate(), Error);
  c.gamma = 1.2;
  CHECK_THROWS_AS(c.validate(), Error);
  c.gamma = 1.0;
  CHECK_NOTHROW(c.validate());
  c = config(FormulationKind::CFIE);
  c.alpha_cfie = -0.1;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("WMFIE variants collapse to the MFIE at gamma = 1")
{
  Fixture f;
  auto mfie = make_formulation(f.ops, f.exc, config(FormulationKind::MFIE));
  const CVector x = random_vector(f.space.size(), 7);
  const CVector ref = (*mfie) * x;
  for (auto k : {FormulationKind::WMFIE1, FormulationKind::WMFIE2, FormulationKind::WMFIE3})
  {
    auto op = make_formulation(f.ops, f.exc, config(k, 1.0));
    CHECK(((*op) * x - ref).norm() <= 1e-12 * ref.norm());
  }
  auto wcfie = make_formulation(f.ops, f.exc, config(FormulationKind::WCFIE, 1.0));
  auto cfie = make_formulation(f.ops, f.exc, config(FormulationKind::CFIE));
  CHECK(((*wcfie) * x - (*cfie) * x).norm() <= 1e-12 * ((*cfie) * x).norm());
}

TEST_CASE("left and right weighting operators intertwine with G_bb")
{
  Fixture f;
  const GramSolver gram(f.ops.G_bb, 1e-13, 1000);
  const CVector x = random_vector(f.space.size(), 1);
  // G_bb W = W_left G_bb
  const CVector gwx = f.ops.G_bb * apply_W(f.ops, gram, 0.3, x);
  const CVector wgx = apply_W_left(f.ops, gram, 0.3, f.ops.G_bb * x);
  CHECK((gwx - wgx).norm() < 1e-9 * gwx.norm());
}

TEST_CASE("CFIE is the weighted sum of EFIE and scaled MFIE")
{
  Fixture f;
  FormulationConfig c = config(FormulationKind::CFIE);
  c.alpha_cfie = 0.3;
  auto cfie = make_formulation(f.ops, f.exc, c);
  auto efie = make_formulation(f.ops, f.exc, config(FormulationKind::EFIE));
  auto mfie = make_formulation(f.ops, f.exc, config(FormulationKind::MFIE));
  const CVector x = random_vector(f.space.size(), 3);
  const CVector expect = 0.3 * ((*efie) * x) + 0.7 * f.ops.Z0 * ((*mfie) * x);
  CHECK(((*cfie) * x - expect).norm() < 1e-12 * expect.norm());
  const CVector rhs = 0.3 * efie->rhs() + 0.7 * f.ops.Z0 * mfie->rhs();
  CHECK((cfie->rhs() - rhs).norm() < 1e-12 * rhs.norm());
}

TEST_CASE("dense and iterative Gram modes agree")
{
  Fixture f;
  FormulationConfig c = config(FormulationKind::WMFIE2, 0.4);
  auto it = make_formulation(f.ops, f.exc, c);
  c.gram_mode = GramMode::Dense;
  auto dense = make_formulation(f.ops, f.exc, c);
  const CVector x = random_vector(f.space.size(), 4);
  CHECK(((*it) * x - (*dense) * x).norm() < 1e-8 * ((*dense) * x).norm());
  CHECK(it->gram().solves() > 0);
  CHECK(it->gram().max_iterations_seen() > 0);
}

TEST_CASE("every formulation reproduces the EFIE far field")
{
  Fixture f;
  const auto dirs = theta_cut(0.0, 37);
  auto efie = make_formulation(f.ops, f.exc, config(FormulationKind::EFIE));
  const CVector ref = dense_solve(materialize(*efie), efie->rhs());
  const FarFieldCut ref_ff = far_field(f.space, ref, CVector(), f.ops.k0, dirs);
  for (auto k : all_formulation_kinds())
  {
    auto op = make_formulation(f.ops, f.exc, config(k));
    const SolveReport r = gmres(*op, op->rhs(), 1e-8, 500);
    CHECK(r.converged);
    const CVector v = k == FormulationKind::CSIE ? op->magnetic_coefficients(r.solution) : CVector();
    // Coarse mesh: formulations differ by discretization error only.
    CHECK(relative_error_cut(far_field(f.space, r.solution, v, f.ops.k0, dirs), ref_ff).eps_max_db < -20.0);
  }
}
