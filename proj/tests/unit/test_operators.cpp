// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "wmfie/operators.hpp"

using namespace wmfie;

TEST_CASE("RWG divergence integrates to zero per function")
{
  const TriangleMesh m = generate_icosphere(1.0, 3);
  RwgSpace space(m);
  CHECK(space.size() == static_cast<int>(m.num_edges()));
  for (int n = 0; n < space.size(); n++)
  {
    const RwgFunction &f = space.function(n);
    const double q = space.divergence(n, f.tri_plus) * f.area_plus + space.divergence(n, f.tri_minus) * f.area_minus;
    CHECK(std::abs(q) < 1e-12 * f.length);
    CHECK(space.divergence(n, f.tri_plus) == doctest::Approx(f.length / f.area_plus));
  }
}

TEST_CASE("RWG normal component is continuous across its edge")
{
  const TriangleMesh m = generate_canonical_segments(CanonicalShape::Cube, {{1.0}}, 2, 2);
  RwgSpace space(m);
  for (int n = 0; n < space.size(); n++)
  {
    const RwgFunction &f = space.function(n);
    const Edge &e = m.edges()[f.edge];
    const Vec3 a = m.vertex(e.v[0]), b = m.vertex(e.v[1]);
    const Vec3 t = (b - a).normalized();
    for (double s : {0.2, 0.5, 0.8})
    {
      const Vec3 p = a + s * (b - a);
      const Vec3 np = m.normal(f.tri_plus).cross(t), nm = m.normal(f.tri_minus).cross(t);
      // Flux leaving T+ through the edge equals flux entering T-.
      const double out_plus = std::abs(space.beta(n, f.tri_plus, p).dot(np));
      const double in_minus = std::abs(space.beta(n, f.tri_minus, p).dot(nm));
      CHECK(out_plus == doctest::Approx(1.0));
      CHECK(in_minus == doctest::Approx(1.0));
      // alpha = n x beta is tangential and orthogonal to beta.
      CHECK(std::abs(space.alpha(n, f.tri_plus, p).dot(space.beta(n, f.tri_plus, p))) < 1e-12);
    }
  }
}

TEST_CASE("Gram matrices are symmetric SPD and skew")
{
  const TriangleMesh m = generate_icosphere(1.0, 2);
  RwgSpace space(m);
  const RMatrix gbb(assemble_gram_bb(space)), gba(assemble_gram_ba(space));
  CHECK((gbb - gbb.transpose()).norm() < 1e-14 * gbb.norm());
  CHECK((gba + gba.transpose()).norm() < 1e-14 * gba.norm());
  CHECK(Eigen::SelfAdjointEigenSolver<RMatrix>(gbb).eigenvalues().minCoeff() > 0.0);
  CHECK(gram_bb_entry(space, 3, 3) == doctest::Approx(gbb(3, 3)));
  const GramDiagnostics d = gram_diagnostics(space);
  CHECK(d.bb_spd);
  CHECK(d.ba_skew_residual < 1e-12);
  CHECK(d.bb_condition >= d.bb_jacobi_condition * 0.5);
}

// Near pairs integrate the source analytically and the observer numerically,
// so symmetry holds to quadrature accuracy only.
TEST_CASE("EFIE blocks are reciprocal")
{
  const TriangleMesh m = generate_icosphere(1.0, 2);
  RwgSpace space(m);
  AssemblyOptions ao;
  ao.mfie = false;
  const OperatorSet ops = assemble(space, 150e6, ao);
  CHECK((ops.B - ops.B.transpose()).norm() < 1e-3 * ops.B.norm());
  CHECK((ops.C - ops.C.transpose()).norm() < 1e-3 * ops.C.norm());
  CHECK(ops.K_alpha.size() == 0);
}

TEST_CASE("K_beta is assembled only on request")
{
  const TriangleMesh m = generate_icosphere(1.0, 2);
  RwgSpace space(m);
  CHECK(assemble(space, 150e6).K_beta.size() == 0);
  AssemblyOptions ao;
  ao.k_beta = true;
  const OperatorSet ops = assemble(space, 150e6, ao);
  CHECK(ops.K_beta.rows() == space.size());
  CHECK(ops.K_beta.allFinite());
  CHECK(ops.K_beta.norm() > 0.0);
}

TEST_CASE("plane-wave excitation")
{
  CHECK_THROWS_AS(validate_plane_wave(PlaneWave{Vec3(0, 0, 1), CVec3(0, 0, 1)}), Error);
  CHECK_THROWS_AS(validate_plane_wave(PlaneWave{Vec3(0, 0, 2), CVec3(1, 0, 0)}), Error);
  const PlaneWave w;
  const double k = 3.0;
  const Vec3 r(0.1, 0.2, 0.3);
  CHECK(std::abs(incident_e(w, k, r).x() - std::exp(cplx(0, -k * 0.3))) < 1e-14);
  // H = k_hat x E / Z0
  CHECK(std::abs(incident_h(w, k, r).y() * constants::Z0 - std::exp(cplx(0, -k * 0.3))) < 1e-12);
}

TEST_CASE("matrix dump round trip")
{
  const CMatrix a = CMatrix::Random(5, 5);
  const auto path = std::filesystem::temp_directory_path() / "wmfie_dump_test.bin";
  dump_matrix(path, a);
  // complex64 payload
  CHECK((read_matrix_dump(path) - a).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(std::filesystem::file_size(path) == 16u + 25u * 8u);
  std::filesystem::remove(path);
}
