// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "wmfie/solvers.hpp"

using namespace wmfie;

namespace
{

CMatrix well_conditioned(int n, unsigned seed)
{
  std::srand(seed);
  return CMatrix::Random(n, n) * 0.3 / std::sqrt(n) + CMatrix::Identity(n, n) * 2.0;
}

}  // namespace

TEST_CASE("GMRES matches LU and records a monotone residual")
{
  const CMatrix a = well_conditioned(60, 1);
  const CVector b = CVector::Random(60);
  const DenseOperator op(a);
  const SolveReport r = gmres(op, b, 1e-12, 200);
  CHECK(r.converged);
  CHECK(r.iterations == static_cast<int>(r.residual_history.size()));
  for (std::size_t i = 1; i < r.residual_history.size(); i++)
    CHECK(r.residual_history[i] <= r.residual_history[i - 1] * (1.0 + 1e-12));
  const CVector x = dense_solve(a, b);
  CHECK((r.solution - x).norm() < 1e-10 * x.norm());
  CHECK(r.true_residual < 1e-11);
}

TEST_CASE("GMRES terminates in at most n steps and reports non-convergence")
{
  const CMatrix a = CMatrix::Random(20, 20) + CMatrix::Identity(20, 20) * 0.01;
  const CVector b = CVector::Random(20);
  const DenseOperator op(a);
  CHECK(gmres(op, b, 1e-10, 40).iterations <= 20);
  const SolveReport short_run = gmres(op, b, 1e-14, 3);
  CHECK_FALSE(short_run.converged);
  CHECK(short_run.iterations == 3);
  CHECK(gmres(op, CVector::Zero(20), 1e-8, 10).solution.norm() == 0.0);
}

TEST_CASE("Jacobi CG on an SPD system")
{
  const int n = 40;
  RMatrix m = RMatrix::Random(n, n);
  RMatrix a = m * m.transpose() + n * RMatrix::Identity(n, n);
  a.diagonal().array() *= Eigen::ArrayXd::LinSpaced(n, 1.0, 100.0);
  a = 0.5 * (a + a.transpose()).eval();
  const CVector b = CVector::Random(n);
  const SolveReport r = pcg_diag(a, b, 1e-12, 500);
  CHECK(r.converged);
  CHECK((a.cast<cplx>() * r.solution - b).norm() < 1e-11 * b.norm());
  const SparseMatrix s = a.sparseView();
  CHECK((pcg_diag(s, b, 1e-12, 500).solution - r.solution).norm() < 1e-10 * r.solution.norm());
  RMatrix neg = -a;
  CHECK_THROWS_AS(pcg_diag(neg, b, 1e-12, 10), Error);
}

TEST_CASE("dense solve rejects singular systems and the size cap")
{
  CMatrix a = CMatrix::Identity(4, 4);
  a(3, 3) = 0.0;
  CHECK_THROWS_AS(dense_solve(a, CVector::Ones(4)), Error);
  CHECK_THROWS_AS(dense_solve(CMatrix::Identity(10, 10), CVector::Ones(10), 5), Error);
  const DenseSolveResult r = dense_solve_report(well_conditioned(8, 3), CVector::Ones(8));
  CHECK(r.rcond > 0.01);
  CHECK_FALSE(r.ill_conditioned);
}

TEST_CASE("materialize reproduces the operator")
{
  const CMatrix a = well_conditioned(12, 5);
  CHECK(materialize(DenseOperator(a)) == a);
}
