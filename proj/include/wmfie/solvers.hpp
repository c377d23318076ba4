// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_SOLVERS_HPP
#define WMFIE_SOLVERS_HPP

#include <vector>

#include "wmfie/types.hpp"

namespace wmfie
{

/// Square complex linear map y = A x.
class LinearOperator
{
public:
  virtual ~LinearOperator() = default;
  virtual int size() const = 0;
  virtual void apply(const CVector &x, CVector &y) const = 0;

  CVector operator*(const CVector &x) const
  {
    CVector y;
    apply(x, y);
    return y;
  }
};

class DenseOperator : public LinearOperator
{
public:
  explicit DenseOperator(const CMatrix &a) : a_(a) {}
  int size() const override { return static_cast<int>(a_.rows()); }
  void apply(const CVector &x, CVector &y) const override { y.noalias() = a_ * x; }

private:
  const CMatrix &a_;
};

struct SolveReport
{
  CVector solution;
  int iterations = 0;
  // Relative residual after each iteration (GMRES: the Arnoldi estimate).
  std::vector<double> residual_history;
  bool converged = false;
  double wall_time = 0.0;  // seconds
  double true_residual = 0.0;  // ||rhs - A x|| / ||rhs|| recomputed at exit
};

// Unrestarted GMRES with modified Gram-Schmidt and Givens rotations, x0 = 0.
// Non-convergence is reported through `converged`; the last iterate is kept.
SolveReport gmres(const LinearOperator &op, const CVector &rhs, double tol, int maxit);

// Jacobi-preconditioned CG for a real symmetric positive definite matrix and
// a complex right-hand side. Throws Numeric on non-positive curvature or a
// non-positive diagonal; non-convergence is reported through `converged`.
SolveReport pcg_diag(const SparseMatrix &a, const CVector &rhs, double tol, int maxit);
SolveReport pcg_diag(const RMatrix &a, const CVector &rhs, double tol, int maxit);

struct DenseSolveResult
{
  CVector x;
  double rcond = 0.0;     // reciprocal condition estimate (1-norm)
  double residual = 0.0;  // relative residual
  bool ill_conditioned = false;  // rcond below 1e-12
};

inline constexpr int kDenseSolveCap = 6000;

// LU with partial pivoting. Throws Numeric when the matrix is singular to
// working precision or the residual exceeds 1e-10.
DenseSolveResult dense_solve_report(const CMatrix &a, const CVector &rhs, int cap = kDenseSolveCap);
CVector dense_solve(const CMatrix &a, const CVector &rhs, int cap = kDenseSolveCap);

// Column-by-column materialization of an operator (test and oracle use).
CMatrix materialize(const LinearOperator &op);

}  // namespace wmfie

#endif  // WMFIE_SOLVERS_HPP
