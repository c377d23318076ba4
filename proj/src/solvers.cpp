// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/solvers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace wmfie
{

namespace
{

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Rotation zeroing b in (a, b): [c s; -conj(s) c] with real c.
void make_givens(const cplx &a, const cplx &b, double &c, cplx &s)
{
  const double na = std::abs(a);
  const double nb = std::abs(b);
  if (nb == 0.0)
  {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0)
  {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double r = std::hypot(na, nb);
  c = na / r;
  s = (a / na) * std::conj(b) / r;
}

}  // namespace

SolveReport gmres(const LinearOperator &op, const CVector &rhs, double tol, int maxit)
{
  const auto t0 = std::chrono::steady_clock::now();
  const int n = op.size();
  if (rhs.size() != n)
  {
    fail(ErrorCode::InvalidArgument, "gmres: rhs length " + std::to_string(rhs.size()) + " does not match operator size " +
                                         std::to_string(n));
  }
  if (!(tol > 0.0) || maxit < 1)
  {
    fail(ErrorCode::InvalidArgument, "gmres: tol must be positive and maxit at least 1");
  }
  SolveReport rep;
  rep.solution = CVector::Zero(n);
  const double bnorm = rhs.norm();
  if (bnorm == 0.0)
  {
    rep.converged = true;
    rep.wall_time = seconds_since(t0);
    return rep;
  }
  const int m = std::min(maxit, n);
  std::vector<CVector> v;
  v.reserve(m + 1);
  CMatrix h = CMatrix::Zero(m + 1, m);
  std::vector<double> cs(m);
  std::vector<cplx> sn(m);
  CVector g = CVector::Zero(m + 1);
  g[0] = bnorm;
  v.push_back(rhs / bnorm);
  int k = 0;
  CVector w;
  for (; k < m; k++)
  {
    op.apply(v[k], w);
    for (int i = 0; i <= k; i++)
    {
      h(i, k) = v[i].dot(w);
      w -= h(i, k) * v[i];
    }
    const double wn = w.norm();
    h(k + 1, k) = wn;
    for (int i = 0; i < k; i++)
    {
      const cplx t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
      h(i + 1, k) = -std::conj(sn[i]) * h(i, k) + cs[i] * h(i + 1, k);
      h(i, k) = t;
    }
    make_givens(h(k, k), h(k + 1, k), cs[k], sn[k]);
    h(k, k) = cs[k] * h(k, k) + sn[k] * h(k + 1, k);
    h(k + 1, k) = 0.0;
    g[k + 1] = -std::conj(sn[k]) * g[k];
    g[k] = cs[k] * g[k];
    const double rel = std::abs(g[k + 1]) / bnorm;
    rep.residual_history.push_back(rel);
    const bool breakdown = wn <= 1e-14 * h.col(k).norm();
    if (rel <= tol || breakdown)
    {
      k++;
      rep.converged = rel <= tol;
      break;
    }
    v.push_back(w / wn);
  }
  rep.iterations = k;
  // Back substitution on the k x k upper triangle.
  CVector y = h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
  for (int i = 0; i < k; i++)
  {
    rep.solution += y[i] * v[i];
  }
  CVector ax;
  op.apply(rep.solution, ax);
  rep.true_residual = (rhs - ax).norm() / bnorm;
  if (!rep.converged && rep.true_residual <= tol)
  {
    rep.converged = true;
  }
  rep.wall_time = seconds_since(t0);
  return rep;
}

namespace
{

template <class Matrix>
SolveReport pcg_impl(const Matrix &a, const CVector &rhs, double tol, int maxit)
{
  const auto t0 = std::chrono::steady_clock::now();
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || rhs.size() != n)
  {
    fail(ErrorCode::InvalidArgument, "pcg_diag: dimension mismatch");
  }
  if (!(tol > 0.0) || maxit < 1)
  {
    fail(ErrorCode::InvalidArgument, "pcg_diag: tol must be positive and maxit at least 1");
  }
  const RVector diag = a.diagonal();
  if ((diag.array() <= 0.0).any())
  {
    fail(ErrorCode::Numeric, "pcg_diag: matrix has a non-positive diagonal entry (not SPD)");
  }
  const RVector inv_diag = diag.cwiseInverse();
  SolveReport rep;
  rep.solution = CVector::Zero(n);
  const double bnorm = rhs.norm();
  if (bnorm == 0.0)
  {
    rep.converged = true;
    rep.wall_time = seconds_since(t0);
    return rep;
  }
  CVector r = rhs;
  CVector z = inv_diag.cast<cplx>().cwiseProduct(r);
  CVector p = z;
  CVector ap(n);
  cplx rz = r.dot(z);
  for (int k = 0; k < maxit; k++)
  {
    ap.noalias() = a * p;
    const double curvature = std::real(p.dot(ap));
    if (!(curvature > 0.0))
    {
      fail(ErrorCode::Numeric, "pcg_diag: non-positive curvature, matrix is not positive definite");
    }
    const cplx alpha = rz / curvature;
    rep.solution += alpha * p;
    r -= alpha * ap;
    const double rel = r.norm() / bnorm;
    rep.residual_history.push_back(rel);
    rep.iterations = k + 1;
    if (rel <= tol)
    {
      rep.converged = true;
      break;
    }
    z = inv_diag.cast<cplx>().cwiseProduct(r);
    const cplx rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  rep.true_residual = (rhs - a * rep.solution).norm() / bnorm;
  rep.wall_time = seconds_since(t0);
  return rep;
}

}  // namespace

SolveReport pcg_diag(const SparseMatrix &a, const CVector &rhs, double tol, int maxit)
{
  return pcg_impl(a, rhs, tol, maxit);
}

SolveReport pcg_diag(const RMatrix &a, const CVector &rhs, double tol, int maxit)
{
  return pcg_impl(a, rhs, tol, maxit);
}

DenseSolveResult dense_solve_report(const CMatrix &a, const CVector &rhs, int cap)
{
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || rhs.size() != n)
  {
    fail(ErrorCode::InvalidArgument, "dense_solve: dimension mismatch");
  }
  if (n > cap)
  {
    fail(ErrorCode::InvalidArgument,
         "dense_solve: N = " + std::to_string(n) + " exceeds the dense cap " + std::to_string(cap));
  }
  DenseSolveResult out;
  if (n == 0)
  {
    out.x = CVector(0);
    out.rcond = 1.0;
    return out;
  }
  const Eigen::PartialPivLU<CMatrix> lu(a);
  out.rcond = lu.rcond();
  if (!(out.rcond > 1e-300) || !std::isfinite(out.rcond) || out.rcond < 1e-16)
  {
    fail(ErrorCode::Numeric, "dense_solve: matrix is singular to working precision");
  }
  out.x = lu.solve(rhs);
  const double bnorm = rhs.norm();
  out.residual = bnorm > 0.0 ? (rhs - a * out.x).norm() / bnorm : 0.0;
  if (!(out.residual < 1e-10))
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", out.residual);
    fail(ErrorCode::Numeric, std::string("dense_solve: relative residual ") + buf + " exceeds 1e-10");
  }
  out.ill_conditioned = out.rcond < 1e-12;
  return out;
}

CVector dense_solve(const CMatrix &a, const CVector &rhs, int cap) { return dense_solve_report(a, rhs, cap).x; }

CMatrix materialize(const LinearOperator &op)
{
  const int n = op.size();
  CMatrix m(n, n);
  CVector e = CVector::Zero(n);
  CVector col;
  for (int j = 0; j < n; j++)
  {
    e[j] = 1.0;
    op.apply(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

}  // namespace wmfie
