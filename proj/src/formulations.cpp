// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/formulations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace wmfie
{

namespace
{

const char *kind_name(FormulationKind kind)
{
  switch (kind)
  {
    case FormulationKind::EFIE:
      return "EFIE";
    case FormulationKind::MFIE:
      return "MFIE";
    case FormulationKind::WMFIE1:
      return "WMFIE1";
    case FormulationKind::WMFIE2:
      return "WMFIE2";
    case FormulationKind::WMFIE3:
      return "WMFIE3";
    case FormulationKind::CFIE:
      return "CFIE";
    case FormulationKind::WCFIE:
      return "WCFIE";
    case FormulationKind::CSIE:
      return "CSIE";
  }
  return "?";
}

bool is_wmfie(FormulationKind k)
{
  return k == FormulationKind::WMFIE1 || k == FormulationKind::WMFIE2 || k == FormulationKind::WMFIE3;
}

}  // namespace

std::string to_string(FormulationKind kind) { return kind_name(kind); }

const std::vector<FormulationKind> &all_formulation_kinds()
{
  static const std::vector<FormulationKind> kinds = {
      FormulationKind::EFIE,   FormulationKind::MFIE, FormulationKind::WMFIE1, FormulationKind::WMFIE2,
      FormulationKind::WMFIE3, FormulationKind::CFIE, FormulationKind::WCFIE,  FormulationKind::CSIE};
  return kinds;
}

FormulationKind parse_formulation_kind(const std::string &name)
{
  std::string up;
  for (char c : name)
  {
    if (c != '-' && c != '_' && !std::isspace(static_cast<unsigned char>(c)))
    {
      up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (up == "WMFIE")
  {
    return FormulationKind::WMFIE1;
  }
  for (auto k : all_formulation_kinds())
  {
    if (up == kind_name(k))
    {
      return k;
    }
  }
  std::string valid;
  for (auto k : all_formulation_kinds())
  {
    valid += (valid.empty() ? "" : ", ") + std::string(kind_name(k));
  }
  fail(ErrorCode::InvalidArgument, "unknown formulation '" + name + "' (valid: " + valid + ")");
}

void FormulationConfig::validate() const
{
  if (!(gamma >= 0.0 && gamma <= 1.0))
  {
    fail(ErrorCode::InvalidArgument, "gamma must lie in [0, 1]");
  }
  if ((is_wmfie(kind) || kind == FormulationKind::WCFIE) && !(gamma > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "weak-form MFIE variants require gamma > 0");
  }
  if ((kind == FormulationKind::CFIE || kind == FormulationKind::WCFIE) && !(alpha_cfie > 0.0 && alpha_cfie < 1.0))
  {
    fail(ErrorCode::InvalidArgument, "alpha_cfie must lie in (0, 1)");
  }
  if (kind == FormulationKind::CSIE && !(beta_cs > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "beta_cs must be positive");
  }
  if (!(inner_tol > 0.0) || inner_maxit < 1)
  {
    fail(ErrorCode::InvalidArgument, "inner_tol must be positive and inner_maxit at least 1");
  }
}

AssemblyOptions assembly_for(const std::vector<FormulationKind> &kinds, const QuadConfig &quad)
{
  AssemblyOptions opt;
  opt.efie = opt.mfie = opt.k_beta = false;
  opt.quad = quad;
  for (auto k : kinds)
  {
    switch (k)
    {
      case FormulationKind::EFIE:
        opt.efie = true;
        break;
      case FormulationKind::MFIE:
      case FormulationKind::WMFIE1:
      case FormulationKind::WMFIE2:
      case FormulationKind::WMFIE3:
        opt.mfie = true;
        break;
      case FormulationKind::CFIE:
      case FormulationKind::WCFIE:
        opt.efie = opt.mfie = true;
        break;
      case FormulationKind::CSIE:
        opt.efie = opt.k_beta = true;
        break;
    }
  }
  return opt;
}

struct GramSolver::Dense
{
  Eigen::LLT<RMatrix> llt;
};

GramSolver::GramSolver(const SparseMatrix &g_bb, double tol, int maxit, GramMode mode)
  : g_(g_bb), tol_(tol), maxit_(maxit), mode_(mode)
{
  if (mode_ == GramMode::Dense)
  {
    if (g_.rows() > kDenseSolveCap)
    {
      fail(ErrorCode::InvalidArgument, "dense Gram mode limited to N <= " + std::to_string(kDenseSolveCap));
    }
    dense_ = std::make_unique<Dense>();
    dense_->llt.compute(RMatrix(g_));
    if (dense_->llt.info() != Eigen::Success)
    {
      fail(ErrorCode::Numeric, "Gram matrix is not positive definite");
    }
  }
}

GramSolver::~GramSolver() = default;

void GramSolver::reset_counters() const
{
  solves_ = 0;
  iterations_ = 0;
  max_iter_ = 0;
}

CVector GramSolver::solve(const CVector &x) const
{
  solves_++;
  if (mode_ == GramMode::Dense)
  {
    CVector y(x.size());
    y.real() = dense_->llt.solve(x.real());
    y.imag() = dense_->llt.solve(x.imag());
    return y;
  }
  SolveReport rep = pcg_diag(g_, x, tol_, maxit_);
  iterations_ += rep.iterations;
  int prev = max_iter_.load();
  while (rep.iterations > prev && !max_iter_.compare_exchange_weak(prev, rep.iterations))
  {
  }
  if (!rep.converged)
  {
    const double last = rep.residual_history.empty() ? 1.0 : rep.residual_history.back();
    fail(ErrorCode::NotConverged, "Gram solve did not converge: " + std::to_string(rep.iterations) +
                                      " iterations, relative residual " + std::to_string(last));
  }
  return std::move(rep.solution);
}

CVector apply_W(const OperatorSet &ops, const GramSolver &gram, double gamma, const CVector &x)
{
  if (!(gamma >= 0.0 && gamma <= 1.0))
  {
    fail(ErrorCode::InvalidArgument, "apply_W: gamma must lie in [0, 1]");
  }
  if (gamma == 1.0)
  {
    return x;
  }
  const CVector t1 = gram.solve(ops.G_ba * x);
  const CVector rx = -gram.solve(ops.G_ba * t1);
  return gamma * x + (1.0 - gamma) * rx;
}

CVector apply_W_left(const OperatorSet &ops, const GramSolver &gram, double gamma, const CVector &y)
{
  if (!(gamma >= 0.0 && gamma <= 1.0))
  {
    fail(ErrorCode::InvalidArgument, "apply_W_left: gamma must lie in [0, 1]");
  }
  if (gamma == 1.0)
  {
    return y;
  }
  const CVector t1 = ops.G_ba * gram.solve(y);
  const CVector t2 = ops.G_ba * gram.solve(t1);
  return gamma * y + (gamma - 1.0) * t2;
}

FormulationOperator::FormulationOperator(const OperatorSet &ops, const ExcitationVectors &exc,
                                         const FormulationConfig &config)
  : ops_(&ops), config_(config), gram_(ops.G_bb, config.inner_tol, config.inner_maxit, config.gram_mode)
{
  config_.validate();
  const int n = ops.size();
  if (exc.e.size() != n || exc.h.size() != n)
  {
    fail(ErrorCode::InvalidArgument, "excitation length does not match the operator size");
  }
  const bool need_efie = config_.kind == FormulationKind::EFIE || config_.kind == FormulationKind::CFIE ||
                         config_.kind == FormulationKind::WCFIE || config_.kind == FormulationKind::CSIE;
  const bool need_mfie = config_.kind != FormulationKind::EFIE && config_.kind != FormulationKind::CSIE;
  if (need_efie && (ops.B.rows() != n || ops.C.rows() != n))
  {
    fail(ErrorCode::InvalidArgument, to_string(config_.kind) + " needs the EFIE matrices, which were not assembled");
  }
  if (need_mfie && ops.K_alpha.rows() != n)
  {
    fail(ErrorCode::InvalidArgument, to_string(config_.kind) + " needs K_alpha, which was not assembled");
  }
  if (config_.kind == FormulationKind::CSIE && ops.K_beta.rows() != n)
  {
    fail(ErrorCode::InvalidArgument, "CSIE needs K_beta, which was not assembled");
  }
  switch (config_.kind)
  {
    case FormulationKind::EFIE:
    case FormulationKind::CSIE:
      rhs_ = exc.e;
      break;
    case FormulationKind::CFIE:
    case FormulationKind::WCFIE:
      rhs_ = config_.alpha_cfie * exc.e + (1.0 - config_.alpha_cfie) * ops.Z0 * exc.h;
      break;
    default:
      rhs_ = exc.h;
      break;
  }
}

void FormulationOperator::apply_efie(const CVector &x, CVector &y) const
{
  const double k = ops_->k0;
  y.noalias() = ops_->B * x;
  y.noalias() += (1.0 / (k * k)) * (ops_->C * x);
  y *= j_unit * k * ops_->Z0;
}

void FormulationOperator::apply_mfie(const CVector &x, CVector &y) const
{
  y.noalias() = ops_->K_alpha * x;
  y += 0.5 * (ops_->G_bb * x);
  y = -y;
}

// -(1/2 G_bb W x + K_alpha x) with G_bb W x = gamma G_bb x - (1-gamma) G_ba G_bb^-1 G_ba x,
// which needs a single Gram solve.
void FormulationOperator::apply_wmfie1(const CVector &x, CVector &y, double gamma) const
{
  if (gamma == 1.0)
  {
    apply_mfie(x, y);
    return;
  }
  CVector gw = gamma * (ops_->G_bb * x);
  gw -= (1.0 - gamma) * (ops_->G_ba * gram_.solve(ops_->G_ba * x));
  y.noalias() = ops_->K_alpha * x;
  y += 0.5 * gw;
  y = -y;
}

void FormulationOperator::apply(const CVector &x, CVector &y) const
{
  if (x.size() != size())
  {
    fail(ErrorCode::InvalidArgument, "formulation apply: vector length mismatch");
  }
  const double g = config_.gamma;
  switch (config_.kind)
  {
    case FormulationKind::EFIE:
      apply_efie(x, y);
      break;
    case FormulationKind::MFIE:
      apply_mfie(x, y);
      break;
    case FormulationKind::WMFIE1:
      apply_wmfie1(x, y, g);
      break;
    case FormulationKind::WMFIE2:
      apply_mfie(apply_W(*ops_, gram_, g, x), y);
      break;
    case FormulationKind::WMFIE3:
    {
      CVector mx;
      apply_mfie(x, mx);
      y = apply_W_left(*ops_, gram_, g, mx);
      break;
    }
    case FormulationKind::CFIE:
    case FormulationKind::WCFIE:
    {
      const double a = config_.alpha_cfie;
      CVector t, m;
      apply_efie(x, t);
      if (config_.kind == FormulationKind::CFIE)
      {
        apply_mfie(x, m);
      }
      else
      {
        apply_wmfie1(x, m, g);
      }
      y = a * t + ((1.0 - a) * ops_->Z0) * m;
      break;
    }
    case FormulationKind::CSIE:
    {
      apply_efie(x, y);
      const CVector v = magnetic_coefficients(x);
      y.noalias() += ops_->K_beta * v;
      y -= 0.5 * (ops_->G_ba * v);
      break;
    }
  }
}

CVector FormulationOperator::magnetic_coefficients(const CVector &i) const
{
  if (config_.kind != FormulationKind::CSIE)
  {
    fail(ErrorCode::InvalidArgument, "magnetic coefficients exist only for the CSIE");
  }
  return (config_.beta_cs * ops_->Z0) * gram_.solve(ops_->G_ba * i);
}

std::unique_ptr<FormulationOperator> make_formulation(const OperatorSet &ops, const ExcitationVectors &exc,
                                                      const FormulationConfig &config)
{
  return std::make_unique<FormulationOperator>(ops, exc, config);
}

std::unique_ptr<FormulationOperator> make_efie(const OperatorSet &ops, const ExcitationVectors &exc)
{
  FormulationConfig c;
  c.kind = FormulationKind::EFIE;
  return make_formulation(ops, exc, c);
}

std::unique_ptr<FormulationOperator> make_mfie(const OperatorSet &ops, const ExcitationVectors &exc)
{
  FormulationConfig c;
  c.kind = FormulationKind::MFIE;
  return make_formulation(ops, exc, c);
}

std::unique_ptr<FormulationOperator> make_wmfie(const OperatorSet &ops, const ExcitationVectors &exc, int variant,
                                                double gamma)
{
  FormulationConfig c;
  switch (variant)
  {
    case 1:
      c.kind = FormulationKind::WMFIE1;
      break;
    case 2:
      c.kind = FormulationKind::WMFIE2;
      break;
    case 3:
      c.kind = FormulationKind::WMFIE3;
      break;
    default:
      fail(ErrorCode::InvalidArgument, "WMFIE variant must be 1, 2 or 3");
  }
  c.gamma = gamma;
  return make_formulation(ops, exc, c);
}

std::unique_ptr<FormulationOperator> make_cfie(const OperatorSet &ops, const ExcitationVectors &exc,
                                               double alpha_cfie, bool weak, double gamma)
{
  FormulationConfig c;
  c.kind = weak ? FormulationKind::WCFIE : FormulationKind::CFIE;
  c.alpha_cfie = alpha_cfie;
  c.gamma = gamma;
  return make_formulation(ops, exc, c);
}

std::unique_ptr<FormulationOperator> make_csie(const OperatorSet &ops, const ExcitationVectors &exc, double beta_cs)
{
  FormulationConfig c;
  c.kind = FormulationKind::CSIE;
  c.beta_cs = beta_cs;
  return make_formulation(ops, exc, c);
}

}  // namespace wmfie
