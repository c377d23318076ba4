// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_FORMULATIONS_HPP
#define WMFIE_FORMULATIONS_HPP

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wmfie/operators.hpp"
#include "wmfie/solvers.hpp"

namespace wmfie
{

enum class FormulationKind
{
  EFIE,
  MFIE,
  WMFIE1,
  WMFIE2,
  WMFIE3,
  CFIE,
  WCFIE,
  CSIE
};

std::string to_string(FormulationKind kind);
// Case-insensitive; "WMFIE" is accepted as WMFIE1. Throws InvalidArgument
// listing the valid names.
FormulationKind parse_formulation_kind(const std::string &name);
const std::vector<FormulationKind> &all_formulation_kinds();

enum class GramMode
{
  Iterative,  // Jacobi CG per application
  Dense       // pre-factorized Cholesky, N <= dense cap
};

struct FormulationConfig
{
  FormulationKind kind = FormulationKind::EFIE;
  double gamma = 0.5;
  double alpha_cfie = 0.5;
  double beta_cs = 10.0;
  double inner_tol = 1e-10;
  int inner_maxit = 1000;
  GramMode gram_mode = GramMode::Iterative;

  void validate() const;
};

// Which dense matrices a set of formulations needs.
AssemblyOptions assembly_for(const std::vector<FormulationKind> &kinds, const QuadConfig &quad = {});

/// Solves G_bb y = x, either iteratively or by a cached dense factorization.
/// Counters are atomic so concurrent applications may share one instance.
class GramSolver
{
public:
  GramSolver(const SparseMatrix &g_bb, double tol, int maxit, GramMode mode = GramMode::Iterative);
  ~GramSolver();

  CVector solve(const CVector &x) const;

  long solves() const { return solves_.load(); }
  long iterations() const { return iterations_.load(); }
  int max_iterations_seen() const { return max_iter_.load(); }
  void reset_counters() const;

private:
  const SparseMatrix &g_;
  double tol_;
  int maxit_;
  GramMode mode_;
  struct Dense;
  std::unique_ptr<Dense> dense_;
  mutable std::atomic<long> solves_{0};
  mutable std::atomic<long> iterations_{0};
  mutable std::atomic<int> max_iter_{0};
};

// y = gamma x + (1 - gamma) R x with R = -G_bb^-1 G_ba G_bb^-1 G_ba.
CVector apply_W(const OperatorSet &ops, const GramSolver &gram, double gamma, const CVector &x);
// Testing-side transform gamma y + (gamma - 1) G_ba G_bb^-1 G_ba G_bb^-1 y.
CVector apply_W_left(const OperatorSet &ops, const GramSolver &gram, double gamma, const CVector &y);

/// A formulation bound to an assembled operator set and an excitation.
/// `ops` must outlive the operator.
class FormulationOperator : public LinearOperator
{
public:
  FormulationOperator(const OperatorSet &ops, const ExcitationVectors &exc, const FormulationConfig &config);

  int size() const override { return ops_->size(); }
  void apply(const CVector &x, CVector &y) const override;

  const CVector &rhs() const { return rhs_; }
  const FormulationConfig &config() const { return config_; }
  FormulationKind kind() const { return config_.kind; }
  double frequency() const { return ops_->frequency; }
  const GramSolver &gram() const { return gram_; }

  // CSIE only: magnetic coefficients v = beta Z0 G_bb^-1 G_ba i.
  CVector magnetic_coefficients(const CVector &i) const;

private:
  void apply_efie(const CVector &x, CVector &y) const;
  void apply_mfie(const CVector &x, CVector &y) const;
  void apply_wmfie1(const CVector &x, CVector &y, double gamma) const;

  const OperatorSet *ops_;
  FormulationConfig config_;
  GramSolver gram_;
  CVector rhs_;
};

std::unique_ptr<FormulationOperator> make_formulation(const OperatorSet &ops, const ExcitationVectors &exc,
                                                      const FormulationConfig &config);
std::unique_ptr<FormulationOperator> make_efie(const OperatorSet &ops, const ExcitationVectors &exc);
std::unique_ptr<FormulationOperator> make_mfie(const OperatorSet &ops, const ExcitationVectors &exc);
std::unique_ptr<FormulationOperator> make_wmfie(const OperatorSet &ops, const ExcitationVectors &exc, int variant,
                                                double gamma);
std::unique_ptr<FormulationOperator> make_cfie(const OperatorSet &ops, const ExcitationVectors &exc,
                                               double alpha_cfie, bool weak, double gamma = 0.5);
std::unique_ptr<FormulationOperator> make_csie(const OperatorSet &ops, const ExcitationVectors &exc, double beta_cs);

}  // namespace wmfie

#endif  // WMFIE_FORMULATIONS_HPP
