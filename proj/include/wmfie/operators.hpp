// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_OPERATORS_HPP
#define WMFIE_OPERATORS_HPP

#include <filesystem>

#include "wmfie/quadrature.hpp"
#include "wmfie/rwg.hpp"

namespace wmfie
{

struct AssemblyOptions
{
  bool efie = true;    // B and C
  bool mfie = true;    // K_alpha
  bool k_beta = false; // K_beta, needed by the combined-source formulation
  QuadConfig quad;
};

/// Dense moment matrices for one mesh and frequency.
///   B_mn       = int beta_m . int G beta_n
///   C_mn       = int beta_m . grad int G div' beta_n = -int int div beta_m div' beta_n G
///   K_alpha_mn = int alpha_m . int grad G x beta_n   (principal value)
///   K_beta_mn  = int beta_m  . int grad G x beta_n   (principal value)
///   G_bb_mn    = int beta_m . beta_n,  G_ba_mn = int beta_m . alpha_n
/// Matrices that were not requested are left empty (0 x 0).
struct OperatorSet
{
  CMatrix B, C, K_alpha, K_beta;
  SparseMatrix G_bb, G_ba;
  double frequency = 0.0;
  double k0 = 0.0;
  double Z0 = constants::Z0;

  int size() const { return static_cast<int>(G_bb.rows()); }
};

OperatorSet assemble(const RwgSpace &space, double frequency, const AssemblyOptions &options = {});

// Sparse Gram matrices alone (no frequency dependence).
SparseMatrix assemble_gram_bb(const RwgSpace &space);
SparseMatrix assemble_gram_ba(const RwgSpace &space);
double gram_bb_entry(const RwgSpace &space, int m, int n);
double gram_ba_entry(const RwgSpace &space, int m, int n);

struct GramDiagnostics
{
  bool bb_spd = false;
  double bb_condition = 0.0;         // lambda_max / lambda_min
  double bb_jacobi_condition = 0.0;  // same after symmetric diagonal scaling
  double ba_skew_residual = 0.0;     // ||G + G^T||_F / ||G||_F
  double ba_singular_ratio = 0.0;    // sigma_min / sigma_max
};

// Dense eigen/singular value analysis; refuses spaces above kGramDiagnosticsCap.
GramDiagnostics gram_diagnostics(const RwgSpace &space);
inline constexpr int kGramDiagnosticsCap = 4000;

struct PlaneWave
{
  Vec3 direction{0.0, 0.0, 1.0};      // unit propagation direction k_hat
  CVec3 polarization{1.0, 0.0, 0.0};  // E0 in V/m, transverse to k_hat
};

void validate_plane_wave(const PlaneWave &wave);

// Incident fields E = E0 exp(-j k k_hat . r), H = (k_hat x E0) / Z0 exp(-j k k_hat . r).
CVec3 incident_e(const PlaneWave &wave, double k0, const Vec3 &r);
CVec3 incident_h(const PlaneWave &wave, double k0, const Vec3 &r);

struct ExcitationVectors
{
  CVector e;  // int beta_m . E_inc
  CVector h;  // int alpha_m . H_inc
};

ExcitationVectors excite_plane_wave(const RwgSpace &space, const PlaneWave &wave, double frequency,
                                    int degree = 7);

// Debug dump: 8-byte magic "WMFIEMAT", little-endian uint64 N, then N*N
// row-major (real, imag) float32 pairs.
void dump_matrix(const std::filesystem::path &path, const CMatrix &matrix);
CMatrix read_matrix_dump(const std::filesystem::path &path);

}  // namespace wmfie

#endif  // WMFIE_OPERATORS_HPP
