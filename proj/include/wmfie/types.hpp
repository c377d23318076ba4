// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_TYPES_HPP
#define WMFIE_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace wmfie
{

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx j_unit{0.0, 1.0};

namespace constants
{
inline constexpr double c0 = 299792458.0;
inline constexpr double mu0 = 4.0e-7 * pi;
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);
inline constexpr double Z0 = mu0 * c0;
}  // namespace constants

// Plain cross product for complex 3-vectors (Eigen's cross() conjugates
// complex results).
inline CVec3 ccross(const CVec3 &a, const CVec3 &b)
{
  return CVec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

inline double wavenumber(double frequency) { return 2.0 * pi * frequency / constants::c0; }
inline double wavelength(double frequency) { return constants::c0 / frequency; }

// Error categories map one-to-one onto the status codes of the C API.
enum class ErrorCode
{
  InvalidArgument = 1,
  Parse,
  Io,
  Topology,
  NotConverged,
  Numeric,
  Internal
};

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

}  // namespace wmfie

#endif  // WMFIE_TYPES_HPP
