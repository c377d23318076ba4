// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/operators.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "inner.hpp"

namespace wmfie
{

namespace
{

// Local 3x3 integrals between the vertex-centred fields (r - v_i) on the
// observer triangle and (r' - v_j) on the source triangle.
struct LocalBlock
{
  cplx b[3][3];
  cplx ka[3][3];
  cplx kb[3][3];
  cplx s;  // int int G
};

void compute_block(const std::array<Vec3, 3> &obs, const Vec3 &n_obs, double area_obs,
                   const std::array<Vec3, 3> &src, double k0, const AssemblyOptions &opt, LocalBlock &blk)
{
  const detail::TrianglePair pair(obs, src, opt.quad);
  const TriangleRule &outer =
      gauss_rule(pair.near ? opt.quad.near_observer_degree : opt.quad.far_observer_degree);
  std::memset(static_cast<void *>(&blk), 0, sizeof(LocalBlock));
  const bool want_k = opt.mfie || opt.k_beta;
  for (std::size_t q = 0; q < outer.size(); q++)
  {
    const Vec3 r = outer.map(obs, q);
    const double w = outer.weights[q] * area_obs;
    const auto in = detail::inner_integrals(pair, r, k0);
    CVec3 gf[3], hx[3];
    for (int j = 0; j < 3; j++)
    {
      gf[j] = in.g1 - in.g0 * src[j].cast<cplx>();
      if (want_k)
      {
        hx[j] = ccross(in.h, (r - src[j]).cast<cplx>());
      }
    }
    for (int i = 0; i < 3; i++)
    {
      const Vec3 f = r - obs[i];
      const Vec3 a = n_obs.cross(f);
      for (int j = 0; j < 3; j++)
      {
        if (opt.efie)
        {
          blk.b[i][j] += w * (f[0] * gf[j][0] + f[1] * gf[j][1] + f[2] * gf[j][2]);
        }
        if (opt.k_beta)
        {
          blk.kb[i][j] += w * (f[0] * hx[j][0] + f[1] * hx[j][1] + f[2] * hx[j][2]);
        }
        if (opt.mfie)
        {
          blk.ka[i][j] += w * (a[0] * hx[j][0] + a[1] * hx[j][1] + a[2] * hx[j][2]);
        }
      }
    }
    blk.s += w * in.g0;
  }
}

}  // namespace

OperatorSet assemble(const RwgSpace &space, double frequency, const AssemblyOptions &options)
{
  if (!(frequency > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "assemble: frequency must be positive");
  }
  const TriangleMesh &mesh = space.mesh();
  const int n = space.size();
  const int nt = static_cast<int>(mesh.num_triangles());
  OperatorSet ops;
  ops.frequency = frequency;
  ops.k0 = wavenumber(frequency);
  if (options.efie)
  {
    ops.B = CMatrix::Zero(n, n);
    ops.C = CMatrix::Zero(n, n);
  }
  if (options.mfie)
  {
    ops.K_alpha = CMatrix::Zero(n, n);
  }
  if (options.k_beta)
  {
    ops.K_beta = CMatrix::Zero(n, n);
  }
  ops.G_bb = assemble_gram_bb(space);
  ops.G_ba = assemble_gram_ba(space);

  std::vector<std::array<Vec3, 3>> corners(nt);
  for (int t = 0; t < nt; t++)
  {
    corners[t] = mesh.corners(t);
  }
  // Observer triangles are processed in chunks: blocks are computed in
  // parallel, then scattered in a fixed order so results are deterministic.
  const int chunk = 16;
  std::vector<LocalBlock> blocks(static_cast<std::size_t>(chunk) * nt);
  for (int p0 = 0; p0 < nt; p0 += chunk)
  {
    const int p1 = std::min(nt, p0 + chunk);
    const long work = static_cast<long>(p1 - p0) * nt;
#pragma omp parallel for schedule(dynamic, 64)
    for (long idx = 0; idx < work; idx++)
    {
      const int p = p0 + static_cast<int>(idx / nt);
      const int q = static_cast<int>(idx % nt);
      compute_block(corners[p], mesh.normal(p), mesh.area(p), corners[q], ops.k0, options,
                    blocks[static_cast<std::size_t>(idx)]);
    }
    for (int p = p0; p < p1; p++)
    {
      const auto &lp = space.on_triangle(p);
      for (int q = 0; q < nt; q++)
      {
        const LocalBlock &blk = blocks[static_cast<std::size_t>(p - p0) * nt + q];
        const auto &lq = space.on_triangle(q);
        for (int i = 0; i < 3; i++)
        {
          const int m = lp[i].function;
          const int vi = lp[i].local_vertex;
          for (int j = 0; j < 3; j++)
          {
            const int nn = lq[j].function;
            const int vj = lq[j].local_vertex;
            const double ss = lp[i].scale * lq[j].scale;
            if (options.efie)
            {
              ops.B(m, nn) += ss * blk.b[vi][vj];
              // div = 2 * scale on each triangle
              ops.C(m, nn) -= 4.0 * ss * blk.s;
            }
            if (options.mfie)
            {
              ops.K_alpha(m, nn) += ss * blk.ka[vi][vj];
            }
            if (options.k_beta)
            {
              ops.K_beta(m, nn) += ss * blk.kb[vi][vj];
            }
          }
        }
      }
    }
  }
  return ops;
}

namespace
{

// Exact int_T (r - a) . (r - b) ds, and int_T (r - a) . (n x (r - b)) ds, via
// the degree-2 rule (integrands are quadratic).
double local_bb(const std::array<Vec3, 3> &c, double area, int i, int j)
{
  const TriangleRule &rule = gauss_rule(2);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); q++)
  {
    const Vec3 r = rule.map(c, q);
    acc += rule.weights[q] * (r - c[i]).dot(r - c[j]);
  }
  return acc * area;
}

double local_ba(const std::array<Vec3, 3> &c, const Vec3 &nrm, double area, int i, int j)
{
  const TriangleRule &rule = gauss_rule(2);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); q++)
  {
    const Vec3 r = rule.map(c, q);
    acc += rule.weights[q] * (r - c[i]).dot(nrm.cross(r - c[j]));
  }
  return acc * area;
}

template <class Local>
SparseMatrix assemble_gram(const RwgSpace &space, Local local)
{
  const TriangleMesh &mesh = space.mesh();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * mesh.num_triangles());
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); t++)
  {
    const auto &lb = space.on_triangle(t);
    for (int i = 0; i < 3; i++)
    {
      for (int j = 0; j < 3; j++)
      {
        const double v = lb[i].scale * lb[j].scale * local(t, lb[i].local_vertex, lb[j].local_vertex);
        trip.emplace_back(lb[i].function, lb[j].function, v);
      }
    }
  }
  SparseMatrix g(space.size(), space.size());
  g.setFromTriplets(trip.begin(), trip.end());
  g.makeCompressed();
  return g;
}

double gram_entry(const RwgSpace &space, int m, int n, bool rotated)
{
  if (m < 0 || n < 0 || m >= space.size() || n >= space.size())
  {
    fail(ErrorCode::InvalidArgument, "gram entry index out of range");
  }
  const TriangleMesh &mesh = space.mesh();
  const auto &fm = space.function(m);
  double acc = 0.0;
  for (int t : {fm.tri_plus, fm.tri_minus})
  {
    const auto &lb = space.on_triangle(t);
    int im = -1, in = -1;
    for (int k = 0; k < 3; k++)
    {
      if (lb[k].function == m)
      {
        im = k;
      }
      if (lb[k].function == n)
      {
        in = k;
      }
    }
    if (in < 0)
    {
      continue;
    }
    const auto c = mesh.corners(t);
    const double loc = rotated ? local_ba(c, mesh.normal(t), mesh.area(t), lb[im].local_vertex, lb[in].local_vertex)
                               : local_bb(c, mesh.area(t), lb[im].local_vertex, lb[in].local_vertex);
    acc += lb[im].scale * lb[in].scale * loc;
  }
  return acc;
}

}  // namespace

SparseMatrix assemble_gram_bb(const RwgSpace &space)
{
  const TriangleMesh &mesh = space.mesh();
  return assemble_gram(space, [&](int t, int i, int j) { return local_bb(mesh.corners(t), mesh.area(t), i, j); });
}

SparseMatrix assemble_gram_ba(const RwgSpace &space)
{
  const TriangleMesh &mesh = space.mesh();
  return assemble_gram(space, [&](int t, int i, int j)
                       { return local_ba(mesh.corners(t), mesh.normal(t), mesh.area(t), i, j); });
}

double gram_bb_entry(const RwgSpace &space, int m, int n) { return gram_entry(space, m, n, false); }

double gram_ba_entry(const RwgSpace &space, int m, int n) { return gram_entry(space, m, n, true); }

void validate_plane_wave(const PlaneWave &wave)
{
  const double kn = wave.direction.norm();
  if (!std::isfinite(kn) || std::abs(kn - 1.0) > 1e-9)
  {
    fail(ErrorCode::InvalidArgument, "plane wave direction must be a unit vector");
  }
  const double en = wave.polarization.norm();
  if (!std::isfinite(en) || en == 0.0)
  {
    fail(ErrorCode::InvalidArgument, "plane wave polarization must be nonzero and finite");
  }
  if (std::abs(wave.direction.cast<cplx>().dot(wave.polarization)) > 1e-12 * std::max(1.0, en))
  {
    fail(ErrorCode::InvalidArgument, "plane wave polarization is not transverse to the propagation direction");
  }
}

CVec3 incident_e(const PlaneWave &wave, double k0, const Vec3 &r)
{
  return wave.polarization * std::exp(cplx(0.0, -k0 * wave.direction.dot(r)));
}

CVec3 incident_h(const PlaneWave &wave, double k0, const Vec3 &r)
{
  const CVec3 h0 = ccross(wave.direction.cast<cplx>(), wave.polarization) / constants::Z0;
  return h0 * std::exp(cplx(0.0, -k0 * wave.direction.dot(r)));
}

ExcitationVectors excite_plane_wave(const RwgSpace &space, const PlaneWave &wave, double frequency, int degree)
{
  validate_plane_wave(wave);
  if (!(frequency > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "excite_plane_wave: frequency must be positive");
  }
  const double k0 = wavenumber(frequency);
  const TriangleMesh &mesh = space.mesh();
  const TriangleRule &rule = gauss_rule(degree);
  ExcitationVectors out{CVector::Zero(space.size()), CVector::Zero(space.size())};
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); t++)
  {
    const auto c = mesh.corners(t);
    const Vec3 &nrm = mesh.normal(t);
    const double area = mesh.area(t);
    const auto &lb = space.on_triangle(t);
    for (std::size_t q = 0; q < rule.size(); q++)
    {
      const Vec3 r = rule.map(c, q);
      const double w = rule.weights[q] * area;
      const CVec3 e = incident_e(wave, k0, r);
      const CVec3 h = incident_h(wave, k0, r);
      for (const auto &b : lb)
      {
        const Vec3 f = b.scale * (r - c[b.local_vertex]);
        const Vec3 a = nrm.cross(f);
        out.e[b.function] += w * (f[0] * e[0] + f[1] * e[1] + f[2] * e[2]);
        out.h[b.function] += w * (a[0] * h[0] + a[1] * h[1] + a[2] * h[2]);
      }
    }
  }
  return out;
}

namespace
{
constexpr char kMagic[8] = {'W', 'M', 'F', 'I', 'E', 'M', 'A', 'T'};
static_assert(std::endian::native == std::endian::little, "matrix dump assumes a little-endian host");
}  // namespace

void dump_matrix(const std::filesystem::path &path, const CMatrix &matrix)
{
  if (matrix.rows() != matrix.cols())
  {
    fail(ErrorCode::InvalidArgument, "dump_matrix: matrix must be square");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  }
  const std::uint64_t n = static_cast<std::uint64_t>(matrix.rows());
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char *>(&n), 8);
  std::vector<float> row(2 * n);
  for (std::uint64_t i = 0; i < n; i++)
  {
    for (std::uint64_t j = 0; j < n; j++)
    {
      row[2 * j] = static_cast<float>(matrix(i, j).real());
      row[2 * j + 1] = static_cast<float>(matrix(i, j).imag());
    }
    out.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row.size() * 4));
  }
  if (!out)
  {
    fail(ErrorCode::Io, "write failed for " + path.string());
  }
}

CMatrix read_matrix_dump(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    fail(ErrorCode::Io, "cannot open " + path.string());
  }
  char magic[8];
  std::uint64_t n = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char *>(&n), 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0 || n > (1u << 20))
  {
    fail(ErrorCode::Parse, path.string() + " is not a matrix dump");
  }
  CMatrix m(n, n);
  std::vector<float> row(2 * n);
  for (std::uint64_t i = 0; i < n; i++)
  {
    in.read(reinterpret_cast<char *>(row.data()), static_cast<std::streamsize>(row.size() * 4));
    if (!in)
    {
      fail(ErrorCode::Parse, path.string() + " is truncated");
    }
    for (std::uint64_t j = 0; j < n; j++)
    {
      m(i, j) = cplx(row[2 * j], row[2 * j + 1]);
    }
  }
  return m;
}

GramDiagnostics gram_diagnostics(const RwgSpace &space)
{
  if (space.size() > kGramDiagnosticsCap)
  {
    fail(ErrorCode::InvalidArgument, "gram diagnostics: " + std::to_string(space.size()) +
                                         " unknowns exceed the dense analysis cap");
  }
  GramDiagnostics out;
  const Eigen::MatrixXd gbb(assemble_gram_bb(space));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gbb, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
  out.bb_spd = lmin > 0.0 && (gbb - gbb.transpose()).norm() <= 1e-14 * gbb.norm();
  out.bb_condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();

  const Eigen::VectorXd s = gbb.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = s.asDiagonal() * gbb * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(scaled, Eigen::EigenvaluesOnly);
  const double smin = es2.eigenvalues().minCoeff(), smax = es2.eigenvalues().maxCoeff();
  out.bb_jacobi_condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

  const Eigen::MatrixXd gba(assemble_gram_ba(space));
  out.ba_skew_residual = (gba + gba.transpose()).norm() / gba.norm();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(gba);
  const auto &sv = svd.singularValues();
  out.ba_singular_ratio = sv.minCoeff() / sv.maxCoeff();
  return out;
}

}  // namespace wmfie
