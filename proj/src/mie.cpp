// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/mie.hpp"

#include <algorithm>
#include <cmath>

namespace wmfie
{

// Internally the series is evaluated in the exp(-i w t) convention with
// h_n^(1); results are conjugated on the way out.

int default_mie_order(double ka) { return static_cast<int>(std::ceil(ka)) + 15; }

void spherical_bessel(int nmax, double x, std::vector<double> &j, std::vector<double> &y)
{
  if (!(x > 0.0) || nmax < 1)
  {
    fail(ErrorCode::InvalidArgument, "spherical_bessel: x must be positive and nmax >= 1");
  }
  j.assign(nmax + 1, 0.0);
  y.assign(nmax + 1, 0.0);
  y[0] = -std::cos(x) / x;
  y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < nmax; n++)
  {
    y[n + 1] = (2.0 * n + 1.0) / x * y[n] - y[n - 1];
  }
  if (x > nmax)
  {
    // Upward recurrence is stable for j_n while n < x.
    j[0] = std::sin(x) / x;
    j[1] = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int n = 1; n < nmax; n++)
    {
      j[n + 1] = (2.0 * n + 1.0) / x * j[n] - j[n - 1];
    }
    return;
  }
  const int start = nmax + 30 + static_cast<int>(x);
  double jp1 = 0.0, jn = 1e-300;
  std::vector<double> tmp(start + 2, 0.0);
  tmp[start] = jn;
  for (int n = start; n >= 1; n--)
  {
    const double jm1 = (2.0 * n + 1.0) / x * jn - jp1;
    jp1 = jn;
    jn = jm1;
    tmp[n - 1] = jn;
    if (std::abs(jn) > 1e250)
    {
      for (int k = n - 1; k <= start; k++)
      {
        tmp[k] *= 1e-250;
      }
      jn *= 1e-250;
      jp1 *= 1e-250;
    }
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double scale = std::abs(j0) > std::abs(j1) ? j0 / tmp[0] : j1 / tmp[1];
  for (int n = 0; n <= nmax; n++)
  {
    j[n] = tmp[n] * scale;
  }
}

MieSolution mie_coefficients(double radius, double k0, int order)
{
  if (!(radius > 0.0) || !(k0 > 0.0))
  {
    fail(ErrorCode::InvalidArgument, "mie_coefficients: radius and k0 must be positive");
  }
  const double x = k0 * radius;
  const int L = order > 0 ? order : default_mie_order(x);
  if (L < x + 1.0)
  {
    fail(ErrorCode::InvalidArgument, "mie_coefficients: order " + std::to_string(L) + " is below ka = " +
                                         std::to_string(x));
  }
  std::vector<double> j, y;
  spherical_bessel(L, x, j, y);
  MieSolution sol;
  sol.radius = radius;
  sol.k0 = k0;
  sol.order = L;
  double peak = 0.0;
  for (int n = 1; n <= L; n++)
  {
    const cplx h(j[n], y[n]), hm1(j[n - 1], y[n - 1]);
    const double psi = x * j[n];
    const double dpsi = x * j[n - 1] - n * j[n];
    const cplx xi = x * h;
    const cplx dxi = x * hm1 - static_cast<double>(n) * h;
    const cplx an = dpsi / dxi;
    const cplx bn = psi / xi;
    sol.a.push_back(std::conj(an));
    sol.b.push_back(std::conj(bn));
    peak = std::max(peak, std::abs(an) + std::abs(bn));
  }
  const double tail = std::abs(sol.a.back()) + std::abs(sol.b.back());
  if (!(tail <= 1e-8 * peak))
  {
    fail(ErrorCode::InvalidArgument, "mie_coefficients: series not converged at order " + std::to_string(L));
  }
  return sol;
}

double mie_extinction_cross_section(const MieSolution &sol)
{
  double s = 0.0;
  for (int n = 1; n <= sol.order; n++)
  {
    s += (2.0 * n + 1.0) * (sol.a[n - 1] + sol.b[n - 1]).real();
  }
  return 2.0 * pi / (sol.k0 * sol.k0) * s;
}

double mie_scattering_cross_section(const MieSolution &sol)
{
  double s = 0.0;
  for (int n = 1; n <= sol.order; n++)
  {
    s += (2.0 * n + 1.0) * (std::norm(sol.a[n - 1]) + std::norm(sol.b[n - 1]));
  }
  return 2.0 * pi / (sol.k0 * sol.k0) * s;
}

namespace
{

void angular(int L, double mu, std::vector<double> &pin, std::vector<double> &tau)
{
  pin.assign(L + 1, 0.0);
  tau.assign(L + 1, 0.0);
  pin[1] = 1.0;
  tau[1] = mu;
  for (int n = 2; n <= L; n++)
  {
    pin[n] = (2.0 * n - 1.0) / (n - 1.0) * mu * pin[n - 1] - n / (n - 1.0) * pin[n - 2];
    tau[n] = n * mu * pin[n] - (n + 1.0) * pin[n - 1];
  }
}

// Linear polarization components of the complex amplitude E0: E0 = sum_k c_k p_k
// with real unit vectors p_k transverse to k_hat.
struct LinearPart
{
  cplx amplitude;
  Vec3 x, y, z;  // local frame: x along polarization, z along propagation
};

std::vector<LinearPart> decompose(const PlaneWave &wave)
{
  validate_plane_wave(wave);
  std::vector<LinearPart> parts;
  const Vec3 z = wave.direction;
  const Vec3 re = wave.polarization.real(), im = wave.polarization.imag();
  for (int k = 0; k < 2; k++)
  {
    const Vec3 &p = k == 0 ? re : im;
    const double n = p.norm();
    if (n == 0.0)
    {
      continue;
    }
    LinearPart lp;
    lp.amplitude = k == 0 ? cplx(n, 0.0) : cplx(0.0, n);
    lp.x = p / n;
    lp.z = z;
    lp.y = z.cross(lp.x);
    parts.push_back(lp);
  }
  return parts;
}

struct LocalAngles
{
  double theta, phi;
  Vec3 rhat, th, ph;  // global components of the local spherical unit vectors
};

LocalAngles local_angles(const LinearPart &f, const Vec3 &p)
{
  const double xl = p.dot(f.x), yl = p.dot(f.y), zl = p.dot(f.z);
  const double rho = std::hypot(xl, yl);
  LocalAngles a;
  a.theta = std::atan2(rho, zl);
  a.phi = std::atan2(yl, xl);
  const double st = std::sin(a.theta), ct = std::cos(a.theta), sp = std::sin(a.phi), cp = std::cos(a.phi);
  a.rhat = st * cp * f.x + st * sp * f.y + ct * f.z;
  a.th = ct * cp * f.x + ct * sp * f.y - st * f.z;
  a.ph = -sp * f.x + cp * f.y;
  return a;
}

}  // namespace

FarFieldCut mie_far_field(const MieSolution &sol, const PlaneWave &wave, const std::vector<Direction> &directions)
{
  const auto parts = decompose(wave);
  const double k = sol.k0;
  const cplx i1(0.0, 1.0);
  FarFieldCut cut;
  cut.directions = directions;
  cut.e_theta.assign(directions.size(), 0.0);
  cut.e_phi.assign(directions.size(), 0.0);
  std::vector<double> pin, tau;
  for (std::size_t d = 0; d < directions.size(); d++)
  {
    const Vec3 rhat = direction_vector(directions[d]);
    const Vec3 gth = theta_hat(directions[d]), gph = phi_hat(directions[d]);
    CVec3 total = CVec3::Zero();
    for (const auto &part : parts)
    {
      const LocalAngles la = local_angles(part, rhat);
      angular(sol.order, std::cos(la.theta), pin, tau);
      cplx s1 = 0.0, s2 = 0.0;
      for (int n = 1; n <= sol.order; n++)
      {
        const double c = (2.0 * n + 1.0) / (n * (n + 1.0));
        const cplx an = std::conj(sol.a[n - 1]), bn = std::conj(sol.b[n - 1]);
        s1 += c * (an * pin[n] + bn * tau[n]);
        s2 += c * (an * tau[n] + bn * pin[n]);
      }
      const cplx ft = (i1 / k) * std::cos(la.phi) * s2;
      const cplx fp = -(i1 / k) * std::sin(la.phi) * s1;
      const CVec3 f = std::conj(ft) * la.th.cast<cplx>() + std::conj(fp) * la.ph.cast<cplx>();
      total += part.amplitude * f;
    }
    cut.e_theta[d] = gth.cast<cplx>().dot(total);
    cut.e_phi[d] = gph.cast<cplx>().dot(total);
  }
  return cut;
}

std::vector<NearFieldPoint> mie_near_field(const MieSolution &sol, const PlaneWave &wave,
                                           const std::vector<Vec3> &points)
{
  const auto parts = decompose(wave);
  const double k = sol.k0;
  const cplx i1(0.0, 1.0);
  std::vector<NearFieldPoint> out(points.size());
  std::vector<double> pin, tau, jn, yn;
  for (std::size_t p = 0; p < points.size(); p++)
  {
    const double r = points[p].norm();
    if (!(r > sol.radius))
    {
      fail(ErrorCode::InvalidArgument, "mie_near_field: point " + std::to_string(p) + " is not outside the sphere");
    }
    const double rho = k * r;
    spherical_bessel(sol.order, rho, jn, yn);
    CVec3 etot = CVec3::Zero(), htot = CVec3::Zero();
    for (const auto &part : parts)
    {
      const LocalAngles la = local_angles(part, points[p]);
      const double mu = std::cos(la.theta), st = std::sin(la.theta);
      const double sp = std::sin(la.phi), cp = std::cos(la.phi);
      angular(sol.order, mu, pin, tau);
      // Components in (r, theta, phi).
      cplx er = 0.0, et = 0.0, ep = 0.0, hr = 0.0, ht = 0.0, hp = 0.0;
      cplx in = 1.0;
      for (int n = 1; n <= sol.order; n++)
      {
        in *= i1;
        const cplx en = in * (2.0 * n + 1.0) / (n * (n + 1.0));
        const cplx z(jn[n], yn[n]);
        const cplx dz = (rho * cplx(jn[n - 1], yn[n - 1]) - static_cast<double>(n) * z) / rho;
        const double nn1 = n * (n + 1.0);
        const cplx an = std::conj(sol.a[n - 1]), bn = std::conj(sol.b[n - 1]);
        // M_o1n, M_e1n, N_o1n, N_e1n
        const cplx mo_t = cp * pin[n] * z, mo_p = -sp * tau[n] * z;
        const cplx me_t = -sp * pin[n] * z, me_p = -cp * tau[n] * z;
        const cplx no_r = sp * nn1 * st * pin[n] * z / rho, no_t = sp * tau[n] * dz, no_p = cp * pin[n] * dz;
        const cplx ne_r = cp * nn1 * st * pin[n] * z / rho, ne_t = cp * tau[n] * dz, ne_p = -sp * pin[n] * dz;
        er += en * (i1 * an * ne_r);
        et += en * (i1 * an * ne_t - bn * mo_t);
        ep += en * (i1 * an * ne_p - bn * mo_p);
        hr += en * (i1 * bn * no_r);
        ht += en * (i1 * bn * no_t + an * me_t);
        hp += en * (i1 * bn * no_p + an * me_p);
      }
      const CVec3 e = std::conj(er) * la.rhat.cast<cplx>() + std::conj(et) * la.th.cast<cplx>() +
                      std::conj(ep) * la.ph.cast<cplx>();
      const CVec3 h = std::conj(hr) * la.rhat.cast<cplx>() + std::conj(ht) * la.th.cast<cplx>() +
                      std::conj(hp) * la.ph.cast<cplx>();
      etot += part.amplitude * e;
      htot += part.amplitude * h / constants::Z0;
    }
    out[p].e = etot;
    out[p].h = htot;
  }
  return out;
}

}  // namespace wmfie
