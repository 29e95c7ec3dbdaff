#include "linbgk/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace linbgk::kernels {

namespace {

bool g_parallel = true;

inline double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return a < b ? a : b;
  if (a < 0.0 && b < 0.0) return a > b ? a : b;
  return 0.0;
}

/// Flux through the face between cells w0 and wp1. wm1 and wp2 are the next
/// neighbors outward; nu = a*dt/dx is signed. Shared faces are evaluated with
/// the identical expression so the update telescopes exactly.
inline double face_flux(double a, double nu, double wm1, double w0, double wp1, double wp2,
                        Scheme s) {
  switch (s) {
    case Scheme::upwind:
      return a > 0.0 ? a * w0 : a * wp1;
    case Scheme::lax_wendroff:
      return 0.5 * a * ((w0 + wp1) - nu * (wp1 - w0));
    case Scheme::muscl_minmod:
    default: {
      if (a > 0.0) {
        const double sigma = minmod(w0 - wm1, wp1 - w0);
        return a * (w0 + 0.5 * (1.0 - nu) * sigma);
      }
      if (a < 0.0) {
        const double sigma = minmod(wp1 - w0, wp2 - wp1);
        return a * (wp1 - 0.5 * (1.0 + nu) * sigma);
      }
      return 0.0;
    }
  }
}

inline void transport_row_range(const double* in, double* out, const TransportArgs& a, int i_begin,
                                int i_end) {
  const int nx = a.nx, nv = a.nv;
  const double r = a.dt / a.dx;
  for (int i = i_begin; i < i_end; ++i) {
    const int im2 = (i - 2 + nx) % nx;
    const int im1 = (i - 1 + nx) % nx;
    const int ip1 = (i + 1) % nx;
    const int ip2 = (i + 2) % nx;
    const double* rm2 = in + static_cast<size_t>(im2) * nv;
    const double* rm1 = in + static_cast<size_t>(im1) * nv;
    const double* r0 = in + static_cast<size_t>(i) * nv;
    const double* rp1 = in + static_cast<size_t>(ip1) * nv;
    const double* rp2 = in + static_cast<size_t>(ip2) * nv;
    double* o = out + static_cast<size_t>(i) * nv;
    for (int j = 0; j < nv; ++j) {
      const double aj = a.speeds[j];
      if (aj == 0.0) {
        o[j] = r0[j];
        continue;
      }
      const double nu = aj * r;
      const double f_right = face_flux(aj, nu, rm1[j], r0[j], rp1[j], rp2[j], a.scheme);
      const double f_left = face_flux(aj, nu, rm2[j], rm1[j], r0[j], rp1[j], a.scheme);
      o[j] = r0[j] - r * (f_right - f_left);
    }
  }
}

inline void relax_row_range(const double* in, double* out, const RelaxArgs& a, int i_begin,
                            int i_end) {
  const int nv = a.nv;
  const double tau = a.dt / a.knudsen;
  const double decay = std::exp(-tau);
  const double grow = 1.0 - decay;
  const double c_src = a.knudsen * grow;       // weight of (S - Pi S)
  const double c_src_pi = a.dt - c_src;        // extra weight so Pi S gets dt in total
  for (int i = i_begin; i < i_end; ++i) {
    const double* w = in + static_cast<size_t>(i) * nv;
    double* o = out + static_cast<size_t>(i) * nv;
    double cf0 = 0.0, cf1 = 0.0, cf2 = 0.0;
    for (int j = 0; j < nv; ++j) {
      const double wm = a.weight_row[j] * w[j];
      cf0 += wm * a.chi[0][j];
      cf1 += wm * a.chi[1][j];
      cf2 += wm * a.chi[2][j];
    }
    if (a.src) {
      const double* s = a.src + static_cast<size_t>(i) * nv;
      double cs0 = 0.0, cs1 = 0.0, cs2 = 0.0;
      for (int j = 0; j < nv; ++j) {
        const double sm = a.weight_row[j] * s[j];
        cs0 += sm * a.chi[0][j];
        cs1 += sm * a.chi[1][j];
        cs2 += sm * a.chi[2][j];
      }
      for (int j = 0; j < nv; ++j) {
        const double proj = cf0 * a.chi[0][j] + cf1 * a.chi[1][j] + cf2 * a.chi[2][j];
        const double proj_s = cs0 * a.chi[0][j] + cs1 * a.chi[1][j] + cs2 * a.chi[2][j];
        o[j] = decay * w[j] + grow * proj + c_src * s[j] + c_src_pi * proj_s;
      }
    } else {
      for (int j = 0; j < nv; ++j) {
        const double proj = cf0 * a.chi[0][j] + cf1 * a.chi[1][j] + cf2 * a.chi[2][j];
        o[j] = decay * w[j] + grow * proj;
      }
    }
  }
}

}  // namespace

void transport_serial(const double* in, double* out, const TransportArgs& a) {
  transport_row_range(in, out, a, 0, a.nx);
}

void transport_omp(const double* in, double* out, const TransportArgs& a) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.nx; ++i) transport_row_range(in, out, a, i, i + 1);
}

void relax_source_serial(const double* in, double* out, const RelaxArgs& a) {
  relax_row_range(in, out, a, 0, a.nx);
}

void relax_source_omp(const double* in, double* out, const RelaxArgs& a) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.nx; ++i) relax_row_range(in, out, a, i, i + 1);
}

void central_dx_serial(const double* in, double* out, int nx, int nv, double dx) {
  const double c = 0.5 / dx;
  for (int i = 0; i < nx; ++i) {
    const double* rm1 = in + static_cast<size_t>((i - 1 + nx) % nx) * nv;
    const double* rp1 = in + static_cast<size_t>((i + 1) % nx) * nv;
    double* o = out + static_cast<size_t>(i) * nv;
    for (int j = 0; j < nv; ++j) o[j] = c * (rp1[j] - rm1[j]);
  }
}

void central_dx_omp(const double* in, double* out, int nx, int nv, double dx) {
  const double c = 0.5 / dx;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    const double* rm1 = in + static_cast<size_t>((i - 1 + nx) % nx) * nv;
    const double* rp1 = in + static_cast<size_t>((i + 1) % nx) * nv;
    double* o = out + static_cast<size_t>(i) * nv;
    for (int j = 0; j < nv; ++j) o[j] = c * (rp1[j] - rm1[j]);
  }
}

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel; }

void transport(const double* in, double* out, const TransportArgs& a) {
  g_parallel ? transport_omp(in, out, a) : transport_serial(in, out, a);
}

void relax_source(const double* in, double* out, const RelaxArgs& a) {
  g_parallel ? relax_source_omp(in, out, a) : relax_source_serial(in, out, a);
}

void central_dx_field(const double* in, double* out, int nx, int nv, double dx) {
  g_parallel ? central_dx_omp(in, out, nx, nv, dx) : central_dx_serial(in, out, nx, nv, dx);
}

}  // namespace linbgk::kernels
