#pragma once

#include <array>

namespace linbgk::kernels {

/// Transport flux options: first-order upwind (default for bound-verification
/// runs), MUSCL with minmod limiter, and unlimited Lax-Wendroff.
enum class Scheme { upwind, muscl_minmod, lax_wendroff };

struct TransportArgs {
  int nx = 0, nv = 0;
  const double* speeds = nullptr;  // a(v_j), constant in t and x
  double dt = 0.0;
  double dx = 0.0;
  Scheme scheme = Scheme::upwind;
};

/// Conservative periodic transport update out_i = in_i - (dt/dx)(F_{i+1/2} - F_{i-1/2}).
/// Serial reference implementation, kept for testing against the parallel kernel.
void transport_serial(const double* in, double* out, const TransportArgs& a);
void transport_omp(const double* in, double* out, const TransportArgs& a);

struct RelaxArgs {
  int nx = 0, nv = 0;
  std::array<const double*, 3> chi{};  // orthonormal hydrodynamic modes
  const double* weight_row = nullptr;  // quad_weights[j] * M(v_j)
  double dt = 0.0;
  double knudsen = 1.0;
  const double* src = nullptr;  // optional source field, same layout
};

/// Exact projection-relaxation substep with Duhamel source weights:
///   out = e^{-dt/Kn} w + (1 - e^{-dt/Kn}) Pi w
///       + Kn (1 - e^{-dt/Kn}) (S - Pi S) + dt Pi S.
void relax_source_serial(const double* in, double* out, const RelaxArgs& a);
void relax_source_omp(const double* in, double* out, const RelaxArgs& a);

void central_dx_serial(const double* in, double* out, int nx, int nv, double dx);
void central_dx_omp(const double* in, double* out, int nx, int nv, double dx);

/// Kernel dispatch switch: true -> OpenMP variants, false -> serial reference.
/// All kernels are bit-deterministic regardless of this setting and of the
/// thread count (no parallel reductions).
void set_parallel(bool on);
bool parallel_enabled();

void transport(const double* in, double* out, const TransportArgs& a);
void relax_source(const double* in, double* out, const RelaxArgs& a);
void central_dx_field(const double* in, double* out, int nx, int nv, double dx);

}  // namespace linbgk::kernels
