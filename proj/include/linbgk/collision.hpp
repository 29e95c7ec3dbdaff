#pragma once

#include <array>
#include <span>

#include "linbgk/basis.hpp"
#include "linbgk/field.hpp"

namespace linbgk {

/// Which Maxwellian the weighted product uses: the full (u, T) linearization
/// point, the zero-mean/(same T) one of the shifted frame, or the unit one of
/// the scaled frame.
enum class WeightFrame { star, zero_mean, unit };

/// Linearized BGK collision operator L = Pi - I, the defect of the orthogonal
/// projection onto span{1, v, v^2} under the weighted product. Immutable and
/// reentrant; acts on single velocity slices, x handled by mapping over rows.
class CollisionOperator {
 public:
  CollisionOperator(WeightFrame frame, CollisionBasis basis)
      : frame_(frame), basis_(std::move(basis)) {}

  WeightFrame frame() const { return frame_; }
  const CollisionBasis& basis() const { return basis_; }

  /// m[f] = sum_i <chi_i, f>_* chi_i over the hydrodynamic modes. Idempotent.
  void project(std::span<const double> f, std::span<double> out) const;

  /// L f = m[f] - f.
  void apply(std::span<const double> f, std::span<double> out) const;

  /// (<1,f>_*, <v,f>_*, <v^2,f>_*).
  std::array<double, 3> moments_weighted(std::span<const double> f) const;

  /// L applied row-wise over a full field.
  void apply_field(const DistributionField& w, DistributionField& out) const;

 private:
  void check(std::span<const double> f) const;

  WeightFrame frame_;
  CollisionBasis basis_;
};

/// Builds the operator in the requested frame from the linearization-point
/// parameters: star -> (u, T), zero_mean -> (0, T), unit -> (0, 1).
CollisionOperator make_collision_operator(const MaxwellianParams& params, const VelocityGrid& grid,
                                          WeightFrame frame, int extra_modes = 0);

/// L2(M dx dv) norm of a field under the basis weight.
double norm_xv_weighted(const DistributionField& w, const PhaseGrid& g, const CollisionBasis& b);

}  // namespace linbgk
