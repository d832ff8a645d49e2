#pragma once

#include <optional>
#include <vector>

#include "manybeam/rods.hpp"
#include "manybeam/types.hpp"

namespace manybeam {

// One laterally smooth scattering layer. Its Fourier coefficient at rod
// difference dk and height z is
//   amplitude * exp(-||dk||^2 / (2 sigma_xy^2))
//             * exp(-(z - z_center)^2 / (2 sigma_z^2)) * (1 + i absorption).
// Note the equations of motion make Im(u) < 0 absorbing, so lossy layers
// pair a negative amplitude with absorption > 0.
struct GaussianLayer {
  double z_center = 0.0;    // A
  double amplitude = 0.0;   // 1/A^2
  double sigma_xy = 1.0;    // 1/A
  double sigma_z = 1.0;     // A
  double absorption = 0.0;  // alpha >= 0
};

// Complex coefficient samples for one rod difference, keyed by the integer
// reciprocal-basis offset so matching against a rod set is exact.
struct TabulatedEntry {
  Eigen::Vector2i dm{0, 0};
  std::vector<Complex> values;  // one per z-grid point
};

// Laterally periodic scattering potential on z in [z_bottom, 0]. With a
// bulk period p, z < z_bottom is defined by periodic extension into
// [z_bottom, z_bottom + p).
class PotentialField {
 public:
  enum class Kind { Zero, GaussianLayers, Tabulated };

  static PotentialField zero(double z_bottom);
  static PotentialField gaussian_layers(double z_bottom, std::vector<GaussianLayer> layers,
                                        std::optional<double> bulk_period = {});
  static PotentialField tabulated(double z_bottom, std::vector<double> z_grid,
                                  std::vector<TabulatedEntry> entries,
                                  std::optional<double> bulk_period = {});

  Kind kind() const { return kind_; }
  double z_bottom() const { return z_bottom_; }
  const std::optional<double>& bulk_period() const { return bulk_period_; }
  const std::vector<GaussianLayer>& layers() const { return layers_; }
  const std::vector<double>& z_grid() const { return z_grid_; }
  const std::vector<TabulatedEntry>& entries() const { return entries_; }

 private:
  PotentialField() = default;
  Kind kind_ = Kind::Zero;
  double z_bottom_ = -1.0;
  std::optional<double> bulk_period_;
  std::vector<GaussianLayer> layers_;
  std::vector<double> z_grid_;
  std::vector<TabulatedEntry> entries_;
};

// A potential bound to a rod set: evaluates the n x n coupling matrix
// U(z)_{jk} = u(k_j - k_k, z) via the deduplicated difference table.
// Tabulated fields interpolate in z with a piecewise-cubic Hermite rule
// (finite-difference slopes; order-limited but local and monotone-friendly).
class BoundPotential {
 public:
  BoundPotential(const PotentialField& field, const RodSet& rods);

  int n() const { return n_; }
  double z_bottom() const { return z_bottom_; }
  const std::optional<double>& bulk_period() const { return bulk_period_; }
  bool is_zero() const { return kind_ == PotentialField::Kind::Zero; }

  // coefficients per unique rod difference at height z
  void eval_coeffs(double z, std::vector<Complex>& out) const;
  void eval(double z, ComplexMatrix& U) const;
  ComplexMatrix eval(double z) const;

 private:
  double map_z(double z) const;

  PotentialField::Kind kind_ = PotentialField::Kind::Zero;
  int n_ = 0;
  int ndiff_ = 0;
  double z_bottom_ = -1.0;
  std::optional<double> bulk_period_;
  std::vector<int> diff_index_;  // n x n -> difference slot

  // gaussian layers: per-layer complex amplitude and lateral factor per diff
  std::vector<GaussianLayer> layers_;
  std::vector<Complex> layer_amp_;
  std::vector<std::vector<double>> lateral_;  // [layer][diff]

  // tabulated: per-diff samples and precomputed Hermite slopes
  std::vector<double> z_grid_;
  std::vector<std::vector<Complex>> samples_;  // [diff][grid]
  std::vector<std::vector<Complex>> slopes_;   // [diff][grid]
};

}  // namespace manybeam
