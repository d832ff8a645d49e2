#include "manybeam/potential.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace manybeam {

namespace {

// boundary slack for z checks; steppers may land a hair outside [z_e, 0]
constexpr double kZTol = 1e-9;

void validate_bottom(double z_bottom) {
  if (!(z_bottom < 0.0) || !std::isfinite(z_bottom))
    throw ConfigError("potential: z_bottom must be negative and finite");
}

void validate_period(double z_bottom, const std::optional<double>& period) {
  if (!period) return;
  if (!(*period > 0.0) || !std::isfinite(*period))
    throw ConfigError("potential: bulk_period must be positive and finite");
  if (*period > -z_bottom + kZTol)
    throw ConfigError("potential: bulk_period must not exceed |z_bottom|");
}

}  // namespace

PotentialField PotentialField::zero(double z_bottom) {
  validate_bottom(z_bottom);
  PotentialField f;
  f.kind_ = Kind::Zero;
  f.z_bottom_ = z_bottom;
  return f;
}

PotentialField PotentialField::gaussian_layers(double z_bottom, std::vector<GaussianLayer> layers,
                                               std::optional<double> bulk_period) {
  validate_bottom(z_bottom);
  validate_period(z_bottom, bulk_period);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const GaussianLayer& l = layers[i];
    const bool finite = std::isfinite(l.z_center) && std::isfinite(l.amplitude) &&
                        std::isfinite(l.sigma_xy) && std::isfinite(l.sigma_z) &&
                        std::isfinite(l.absorption);
    if (!finite || !(l.sigma_xy > 0.0) || !(l.sigma_z > 0.0) || l.absorption < 0.0)
      throw ConfigError("potential: layer " + std::to_string(i) +
                        " needs sigma_xy > 0, sigma_z > 0, absorption >= 0, finite values");
  }
  PotentialField f;
  f.kind_ = Kind::GaussianLayers;
  f.z_bottom_ = z_bottom;
  f.bulk_period_ = bulk_period;
  f.layers_ = std::move(layers);
  return f;
}

PotentialField PotentialField::tabulated(double z_bottom, std::vector<double> z_grid,
                                         std::vector<TabulatedEntry> entries,
                                         std::optional<double> bulk_period) {
  validate_bottom(z_bottom);
  validate_period(z_bottom, bulk_period);
  if (z_grid.size() < 2) throw ConfigError("potential: tabulated z_grid needs at least 2 points");
  for (std::size_t i = 0; i + 1 < z_grid.size(); ++i) {
    if (!(z_grid[i] < z_grid[i + 1]))
      throw ConfigError("potential: tabulated z_grid must be strictly increasing");
  }
  if (z_grid.front() > z_bottom + kZTol || z_grid.back() < -kZTol)
    throw ConfigError("potential: tabulated z_grid must cover [z_bottom, 0]");
  for (const TabulatedEntry& e : entries) {
    if (e.values.size() != z_grid.size())
      throw ConfigError("potential: tabulated entry (" + std::to_string(e.dm.x()) + "," +
                        std::to_string(e.dm.y()) + ") has " + std::to_string(e.values.size()) +
                        " samples, expected " + std::to_string(z_grid.size()));
    for (const Complex& v : e.values) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ConfigError("potential: tabulated entry has nonfinite sample");
    }
  }
  PotentialField f;
  f.kind_ = Kind::Tabulated;
  f.z_bottom_ = z_bottom;
  f.bulk_period_ = bulk_period;
  f.z_grid_ = std::move(z_grid);
  f.entries_ = std::move(entries);
  return f;
}

BoundPotential::BoundPotential(const PotentialField& field, const RodSet& rods) {
  kind_ = field.kind();
  n_ = rods.size();
  ndiff_ = rods.diff_count();
  z_bottom_ = field.z_bottom();
  bulk_period_ = field.bulk_period();
  diff_index_.resize((std::size_t)n_ * n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) diff_index_[(std::size_t)j * n_ + k] = rods.diff_index(j, k);

  if (kind_ == PotentialField::Kind::GaussianLayers) {
    layers_ = field.layers();
    layer_amp_.reserve(layers_.size());
    lateral_.reserve(layers_.size());
    for (const GaussianLayer& l : layers_) {
      layer_amp_.push_back(Complex(l.amplitude, l.amplitude * l.absorption));
      std::vector<double> lat((std::size_t)ndiff_);
      for (int d = 0; d < ndiff_; ++d)
        lat[d] = std::exp(-rods.diff(d).squaredNorm() / (2.0 * l.sigma_xy * l.sigma_xy));
      lateral_.push_back(std::move(lat));
    }
  } else if (kind_ == PotentialField::Kind::Tabulated) {
    z_grid_ = field.z_grid();
    std::map<std::pair<int, int>, const TabulatedEntry*> by_dm;
    for (const TabulatedEntry& e : field.entries()) by_dm[{e.dm.x(), e.dm.y()}] = &e;
    samples_.resize(ndiff_);
    slopes_.resize(ndiff_);
    const std::size_t g = z_grid_.size();
    for (int d = 0; d < ndiff_; ++d) {
      const Eigen::Vector2i dm = rods.diff_m(d);
      auto it = by_dm.find({dm.x(), dm.y()});
      if (it == by_dm.end())
        throw ConfigError("potential: tabulated field lacks coefficient for rod difference (" +
                          std::to_string(dm.x()) + "," + std::to_string(dm.y()) + ")");
      samples_[d] = it->second->values;
      // finite-difference Hermite slopes, quadratic-exact including ends
      std::vector<Complex>& s = slopes_[d];
      s.resize(g);
      const std::vector<Complex>& y = samples_[d];
      if (g == 2) {
        s[0] = s[1] = (y[1] - y[0]) / (z_grid_[1] - z_grid_[0]);
      } else {
        for (std::size_t i = 1; i + 1 < g; ++i) {
          const double hl = z_grid_[i] - z_grid_[i - 1];
          const double hr = z_grid_[i + 1] - z_grid_[i];
          s[i] = ((y[i + 1] - y[i]) / hr * hl + (y[i] - y[i - 1]) / hl * hr) / (hl + hr);
        }
        {
          const double h0 = z_grid_[1] - z_grid_[0], h1 = z_grid_[2] - z_grid_[1];
          s[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * y[0] + (h0 + h1) / (h0 * h1) * y[1] -
                 h0 / (h1 * (h0 + h1)) * y[2];
        }
        {
          const double h0 = z_grid_[g - 2] - z_grid_[g - 3], h1 = z_grid_[g - 1] - z_grid_[g - 2];
          s[g - 1] = h1 / (h0 * (h0 + h1)) * y[g - 3] - (h0 + h1) / (h0 * h1) * y[g - 2] +
                     (2.0 * h1 + h0) / (h1 * (h0 + h1)) * y[g - 1];
        }
      }
    }
  }
}

double BoundPotential::map_z(double z) const {
  if (z > kZTol || !std::isfinite(z))
    throw DomainError("potential evaluated above the surface: z = " + std::to_string(z));
  if (z > 0.0) z = 0.0;
  if (z >= z_bottom_) return z;
  if (z >= z_bottom_ - kZTol) return z_bottom_;
  if (!bulk_period_)
    throw DomainError("potential evaluated below z_bottom without a bulk period: z = " +
                      std::to_string(z));
  const double p = *bulk_period_;
  const double k = std::ceil((z_bottom_ - z) / p - 1e-12);
  double zm = z + k * p;
  if (zm < z_bottom_) zm += p;
  if (zm > z_bottom_ + p) zm = z_bottom_ + p;
  return std::min(zm, 0.0);
}

void BoundPotential::eval_coeffs(double z, std::vector<Complex>& out) const {
  out.assign((std::size_t)ndiff_, Complex(0.0, 0.0));
  const double zm = map_z(z);
  if (kind_ == PotentialField::Kind::Zero) return;
  if (kind_ == PotentialField::Kind::GaussianLayers) {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      const GaussianLayer& gl = layers_[l];
      const double dz = (zm - gl.z_center) / gl.sigma_z;
      const Complex depth = layer_amp_[l] * std::exp(-0.5 * dz * dz);
      const std::vector<double>& lat = lateral_[l];
      for (int d = 0; d < ndiff_; ++d) out[d] += depth * lat[d];
    }
    return;
  }
  // tabulated: one interval lookup shared by every difference
  const std::size_t g = z_grid_.size();
  std::size_t i = (std::size_t)(std::upper_bound(z_grid_.begin(), z_grid_.end(), zm) -
                                z_grid_.begin());
  if (i == 0) i = 1;
  if (i >= g) i = g - 1;
  const double zl = z_grid_[i - 1], zr = z_grid_[i];
  const double h = zr - zl;
  const double t = std::clamp((zm - zl) / h, 0.0, 1.0);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  for (int d = 0; d < ndiff_; ++d) {
    out[d] = h00 * samples_[d][i - 1] + h10 * h * slopes_[d][i - 1] + h01 * samples_[d][i] +
             h11 * h * slopes_[d][i];
  }
}

void BoundPotential::eval(double z, ComplexMatrix& U) const {
  static thread_local std::vector<Complex> coeffs;
  eval_coeffs(z, coeffs);
  U.resize(n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j) U(j, k) = coeffs[diff_index_[(std::size_t)j * n_ + k]];
}

ComplexMatrix BoundPotential::eval(double z) const {
  ComplexMatrix U;
  eval(z, U);
  return U;
}

}  // namespace manybeam
