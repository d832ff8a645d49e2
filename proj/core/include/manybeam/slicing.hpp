#pragma once

#include <cmath>
#include <string>

#include "manybeam/types.hpp"

namespace manybeam {

// Uniform partition of [z_bottom, 0] into `count` slices of width h,
// h * count = |z_bottom| by construction.
struct SlicingPlan {
  double z_bottom = -1.0;
  long count = 1;
  double h = 1.0;

  static SlicingPlan with_count(double z_bottom, long count) {
    if (!(z_bottom < 0.0) || !std::isfinite(z_bottom))
      throw ConfigError("slicing: z_bottom must be negative and finite");
    if (count < 1) throw ConfigError("slicing: slice count must be >= 1");
    return SlicingPlan{z_bottom, count, -z_bottom / (double)count};
  }

  // rounds the count so the width lands as close to dz as the domain allows
  static SlicingPlan with_target_dz(double z_bottom, double dz) {
    if (!(dz > 0.0) || !std::isfinite(dz)) throw ConfigError("slicing: dz must be positive");
    if (!(z_bottom < 0.0) || !std::isfinite(z_bottom))
      throw ConfigError("slicing: z_bottom must be negative and finite");
    const long count = std::max(1L, std::lround(-z_bottom / dz));
    return with_count(z_bottom, count);
  }

  // z_0 = z_bottom, z_count = 0 exactly, monotone in between
  double z(long i) const { return z_bottom * (double)(count - i) / (double)count; }
};

}  // namespace manybeam
