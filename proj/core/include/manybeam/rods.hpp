#pragma once

#include <vector>

#include "manybeam/types.hpp"

namespace manybeam {

// 2D surface lattice; reciprocal basis satisfies a_i . b_j = 2 pi delta_ij.
struct Lattice2D {
  Vec2 a1{0.0, 0.0};
  Vec2 a2{0.0, 0.0};

  Vec2 b1() const;
  Vec2 b2() const;
  void validate() const;  // throws ConfigError on a degenerate cell
};

// Truncated set of reciprocal rods m1 b1 + m2 b2 with ||k|| <= cutoff,
// sorted by (||k||, kx, ky) so the zero rod is index 0. Also owns the table
// of pairwise rod differences k_j - k_k, deduplicated, so potential
// coefficients are evaluated once per distinct difference.
class RodSet {
 public:
  static RodSet build(const Lattice2D& lattice, double cutoff);

  int size() const { return (int)k_.size(); }
  const Vec2& k(int i) const { return k_[i]; }
  const Eigen::Vector2i& m(int i) const { return m_[i]; }
  const Lattice2D& lattice() const { return lattice_; }
  double cutoff() const { return cutoff_; }

  int diff_count() const { return (int)diff_.size(); }
  const Vec2& diff(int d) const { return diff_[d]; }
  const Eigen::Vector2i& diff_m(int d) const { return diff_m_[d]; }
  // index of k_j - k_k in the difference table
  int diff_index(int j, int k) const { return diff_index_[(std::size_t)j * k_.size() + k]; }

 private:
  Lattice2D lattice_;
  double cutoff_ = 0.0;
  std::vector<Vec2> k_;
  std::vector<Eigen::Vector2i> m_;
  std::vector<Vec2> diff_;
  std::vector<Eigen::Vector2i> diff_m_;
  std::vector<int> diff_index_;
};

}  // namespace manybeam
