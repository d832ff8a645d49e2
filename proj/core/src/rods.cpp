#include "manybeam/rods.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace manybeam {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Vec2 Lattice2D::b1() const {
  const double det = a1.x() * a2.y() - a1.y() * a2.x();
  return Vec2(kTwoPi * a2.y() / det, -kTwoPi * a2.x() / det);
}

Vec2 Lattice2D::b2() const {
  const double det = a1.x() * a2.y() - a1.y() * a2.x();
  return Vec2(-kTwoPi * a1.y() / det, kTwoPi * a1.x() / det);
}

void Lattice2D::validate() const {
  const double det = a1.x() * a2.y() - a1.y() * a2.x();
  const double scale = a1.norm() * a2.norm();
  if (!(std::abs(det) > 1e-12 * std::max(scale, 1e-300)))
    throw ConfigError("lattice: basis vectors are degenerate (zero cell area)");
  if (!a1.allFinite() || !a2.allFinite()) throw ConfigError("lattice: nonfinite basis");
}

RodSet RodSet::build(const Lattice2D& lattice, double cutoff) {
  lattice.validate();
  if (!(cutoff > 0.0) || !std::isfinite(cutoff))
    throw ConfigError("rod cutoff must be positive and finite");

  RodSet rs;
  rs.lattice_ = lattice;
  rs.cutoff_ = cutoff;
  const Vec2 b1 = lattice.b1();
  const Vec2 b2 = lattice.b2();

  // m1 = k.a1 / 2pi, so |m1| <= cutoff |a1| / 2pi; same for m2
  const int m1max = (int)std::floor(cutoff * lattice.a1.norm() / kTwoPi + 1e-9);
  const int m2max = (int)std::floor(cutoff * lattice.a2.norm() / kTwoPi + 1e-9);

  struct Rod {
    Vec2 k;
    Eigen::Vector2i m;
  };
  std::vector<Rod> rods;
  for (int m1 = -m1max; m1 <= m1max; ++m1) {
    for (int m2 = -m2max; m2 <= m2max; ++m2) {
      const Vec2 k = m1 * b1 + m2 * b2;
      if (k.norm() <= cutoff) rods.push_back({k, Eigen::Vector2i(m1, m2)});
    }
  }
  std::sort(rods.begin(), rods.end(), [](const Rod& p, const Rod& q) {
    const double np = p.k.norm(), nq = q.k.norm();
    if (np != nq) return np < nq;
    if (p.k.x() != q.k.x()) return p.k.x() < q.k.x();
    return p.k.y() < q.k.y();
  });
  if (rods.empty() || rods.front().m != Eigen::Vector2i(0, 0))
    throw ConfigError("rod set does not contain the zero rod");

  const int n = (int)rods.size();
  rs.k_.reserve(n);
  rs.m_.reserve(n);
  for (const Rod& r : rods) {
    rs.k_.push_back(r.k);
    rs.m_.push_back(r.m);
  }

  // integer difference keys make deduplication exact
  std::map<std::pair<int, int>, int> seen;
  rs.diff_index_.assign((std::size_t)n * n, -1);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector2i dm = rs.m_[j] - rs.m_[k];
      auto key = std::make_pair(dm.x(), dm.y());
      auto it = seen.find(key);
      int d;
      if (it == seen.end()) {
        d = (int)rs.diff_.size();
        seen.emplace(key, d);
        rs.diff_.push_back(dm.x() * b1 + dm.y() * b2);
        rs.diff_m_.push_back(dm);
      } else {
        d = it->second;
      }
      rs.diff_index_[(std::size_t)j * n + k] = d;
    }
  }
  return rs;
}

}  // namespace manybeam
