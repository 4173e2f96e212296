#pragma once

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "npr/mesh.hpp"

namespace testing_support {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Vertices sharing a face with v, from the raw triangle list.
inline std::set<int> brute_neighbors(const std::vector<npr::Triangle>& tris, int v) {
  std::set<int> out;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k)
      if (t[k] == v) {
        out.insert(t[(k + 1) % 3]);
        out.insert(t[(k + 2) % 3]);
      }
  return out;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

}  // namespace testing_support
