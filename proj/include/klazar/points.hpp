#pragma once

#include <cstdint>
#include <vector>

namespace klazar {

/// n points in [0,1)^(k+1) with the seed they were sampled from. Clouds
/// produced by sample_points have distinct values within every coordinate
/// axis (collisions trigger a full resample).
struct PointCloud {
  int k = 0;  // number of non-leading coordinates; points live in k+1 dims
  std::vector<std::vector<double>> points;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(points.size()); }
};

/// Validates ranges and builds a cloud from explicit coordinates.
PointCloud make_point_cloud(int k, std::vector<std::vector<double>> points,
                            std::uint64_t seed = 0);

}  // namespace klazar
