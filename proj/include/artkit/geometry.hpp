#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <limits>

#include "artkit/se3.hpp"

namespace artkit {

// Box with pose; the shared primitive for rendering, collision and
// containment tests. `label` carries a link id through the pipeline.
struct OrientedBox {
  SE3Pose pose;
  Eigen::Vector3d half_extents = Eigen::Vector3d::Ones();
  std::uint16_t label = 0;
};

// Separating-axis test over the 15 candidate axes. `margin` is inclusive:
// boxes separated by exactly `margin` still count as touching.
bool boxes_intersect(const OrientedBox& a, const OrientedBox& b, double margin = 0.0);

// Parametric ray-box intersection. Returns the smallest t > t_min with
// origin + t * dir inside the box, or +inf when the ray misses.
double ray_box_intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                         const OrientedBox& box, double t_min = 1e-9);

bool point_in_box(const Eigen::Vector3d& p, const OrientedBox& box, double eps = 0.0);

// Distance from the point to the box surface (0 inside).
double box_surface_distance(const Eigen::Vector3d& p, const OrientedBox& box);

// Smallest z over the box corners; used for the floor half-space test.
double box_min_z(const OrientedBox& box);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace artkit
