#include "artkit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace artkit {

bool boxes_intersect(const OrientedBox& a, const OrientedBox& b, double margin) {
  const Eigen::Matrix3d& ra = a.pose.rotation.matrix();
  const Eigen::Matrix3d& rb = b.pose.rotation.matrix();
  const Eigen::Vector3d t = b.pose.translation - a.pose.translation;

  // cheap sphere reject before the 15-axis test
  const double r_sum = a.half_extents.norm() + b.half_extents.norm() + margin;
  if (t.squaredNorm() > r_sum * r_sum) return false;

  auto separated = [&](const Eigen::Vector3d& axis) {
    const double len2 = axis.squaredNorm();
    if (len2 < 1e-18) return false;  // degenerate cross product, skip
    const Eigen::Vector3d n = axis / std::sqrt(len2);
    const double dist = std::abs(t.dot(n));
    double proj_a = 0, proj_b = 0;
    for (int i = 0; i < 3; ++i) {
      proj_a += a.half_extents(i) * std::abs(n.dot(ra.col(i)));
      proj_b += b.half_extents(i) * std::abs(n.dot(rb.col(i)));
    }
    return dist > proj_a + proj_b + margin;
  };

  for (int i = 0; i < 3; ++i) {
    if (separated(ra.col(i))) return false;
    if (separated(rb.col(i))) return false;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (separated(ra.col(i).cross(rb.col(j)))) return false;
  return true;
}

double ray_box_intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                         const OrientedBox& box, double t_min) {
  // slab test in the box frame
  const SE3Pose inv = inverse(box.pose);
  const Eigen::Vector3d o = inv * origin;
  const Eigen::Vector3d d = inv.rotation * dir;

  double t_lo = t_min;
  double t_hi = kInfinity;
  for (int i = 0; i < 3; ++i) {
    const double h = box.half_extents(i);
    if (std::abs(d(i)) < 1e-14) {
      if (o(i) < -h || o(i) > h) return kInfinity;
      continue;
    }
    double t0 = (-h - o(i)) / d(i);
    double t1 = (h - o(i)) / d(i);
    if (t0 > t1) std::swap(t0, t1);
    t_lo = std::max(t_lo, t0);
    t_hi = std::min(t_hi, t1);
    if (t_lo > t_hi) return kInfinity;
  }
  return t_lo;
}

bool point_in_box(const Eigen::Vector3d& p, const OrientedBox& box, double eps) {
  const Eigen::Vector3d local = inverse(box.pose) * p;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(local(i)) > box.half_extents(i) + eps) return false;
  }
  return true;
}

double box_surface_distance(const Eigen::Vector3d& p, const OrientedBox& box) {
  const Eigen::Vector3d local = inverse(box.pose) * p;
  Eigen::Vector3d excess;
  for (int i = 0; i < 3; ++i)
    excess(i) = std::max(0.0, std::abs(local(i)) - box.half_extents(i));
  return excess.norm();
}

double box_min_z(const OrientedBox& box) {
  const Eigen::Matrix3d& r = box.pose.rotation.matrix();
  double reach = 0;
  for (int i = 0; i < 3; ++i) reach += box.half_extents(i) * std::abs(r(2, i));
  return box.pose.translation(2) - reach;
}

}  // namespace artkit
