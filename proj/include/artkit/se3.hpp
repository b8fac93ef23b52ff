#pragma once

#include <Eigen/Core>
#include <array>
#include <iosfwd>
#include <span>

namespace artkit {

// Shared numeric tolerances. Single source for validation and property tests.
inline constexpr double kOrthonormalTol = 1e-9;
inline constexpr double kDegenerateTol = 1e-8;

// Proper rotation (orthonormal, det +1). Matrices are the internal
// representation everywhere; quaternions only appear at I/O boundaries.
class Rotation {
 public:
  Rotation() : m_(Eigen::Matrix3d::Identity()) {}

  // Validates orthonormality and det = +1 against kOrthonormalTol; throws
  // std::invalid_argument on failure.
  static Rotation from_matrix(const Eigen::Matrix3d& m);
  static Rotation from_quaternion(double w, double x, double y, double z);
  static Rotation axis_angle(const Eigen::Vector3d& axis, double angle);
  static Rotation rx(double angle);
  static Rotation ry(double angle);
  static Rotation rz(double angle);

  const Eigen::Matrix3d& matrix() const { return m_; }
  Rotation transposed() const { return Rotation(m_.transpose(), Trusted{}); }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_, Trusted{}); }
  Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return m_ * v; }

  bool is_valid(double tol = kOrthonormalTol) const;
  // Geodesic angle between the two rotations, in [0, pi].
  double angle_to(const Rotation& o) const;
  // Axis-angle vector (axis * angle); zero vector for identity.
  Eigen::Vector3d log() const;

 private:
  struct Trusted {};
  Rotation(const Eigen::Matrix3d& m, Trusted) : m_(m) {}
  Eigen::Matrix3d m_;
  friend Rotation trusted_rotation(const Eigen::Matrix3d&);
};

// Internal: wraps a matrix that is known valid (products of valid rotations,
// Gram-Schmidt output). Not part of the public surface.
inline Rotation trusted_rotation(const Eigen::Matrix3d& m) {
  return Rotation(m, Rotation::Trusted{});
}

struct SE3Pose {
  Rotation rotation;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
};

SE3Pose compose(const SE3Pose& a, const SE3Pose& b);
SE3Pose inverse(const SE3Pose& p);
bool approx_equal(const SE3Pose& a, const SE3Pose& b, double tol);
// Frobenius norm of the 4x4 homogeneous matrix difference.
double pose_difference_norm(const SE3Pose& a, const SE3Pose& b);

// Continuity-friendly 6D rotation encoding: the first two columns of the
// rotation matrix, stacked column-by-column.
struct Rot6D {
  Eigen::Matrix<double, 6, 1> values = (Eigen::Matrix<double, 6, 1>() << 1, 0, 0, 0, 1, 0).finished();
};

Rot6D encode_6d(const Rotation& r);
// Gram-Schmidt on the first column, orthogonalize the second, cross for the
// third. Throws std::invalid_argument on near-zero or parallel columns
// (residual norm < kDegenerateTol).
Rotation decode_6d(const Rot6D& v);

// Canonical parallel-jaw gripper template. The hand root sits at the frame
// origin, fingertips 0.10 m along +z, fingers open along y.
struct GripperTemplate {
  double fingertip_offset = 0.10;
  double max_opening = 0.08;
  double pad_length = 0.05;  // pad extent backwards from the fingertip, along z
  double pad_height = 0.02;  // pad extent along x
};

inline constexpr GripperTemplate kCanonicalGripper{};

// 4-point end-effector representation: hand root, finger A, finger B,
// grasp center (fingertip midpoint).
struct EEPoints {
  std::array<Eigen::Vector3d, 4> points = {
      Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(),
      Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()};
  double finger_width = 0.0;
};

// Template points in the gripper frame for a given opening.
std::array<Eigen::Vector3d, 4> gripper_template_points(
    double finger_width, const GripperTemplate& g = kCanonicalGripper);

// Throws std::invalid_argument when finger_width is outside
// [0, template max opening].
EEPoints ee_points_from_pose(const SE3Pose& pose, double finger_width,
                             const GripperTemplate& g = kCanonicalGripper);

// Reconstructs the gripper pose from template-consistent points.
SE3Pose pose_from_ee_points(const EEPoints& ee);

// Least-squares rigid transform src -> dst (centered SVD of the
// cross-covariance, sign-corrected rotation). Throws on collinear sources.
SE3Pose fit_rigid_transform(std::span<const Eigen::Vector3d> src,
                            std::span<const Eigen::Vector3d> dst);
SE3Pose fit_pose_from_points(const EEPoints& src,
                             const std::array<Eigen::Vector3d, 4>& dst);

// Dataset pose codec: translation as 3 little-endian f64, rotation as
// 9 row-major little-endian f64.
void write_pose(std::ostream& out, const SE3Pose& pose);
SE3Pose read_pose(std::istream& in);

}  // namespace artkit
