#include "artkit/se3.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace artkit {

static_assert(std::endian::native == std::endian::little,
              "pose codec assumes a little-endian host");

Rotation Rotation::from_matrix(const Eigen::Matrix3d& m) {
  Rotation r(m, Trusted{});
  if (!r.is_valid()) {
    throw std::invalid_argument("Rotation::from_matrix: matrix is not a proper rotation");
  }
  return r;
}

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  Eigen::Quaterniond q(w, x, y, z);
  const double n = q.norm();
  if (n < kDegenerateTol) {
    throw std::invalid_argument("Rotation::from_quaternion: near-zero quaternion");
  }
  q.normalize();
  return Rotation(q.toRotationMatrix(), Trusted{});
}

Rotation Rotation::axis_angle(const Eigen::Vector3d& axis, double angle) {
  const double n = axis.norm();
  if (n < kDegenerateTol) {
    throw std::invalid_argument("Rotation::axis_angle: near-zero axis");
  }
  return Rotation(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix(), Trusted{});
}

Rotation Rotation::rx(double angle) { return axis_angle(Eigen::Vector3d::UnitX(), angle); }
Rotation Rotation::ry(double angle) { return axis_angle(Eigen::Vector3d::UnitY(), angle); }
Rotation Rotation::rz(double angle) { return axis_angle(Eigen::Vector3d::UnitZ(), angle); }

bool Rotation::is_valid(double tol) const {
  const Eigen::Matrix3d gram = m_.transpose() * m_;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(m_.determinant() - 1.0) <= tol;
}

double Rotation::angle_to(const Rotation& o) const {
  const double c = ((m_.transpose() * o.m_).trace() - 1.0) / 2.0;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

Eigen::Vector3d Rotation::log() const {
  Eigen::AngleAxisd aa(m_);
  return aa.axis() * aa.angle();
}

SE3Pose compose(const SE3Pose& a, const SE3Pose& b) {
  return SE3Pose{a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

SE3Pose inverse(const SE3Pose& p) {
  const Rotation rt = p.rotation.transposed();
  return SE3Pose{rt, -(rt * p.translation)};
}

bool approx_equal(const SE3Pose& a, const SE3Pose& b, double tol) {
  return pose_difference_norm(a, b) <= tol;
}

double pose_difference_norm(const SE3Pose& a, const SE3Pose& b) {
  const double dr = (a.rotation.matrix() - b.rotation.matrix()).norm();
  const double dt = (a.translation - b.translation).norm();
  return std::sqrt(dr * dr + dt * dt);
}

Rot6D encode_6d(const Rotation& r) {
  Rot6D out;
  out.values.head<3>() = r.matrix().col(0);
  out.values.tail<3>() = r.matrix().col(1);
  return out;
}

Rotation decode_6d(const Rot6D& v) {
  const Eigen::Vector3d a = v.values.head<3>();
  const Eigen::Vector3d b = v.values.tail<3>();
  const double na = a.norm();
  if (na < kDegenerateTol) {
    throw std::invalid_argument("decode_6d: first column near zero");
  }
  const Eigen::Vector3d c0 = a / na;
  const Eigen::Vector3d b_perp = b - c0.dot(b) * c0;
  const double nb = b_perp.norm();
  if (nb < kDegenerateTol) {
    throw std::invalid_argument("decode_6d: columns parallel or second column near zero");
  }
  const Eigen::Vector3d c1 = b_perp / nb;
  const Eigen::Vector3d c2 = c0.cross(c1);
  Eigen::Matrix3d m;
  m.col(0) = c0;
  m.col(1) = c1;
  m.col(2) = c2;
  return trusted_rotation(m);
}

std::array<Eigen::Vector3d, 4> gripper_template_points(double finger_width,
                                                       const GripperTemplate& g) {
  const double h = finger_width / 2.0;
  return {Eigen::Vector3d(0, 0, 0),
          Eigen::Vector3d(0, h, g.fingertip_offset),
          Eigen::Vector3d(0, -h, g.fingertip_offset),
          Eigen::Vector3d(0, 0, g.fingertip_offset)};
}

EEPoints ee_points_from_pose(const SE3Pose& pose, double finger_width,
                             const GripperTemplate& g) {
  if (finger_width < 0.0 || finger_width > g.max_opening) {
    throw std::invalid_argument("ee_points_from_pose: finger_width out of range");
  }
  const auto tpl = gripper_template_points(finger_width, g);
  EEPoints out;
  for (int i = 0; i < 4; ++i) out.points[i] = pose * tpl[i];
  out.finger_width = finger_width;
  return out;
}

SE3Pose pose_from_ee_points(const EEPoints& ee) {
  const Eigen::Vector3d z = (ee.points[3] - ee.points[0]).normalized();
  Eigen::Vector3d y = ee.points[1] - ee.points[2];
  if (y.norm() < kDegenerateTol) {
    // closed fingers carry no opening direction; fall back to any unit
    // vector orthogonal to z
    y = z.unitOrthogonal();
  } else {
    y = (y - z.dot(y) * z).normalized();
  }
  const Eigen::Vector3d x = y.cross(z);
  Eigen::Matrix3d m;
  m.col(0) = x;
  m.col(1) = y;
  m.col(2) = z;
  return SE3Pose{trusted_rotation(m), ee.points[0]};
}

SE3Pose fit_rigid_transform(std::span<const Eigen::Vector3d> src,
                            std::span<const Eigen::Vector3d> dst) {
  if (src.size() != dst.size() || src.size() < 3) {
    throw std::invalid_argument("fit_rigid_transform: need >= 3 paired points");
  }
  const auto n = static_cast<double>(src.size());
  Eigen::Vector3d c_src = Eigen::Vector3d::Zero();
  Eigen::Vector3d c_dst = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    c_src += src[i];
    c_dst += dst[i];
  }
  c_src /= n;
  c_dst /= n;

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Eigen::Vector3d p = src[i] - c_src;
    const Eigen::Vector3d q = dst[i] - c_dst;
    cov += q * p.transpose();
    scatter += p * p.transpose();
  }

  // collinear sources leave the rotation about the line unconstrained
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scatter);
  if (es.eigenvalues()(1) < kDegenerateTol) {
    throw std::invalid_argument("fit_rigid_transform: source points are collinear");
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0 ? -1.0 : 1.0;
  const Eigen::Matrix3d r = svd.matrixU() * d * svd.matrixV().transpose();
  return SE3Pose{trusted_rotation(r), c_dst - r * c_src};
}

SE3Pose fit_pose_from_points(const EEPoints& src,
                             const std::array<Eigen::Vector3d, 4>& dst) {
  return fit_rigid_transform(std::span<const Eigen::Vector3d>(src.points.data(), 4),
                             std::span<const Eigen::Vector3d>(dst.data(), 4));
}

void write_pose(std::ostream& out, const SE3Pose& pose) {
  double buf[12];
  for (int i = 0; i < 3; ++i) buf[i] = pose.translation(i);
  const Eigen::Matrix3d& m = pose.rotation.matrix();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) buf[3 + r * 3 + c] = m(r, c);
  out.write(reinterpret_cast<const char*>(buf), sizeof(buf));
}

SE3Pose read_pose(std::istream& in) {
  double buf[12];
  in.read(reinterpret_cast<char*>(buf), sizeof(buf));
  if (!in) throw std::runtime_error("read_pose: truncated stream");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = buf[3 + r * 3 + c];
  return SE3Pose{Rotation::from_matrix(m), Eigen::Vector3d(buf[0], buf[1], buf[2])};
}

}  // namespace artkit
