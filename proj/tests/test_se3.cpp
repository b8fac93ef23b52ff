#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <sstream>

#include "artkit/random.hpp"
#include "artkit/se3.hpp"

using namespace artkit;

namespace {

Rotation random_rotation(Rng& rng) {
  const Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
  return Rotation::axis_angle(axis.norm() > 1e-12 ? axis : Eigen::Vector3d::UnitX(),
                              rng.uniform(-3.1, 3.1));
}

SE3Pose random_pose(Rng& rng) {
  return SE3Pose{random_rotation(rng),
                 Eigen::Vector3d(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))};
}

}  // namespace

TEST_CASE("compose identity and inverse") {
  Rng rng(7);
  const SE3Pose p = random_pose(rng);
  CHECK(approx_equal(compose(SE3Pose{}, p), p, 1e-15));
  CHECK(approx_equal(compose(p, inverse(p)), SE3Pose{}, 1e-12));
  CHECK(approx_equal(compose(inverse(p), p), SE3Pose{}, 1e-12));
}

TEST_CASE("compose matches hand-multiplied homogeneous matrices") {
  // Rz(90) + t(1,0,0) composed with Rz(90) = Rz(180) + t(1,0,0)
  const SE3Pose a{Rotation::rz(M_PI / 2), Eigen::Vector3d(1, 0, 0)};
  const SE3Pose b{Rotation::rz(M_PI / 2), Eigen::Vector3d(0, 0, 0)};
  const SE3Pose expect{Rotation::rz(M_PI), Eigen::Vector3d(1, 0, 0)};
  CHECK(approx_equal(compose(a, b), expect, 1e-12));
}

TEST_CASE("compose is associative") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const SE3Pose a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
    CHECK(approx_equal(compose(compose(a, b), c), compose(a, compose(b, c)), 1e-12));
  }
}

TEST_CASE("inverse of pure translation") {
  const SE3Pose p{Rotation{}, Eigen::Vector3d(1, 2, 3)};
  const SE3Pose inv = inverse(p);
  CHECK(inv.translation.isApprox(Eigen::Vector3d(-1, -2, -3)));
  CHECK(approx_equal(inverse(SE3Pose{}), SE3Pose{}, 0.0));
  const SE3Pose q{Rotation::rz(M_PI / 6), Eigen::Vector3d(0.3, -0.2, 1.0)};
  CHECK(approx_equal(compose(q, inverse(q)), SE3Pose{}, 1e-12));
}

TEST_CASE("rotation validation rejects improper matrices") {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = -1.0;  // reflection
  CHECK_THROWS_AS(Rotation::from_matrix(m), std::invalid_argument);
  m = Eigen::Matrix3d::Identity() * 1.1;
  CHECK_THROWS_AS(Rotation::from_matrix(m), std::invalid_argument);
}

TEST_CASE("6d codec identity and round trips") {
  const Rot6D e = encode_6d(Rotation{});
  Eigen::Matrix<double, 6, 1> expect;
  expect << 1, 0, 0, 0, 1, 0;
  CHECK((e.values - expect).cwiseAbs().maxCoeff() == 0.0);

  const Rotation r = Rotation::rx(M_PI / 4);
  CHECK(decode_6d(encode_6d(r)).angle_to(r) < 1e-9);

  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const Rotation q = random_rotation(rng);
    CHECK(decode_6d(encode_6d(q)).angle_to(q) < 1e-9);
  }
}

TEST_CASE("6d decode applies Gram-Schmidt") {
  Rot6D v;
  v.values << 2, 0, 0, 1, 1, 0;
  const Rotation r = decode_6d(v);
  CHECK(r.matrix().isApprox(Eigen::Matrix3d::Identity(), 1e-12));
}

TEST_CASE("6d decode always yields valid rotations on random input") {
  Rng rng(31);
  int decoded = 0;
  for (int i = 0; i < 10000; ++i) {
    Rot6D v;
    for (int k = 0; k < 6; ++k) v.values(k) = rng.normal();
    try {
      const Rotation r = decode_6d(v);
      CHECK(r.is_valid());
      ++decoded;
    } catch (const std::invalid_argument&) {
      // degenerate draw, allowed
    }
  }
  CHECK(decoded > 9900);
}

TEST_CASE("6d decode rejects degenerate input") {
  Rot6D v;
  v.values << 0, 0, 0, 0, 1, 0;
  CHECK_THROWS_AS(decode_6d(v), std::invalid_argument);
  v.values << 1, 0, 0, 2, 0, 0;  // parallel
  CHECK_THROWS_AS(decode_6d(v), std::invalid_argument);
}

TEST_CASE("ee points from pose") {
  SUBCASE("zero width at identity") {
    const EEPoints ee = ee_points_from_pose(SE3Pose{}, 0.0);
    CHECK(ee.points[1].isApprox(ee.points[2]));
    CHECK(ee.points[3].isApprox(Eigen::Vector3d(0, 0, 0.10)));
  }
  SUBCASE("fingers straddle the open axis") {
    const EEPoints ee = ee_points_from_pose(SE3Pose{}, 0.08);
    CHECK(ee.points[1].isApprox(Eigen::Vector3d(0, 0.04, 0.10)));
    CHECK(ee.points[2].isApprox(Eigen::Vector3d(0, -0.04, 0.10)));
    CHECK(ee.points[0].isApprox(Eigen::Vector3d::Zero()));
  }
  SUBCASE("translation equivariance") {
    const Eigen::Vector3d t(0.5, -0.25, 1.5);
    const EEPoints a = ee_points_from_pose(SE3Pose{}, 0.05);
    const EEPoints b = ee_points_from_pose(SE3Pose{Rotation{}, t}, 0.05);
    for (int i = 0; i < 4; ++i) CHECK((b.points[i] - a.points[i]).isApprox(t));
  }
  SUBCASE("width out of range throws") {
    CHECK_THROWS_AS(ee_points_from_pose(SE3Pose{}, -0.01), std::invalid_argument);
    CHECK_THROWS_AS(ee_points_from_pose(SE3Pose{}, 0.09), std::invalid_argument);
  }
}

TEST_CASE("ee points are SE(3)-equivariant and template-rigid") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const SE3Pose g = random_pose(rng);
    const SE3Pose p = random_pose(rng);
    const double w = rng.uniform(0.0, 0.08);
    const EEPoints lhs = ee_points_from_pose(compose(g, p), w);
    const EEPoints base = ee_points_from_pose(p, w);
    const auto tpl = gripper_template_points(w);
    for (int k = 0; k < 4; ++k) {
      CHECK((lhs.points[k] - (g * base.points[k])).norm() < 1e-12);
      for (int j = k + 1; j < 4; ++j) {
        const double d_have = (lhs.points[k] - lhs.points[j]).norm();
        const double d_tpl = (tpl[k] - tpl[j]).norm();
        CHECK(std::abs(d_have - d_tpl) < 1e-6);
      }
    }
  }
}

TEST_CASE("pose_from_ee_points inverts ee_points_from_pose") {
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    const SE3Pose p = random_pose(rng);
    const EEPoints ee = ee_points_from_pose(p, rng.uniform(0.001, 0.08));
    CHECK(approx_equal(pose_from_ee_points(ee), p, 1e-9));
  }
}

TEST_CASE("procrustes fit") {
  Rng rng(53);
  const EEPoints src = ee_points_from_pose(SE3Pose{}, 0.06);

  SUBCASE("identity when dst equals src") {
    CHECK(approx_equal(fit_pose_from_points(src, src.points), SE3Pose{}, 1e-12));
  }
  SUBCASE("exact recovery of a known transform") {
    for (int i = 0; i < 200; ++i) {
      const SE3Pose t = random_pose(rng);
      std::array<Eigen::Vector3d, 4> dst;
      for (int k = 0; k < 4; ++k) dst[k] = t * src.points[k];
      CHECK(approx_equal(fit_pose_from_points(src, dst), t, 1e-9));
    }
  }
  SUBCASE("noisy fit beats 1000 random perturbations") {
    const SE3Pose t = random_pose(rng);
    std::array<Eigen::Vector3d, 4> dst;
    for (int k = 0; k < 4; ++k)
      dst[k] = t * src.points[k] +
               Eigen::Vector3d(rng.normal(0, 0.01), rng.normal(0, 0.01), rng.normal(0, 0.01));
    const SE3Pose fit = fit_pose_from_points(src, dst);
    auto residual = [&](const SE3Pose& p) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += (p * src.points[k] - dst[k]).squaredNorm();
      return s;
    };
    const double best = residual(fit);
    for (int i = 0; i < 1000; ++i) {
      SE3Pose alt = fit;
      const Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
      alt.rotation = Rotation::axis_angle(axis.norm() > 1e-12 ? axis : Eigen::Vector3d::UnitZ(),
                                          rng.normal(0, 0.05)) *
                     alt.rotation;
      alt.translation += Eigen::Vector3d(rng.normal(0, 0.01), rng.normal(0, 0.01),
                                         rng.normal(0, 0.01));
      CHECK(best <= residual(alt) + 1e-15);
    }
  }
  SUBCASE("collinear sources throw") {
    EEPoints degenerate;
    for (int k = 0; k < 4; ++k) degenerate.points[k] = Eigen::Vector3d(k, 0, 0);
    CHECK_THROWS_AS(fit_pose_from_points(degenerate, degenerate.points),
                    std::invalid_argument);
  }
}

TEST_CASE("pose binary codec layout") {
  const SE3Pose p{Rotation::rz(M_PI / 3), Eigen::Vector3d(0.25, -1.5, 3.0)};
  std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
  write_pose(ss, p);
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == 96);

  double raw[12];
  std::memcpy(raw, bytes.data(), sizeof(raw));
  CHECK(raw[0] == 0.25);
  CHECK(raw[1] == -1.5);
  CHECK(raw[2] == 3.0);
  // row-major rotation follows
  const Eigen::Matrix3d& m = p.rotation.matrix();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(raw[3 + r * 3 + c] == m(r, c));

  ss.seekg(0);
  const SE3Pose q = read_pose(ss);
  CHECK(approx_equal(p, q, 0.0));
}
