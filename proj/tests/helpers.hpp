#pragma once

#include "meshmae/common.hpp"
#include "meshmae/mesh.hpp"

#include <Eigen/Geometry>

namespace test_helpers {

using meshmae::Mesh;
using meshmae::Rng;
using meshmae::Vec3;

inline Mesh unit_tetrahedron() {
  Mesh m;
  m.vertices.resize(4, 3);
  m.vertices << 1, 1, 1,
                1, -1, -1,
                -1, 1, -1,
                -1, -1, 1;
  m.faces.resize(4, 3);
  m.faces << 0, 1, 2,
             0, 3, 1,
             0, 2, 3,
             1, 3, 2;
  // fix outward orientation against the centroid (origin)
  for (Eigen::Index f = 0; f < 4; ++f) {
    const Vec3 a = m.vertices.row(m.faces(f, 0));
    const Vec3 b = m.vertices.row(m.faces(f, 1));
    const Vec3 c = m.vertices.row(m.faces(f, 2));
    if ((b - a).cross(c - a).dot(a + b + c) < 0) {
      std::swap(m.faces(f, 1), m.faces(f, 2));
    }
  }
  return m;
}

// Axis-aligned unit cube, 8 vertices / 12 outward-oriented triangles.
inline Mesh unit_cube() {
  Mesh m;
  m.vertices.resize(8, 3);
  m.vertices << 0, 0, 0,
                1, 0, 0,
                1, 1, 0,
                0, 1, 0,
                0, 0, 1,
                1, 0, 1,
                1, 1, 1,
                0, 1, 1;
  m.faces.resize(12, 3);
  m.faces << 0, 3, 2,  0, 2, 1,   // bottom
             4, 5, 6,  4, 6, 7,   // top
             0, 1, 5,  0, 5, 4,   // front
             2, 3, 7,  2, 7, 6,   // back
             0, 4, 7,  0, 7, 3,   // left
             1, 2, 6,  1, 6, 5;   // right
  return m;
}

inline Eigen::Matrix3d random_rotation(Rng& rng) {
  Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  return q.toRotationMatrix();
}

inline Mesh transformed(const Mesh& mesh, const Eigen::Matrix3d& rot,
                        const Vec3& shift) {
  Mesh out = mesh;
  out.vertices = (mesh.vertices * rot.transpose()).rowwise() + shift.transpose();
  return out;
}

}  // namespace test_helpers
