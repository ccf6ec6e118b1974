#pragma once

#include "meshmae/common.hpp"

#include <filesystem>
#include <iosfwd>

namespace meshmae {

// Indexed triangle mesh. Faces are counter-clockwise vertex-index triples.
// Immutable by convention once validated; all queries below are pure.
struct Mesh {
  Points vertices;
  FaceList faces;

  Eigen::Index vertex_count() const { return vertices.rows(); }
  Eigen::Index face_count() const { return faces.rows(); }
};

enum class MeshFormat { OBJ, OFF };

// Parses ASCII OBJ (`v`/`f` lines, 1-based indices) or OFF. Normals and
// texture coordinates in OBJ input are ignored; non-triangular faces and
// out-of-range indices raise DataError.
Mesh load_mesh(std::istream& in, MeshFormat format);
Mesh load_mesh_file(const std::filesystem::path& path);

// Writers emit 6 decimal places; load(save(m)) reproduces coordinates
// within 1e-6 and face triples exactly.
void save_mesh(const Mesh& mesh, std::ostream& out, MeshFormat format);
void save_mesh_file(const Mesh& mesh, const std::filesystem::path& path);

// Rejects out-of-range indices, repeated vertices within a face, and
// degenerate faces (area below 1e-12 x squared bounding-box diagonal).
void validate_mesh(const Mesh& mesh);

struct ManifoldReport {
  bool is_edge_manifold = false;
  bool is_vertex_manifold = false;
  bool is_watertight = false;
  Eigen::Index boundary_edge_count = 0;
  Eigen::Index non_manifold_edge_count = 0;
};

// Edge-manifold iff every edge borders at most two faces; watertight iff
// every edge borders exactly two.
ManifoldReport manifold_report(const Mesh& mesh);

Eigen::VectorXd face_areas(const Mesh& mesh);

// Unit face normals from the counter-clockwise orientation.
Points face_normals(const Mesh& mesh);

// Arithmetic mean of each face's three vertices.
Points face_centers(const Mesh& mesh);

// Area-weighted average of incident face normals, normalized to unit
// length. A vertex with no incident face raises DataError.
Points vertex_normals(const Mesh& mesh);

// The 10-dimensional per-face descriptor: area, interior angles, unit
// normal, and inner products of the face normal with the vertex normals.
// Angle and dot order follow the face's stored vertex order.
struct FaceFeature {
  double area = 0.0;
  Vec3 interior_angles = Vec3::Zero();
  Vec3 face_normal = Vec3::Zero();
  Vec3 normal_vertex_dots = Vec3::Zero();

  // Flattened as area(1), angles(3), normal(3), dots(3).
  Eigen::Matrix<double, 10, 1> flatten() const;
};

FaceFeature face_feature(const Mesh& mesh, Eigen::Index face,
                         const Points& vertex_normals);

// All face features stacked row-wise, |F| x 10.
Eigen::MatrixXd face_features(const Mesh& mesh);

double bbox_diagonal(const Mesh& mesh);

// Translates the vertex centroid to the origin and scales so the farthest
// vertex sits on the unit sphere. Model inputs are built from meshes in
// this frame.
Mesh normalize_unit_sphere(const Mesh& mesh);

}  // namespace meshmae
