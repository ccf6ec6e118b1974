#include "meshmae/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace meshmae {

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// First integer of an OBJ face token ("7", "7/2", "7//3", "7/2/3").
int parse_obj_index(const std::string& token, int line_no) {
  std::size_t slash = token.find('/');
  const std::string head = token.substr(0, slash);
  try {
    std::size_t pos = 0;
    const int idx = std::stoi(head, &pos);
    if (pos != head.size()) throw std::invalid_argument(head);
    return idx;
  } catch (const std::exception&) {
    throw DataError("OBJ line " + std::to_string(line_no) +
                    ": malformed face index '" + token + "'");
  }
}

Mesh load_obj(std::istream& in) {
  std::vector<Vec3> verts;
  std::vector<Eigen::Vector3i> faces;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(ss >> p.x() >> p.y() >> p.z())) {
        throw DataError("OBJ line " + std::to_string(line_no) +
                        ": malformed vertex");
      }
      verts.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string token;
      while (ss >> token) idx.push_back(parse_obj_index(token, line_no));
      if (idx.size() != 3) {
        throw DataError("OBJ line " + std::to_string(line_no) +
                        ": non-triangular face with " +
                        std::to_string(idx.size()) + " vertices");
      }
      for (int& i : idx) {
        if (i < 1) {
          throw DataError("OBJ line " + std::to_string(line_no) +
                          ": index " + std::to_string(i) +
                          " out of range (1-based indices required)");
        }
        --i;
      }
      faces.emplace_back(idx[0], idx[1], idx[2]);
    }
    // vn / vt / usemtl / o / g / s lines are ignored
  }
  Mesh mesh;
  mesh.vertices.resize(Eigen::Index(verts.size()), 3);
  for (std::size_t i = 0; i < verts.size(); ++i)
    mesh.vertices.row(Eigen::Index(i)) = verts[i];
  mesh.faces.resize(Eigen::Index(faces.size()), 3);
  for (std::size_t i = 0; i < faces.size(); ++i)
    mesh.faces.row(Eigen::Index(i)) = faces[i];
  return mesh;
}

// Reads the next whitespace-separated token, skipping # comments.
bool next_off_token(std::istream& in, std::string& token) {
  while (in >> token) {
    if (token[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return true;
  }
  return false;
}

double off_number(std::istream& in, const char* what) {
  std::string token;
  if (!next_off_token(in, token)) {
    throw DataError(std::string("OFF: unexpected end of stream reading ") + what);
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw DataError(std::string("OFF: malformed ") + what + " '" + token + "'");
  }
}

long off_integer(std::istream& in, const char* what) {
  const double v = off_number(in, what);
  const long i = std::lround(v);
  if (double(i) != v) {
    throw DataError(std::string("OFF: non-integer ") + what);
  }
  return i;
}

Mesh load_off(std::istream& in) {
  std::string token;
  if (!next_off_token(in, token) || token != "OFF") {
    throw DataError("OFF: missing OFF header");
  }
  const long nv = off_integer(in, "vertex count");
  const long nf = off_integer(in, "face count");
  off_integer(in, "edge count");
  if (nv < 0 || nf < 0) throw DataError("OFF: negative counts");

  Mesh mesh;
  mesh.vertices.resize(nv, 3);
  for (long i = 0; i < nv; ++i) {
    mesh.vertices(i, 0) = off_number(in, "vertex coordinate");
    mesh.vertices(i, 1) = off_number(in, "vertex coordinate");
    mesh.vertices(i, 2) = off_number(in, "vertex coordinate");
  }
  mesh.faces.resize(nf, 3);
  for (long i = 0; i < nf; ++i) {
    const long arity = off_integer(in, "face arity");
    if (arity != 3) {
      throw DataError("OFF: non-triangular face with " +
                      std::to_string(arity) + " vertices");
    }
    for (int k = 0; k < 3; ++k) {
      const long idx = off_integer(in, "face index");
      if (idx < 0 || idx >= nv) {
        throw DataError("OFF: face index " + std::to_string(idx) +
                        " out of range [0, " + std::to_string(nv) + ")");
      }
      mesh.faces(i, k) = int(idx);
    }
  }
  return mesh;
}

void check_indices(const Mesh& mesh) {
  const int nv = int(mesh.vertex_count());
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    const int a = mesh.faces(f, 0), b = mesh.faces(f, 1), c = mesh.faces(f, 2);
    if (a < 0 || b < 0 || c < 0 || a >= nv || b >= nv || c >= nv) {
      throw DataError("face " + std::to_string(f) + " references vertex out of range");
    }
    if (a == b || b == c || a == c) {
      throw DataError("face " + std::to_string(f) + " has repeated vertices");
    }
  }
}

struct EdgeKey {
  int a, b;  // a < b
  bool operator<(const EdgeKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

EdgeKey make_edge(int u, int v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

}  // namespace

Mesh load_mesh(std::istream& in, MeshFormat format) {
  Mesh mesh = format == MeshFormat::OBJ ? load_obj(in) : load_off(in);
  check_indices(mesh);
  return mesh;
}

Mesh load_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  const std::string ext = path.extension().string();
  if (ext == ".obj" || ext == ".OBJ") return load_mesh(in, MeshFormat::OBJ);
  if (ext == ".off" || ext == ".OFF") return load_mesh(in, MeshFormat::OFF);
  throw DataError("unsupported mesh extension '" + ext + "' for " + path.string());
}

void save_mesh(const Mesh& mesh, std::ostream& out, MeshFormat format) {
  char buf[128];
  if (format == MeshFormat::OBJ) {
    for (Eigen::Index v = 0; v < mesh.vertex_count(); ++v) {
      std::snprintf(buf, sizeof buf, "v %.6f %.6f %.6f\n", mesh.vertices(v, 0),
                    mesh.vertices(v, 1), mesh.vertices(v, 2));
      out << buf;
    }
    for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
      out << "f " << mesh.faces(f, 0) + 1 << ' ' << mesh.faces(f, 1) + 1 << ' '
          << mesh.faces(f, 2) + 1 << '\n';
    }
  } else {
    out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
    for (Eigen::Index v = 0; v < mesh.vertex_count(); ++v) {
      std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", mesh.vertices(v, 0),
                    mesh.vertices(v, 1), mesh.vertices(v, 2));
      out << buf;
    }
    for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
      out << "3 " << mesh.faces(f, 0) << ' ' << mesh.faces(f, 1) << ' '
          << mesh.faces(f, 2) << '\n';
    }
  }
  if (!out) throw DataError("mesh write failed");
}

void save_mesh_file(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  const std::string ext = path.extension().string();
  if (ext == ".obj" || ext == ".OBJ") {
    save_mesh(mesh, out, MeshFormat::OBJ);
  } else if (ext == ".off" || ext == ".OFF") {
    save_mesh(mesh, out, MeshFormat::OFF);
  } else {
    throw DataError("unsupported mesh extension '" + ext + "'");
  }
}

void validate_mesh(const Mesh& mesh) {
  check_indices(mesh);
  if (mesh.face_count() == 0) return;
  const double diag2 = bbox_diagonal(mesh) * bbox_diagonal(mesh);
  const double min_area = 1e-12 * diag2;
  const Eigen::VectorXd areas = face_areas(mesh);
  for (Eigen::Index f = 0; f < areas.size(); ++f) {
    if (!(areas[f] > min_area)) {
      throw DataError("face " + std::to_string(f) + " is degenerate (area " +
                      std::to_string(areas[f]) + ")");
    }
  }
}

ManifoldReport manifold_report(const Mesh& mesh) {
  std::map<EdgeKey, int> edge_faces;
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    for (int k = 0; k < 3; ++k) {
      ++edge_faces[make_edge(mesh.faces(f, k), mesh.faces(f, (k + 1) % 3))];
    }
  }
  ManifoldReport report;
  report.is_edge_manifold = true;
  for (const auto& [edge, count] : edge_faces) {
    if (count == 1) ++report.boundary_edge_count;
    if (count > 2) {
      ++report.non_manifold_edge_count;
      report.is_edge_manifold = false;
    }
  }
  report.is_watertight =
      report.is_edge_manifold && report.boundary_edge_count == 0 &&
      !edge_faces.empty();

  // Vertex manifoldness: the faces around each vertex must form a single
  // edge-connected fan.
  report.is_vertex_manifold = report.is_edge_manifold;
  if (report.is_edge_manifold) {
    const Eigen::Index nv = mesh.vertex_count();
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(nv));
    for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
      for (int k = 0; k < 3; ++k) incident[std::size_t(mesh.faces(f, k))].push_back(int(f));
    }
    for (Eigen::Index v = 0; v < nv && report.is_vertex_manifold; ++v) {
      const auto& ring = incident[std::size_t(v)];
      if (ring.size() <= 1) continue;
      // union of ring faces via shared edges through v
      std::map<EdgeKey, std::vector<int>> spokes;
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto face = mesh.faces.row(ring[i]);
        for (int k = 0; k < 3; ++k) {
          if (face[k] == int(v)) continue;
          spokes[make_edge(int(v), face[k])].push_back(int(i));
        }
      }
      std::vector<int> parent(ring.size());
      for (std::size_t i = 0; i < ring.size(); ++i) parent[i] = int(i);
      auto find = [&](int x) {
        while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
        return x;
      };
      for (const auto& [edge, members] : spokes) {
        for (std::size_t i = 1; i < members.size(); ++i) {
          parent[std::size_t(find(members[i]))] = find(members[0]);
        }
      }
      const int root = find(0);
      for (std::size_t i = 1; i < ring.size(); ++i) {
        if (find(int(i)) != root) {
          report.is_vertex_manifold = false;
          break;
        }
      }
    }
  }
  return report;
}

Eigen::VectorXd face_areas(const Mesh& mesh) {
  Eigen::VectorXd areas(mesh.face_count());
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    const Vec3 a = mesh.vertices.row(mesh.faces(f, 0));
    const Vec3 b = mesh.vertices.row(mesh.faces(f, 1));
    const Vec3 c = mesh.vertices.row(mesh.faces(f, 2));
    areas[f] = 0.5 * (b - a).cross(c - a).norm();
  }
  return areas;
}

Points face_normals(const Mesh& mesh) {
  Points normals(mesh.face_count(), 3);
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    const Vec3 a = mesh.vertices.row(mesh.faces(f, 0));
    const Vec3 b = mesh.vertices.row(mesh.faces(f, 1));
    const Vec3 c = mesh.vertices.row(mesh.faces(f, 2));
    const Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    if (len <= 0.0) {
      throw NumericError("degenerate face " + std::to_string(f) +
                         " has no normal");
    }
    normals.row(f) = n / len;
  }
  return normals;
}

Points face_centers(const Mesh& mesh) {
  Points centers(mesh.face_count(), 3);
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    centers.row(f) = (mesh.vertices.row(mesh.faces(f, 0)) +
                      mesh.vertices.row(mesh.faces(f, 1)) +
                      mesh.vertices.row(mesh.faces(f, 2))) /
                     3.0;
  }
  return centers;
}

Points vertex_normals(const Mesh& mesh) {
  Points accum = Points::Zero(mesh.vertex_count(), 3);
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    const Vec3 a = mesh.vertices.row(mesh.faces(f, 0));
    const Vec3 b = mesh.vertices.row(mesh.faces(f, 1));
    const Vec3 c = mesh.vertices.row(mesh.faces(f, 2));
    const Vec3 area_normal = 0.5 * (b - a).cross(c - a);  // |.| = face area
    for (int k = 0; k < 3; ++k) accum.row(mesh.faces(f, k)) += area_normal;
  }
  std::vector<bool> touched(std::size_t(mesh.vertex_count()), false);
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    for (int k = 0; k < 3; ++k) touched[std::size_t(mesh.faces(f, k))] = true;
  }
  for (Eigen::Index v = 0; v < mesh.vertex_count(); ++v) {
    if (!touched[std::size_t(v)]) {
      throw DataError("vertex " + std::to_string(v) +
                      " has no incident face; normal undefined");
    }
    const double len = accum.row(v).norm();
    if (len < 1e-20) {
      throw NumericError("vertex " + std::to_string(v) +
                         " has a vanishing accumulated normal");
    }
    accum.row(v) /= len;
  }
  return accum;
}

Eigen::Matrix<double, 10, 1> FaceFeature::flatten() const {
  Eigen::Matrix<double, 10, 1> out;
  out[0] = area;
  out.segment<3>(1) = interior_angles;
  out.segment<3>(4) = face_normal;
  out.segment<3>(7) = normal_vertex_dots;
  return out;
}

FaceFeature face_feature(const Mesh& mesh, Eigen::Index face,
                         const Points& vertex_normals) {
  const Vec3 p0 = mesh.vertices.row(mesh.faces(face, 0));
  const Vec3 p1 = mesh.vertices.row(mesh.faces(face, 1));
  const Vec3 p2 = mesh.vertices.row(mesh.faces(face, 2));
  const Vec3 cross = (p1 - p0).cross(p2 - p0);
  const double cross_len = cross.norm();
  if (cross_len <= 0.0) {
    throw NumericError("face " + std::to_string(face) + " is degenerate");
  }
  FaceFeature feat;
  feat.area = 0.5 * cross_len;
  feat.face_normal = cross / cross_len;
  const Vec3 corners[3] = {p0, p1, p2};
  for (int k = 0; k < 3; ++k) {
    const Vec3 u = (corners[(k + 1) % 3] - corners[k]).normalized();
    const Vec3 v = (corners[(k + 2) % 3] - corners[k]).normalized();
    feat.interior_angles[k] = std::acos(std::clamp(u.dot(v), -1.0, 1.0));
    feat.normal_vertex_dots[k] =
        feat.face_normal.dot(vertex_normals.row(mesh.faces(face, k)));
  }
  return feat;
}

Eigen::MatrixXd face_features(const Mesh& mesh) {
  const Points vnormals = vertex_normals(mesh);
  Eigen::MatrixXd out(mesh.face_count(), 10);
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    out.row(f) = face_feature(mesh, f, vnormals).flatten();
  }
  return out;
}

double bbox_diagonal(const Mesh& mesh) {
  if (mesh.vertex_count() == 0) return 0.0;
  const Vec3 lo = mesh.vertices.colwise().minCoeff();
  const Vec3 hi = mesh.vertices.colwise().maxCoeff();
  return (hi - lo).norm();
}

Mesh normalize_unit_sphere(const Mesh& mesh) {
  if (mesh.vertex_count() == 0) return mesh;
  Mesh out = mesh;
  const Vec3 centroid = mesh.vertices.colwise().mean();
  out.vertices.rowwise() -= centroid.transpose();
  const double radius = out.vertices.rowwise().norm().maxCoeff();
  if (radius > 0.0) out.vertices /= radius;
  return out;
}

}  // namespace meshmae
