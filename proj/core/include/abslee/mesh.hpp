#pragma once

#include "abslee/types.hpp"

#include <Eigen/Core>

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace abslee {

enum class BoundaryTag { wall, nonreflective, free };

std::string_view to_string(BoundaryTag tag);
/// Throws ConfigError for anything outside {wall, nonreflective, free}.
BoundaryTag parse_boundary_tag(std::string_view text);

struct BoundaryFace {
  int a = 0;
  int b = 0;
  BoundaryTag tag = BoundaryTag::free;
};

/// Unstructured triangle mesh. Triangles are counter-clockwise; node indices
/// are 0-based.
struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryFace> boundary_faces;

  std::size_t n_cells() const { return triangles.size(); }
};

/// Reads the ASCII mesh format:
///
///   nodes N       followed by N lines "x y"
///   triangles M   followed by M lines "i j k"
///   boundary B    followed by B lines "i j tag"
///
/// '#' starts a comment that runs to the end of the line. Blank lines are
/// ignored. Throws ParseError (with line number) or ValidationError.
Mesh load_mesh(const std::filesystem::path& path);
Mesh parse_mesh(std::istream& in);
void write_mesh(std::ostream& out, const Mesh& mesh);
void save_mesh(const std::filesystem::path& path, const Mesh& mesh);

/// Checks every Mesh invariant; throws ValidationError naming the first
/// offending entity.
void validate_mesh(const Mesh& mesh);

/// Boundary tags for the four sides of an axis-aligned rectangle.
struct SideTags {
  BoundaryTag left = BoundaryTag::free;
  BoundaryTag right = BoundaryTag::free;
  BoundaryTag bottom = BoundaryTag::free;
  BoundaryTag top = BoundaryTag::free;

  static SideTags all(BoundaryTag tag) { return {tag, tag, tag, tag}; }
};

/// Structured triangulation of [x0,x1] x [y0,y1] with nx * ny squares, each
/// split into two triangles. Diagonals alternate in a checkerboard pattern so
/// that the mesh has no preferred direction.
Mesh make_rectangle_mesh(double x0, double x1, double y0, double y1, int nx, int ny,
                         const SideTags& tags = {});

struct Face {
  std::array<int, 2> nodes{};  // oriented counter-clockwise w.r.t. the owner
  int owner = -1;
  int owner_local = -1;        // local face index inside the owner
  int neighbor = -1;           // -1 on the boundary
  int neighbor_local = -1;
  BoundaryTag tag = BoundaryTag::free;  // meaningful only when neighbor < 0
  Vec2 normal = Vec2::Zero();  // unit, outward from the owner
  double length = 0.0;

  bool is_boundary() const { return neighbor < 0; }
};

/// Derived geometric data for a validated mesh. Local face f of a cell joins
/// its vertices f and (f + 1) % 3, so on the reference triangle
/// (0,0),(1,0),(0,1) the local faces are bottom, hypotenuse, left.
struct GeometryCache {
  std::vector<double> cell_area;
  std::vector<Vec2> cell_centroid;
  /// Affine map x = origin + jacobian * xi from the reference triangle.
  std::vector<Vec2> cell_origin;
  std::vector<Eigen::Matrix2d> jacobian;
  std::vector<Eigen::Matrix2d> inverse_jacobian;
  std::vector<Face> faces;
  std::vector<std::array<int, 3>> cell_faces;
  std::vector<std::array<int, 3>> cell_neighbors;  // -1 where the face is on the boundary
  /// Largest face length; used to scale geometric tolerances.
  double length_scale = 0.0;
  double min_face_length = 0.0;

  std::size_t n_cells() const { return cell_area.size(); }
  std::size_t n_faces() const { return faces.size(); }
  /// Outward unit normal of a face as seen from `cell` (must touch the face).
  Vec2 outward_normal(int face, int cell) const;
  Vec2 to_reference(int cell, const Vec2& x) const;
  Vec2 to_physical(int cell, const Vec2& xi) const;
};

GeometryCache compute_geometry(const Mesh& mesh);

/// Bucket-grid point location for cross-mesh field evaluation.
class PointLocator {
 public:
  PointLocator(const Mesh& mesh, const GeometryCache& geom);

  /// Index of a cell containing x (boundary points resolve to any adjacent
  /// cell), or nullopt when x lies outside the mesh.
  std::optional<int> locate(const Vec2& x) const;

 private:
  const GeometryCache* geom_;
  Vec2 lower_;
  double cell_size_ = 1.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace abslee
