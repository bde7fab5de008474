#include "abslee/mesh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace abslee {

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::wall: return "wall";
    case BoundaryTag::nonreflective: return "nonreflective";
    case BoundaryTag::free: return "free";
  }
  return "free";
}

BoundaryTag parse_boundary_tag(std::string_view text) {
  if (text == "wall") return BoundaryTag::wall;
  if (text == "nonreflective") return BoundaryTag::nonreflective;
  if (text == "free") return BoundaryTag::free;
  throw ConfigError("unknown boundary tag '" + std::string(text) + "'");
}

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next non-empty line with comments stripped, split into tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }
};

double to_double(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    if (!std::isfinite(v)) throw ParseError("non-finite coordinate '" + s + "'", line);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + s + "'", line);
  }
}

long to_index(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
}

std::size_t read_header(LineReader& reader, std::string_view keyword) {
  std::vector<std::string> tok;
  if (!reader.next(tok)) {
    throw ParseError("unexpected end of file, expected '" + std::string(keyword) + " <count>'",
                     reader.line_no);
  }
  if (tok.size() != 2 || tok[0] != keyword) {
    throw ParseError("expected '" + std::string(keyword) + " <count>'", reader.line_no);
  }
  long n = to_index(tok[1], reader.line_no);
  if (n < 0) throw ParseError("negative count", reader.line_no);
  return static_cast<std::size_t>(n);
}

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

Mesh parse_mesh(std::istream& in) {
  LineReader reader{in};
  Mesh mesh;
  std::vector<std::string> tok;

  const std::size_t n_nodes = read_header(reader, "nodes");
  mesh.nodes.reserve(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (!reader.next(tok)) throw ParseError("unexpected end of file in node block", reader.line_no);
    if (tok.size() != 2) throw ParseError("node line must be 'x y'", reader.line_no);
    mesh.nodes.emplace_back(to_double(tok[0], reader.line_no), to_double(tok[1], reader.line_no));
  }

  const std::size_t n_tri = read_header(reader, "triangles");
  mesh.triangles.reserve(n_tri);
  for (std::size_t i = 0; i < n_tri; ++i) {
    if (!reader.next(tok)) throw ParseError("unexpected end of file in triangle block", reader.line_no);
    if (tok.size() != 3) throw ParseError("triangle line must be 'i j k'", reader.line_no);
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) {
      long idx = to_index(tok[k], reader.line_no);
      if (idx < 0 || idx >= static_cast<long>(n_nodes)) {
        throw ParseError("node index " + tok[k] + " out of range", reader.line_no);
      }
      t[k] = static_cast<int>(idx);
    }
    mesh.triangles.push_back(t);
  }

  const std::size_t n_bnd = read_header(reader, "boundary");
  mesh.boundary_faces.reserve(n_bnd);
  for (std::size_t i = 0; i < n_bnd; ++i) {
    if (!reader.next(tok)) throw ParseError("unexpected end of file in boundary block", reader.line_no);
    if (tok.size() != 3) throw ParseError("boundary line must be 'i j tag'", reader.line_no);
    BoundaryFace f;
    long a = to_index(tok[0], reader.line_no);
    long b = to_index(tok[1], reader.line_no);
    if (a < 0 || a >= static_cast<long>(n_nodes) || b < 0 || b >= static_cast<long>(n_nodes)) {
      throw ParseError("boundary node index out of range", reader.line_no);
    }
    f.a = static_cast<int>(a);
    f.b = static_cast<int>(b);
    try {
      f.tag = parse_boundary_tag(tok[2]);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), reader.line_no);
    }
    mesh.boundary_faces.push_back(f);
  }

  if (reader.next(tok)) throw ParseError("trailing content after boundary block", reader.line_no);

  validate_mesh(mesh);
  return mesh;
}

Mesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path.string() + "'");
  return parse_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << std::setprecision(17);
  out << "nodes " << mesh.nodes.size() << '\n';
  for (const auto& p : mesh.nodes) out << p.x() << ' ' << p.y() << '\n';
  out << "triangles " << mesh.triangles.size() << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "boundary " << mesh.boundary_faces.size() << '\n';
  for (const auto& f : mesh.boundary_faces) out << f.a << ' ' << f.b << ' ' << to_string(f.tag) << '\n';
}

void save_mesh(const std::filesystem::path& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file '" + path.string() + "'");
  write_mesh(out, mesh);
}

void validate_mesh(const Mesh& mesh) {
  const int n_nodes = static_cast<int>(mesh.nodes.size());
  if (mesh.triangles.empty()) throw ValidationError("mesh has no triangles");

  std::map<std::pair<int, int>, int> edge_use;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= n_nodes) {
        throw ValidationError("triangle " + std::to_string(t) + " references node " +
                              std::to_string(tri[k]) + " out of range");
      }
    }
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      if (a == b || (mesh.nodes[a] - mesh.nodes[b]).norm() == 0.0) {
        throw ValidationError("triangle " + std::to_string(t) + " has a degenerate edge");
      }
      ++edge_use[edge_key(a, b)];
    }
    const double area = signed_area(mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]]);
    if (!(area > 0.0)) {
      throw ValidationError("triangle " + std::to_string(t) + " has " +
                            (area < 0.0 ? "negative" : "zero") + " area");
    }
  }

  std::map<std::pair<int, int>, int> listed;
  for (std::size_t i = 0; i < mesh.boundary_faces.size(); ++i) {
    const auto& f = mesh.boundary_faces[i];
    if (f.a < 0 || f.a >= n_nodes || f.b < 0 || f.b >= n_nodes) {
      throw ValidationError("boundary face " + std::to_string(i) + " references a node out of range");
    }
    auto key = edge_key(f.a, f.b);
    auto it = edge_use.find(key);
    if (it == edge_use.end()) {
      throw ValidationError("boundary face " + std::to_string(i) + " is not an edge of any triangle");
    }
    if (it->second != 1) {
      throw ValidationError("boundary face " + std::to_string(i) + " is shared by " +
                            std::to_string(it->second) + " triangles");
    }
    if (++listed[key] > 1) {
      throw ValidationError("boundary face " + std::to_string(i) + " is listed twice");
    }
  }

  for (const auto& [key, count] : edge_use) {
    if (count > 2) {
      throw ValidationError("edge (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                            ") is shared by more than two triangles");
    }
    if (count == 1 && !listed.contains(key)) {
      throw ValidationError("edge (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                            ") lies on the boundary but has no boundary entry");
    }
  }
}

Mesh make_rectangle_mesh(double x0, double x1, double y0, double y1, int nx, int ny,
                         const SideTags& tags) {
  if (nx < 1 || ny < 1 || !(x1 > x0) || !(y1 > y0)) {
    throw ConfigError("rectangle mesh needs nx, ny >= 1 and a non-empty box");
  }
  Mesh mesh;
  const double hx = (x1 - x0) / nx;
  const double hy = (y1 - y0) / ny;
  auto node = [nx](int i, int j) { return j * (nx + 1) + i; };
  mesh.nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      // Pin the outer edges exactly so the hull area is reproduced.
      const double x = (i == nx) ? x1 : x0 + i * hx;
      const double y = (j == ny) ? y1 : y0 + j * hy;
      mesh.nodes.emplace_back(x, y);
    }
  }
  mesh.triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int sw = node(i, j), se = node(i + 1, j), nw = node(i, j + 1), ne = node(i + 1, j + 1);
      if ((i + j) % 2 == 0) {
        mesh.triangles.push_back({sw, se, ne});
        mesh.triangles.push_back({sw, ne, nw});
      } else {
        mesh.triangles.push_back({sw, se, nw});
        mesh.triangles.push_back({se, ne, nw});
      }
    }
  }
  for (int i = 0; i < nx; ++i) mesh.boundary_faces.push_back({node(i, 0), node(i + 1, 0), tags.bottom});
  for (int j = 0; j < ny; ++j) mesh.boundary_faces.push_back({node(nx, j), node(nx, j + 1), tags.right});
  for (int i = nx; i > 0; --i) mesh.boundary_faces.push_back({node(i, ny), node(i - 1, ny), tags.top});
  for (int j = ny; j > 0; --j) mesh.boundary_faces.push_back({node(0, j), node(0, j - 1), tags.left});
  validate_mesh(mesh);
  return mesh;
}

Vec2 GeometryCache::outward_normal(int face, int cell) const {
  const Face& f = faces[static_cast<std::size_t>(face)];
  return f.owner == cell ? f.normal : Vec2(-f.normal);
}

Vec2 GeometryCache::to_reference(int cell, const Vec2& x) const {
  const auto c = static_cast<std::size_t>(cell);
  return inverse_jacobian[c] * (x - cell_origin[c]);
}

Vec2 GeometryCache::to_physical(int cell, const Vec2& xi) const {
  const auto c = static_cast<std::size_t>(cell);
  return cell_origin[c] + jacobian[c] * xi;
}

GeometryCache compute_geometry(const Mesh& mesh) {
  GeometryCache g;
  const std::size_t nc = mesh.triangles.size();
  g.cell_area.resize(nc);
  g.cell_centroid.resize(nc);
  g.cell_origin.resize(nc);
  g.jacobian.resize(nc);
  g.inverse_jacobian.resize(nc);
  g.cell_faces.assign(nc, {-1, -1, -1});
  g.cell_neighbors.assign(nc, {-1, -1, -1});

  std::map<std::pair<int, int>, BoundaryTag> boundary_tag;
  for (const auto& f : mesh.boundary_faces) boundary_tag[edge_key(f.a, f.b)] = f.tag;

  std::map<std::pair<int, int>, int> face_of_edge;
  g.min_face_length = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& tri = mesh.triangles[c];
    const Vec2& p0 = mesh.nodes[tri[0]];
    const Vec2& p1 = mesh.nodes[tri[1]];
    const Vec2& p2 = mesh.nodes[tri[2]];
    Eigen::Matrix2d jac;
    jac.col(0) = p1 - p0;
    jac.col(1) = p2 - p0;
    g.cell_origin[c] = p0;
    g.jacobian[c] = jac;
    g.inverse_jacobian[c] = jac.inverse();
    g.cell_area[c] = 0.5 * jac.determinant();
    g.cell_centroid[c] = (p0 + p1 + p2) / 3.0;

    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      auto key = edge_key(a, b);
      auto it = face_of_edge.find(key);
      if (it == face_of_edge.end()) {
        Face f;
        f.nodes = {a, b};
        f.owner = static_cast<int>(c);
        f.owner_local = k;
        const Vec2 d = mesh.nodes[b] - mesh.nodes[a];
        f.length = d.norm();
        f.normal = Vec2(d.y(), -d.x()) / f.length;
        g.length_scale = std::max(g.length_scale, f.length);
        g.min_face_length = std::min(g.min_face_length, f.length);
        const int id = static_cast<int>(g.faces.size());
        face_of_edge.emplace(key, id);
        g.faces.push_back(f);
        g.cell_faces[c][k] = id;
      } else {
        Face& f = g.faces[static_cast<std::size_t>(it->second)];
        f.neighbor = static_cast<int>(c);
        f.neighbor_local = k;
        g.cell_faces[c][k] = it->second;
        g.cell_neighbors[c][k] = f.owner;
        g.cell_neighbors[static_cast<std::size_t>(f.owner)][f.owner_local] = static_cast<int>(c);
      }
    }
  }
  for (auto& f : g.faces) {
    if (f.is_boundary()) {
      auto it = boundary_tag.find(edge_key(f.nodes[0], f.nodes[1]));
      if (it == boundary_tag.end()) {
        throw ValidationError("boundary edge (" + std::to_string(f.nodes[0]) + ", " +
                              std::to_string(f.nodes[1]) + ") has no tag");
      }
      f.tag = it->second;
    }
  }
  return g;
}

PointLocator::PointLocator(const Mesh& mesh, const GeometryCache& geom) : geom_(&geom) {
  Vec2 lo = mesh.nodes.front(), hi = mesh.nodes.front();
  for (const auto& p : mesh.nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  cell_size_ = std::max(geom.length_scale, 1e-12);
  lower_ = lo;
  nx_ = std::max(1, static_cast<int>(std::ceil((hi.x() - lo.x()) / cell_size_)) + 1);
  ny_ = std::max(1, static_cast<int>(std::ceil((hi.y() - lo.y()) / cell_size_)) + 1);
  buckets_.resize(static_cast<std::size_t>(nx_ * ny_));
  for (std::size_t c = 0; c < mesh.triangles.size(); ++c) {
    Vec2 tlo = mesh.nodes[mesh.triangles[c][0]], thi = tlo;
    for (int k = 1; k < 3; ++k) {
      tlo = tlo.cwiseMin(mesh.nodes[mesh.triangles[c][k]]);
      thi = thi.cwiseMax(mesh.nodes[mesh.triangles[c][k]]);
    }
    const int i0 = std::clamp(static_cast<int>((tlo.x() - lower_.x()) / cell_size_), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((thi.x() - lower_.x()) / cell_size_), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>((tlo.y() - lower_.y()) / cell_size_), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>((thi.y() - lower_.y()) / cell_size_), 0, ny_ - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(j * nx_ + i)].push_back(static_cast<int>(c));
  }
}

std::optional<int> PointLocator::locate(const Vec2& x) const {
  const int i = static_cast<int>(std::floor((x.x() - lower_.x()) / cell_size_));
  const int j = static_cast<int>(std::floor((x.y() - lower_.y()) / cell_size_));
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
  constexpr double tol = 1e-10;
  std::optional<int> best;
  double best_violation = std::numeric_limits<double>::infinity();
  for (int c : buckets_[static_cast<std::size_t>(j * nx_ + i)]) {
    const Vec2 xi = geom_->to_reference(c, x);
    // Barycentric violation: how far outside the reference triangle.
    const double violation = std::max({-xi.x(), -xi.y(), xi.x() + xi.y() - 1.0, 0.0});
    if (violation <= tol) return c;
    if (violation < best_violation) {
      best_violation = violation;
      best = c;
    }
  }
  if (best && best_violation < 1e-8) return best;
  return std::nullopt;
}

}  // namespace abslee
