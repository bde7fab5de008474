#include "abslee/field_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace abslee {
namespace {

// Value at the centroid (reference point (1/3, 1/3)).
State4 centroid_value(const DGField& q, const BasisSet& basis, std::size_t c) {
  return evaluate(q, basis, c, Vec2(1.0 / 3.0, 1.0 / 3.0));
}

}  // namespace

void write_field_csv(std::ostream& out, const DGField& q, const GeometryCache& geom, const BasisSet& basis) {
  if (q.n_cells() != geom.n_cells()) throw Error("write_field_csv: field does not match the mesh");
  std::ostringstream s;
  s.precision(17);
  s << "cell_id,x,y,rho,u,v,p\n";
  for (std::size_t c = 0; c < q.n_cells(); ++c) {
    const State4 v = centroid_value(q, basis, c);
    const Vec2& x = geom.cell_centroid[c];
    s << c << ',' << x.x() << ',' << x.y() << ',' << v[0] << ',' << v[1] << ',' << v[2] << ',' << v[3] << '\n';
  }
  out << s.str();
}

std::vector<FieldRow> read_field_csv(std::istream& in) {
  std::vector<FieldRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "cell_id,x,y,rho,u,v,p") throw ParseError("unexpected CSV header '" + line + "'", lineno);
      continue;
    }
    std::istringstream s(line);
    FieldRow row;
    char comma = 0;
    s >> row.cell_id >> comma >> row.x.x() >> comma >> row.x.y();
    for (int k = 0; k < 4; ++k) s >> comma >> row.q[k];
    if (!s || comma != ',') throw ParseError("malformed CSV row", lineno);
    rows.push_back(row);
  }
  return rows;
}

std::vector<FieldRow> load_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open field file: " + path.string());
  return read_field_csv(in);
}

void write_modal(std::ostream& out, const DGField& q) {
  std::ostringstream s;
  s.precision(17);
  s << "abslee-modal " << q.order() << ' ' << q.n_cells() << '\n';
  for (std::size_t c = 0; c < q.n_cells(); ++c) {
    const auto block = q.cell(c);
    for (int b = 0; b < q.n_basis(); ++b)
      s << block(b, 0) << ' ' << block(b, 1) << ' ' << block(b, 2) << ' ' << block(b, 3) << '\n';
  }
  out << s.str();
}

DGField read_modal(std::istream& in) {
  std::string magic;
  int order = -1;
  long n_cells = -1;
  if (!(in >> magic >> order >> n_cells) || magic != "abslee-modal")
    throw ParseError("missing 'abslee-modal <order> <n_cells>' header", 1);
  if (order < 0 || order > kMaxOrder || n_cells < 0) throw ParseError("bad modal header values", 1);
  DGField q(order, static_cast<std::size_t>(n_cells));
  auto data = q.coeffs();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!(in >> data[i]))
      throw ParseError("modal file truncated after " + std::to_string(i) + " values", 0);
  }
  return q;
}

DGField load_modal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open modal file: " + path.string());
  return read_modal(in);
}

void write_vtk(std::ostream& out, const Mesh& mesh, const DGField& q, const BasisSet& basis) {
  if (q.n_cells() != mesh.n_cells()) throw Error("write_vtk: field does not match the mesh");
  std::ostringstream s;
  s.precision(17);
  s << "# vtk DataFile Version 3.0\nabslee field\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  s << "POINTS " << mesh.nodes.size() << " double\n";
  for (const auto& p : mesh.nodes) s << p.x() << ' ' << p.y() << " 0\n";
  s << "CELLS " << mesh.n_cells() << ' ' << 4 * mesh.n_cells() << '\n';
  for (const auto& t : mesh.triangles) s << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  s << "CELL_TYPES " << mesh.n_cells() << '\n';
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) s << "5\n";
  s << "CELL_DATA " << mesh.n_cells() << '\n';
  static constexpr const char* names[] = {"rho", "u", "v", "p"};
  std::vector<State4> values(mesh.n_cells());
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) values[c] = centroid_value(q, basis, c);
  for (int k = 0; k < 4; ++k) {
    s << "SCALARS " << names[k] << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& v : values) s << v[k] << '\n';
  }
  out << s.str();
}

}  // namespace abslee
