#pragma once

#include "abslee/basis.hpp"
#include "abslee/dg.hpp"
#include "abslee/mesh.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace abslee {

/// One row of a centroid CSV file.
struct FieldRow {
  long cell_id = 0;
  Vec2 x = Vec2::Zero();
  State4 q = State4::Zero();
};

/// Columns cell_id,x,y,rho,u,v,p with 17 significant digits (centroid values).
void write_field_csv(std::ostream& out, const DGField& q, const GeometryCache& geom, const BasisSet& basis);
std::vector<FieldRow> read_field_csv(std::istream& in);
std::vector<FieldRow> load_field_csv(const std::filesystem::path& path);

/// Modal coefficients for exact restarts:
///   abslee-modal <order> <n_cells>
/// followed by n_cells * n_basis lines "rho u v p".
void write_modal(std::ostream& out, const DGField& q);
DGField read_modal(std::istream& in);
DGField load_modal(const std::filesystem::path& path);

/// Legacy ASCII unstructured-grid VTK with centroid values as cell data.
void write_vtk(std::ostream& out, const Mesh& mesh, const DGField& q, const BasisSet& basis);

}  // namespace abslee
