#pragma once

#include <array>
#include <string>
#include <vector>

#include "bicons/immersion.hpp"

namespace bicons {

enum class MeshProjection {
  Auto,           // Direct for R^3, Stereographic for S^3, PoincareBall for H^3
  Direct,         // R^3 only
  Stereographic,  // S^3 from `pole`
  PoincareBall,   // H^3: x / (1 + x4)
};

struct MeshOptions {
  MeshProjection projection = MeshProjection::Auto;
  /// Unit vector of R^4 used as the stereographic pole.
  Vec4 pole{0.0, 0.0, 0.0, -1.0};
  /// Nodes with 1 - <x, pole> below this are pole collisions.
  double pole_tolerance = 1e-9;
};

MeshProjection resolve_projection(SpaceFormSign eps, MeshProjection p);

/// One R^3 vertex per grid node, row-major like the grid. ExportError on a pole
/// collision (naming the node) or a projection that does not fit the ambient.
std::vector<std::array<double, 3>> mesh_vertices(const ImmersionGrid& grid, const MeshOptions& opt = {});
/// Two triangles per grid cell, 0-based vertex indices.
std::vector<std::array<int, 3>> mesh_faces(const ImmersionGrid& grid);

std::string obj_string(const ImmersionGrid& grid, const MeshOptions& opt = {});
void write_obj(const ImmersionGrid& grid, const std::string& path, const MeshOptions& opt = {});
/// Columns rho, theta, x1..x3 (x4 for curved ambients), drift; every value as %.17g.
std::string csv_string(const ImmersionGrid& grid);
void write_csv(const ImmersionGrid& grid, const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

struct MeshTopology {
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::size_t edges = 0;
  std::size_t boundary_edges = 0;
  std::size_t non_manifold_edges = 0;
  std::size_t degenerate_faces = 0;
};
MeshTopology mesh_topology(std::size_t vertices, const std::vector<std::array<int, 3>>& faces);
/// Reads `v` and triangular `f` records of an OBJ document and checks its topology.
MeshTopology obj_topology(const std::string& text);

}  // namespace bicons
