#include "bicons/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "bicons/errors.hpp"

namespace bicons {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ExportError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw ExportError("write to " + path + " failed");
}

/// Orthonormal basis of the complement of a unit vector p in R^4.
std::array<Vec4, 3> complement_basis(const Vec4& p) {
  std::array<Vec4, 3> out{};
  int made = 0;
  for (int e = 0; e < 4 && made < 3; ++e) {
    Vec4 v{};
    v[static_cast<std::size_t>(e)] = 1.0;
    auto sub = [&](const Vec4& b) {
      double c = 0.0;
      for (int i = 0; i < 4; ++i) c += v[i] * b[i];
      for (int i = 0; i < 4; ++i) v[i] -= c * b[i];
    };
    sub(p);
    for (int k = 0; k < made; ++k) sub(out[static_cast<std::size_t>(k)]);
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n < 0.5) continue;
    for (double& x : v) x /= n;
    out[static_cast<std::size_t>(made++)] = v;
  }
  return out;
}

}  // namespace

MeshProjection resolve_projection(SpaceFormSign eps, MeshProjection p) {
  if (p != MeshProjection::Auto) return p;
  switch (eps.value()) {
    case 1:
      return MeshProjection::Stereographic;
    case -1:
      return MeshProjection::PoincareBall;
    default:
      return MeshProjection::Direct;
  }
}

std::vector<std::array<double, 3>> mesh_vertices(const ImmersionGrid& grid, const MeshOptions& opt) {
  const MeshProjection proj = resolve_projection(grid.eps, opt.projection);
  const int e = grid.eps.value();
  if ((proj == MeshProjection::Direct && e != 0) || (proj == MeshProjection::Stereographic && e != 1) ||
      (proj == MeshProjection::PoincareBall && e != -1))
    throw ExportError("mesh_vertices: projection does not match the " + grid.eps.ambient_name() + " ambient");
  std::array<Vec4, 3> basis{};
  if (proj == MeshProjection::Stereographic) {
    double n = 0.0;
    for (double x : opt.pole) n += x * x;
    if (std::abs(n - 1.0) > 1e-12) throw ExportError("mesh_vertices: stereographic pole must be a unit vector");
    basis = complement_basis(opt.pole);
  }
  std::vector<std::array<double, 3>> out;
  out.reserve(grid.frames.size());
  for (int i = 0; i < grid.n_rho(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      const Vec4& x = grid.at(i, j).Phi;
      std::array<double, 3> v{};
      if (proj == MeshProjection::Direct) {
        v = {x[0], x[1], x[2]};
      } else if (proj == MeshProjection::PoincareBall) {
        const double d = 1.0 + x[3];
        v = {x[0] / d, x[1] / d, x[2] / d};
      } else {
        double xp = 0.0;
        for (int c = 0; c < 4; ++c) xp += x[c] * opt.pole[c];
        const double d = 1.0 - xp;
        if (d < opt.pole_tolerance) {
          throw ExportError("mesh_vertices: node (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") at rho=" + g17(grid.rho[static_cast<std::size_t>(i)]) +
                            ", theta=" + g17(grid.theta[static_cast<std::size_t>(j)]) +
                            " coincides with the projection pole");
        }
        for (int k = 0; k < 3; ++k) {
          double c = 0.0;
          for (int m = 0; m < 4; ++m) c += x[m] * basis[static_cast<std::size_t>(k)][m];
          v[static_cast<std::size_t>(k)] = c / d;
        }
      }
      out.push_back(v);
    }
  }
  return out;
}

std::vector<std::array<int, 3>> mesh_faces(const ImmersionGrid& grid) {
  std::vector<std::array<int, 3>> faces;
  const int nt = grid.n_theta();
  for (int i = 0; i + 1 < grid.n_rho(); ++i) {
    for (int j = 0; j + 1 < nt; ++j) {
      const int a = i * nt + j;
      const int b = a + 1;
      const int c = a + nt;
      const int d = c + 1;
      faces.push_back({a, c, b});
      faces.push_back({b, c, d});
    }
  }
  return faces;
}

std::string obj_string(const ImmersionGrid& grid, const MeshOptions& opt) {
  const auto verts = mesh_vertices(grid, opt);
  std::string s = "# biconservative surface in " + grid.eps.ambient_name() + "\n";
  for (const auto& v : verts) s += "v " + g17(v[0]) + " " + g17(v[1]) + " " + g17(v[2]) + "\n";
  for (const auto& f : mesh_faces(grid))
    s += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " + std::to_string(f[2] + 1) + "\n";
  return s;
}

void write_obj(const ImmersionGrid& grid, const std::string& path, const MeshOptions& opt) {
  write_file(path, obj_string(grid, opt));
}

std::string csv_string(const ImmersionGrid& grid) {
  const bool curved = grid.eps.value() != 0;
  std::string s = curved ? "rho,theta,x1,x2,x3,x4,drift\n" : "rho,theta,x1,x2,x3,drift\n";
  for (int i = 0; i < grid.n_rho(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      const Vec4& x = grid.at(i, j).Phi;
      s += g17(grid.rho[static_cast<std::size_t>(i)]) + "," + g17(grid.theta[static_cast<std::size_t>(j)]);
      for (int c = 0; c < (curved ? 4 : 3); ++c) s += "," + g17(x[c]);
      s += "," + g17(grid.drift_at(i, j)) + "\n";
    }
  }
  return s;
}

void write_csv(const ImmersionGrid& grid, const std::string& path) { write_file(path, csv_string(grid)); }

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str()) throw DomainError("parse_csv: not a number: '" + c + "'");
      row.push_back(v);
    }
    if (row.size() != t.header.size()) throw DomainError("parse_csv: row width differs from header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("read_csv: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

MeshTopology mesh_topology(std::size_t vertices, const std::vector<std::array<int, 3>>& faces) {
  MeshTopology t;
  t.vertices = vertices;
  t.faces = faces.size();
  std::map<std::pair<int, int>, int> edges;
  for (const auto& f : faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) ++t.degenerate_faces;
    for (int k = 0; k < 3; ++k) {
      int a = f[static_cast<std::size_t>(k)];
      int b = f[static_cast<std::size_t>((k + 1) % 3)];
      if (a > b) std::swap(a, b);
      ++edges[{a, b}];
    }
  }
  t.edges = edges.size();
  for (const auto& [e, n] : edges) {
    if (n == 1) ++t.boundary_edges;
    if (n > 2) ++t.non_manifold_edges;
  }
  return t;
}

MeshTopology obj_topology(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t verts = 0;
  std::vector<std::array<int, 3>> faces;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      ++verts;
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int& x : f) {
        std::string tok;
        ls >> tok;
        x = std::stoi(tok.substr(0, tok.find('/'))) - 1;
        if (x < 0 || static_cast<std::size_t>(x) >= verts) throw DomainError("obj_topology: face index out of range");
      }
      faces.push_back(f);
    }
  }
  return mesh_topology(verts, faces);
}

}  // namespace bicons
