// Structured meshes (triangles, axis-aligned rectangles and boxes) with
// oriented faces, used by the weak Galerkin discretization.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wg {

using Vec3 = Eigen::Vector3d;

enum class CellKind { Triangle2D, Rect2D, Box3D };

// Boundary tags assigned geometrically on the bounding box of the domain.
enum BoundaryTag : int {
  kInterior = -1,
  kXMin = 0,
  kXMax = 1,
  kYMin = 2,
  kYMax = 3,
  kZMin = 4,
  kZMax = 5,
};

struct Cell {
  CellKind kind = CellKind::Triangle2D;
  std::array<int32_t, 8> verts{};  // triangle: 3 CCW; rect: 4; box: 8
  int n_verts = 0;
  double measure = 0.0;           // area (2D) or volume (3D)
  Vec3 corner = Vec3::Zero();     // min corner (Rect2D / Box3D only)
  Vec3 sides = Vec3::Zero();      // side lengths a,b(,c) (Rect2D / Box3D only)
  double diameter = 0.0;
};

struct Face {
  std::array<int32_t, 4> verts{};
  int n_verts = 0;
  double measure = 0.0;          // length (2D) or area (3D)
  Vec3 normal = Vec3::Zero();    // unit, one fixed global orientation
  Vec3 midpoint = Vec3::Zero();
  double diameter = 0.0;         // weight used by the face-based L2 norm
  int boundary_tag = kInterior;
  int32_t cells[2] = {-1, -1};   // incident cells; cells[1] == -1 on the boundary
};

// Per-cell local faces are ordered: triangles have edge i opposite vertex i;
// rectangles/boxes use (x=lo, x=hi, y=lo, y=hi[, z=lo, z=hi]).
struct CellFace {
  int32_t face = -1;
  int8_t sign = 0;  // sign * face.normal is the outward normal of the cell
};

struct Mesh {
  int dim = 2;
  std::vector<Vec3> vertices;
  std::vector<Cell> cells;
  std::vector<Face> faces;
  std::vector<std::array<CellFace, 6>> cell_faces;
  std::vector<int32_t> boundary_faces;
  Vec3 domain_lo = Vec3::Zero();
  Vec3 domain_hi = Vec3::Zero();
  double h = 0.0;  // characteristic mesh size as reported in convergence tables

  int faces_per_cell(int c) const {
    switch (cells[c].kind) {
      case CellKind::Triangle2D: return 3;
      case CellKind::Rect2D: return 4;
      case CellKind::Box3D: return 6;
    }
    return 0;
  }
  Vec3 cell_centroid(int c) const;
  double domain_measure() const;
};

struct Rect2 {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
};

// n x n sub-rectangles of `domain`, each split by the lower-left to
// upper-right diagonal.
Mesh uniform_triangular(int n, const Rect2& domain = {});

// kn x n sub-rectangles of the unit square (kn columns, n rows); reported
// mesh size is h = 1/n.
Mesh anisotropic_triangular(int k, int n);

// n x n axis-aligned rectangles of `domain`.
Mesh uniform_rect2d(int n, const Rect2& domain = {});

// n^3 congruent boxes of the unit cube.
Mesh uniform_box3d(int n);

// Each triangle split into 4 similar triangles through the edge midpoints.
Mesh refine_red(const Mesh& mesh);

// Uniform base mesh of (-1,1)^2 whose triangles at the origin are red-refined
// `extra_levels` times, with red/green closure keeping the mesh conforming.
// base_n must be even so the origin is a mesh vertex.
Mesh locally_refined_kellogg(int base_n, int extra_levels);

// Throws std::runtime_error when a mesh invariant is violated.
void check_mesh(const Mesh& mesh);

// Plain-text dump: sections for vertices, cells, faces, cell-face incidence
// and boundary tags. The layout is documented in the README and stable.
void dump_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace wg
