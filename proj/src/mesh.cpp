#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace wg {

namespace {

constexpr double kGeomTol = 1e-12;

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
}

// Working form for triangle meshes before faces are derived.
struct TriSoup {
  std::vector<Vec3> pts;
  std::vector<std::array<int32_t, 3>> tris;
};

double signed_area(const TriSoup& s, const std::array<int32_t, 3>& t) {
  const Vec3 &a = s.pts[t[0]], &b = s.pts[t[1]], &c = s.pts[t[2]];
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

int boundary_tag_2d(const Vec3& a, const Vec3& b, const Rect2& dom) {
  auto on = [&](double va, double vb, double plane) {
    return std::abs(va - plane) < kGeomTol && std::abs(vb - plane) < kGeomTol;
  };
  if (on(a.x(), b.x(), dom.x0)) return kXMin;
  if (on(a.x(), b.x(), dom.x1)) return kXMax;
  if (on(a.y(), b.y(), dom.y0)) return kYMin;
  if (on(a.y(), b.y(), dom.y1)) return kYMax;
  return kInterior;
}

Mesh finalize_triangular(const TriSoup& s, const Rect2& dom, double h) {
  Mesh m;
  m.dim = 2;
  m.vertices = s.pts;
  m.domain_lo = Vec3(dom.x0, dom.y0, 0.0);
  m.domain_hi = Vec3(dom.x1, dom.y1, 0.0);
  m.h = h;

  m.cells.reserve(s.tris.size());
  m.cell_faces.resize(s.tris.size());
  std::unordered_map<uint64_t, int32_t> face_of_edge;
  face_of_edge.reserve(2 * s.tris.size());

  for (size_t c = 0; c < s.tris.size(); ++c) {
    const auto& t = s.tris[c];
    Cell cell;
    cell.kind = CellKind::Triangle2D;
    cell.n_verts = 3;
    for (int i = 0; i < 3; ++i) cell.verts[i] = t[i];
    cell.measure = signed_area(s, t);
    if (cell.measure <= 0.0)
      throw std::runtime_error("finalize_triangular: triangle is degenerate or clockwise");
    double dmax = 0.0;
    for (int i = 0; i < 3; ++i)
      dmax = std::max(dmax, (s.pts[t[(i + 1) % 3]] - s.pts[t[(i + 2) % 3]]).norm());
    cell.diameter = dmax;
    m.cells.push_back(cell);

    const Vec3 centroid = (s.pts[t[0]] + s.pts[t[1]] + s.pts[t[2]]) / 3.0;
    // local edge i is opposite vertex i
    for (int i = 0; i < 3; ++i) {
      const int32_t va = t[(i + 1) % 3], vb = t[(i + 2) % 3];
      const uint64_t key = edge_key(va, vb);
      auto it = face_of_edge.find(key);
      int32_t f;
      if (it == face_of_edge.end()) {
        f = int32_t(m.faces.size());
        face_of_edge.emplace(key, f);
        Face face;
        face.n_verts = 2;
        face.verts[0] = std::min(va, vb);
        face.verts[1] = std::max(va, vb);
        const Vec3 &pa = s.pts[face.verts[0]], &pb = s.pts[face.verts[1]];
        face.measure = (pb - pa).norm();
        face.diameter = face.measure;
        face.midpoint = 0.5 * (pa + pb);
        const Vec3 tang = (pb - pa) / face.measure;
        face.normal = Vec3(tang.y(), -tang.x(), 0.0);
        m.faces.push_back(face);
      } else {
        f = it->second;
      }
      Face& face = m.faces[f];
      const int slot = face.cells[0] < 0 ? 0 : 1;
      if (slot == 1 && face.cells[1] >= 0)
        throw std::runtime_error("finalize_triangular: edge shared by more than two cells");
      face.cells[slot] = int32_t(c);
      const int8_t sign = ((face.midpoint - centroid).dot(face.normal) > 0.0) ? 1 : -1;
      m.cell_faces[c][i] = CellFace{f, sign};
    }
  }

  // boundary faces: one incident cell; normal flipped to point out of the domain
  for (size_t f = 0; f < m.faces.size(); ++f) {
    Face& face = m.faces[f];
    if (face.cells[1] >= 0) continue;
    face.boundary_tag = boundary_tag_2d(s.pts[face.verts[0]], s.pts[face.verts[1]], dom);
    if (face.boundary_tag == kInterior)
      throw std::runtime_error("finalize_triangular: hanging interior edge (non-conforming mesh)");
    m.boundary_faces.push_back(int32_t(f));
    const int c = face.cells[0];
    for (int i = 0; i < 3; ++i) {
      if (m.cell_faces[c][i].face != int32_t(f)) continue;
      if (m.cell_faces[c][i].sign < 0) {
        face.normal = -face.normal;
        m.cell_faces[c][i].sign = 1;
      }
    }
  }
  check_mesh(m);
  return m;
}

TriSoup structured_soup(int nx, int ny, const Rect2& dom) {
  TriSoup s;
  const double wx = (dom.x1 - dom.x0) / nx, wy = (dom.y1 - dom.y0) / ny;
  s.pts.reserve(size_t(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      s.pts.emplace_back(dom.x0 + i * wx, dom.y0 + j * wy, 0.0);
  auto vid = [nx](int i, int j) { return int32_t(j * (nx + 1) + i); };
  s.tris.reserve(size_t(2) * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int32_t a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      s.tris.push_back({a, b, c});  // below the a-c diagonal
      s.tris.push_back({a, c, d});  // above it
    }
  }
  return s;
}

}  // namespace

Vec3 Mesh::cell_centroid(int c) const {
  const Cell& cell = cells[c];
  if (cell.kind == CellKind::Triangle2D)
    return (vertices[cell.verts[0]] + vertices[cell.verts[1]] + vertices[cell.verts[2]]) / 3.0;
  return cell.corner + 0.5 * cell.sides;
}

double Mesh::domain_measure() const {
  const Vec3 d = domain_hi - domain_lo;
  return dim == 2 ? d.x() * d.y() : d.x() * d.y() * d.z();
}

Mesh uniform_triangular(int n, const Rect2& dom) {
  if (n < 1) throw std::invalid_argument("uniform_triangular: n must be >= 1");
  if (dom.x1 <= dom.x0 || dom.y1 <= dom.y0)
    throw std::invalid_argument("uniform_triangular: empty domain");
  return finalize_triangular(structured_soup(n, n, dom), dom, (dom.x1 - dom.x0) / n);
}

Mesh anisotropic_triangular(int k, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("anisotropic_triangular: k, n must be >= 1");
  const Rect2 dom{};
  return finalize_triangular(structured_soup(k * n, n, dom), dom, 1.0 / n);
}

Mesh uniform_rect2d(int n, const Rect2& dom) {
  if (n < 1) throw std::invalid_argument("uniform_rect2d: n must be >= 1");
  Mesh m;
  m.dim = 2;
  m.domain_lo = Vec3(dom.x0, dom.y0, 0.0);
  m.domain_hi = Vec3(dom.x1, dom.y1, 0.0);
  const double a = (dom.x1 - dom.x0) / n, b = (dom.y1 - dom.y0) / n;
  m.h = a;
  auto vid = [n](int i, int j) { return int32_t(j * (n + 1) + i); };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices.emplace_back(dom.x0 + i * a, dom.y0 + j * b, 0.0);

  // vertical faces first (normal +x), then horizontal (normal +y)
  const int nvf = (n + 1) * n;
  auto vface = [n](int i, int j) { return int32_t(i * n + j); };
  auto hface = [n, nvf](int j, int i) { return int32_t(nvf + j * n + i); };
  m.faces.resize(size_t(2) * nvf);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < n; ++j) {
      Face& f = m.faces[vface(i, j)];
      f.n_verts = 2;
      f.verts[0] = vid(i, j);
      f.verts[1] = vid(i, j + 1);
      f.measure = b;
      f.diameter = b;
      f.midpoint = Vec3(dom.x0 + i * a, dom.y0 + (j + 0.5) * b, 0.0);
      f.normal = Vec3(1, 0, 0);
    }
  }
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i < n; ++i) {
      Face& f = m.faces[hface(j, i)];
      f.n_verts = 2;
      f.verts[0] = vid(i, j);
      f.verts[1] = vid(i + 1, j);
      f.measure = a;
      f.diameter = a;
      f.midpoint = Vec3(dom.x0 + (i + 0.5) * a, dom.y0 + j * b, 0.0);
      f.normal = Vec3(0, 1, 0);
    }
  }
  m.cell_faces.resize(size_t(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Cell cell;
      cell.kind = CellKind::Rect2D;
      cell.n_verts = 4;
      cell.verts = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1), 0, 0, 0, 0};
      cell.corner = Vec3(dom.x0 + i * a, dom.y0 + j * b, 0.0);
      cell.sides = Vec3(a, b, 0.0);
      cell.measure = a * b;
      cell.diameter = std::hypot(a, b);
      const int32_t c = int32_t(m.cells.size());
      m.cells.push_back(cell);
      const int32_t lf[4] = {vface(i, j), vface(i + 1, j), hface(j, i), hface(j + 1, i)};
      const int8_t sg[4] = {-1, 1, -1, 1};
      for (int q = 0; q < 4; ++q) {
        m.cell_faces[c][q] = CellFace{lf[q], sg[q]};
        Face& f = m.faces[lf[q]];
        f.cells[f.cells[0] < 0 ? 0 : 1] = c;
      }
    }
  }
  for (size_t f = 0; f < m.faces.size(); ++f) {
    Face& face = m.faces[f];
    if (face.cells[1] >= 0) continue;
    face.boundary_tag = boundary_tag_2d(m.vertices[face.verts[0]], m.vertices[face.verts[1]], dom);
    m.boundary_faces.push_back(int32_t(f));
    const int c = face.cells[0];
    for (int q = 0; q < 4; ++q) {
      if (m.cell_faces[c][q].face != int32_t(f)) continue;
      if (m.cell_faces[c][q].sign < 0) {
        face.normal = -face.normal;
        m.cell_faces[c][q].sign = 1;
      }
    }
  }
  check_mesh(m);
  return m;
}

Mesh uniform_box3d(int n) {
  if (n < 1) throw std::invalid_argument("uniform_box3d: n must be >= 1");
  Mesh m;
  m.dim = 3;
  m.domain_lo = Vec3::Zero();
  m.domain_hi = Vec3::Ones();
  const double h = 1.0 / n;
  m.h = h;
  auto vid = [n](int i, int j, int k) { return int32_t((k * (n + 1) + j) * (n + 1) + i); };
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        m.vertices.emplace_back(i * h, j * h, k * h);

  const int per_dir = (n + 1) * n * n;
  // x-normal plane i: faces (j,k); y-normal plane j: (i,k); z-normal plane k: (i,j)
  auto xf = [n](int i, int j, int k) { return int32_t((i * n + j) * n + k); };
  auto yf = [n, per_dir](int j, int i, int k) { return int32_t(per_dir + (j * n + i) * n + k); };
  auto zf = [n, per_dir](int k, int i, int j) { return int32_t(2 * per_dir + (k * n + i) * n + j); };
  m.faces.resize(size_t(3) * per_dir);
  auto setup_face = [&](int32_t f, std::array<int32_t, 4> vv, const Vec3& nrm, const Vec3& mid) {
    Face& face = m.faces[f];
    face.n_verts = 4;
    face.verts = vv;
    face.measure = h * h;
    face.diameter = h * std::sqrt(2.0);
    face.normal = nrm;
    face.midpoint = mid;
  };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        setup_face(xf(i, j, k), {vid(i, j, k), vid(i, j + 1, k), vid(i, j + 1, k + 1), vid(i, j, k + 1)},
                   Vec3(1, 0, 0), Vec3(i * h, (j + 0.5) * h, (k + 0.5) * h));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        setup_face(yf(j, i, k), {vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j, k + 1), vid(i, j, k + 1)},
                   Vec3(0, 1, 0), Vec3((i + 0.5) * h, j * h, (k + 0.5) * h));
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        setup_face(zf(k, i, j), {vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j + 1, k), vid(i, j + 1, k)},
                   Vec3(0, 0, 1), Vec3((i + 0.5) * h, (j + 0.5) * h, k * h));

  m.cell_faces.resize(size_t(n) * n * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        Cell cell;
        cell.kind = CellKind::Box3D;
        cell.n_verts = 8;
        cell.verts = {vid(i, j, k),     vid(i + 1, j, k),     vid(i + 1, j + 1, k),     vid(i, j + 1, k),
                      vid(i, j, k + 1), vid(i + 1, j, k + 1), vid(i + 1, j + 1, k + 1), vid(i, j + 1, k + 1)};
        cell.corner = Vec3(i * h, j * h, k * h);
        cell.sides = Vec3(h, h, h);
        cell.measure = h * h * h;
        cell.diameter = h * std::sqrt(3.0);
        const int32_t c = int32_t(m.cells.size());
        m.cells.push_back(cell);
        const int32_t lf[6] = {xf(i, j, k), xf(i + 1, j, k), yf(j, i, k),
                               yf(j + 1, i, k), zf(k, i, j), zf(k + 1, i, j)};
        const int8_t sg[6] = {-1, 1, -1, 1, -1, 1};
        for (int q = 0; q < 6; ++q) {
          m.cell_faces[c][q] = CellFace{lf[q], sg[q]};
          Face& f = m.faces[lf[q]];
          f.cells[f.cells[0] < 0 ? 0 : 1] = c;
        }
      }
    }
  }
  for (size_t f = 0; f < m.faces.size(); ++f) {
    Face& face = m.faces[f];
    if (face.cells[1] >= 0) continue;
    const Vec3& mid = face.midpoint;
    if (std::abs(mid.x()) < kGeomTol) face.boundary_tag = kXMin;
    else if (std::abs(mid.x() - 1.0) < kGeomTol) face.boundary_tag = kXMax;
    else if (std::abs(mid.y()) < kGeomTol) face.boundary_tag = kYMin;
    else if (std::abs(mid.y() - 1.0) < kGeomTol) face.boundary_tag = kYMax;
    else if (std::abs(mid.z()) < kGeomTol) face.boundary_tag = kZMin;
    else if (std::abs(mid.z() - 1.0) < kGeomTol) face.boundary_tag = kZMax;
    else throw std::runtime_error("uniform_box3d: untagged boundary face");
    m.boundary_faces.push_back(int32_t(f));
    const int c = face.cells[0];
    for (int q = 0; q < 6; ++q) {
      if (m.cell_faces[c][q].face != int32_t(f)) continue;
      if (m.cell_faces[c][q].sign < 0) {
        face.normal = -face.normal;
        m.cell_faces[c][q].sign = 1;
      }
    }
  }
  check_mesh(m);
  return m;
}

namespace {

TriSoup soup_from_mesh(const Mesh& m) {
  TriSoup s;
  s.pts = m.vertices;
  s.tris.reserve(m.cells.size());
  for (const Cell& c : m.cells) {
    if (c.kind != CellKind::Triangle2D)
      throw std::invalid_argument("refine_red: mesh must consist of 2D triangles");
    s.tris.push_back({c.verts[0], c.verts[1], c.verts[2]});
  }
  return s;
}

int32_t midpoint_vertex(TriSoup& s, std::unordered_map<uint64_t, int32_t>& mids, int a, int b) {
  const uint64_t key = edge_key(a, b);
  auto it = mids.find(key);
  if (it != mids.end()) return it->second;
  const int32_t v = int32_t(s.pts.size());
  s.pts.push_back(0.5 * (s.pts[a] + s.pts[b]));
  mids.emplace(key, v);
  return v;
}

std::array<std::array<int32_t, 3>, 4> red_children(TriSoup& s,
                                                   std::unordered_map<uint64_t, int32_t>& mids,
                                                   const std::array<int32_t, 3>& t) {
  const int32_t m01 = midpoint_vertex(s, mids, t[0], t[1]);
  const int32_t m12 = midpoint_vertex(s, mids, t[1], t[2]);
  const int32_t m20 = midpoint_vertex(s, mids, t[2], t[0]);
  return {{{t[0], m01, m20}, {m01, t[1], m12}, {m20, m12, t[2]}, {m01, m12, m20}}};
}

}  // namespace

Mesh refine_red(const Mesh& mesh) {
  if (mesh.dim != 2) throw std::invalid_argument("refine_red: mesh must be two-dimensional");
  TriSoup s = soup_from_mesh(mesh);
  std::unordered_map<uint64_t, int32_t> mids;
  std::vector<std::array<int32_t, 3>> out;
  out.reserve(4 * s.tris.size());
  const std::vector<std::array<int32_t, 3>> parents = s.tris;
  for (const auto& t : parents)
    for (const auto& child : red_children(s, mids, t)) out.push_back(child);
  s.tris = std::move(out);
  const Rect2 dom{mesh.domain_lo.x(), mesh.domain_lo.y(), mesh.domain_hi.x(), mesh.domain_hi.y()};
  return finalize_triangular(s, dom, mesh.h / 2.0);
}

Mesh locally_refined_kellogg(int base_n, int extra_levels) {
  if (base_n < 2 || base_n % 2 != 0)
    throw std::invalid_argument("locally_refined_kellogg: base_n must be even and >= 2");
  if (extra_levels < 0)
    throw std::invalid_argument("locally_refined_kellogg: extra_levels must be >= 0");

  const Rect2 dom{-1.0, -1.0, 1.0, 1.0};
  TriSoup s = structured_soup(base_n, base_n, dom);
  std::unordered_map<uint64_t, int32_t> mids;

  auto touches_origin = [&](const std::array<int32_t, 3>& t) {
    for (int i = 0; i < 3; ++i)
      if (s.pts[t[i]].head<2>().norm() < kGeomTol) return true;
    return false;
  };
  auto has_mid = [&](int a, int b) { return mids.count(edge_key(a, b)) != 0; };

  for (int pass = 0; pass < extra_levels; ++pass) {
    // red refinement of the triangles at the origin
    std::vector<std::array<int32_t, 3>> next;
    next.reserve(s.tris.size() + 32);
    for (const auto& t : s.tris) {
      if (touches_origin(t))
        for (const auto& child : red_children(s, mids, t)) next.push_back(child);
      else
        next.push_back(t);
    }
    s.tris = std::move(next);

    // grading: red-refine any leaf with two hanging edges or a doubly-split edge,
    // until every remaining leaf has at most one simply-split edge
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::array<int32_t, 3>> pass_out;
      pass_out.reserve(s.tris.size());
      for (const auto& t : s.tris) {
        int n_hanging = 0;
        bool nested = false;
        for (int i = 0; i < 3; ++i) {
          const int a = t[i], b = t[(i + 1) % 3];
          if (!has_mid(a, b)) continue;
          ++n_hanging;
          const int32_t mv = mids.at(edge_key(a, b));
          if (has_mid(a, mv) || has_mid(mv, b)) nested = true;
        }
        if (n_hanging >= 2 || nested) {
          for (const auto& child : red_children(s, mids, t)) pass_out.push_back(child);
          changed = true;
        } else {
          pass_out.push_back(t);
        }
      }
      s.tris = std::move(pass_out);
    }
  }

  // green closure: bisect every leaf with a single hanging edge
  std::vector<std::array<int32_t, 3>> closed;
  closed.reserve(s.tris.size() + 32);
  for (const auto& t : s.tris) {
    int split_edge = -1;
    for (int i = 0; i < 3; ++i)
      if (has_mid(t[i], t[(i + 1) % 3])) split_edge = i;
    if (split_edge < 0) {
      closed.push_back(t);
      continue;
    }
    const int a = t[split_edge], b = t[(split_edge + 1) % 3], c = t[(split_edge + 2) % 3];
    const int32_t mv = mids.at(edge_key(a, b));
    closed.push_back({c, a, mv});
    closed.push_back({c, mv, b});
  }
  s.tris = std::move(closed);
  return finalize_triangular(s, dom, 2.0 / base_n);
}

void check_mesh(const Mesh& m) {
  auto fail = [](const std::string& msg) { throw std::runtime_error("check_mesh: " + msg); };

  double total = 0.0;
  for (size_t c = 0; c < m.cells.size(); ++c) {
    if (m.cells[c].measure <= 0.0) fail("non-positive cell measure");
    total += m.cells[c].measure;
    // closed boundary: outward face vectors of every cell sum to zero
    Vec3 flux = Vec3::Zero();
    for (int q = 0; q < m.faces_per_cell(int(c)); ++q) {
      const CellFace cf = m.cell_faces[c][q];
      if (cf.face < 0 || cf.sign == 0) fail("unset cell-face entry");
      const Face& f = m.faces[cf.face];
      flux += double(cf.sign) * f.measure * f.normal;
      if (f.cells[0] != int32_t(c) && f.cells[1] != int32_t(c)) fail("cell-face incidence mismatch");
    }
    if (flux.norm() > 1e-12 * std::max(1.0, m.cells[c].measure)) fail("cell boundary is not closed");
  }
  if (std::abs(total - m.domain_measure()) > 1e-12 * m.domain_measure())
    fail("cell measures do not sum to the domain measure");

  std::vector<int> use(m.faces.size(), 0);
  std::vector<int> signsum(m.faces.size(), 0);
  for (size_t c = 0; c < m.cells.size(); ++c) {
    for (int q = 0; q < m.faces_per_cell(int(c)); ++q) {
      use[m.cell_faces[c][q].face]++;
      signsum[m.cell_faces[c][q].face] += m.cell_faces[c][q].sign;
    }
  }
  for (size_t f = 0; f < m.faces.size(); ++f) {
    const Face& face = m.faces[f];
    if (std::abs(face.normal.norm() - 1.0) > 1e-14) fail("face normal is not unit");
    if (face.measure <= 0.0) fail("non-positive face measure");
    if (use[f] == 1) {
      if (face.boundary_tag == kInterior) fail("single-cell face without boundary tag");
      const Vec3 d = face.midpoint - m.cell_centroid(face.cells[0]);
      if (d.dot(face.normal) <= 0.0) fail("boundary normal does not point outward");
    } else if (use[f] == 2) {
      if (face.boundary_tag != kInterior) fail("interior face carries a boundary tag");
      if (signsum[f] != 0) fail("interior face signs are not opposite");
    } else {
      fail("face incident to " + std::to_string(use[f]) + " cells");
    }
  }
}

void dump_mesh(const Mesh& m, std::ostream& out) {
  char buf[256];
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out << buf << '\n';
  };
  out << "wg-mesh 1\n";
  line("dim %d", m.dim);
  line("h %.17g", m.h);
  line("domain %.17g %.17g %.17g %.17g %.17g %.17g", m.domain_lo.x(), m.domain_lo.y(),
       m.domain_lo.z(), m.domain_hi.x(), m.domain_hi.y(), m.domain_hi.z());
  line("vertices %zu", m.vertices.size());
  for (const Vec3& p : m.vertices) line("%.17g %.17g %.17g", p.x(), p.y(), p.z());
  line("cells %zu", m.cells.size());
  for (const Cell& c : m.cells) {
    const char* kind = c.kind == CellKind::Triangle2D ? "tri"
                       : c.kind == CellKind::Rect2D   ? "rect"
                                                      : "box";
    out << kind;
    for (int i = 0; i < c.n_verts; ++i) out << ' ' << c.verts[i];
    out << '\n';
  }
  line("faces %zu", m.faces.size());
  for (const Face& f : m.faces) {
    out << f.n_verts;
    for (int i = 0; i < f.n_verts; ++i) out << ' ' << f.verts[i];
    line(" measure %.17g normal %.17g %.17g %.17g", f.measure, f.normal.x(), f.normal.y(),
         f.normal.z());
  }
  line("cell_faces %zu", m.cells.size());
  for (size_t c = 0; c < m.cells.size(); ++c) {
    for (int q = 0; q < m.faces_per_cell(int(c)); ++q) {
      if (q) out << ' ';
      out << m.cell_faces[c][q].face << ' ' << int(m.cell_faces[c][q].sign);
    }
    out << '\n';
  }
  line("boundary %zu", m.boundary_faces.size());
  for (int32_t f : m.boundary_faces) line("%d %d", f, m.faces[f].boundary_tag);
}

}  // namespace wg
