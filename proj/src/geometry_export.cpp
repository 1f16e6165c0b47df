#include "stella/geometry_export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stella/errors.hpp"

namespace stella {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const CartesianPoint& a, const CartesianPoint& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

CartesianPoint lerp(const CartesianPoint& a, const CartesianPoint& b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

/// Flip faces whose normal points toward `center`.
void orient_outward(SurfaceMesh& mesh, const CartesianPoint& center) {
  for (auto& f : mesh.faces) {
    const auto& a = mesh.vertices[f[0] - 1];
    const auto& b = mesh.vertices[f[1] - 1];
    const auto& c = mesh.vertices[f[2] - 1];
    if (dot(cross(sub(b, a), sub(c, a)), sub(a, center)) < 0.0) std::swap(f[1], f[2]);
  }
}

SurfaceMesh tetra_mesh_from(const std::array<CartesianPoint, 4>& v) {
  SurfaceMesh m;
  m.vertices.assign(v.begin(), v.end());
  m.faces = {{2, 3, 4}, {1, 4, 3}, {1, 2, 4}, {1, 3, 2}};
  orient_outward(m, {});
  return m;
}

/// Polygon where `plane` meets the tetrahedron spanned by `tet`, in cyclic order.
std::vector<CartesianPoint> plane_section(const Plane& plane, const std::array<CartesianPoint, 4>& tet) {
  constexpr double kOnPlane = 1e-12;
  std::array<double, 4> side{};
  for (std::size_t i = 0; i < 4; ++i) side[i] = plane.signed_value(tet[i]);

  std::vector<CartesianPoint> pts;
  auto add = [&pts](const CartesianPoint& p) {
    for (const auto& q : pts)
      if (norm(sub(p, q)) < 1e-12) return;
    pts.push_back(p);
  };
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(side[i]) <= kOnPlane) add(tet[i]);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const bool crosses = (side[i] > kOnPlane && side[j] < -kOnPlane) || (side[i] < -kOnPlane && side[j] > kOnPlane);
      if (crosses) add(lerp(tet[i], tet[j], side[i] / (side[i] - side[j])));
    }
  if (pts.size() < 3) return {};

  CartesianPoint centroid;
  for (const auto& p : pts) {
    centroid.x += p.x / pts.size();
    centroid.y += p.y / pts.size();
    centroid.z += p.z / pts.size();
  }
  const Vec3 n = plane.normal;
  Vec3 e1 = sub(pts[0], centroid);
  const double l1 = norm(e1);
  for (auto& c : e1) c /= l1;
  const Vec3 e2 = cross(n, e1);
  std::sort(pts.begin(), pts.end(), [&](const CartesianPoint& a, const CartesianPoint& b) {
    const Vec3 da = sub(a, centroid);
    const Vec3 db = sub(b, centroid);
    return std::atan2(dot(da, e2), dot(da, e1)) < std::atan2(dot(db, e2), dot(db, e1));
  });
  return pts;
}

void append_fan(SurfaceMesh& mesh, const std::vector<CartesianPoint>& polygon) {
  if (polygon.size() < 3) return;
  const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.insert(mesh.vertices.end(), polygon.begin(), polygon.end());
  for (std::uint32_t i = 1; i + 1 < polygon.size(); ++i) {
    if (triangle_area(polygon[0], polygon[i], polygon[i + 1]) > kMinFaceArea) {
      mesh.faces.push_back({base + 1, base + i + 1, base + i + 2});
    }
  }
}

SurfaceMesh degenerate_cone_mesh(const ConeSpec& spec, bool clip) {
  // Cone A loses its x^2 term (cone B its y^2 term) at k = 1/4; the other term
  // vanishes at k = 0.
  const bool quarter_pi =
      (spec.which == ConeId::A ? spec.coeff_x2 : spec.coeff_y2) < kDegenerateCoefficient;
  const auto bound = (clip || !quarter_pi) ? tetrahedron_vertices() : inverted_tetrahedron_vertices();
  SurfaceMesh mesh;
  for (const Plane& p : spec.planes()) append_fan(mesh, plane_section(p, bound));
  return mesh;
}

void put_number(std::ostream& os, double v) { os << format_number(v); }

void check_sink(const std::ostream& sink, const char* what) {
  if (!sink) throw IoError(std::string(what) + ": write failed");
}

}  // namespace

double triangle_area(const CartesianPoint& a, const CartesianPoint& b, const CartesianPoint& c) {
  return 0.5 * norm(cross(sub(b, a), sub(c, a)));
}

void SurfaceMesh::validate() const {
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (auto idx : faces[i]) {
      if (idx == 0 || idx > vertices.size()) {
        throw ValidationError("mesh: face " + std::to_string(i + 1) + " references missing vertex " + std::to_string(idx));
      }
    }
    const auto& f = faces[i];
    if (triangle_area(vertices[f[0] - 1], vertices[f[1] - 1], vertices[f[2] - 1]) <= kMinFaceArea) {
      throw ValidationError("mesh: face " + std::to_string(i + 1) + " is degenerate");
    }
  }
}

std::array<CartesianPoint, 4> inverted_tetrahedron_vertices() {
  auto v = tetrahedron_vertices();
  for (auto& p : v) std::swap(p.x, p.y);
  return v;
}

bool inside_tetrahedron(const CartesianPoint& p, double tol) {
  const auto w = point_to_weights(p).w;
  return std::all_of(w.begin(), w.end(), [tol](double v) { return v >= -tol; });
}

SurfaceMesh tetrahedron_mesh() { return tetra_mesh_from(tetrahedron_vertices()); }

SurfaceMesh inverted_tetrahedron_mesh() { return tetra_mesh_from(inverted_tetrahedron_vertices()); }

SurfaceMesh stella_octangula_mesh() {
  SurfaceMesh m = tetrahedron_mesh();
  const SurfaceMesh inv = inverted_tetrahedron_mesh();
  const auto offset = static_cast<std::uint32_t>(m.vertices.size());
  m.vertices.insert(m.vertices.end(), inv.vertices.begin(), inv.vertices.end());
  for (auto f : inv.faces) m.faces.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
  return m;
}

SurfaceMesh octahedron_mesh() {
  SurfaceMesh m;
  m.vertices = {{0.25, 0.25, 0.0},  {-0.25, 0.25, 0.0},         {-0.25, -0.25, 0.0},
                {0.25, -0.25, 0.0}, {0.0, 0.0, kApexHeight}, {0.0, 0.0, -kApexHeight}};
  for (std::uint32_t i = 0; i < 4; ++i) {
    const std::uint32_t a = i + 1;
    const std::uint32_t b = (i + 1) % 4 + 1;
    m.faces.push_back({5, a, b});
    m.faces.push_back({6, b, a});
  }
  orient_outward(m, {});
  return m;
}

double ruling_exit(const CartesianPoint& apex, const CartesianPoint& target) {
  const auto w0 = point_to_weights(apex).w;
  const auto w1 = point_to_weights(target).w;
  double t_max = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    const double slope = w1[i] - w0[i];
    if (slope < 0.0) t_max = std::min(t_max, std::max(0.0, w0[i]) / -slope);
  }
  return t_max;
}

SurfaceMesh cone_mesh(Alpha alpha, ConeId which, std::uint32_t radial_segments, std::uint32_t height_segments,
                      bool clip_to_tetrahedron) {
  if (radial_segments < 3) throw ValidationError("cone_mesh: need at least 3 radial segments");
  if (height_segments < 1) throw ValidationError("cone_mesh: need at least 1 height segment");

  const ConePair pair = cone_specs(alpha);
  const ConeSpec& spec = which == ConeId::A ? pair.a : pair.b;
  if (spec.degenerate()) return degenerate_cone_mesh(spec, clip_to_tetrahedron);

  const std::uint32_t R = radial_segments;
  const std::uint32_t H = height_segments;
  SurfaceMesh mesh;
  mesh.vertices.reserve(std::size_t{R} * H + 1);
  mesh.vertices.push_back(spec.apex);
  for (std::uint32_t j = 1; j <= H; ++j) {
    const double t = static_cast<double>(j) / H;
    for (std::uint32_t i = 0; i < R; ++i) {
      const double u = 2.0 * std::numbers::pi * i / R;
      double tt = t;
      if (clip_to_tetrahedron) tt = std::min(t, ruling_exit(spec.apex, cone_point(spec, u, 1.0)));
      mesh.vertices.push_back(cone_point(spec, u, tt));
    }
  }

  auto ring = [R](std::uint32_t j, std::uint32_t i) { return 2 + (j - 1) * R + (i % R); };
  auto emit = [&mesh](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (triangle_area(mesh.vertices[a - 1], mesh.vertices[b - 1], mesh.vertices[c - 1]) > kMinFaceArea) {
      mesh.faces.push_back({a, b, c});
    }
  };
  for (std::uint32_t i = 0; i < R; ++i) emit(1, ring(1, i), ring(1, i + 1));
  for (std::uint32_t j = 1; j < H; ++j) {
    for (std::uint32_t i = 0; i < R; ++i) {
      emit(ring(j, i), ring(j + 1, i), ring(j + 1, i + 1));
      emit(ring(j, i), ring(j + 1, i + 1), ring(j, i + 1));
    }
  }
  return mesh;
}

ClassifiedCloud classification_grid(Alpha alpha, std::uint32_t resolution, double eps) {
  if (resolution < 2) throw ValidationError("classification_grid: resolution must be at least 2");
  ClassifiedCloud cloud;
  cloud.eps = eps;
  const double r = resolution;
  for (std::uint32_t i = 0; i <= resolution; ++i)
    for (std::uint32_t j = 0; i + j <= resolution; ++j)
      for (std::uint32_t k = 0; i + j + k <= resolution; ++k) {
        const std::uint32_t l = resolution - i - j - k;
        const auto w = SimplexWeights::make({i / r, j / r, k / r, l / r});
        cloud.points.push_back({weights_to_point(w), w.values(), classify(w, alpha, eps)});
      }
  return cloud;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_obj(const SurfaceMesh& mesh, std::ostream& sink) {
  for (const auto& p : mesh.vertices) {
    sink << "v ";
    put_number(sink, p.x);
    sink << ' ';
    put_number(sink, p.y);
    sink << ' ';
    put_number(sink, p.z);
    sink << '\n';
  }
  for (const auto& f : mesh.faces) sink << "f " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  sink.flush();
  check_sink(sink, "write_obj");
}

void write_csv(const ClassifiedCloud& cloud, std::ostream& sink) {
  sink << kCsvHeader << '\n';
  for (const auto& cp : cloud.points) {
    const auto& c = cp.classification;
    sink << format_number(cp.point.x) << ',' << format_number(cp.point.y) << ',' << format_number(cp.point.z);
    for (double w : cp.weights) sink << ',' << format_number(w);
    sink << ',' << to_string(c.label) << ',' << format_number(c.factors.f1) << ',' << format_number(c.factors.f2)
         << ',' << format_number(c.witness) << '\n';
  }
  sink.flush();
  check_sink(sink, "write_csv");
}

}  // namespace stella
