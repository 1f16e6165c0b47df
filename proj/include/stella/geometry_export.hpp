#pragma once

// Meshes and point clouds for the tetrahedron of family states, the boundary
// cones, and the stella octangula, plus their OBJ / CSV serialization.

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "stella/basis_family.hpp"
#include "stella/separability.hpp"

namespace stella {

struct SurfaceMesh {
  std::vector<CartesianPoint> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;  ///< 1-based vertex indices

  /// Throws ValidationError on out-of-range indices or faces with area <= 1e-14.
  void validate() const;
};

inline constexpr double kMinFaceArea = 1e-14;

double triangle_area(const CartesianPoint& a, const CartesianPoint& b, const CartesianPoint& c);

/// Vertices of the partial-transpose image of the tetrahedron at alpha = pi/4,
/// i.e. the tetrahedron reflected through the plane x = y.
std::array<CartesianPoint, 4> inverted_tetrahedron_vertices();

/// True when all four barycentric weights of `p` are >= -tol.
bool inside_tetrahedron(const CartesianPoint& p, double tol = 1e-12);

SurfaceMesh tetrahedron_mesh();
SurfaceMesh inverted_tetrahedron_mesh();
/// Both tetrahedra: 8 vertices, 8 faces.
SurfaceMesh stella_octangula_mesh();
/// Their common region: vertices (+-1/4, +-1/4, 0), (0, 0, +-1/(2 sqrt 2)).
SurfaceMesh octahedron_mesh();

/// Triangulated boundary cone. Vertex 1 is the apex, followed by `height_segments`
/// rings of `radial_segments` vertices at t = j / height_segments. With
/// `clip_to_tetrahedron`, each ruling is cut where it leaves the tetrahedron and
/// faces that collapse are dropped. At degenerate alpha the two limiting plane
/// sections are emitted instead: against the tetrahedron at alpha = 0, against the
/// inverted tetrahedron at alpha = pi/4 (or against the tetrahedron when clipping).
/// Throws ValidationError if a segment count is below 3 (height: below 1).
SurfaceMesh cone_mesh(Alpha alpha, ConeId which, std::uint32_t radial_segments, std::uint32_t height_segments,
                      bool clip_to_tetrahedron);

/// Largest t >= 0 with apex + t (target - apex) inside the tetrahedron, or 0 if
/// the ray leaves immediately. `apex` must itself lie in the tetrahedron.
double ruling_exit(const CartesianPoint& apex, const CartesianPoint& target);

struct ClassifiedPoint {
  CartesianPoint point;
  std::array<double, 4> weights{};
  Classification classification;
};

struct ClassifiedCloud {
  double eps = kDefaultBoundaryEps;
  std::vector<ClassifiedPoint> points;
};

/// Every barycentric lattice point w = (i, j, k, l) / resolution, in lexicographic
/// order of (i, j, k, l). Size is C(resolution + 3, 3).
ClassifiedCloud classification_grid(Alpha alpha, std::uint32_t resolution, double eps = kDefaultBoundaryEps);

inline constexpr std::string_view kCsvHeader = "x,y,z,w1,w2,w3,w4,label,f1,f2,min_eig";

/// 17 significant digits, '.' separator, independent of locale.
std::string format_number(double v);

/// "v x y z" lines then "f i j k" lines, LF endings. Throws IoError when the
/// stream fails.
void write_obj(const SurfaceMesh& mesh, std::ostream& sink);

void write_csv(const ClassifiedCloud& cloud, std::ostream& sink);

}  // namespace stella
