#pragma once

// Test-set descriptors and their grid discretizations.
//
// Grids are anchored at the lower-left corner of the set's bounding box and
// use half-cell offsets, so dilating a descriptor and h by a power of two
// scales every emitted point bit-exactly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace czcap {

struct Point {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int dim = 2;

  Point() = default;
  Point(double x, double y) : c{x, y, 0.0}, dim(2) {}
  Point(double x, double y, double z) : c{x, y, z}, dim(3) {}

  double operator[](int k) const { return c[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c[static_cast<std::size_t>(k)]; }
};

bool operator==(const Point& a, const Point& b);

// lexicographic, used for canonical orderings
bool point_less(const Point& a, const Point& b);

double dist2(const Point& a, const Point& b);
double dist(const Point& a, const Point& b);
double sup_dist_points(const Point& a, const Point& b);
bool all_finite(const Point& p);

enum class SetKind {
  Segment,
  Circle,
  Disk,
  Square,
  FourCornerCantor,
  RandomCloud,
  Union,
};

std::string set_kind_name(SetKind k);
SetKind set_kind_from_name(const std::string& name);

// One flat struct for every kind; the active fields depend on `kind`.
struct SetDescriptor {
  SetKind kind = SetKind::Segment;

  Point a;             // segment start / circle center / square corner / cloud lo
  Point b;             // segment end / cloud hi
  double radius = 0.0; // circle, disk
  double side = 0.0;   // square, cantor base square
  // square only: in 3D, spanned axis pair of a planar face; {-1,-1} = solid box
  std::array<int, 2> plane{-1, -1};
  int depth = 0;       // cantor
  int count = 0;       // cloud
  std::uint64_t seed = 0;
  std::vector<SetDescriptor> parts;  // union

  int dim() const;
};

SetDescriptor make_segment(Point p, Point q);
SetDescriptor make_circle(Point center, double radius);
SetDescriptor make_disk(Point center, double radius);
SetDescriptor make_square(Point corner, double side);
// planar square face in 3D spanning axes (u, v) at the corner's third coordinate
SetDescriptor make_square_face(Point corner, double side, int axis_u, int axis_v);
SetDescriptor make_cantor(int depth, Point corner, double side);
SetDescriptor make_cloud(int count, Point lo, Point hi, std::uint64_t seed);
SetDescriptor make_union(std::vector<SetDescriptor> parts);

// throws std::invalid_argument when a descriptor violates its invariants
void validate(const SetDescriptor& desc);

struct BoundingBox {
  Point lo;
  Point hi;
};

BoundingBox bounding_box(const SetDescriptor& desc);
double diameter(const SetDescriptor& desc);

struct GridSquare {
  Point corner;
  double side = 0.0;
};

// the 4^depth corner squares of the self-similar ratio-1/4 recursion
std::vector<GridSquare> cantor_squares(int depth, const GridSquare& base);

// Descriptor with seeded point clouds materialized, so distance queries are
// pure. Built once per generate() call.
class CompiledSet {
 public:
  explicit CompiledSet(const SetDescriptor& desc);

  // sup-norm distance from p to the set (circle/disk radial part Euclidean)
  double sup_dist(const Point& p) const;
  const std::vector<Point>& cloud_points() const { return cloud_points_; }

 private:
  const SetDescriptor desc_;
  std::vector<Point> cloud_points_;
  std::vector<CompiledSet> parts_;
};

struct Discretization {
  std::vector<Point> support;  // centers of grid cells meeting the set
  double h = 0.0;              // cell size
  std::vector<Point> halo;     // constraint grid, superset of support
};

// Support = h-grid cells whose center is closer than h/2 to the set.
// Halo = near band at full resolution (< 1.5 h), a mid grid of spacing 4 h
// out to diam/2 beyond the bounding box, and a coarse far grid out to 2 diam.
// Throws std::invalid_argument on bad h and czcap::DegenerateDiscretization
// (a runtime_error) when no cell meets the set.
Discretization generate(const SetDescriptor& desc, double h);

struct DegenerateDiscretization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// halo rebuilt at 3x finer resolution, for witness leakage checks
std::vector<Point> verification_halo(const SetDescriptor& desc, double h);

// all length parameters (and cloud corners) multiplied by lambda
SetDescriptor scaled(const SetDescriptor& desc, double lambda);

void to_json(nlohmann::json& j, const Point& p);
void from_json(const nlohmann::json& j, Point& p);
void to_json(nlohmann::json& j, const SetDescriptor& d);
void from_json(const nlohmann::json& j, SetDescriptor& d);

SetDescriptor load_descriptor(const std::string& path);

}  // namespace czcap
