#include "czcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "czcap/rng.hpp"

namespace czcap {

bool operator==(const Point& a, const Point& b) {
  return a.dim == b.dim && a.c == b.c;
}

bool point_less(const Point& a, const Point& b) { return a.c < b.c; }

double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim; ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

double sup_dist_points(const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim; ++k) s = std::max(s, std::fabs(a[k] - b[k]));
  return s;
}

bool all_finite(const Point& p) {
  for (int k = 0; k < p.dim; ++k)
    if (!std::isfinite(p[k])) return false;
  return true;
}

std::string set_kind_name(SetKind k) {
  switch (k) {
    case SetKind::Segment: return "segment";
    case SetKind::Circle: return "circle";
    case SetKind::Disk: return "disk";
    case SetKind::Square: return "square";
    case SetKind::FourCornerCantor: return "four-corner-cantor";
    case SetKind::RandomCloud: return "random-cloud";
    case SetKind::Union: return "union";
  }
  throw std::logic_error("unknown set kind");
}

SetKind set_kind_from_name(const std::string& name) {
  if (name == "segment") return SetKind::Segment;
  if (name == "circle") return SetKind::Circle;
  if (name == "disk") return SetKind::Disk;
  if (name == "square") return SetKind::Square;
  if (name == "four-corner-cantor") return SetKind::FourCornerCantor;
  if (name == "random-cloud") return SetKind::RandomCloud;
  if (name == "union") return SetKind::Union;
  throw std::invalid_argument("unknown set kind: " + name);
}

int SetDescriptor::dim() const {
  if (kind == SetKind::Union) {
    return parts.empty() ? 2 : parts.front().dim();
  }
  return a.dim;
}

SetDescriptor make_segment(Point p, Point q) {
  SetDescriptor d;
  d.kind = SetKind::Segment;
  d.a = p;
  d.b = q;
  return d;
}

SetDescriptor make_circle(Point center, double radius) {
  SetDescriptor d;
  d.kind = SetKind::Circle;
  d.a = center;
  d.radius = radius;
  return d;
}

SetDescriptor make_disk(Point center, double radius) {
  SetDescriptor d = make_circle(center, radius);
  d.kind = SetKind::Disk;
  return d;
}

SetDescriptor make_square(Point corner, double side) {
  SetDescriptor d;
  d.kind = SetKind::Square;
  d.a = corner;
  d.side = side;
  return d;
}

SetDescriptor make_square_face(Point corner, double side, int axis_u, int axis_v) {
  SetDescriptor d = make_square(corner, side);
  d.plane = {axis_u, axis_v};
  return d;
}

SetDescriptor make_cantor(int depth, Point corner, double side) {
  SetDescriptor d;
  d.kind = SetKind::FourCornerCantor;
  d.a = corner;
  d.side = side;
  d.depth = depth;
  return d;
}

SetDescriptor make_cloud(int count, Point lo, Point hi, std::uint64_t seed) {
  SetDescriptor d;
  d.kind = SetKind::RandomCloud;
  d.a = lo;
  d.b = hi;
  d.count = count;
  d.seed = seed;
  return d;
}

SetDescriptor make_union(std::vector<SetDescriptor> parts) {
  SetDescriptor d;
  d.kind = SetKind::Union;
  d.parts = std::move(parts);
  return d;
}

namespace {

// per-axis extents of a square/box descriptor (0 on the degenerate axis of a
// planar 3D face)
std::array<double, 3> square_extents(const SetDescriptor& d) {
  std::array<double, 3> ext{0.0, 0.0, 0.0};
  int dim = d.a.dim;
  if (dim == 3 && d.plane[0] >= 0) {
    ext[static_cast<std::size_t>(d.plane[0])] = d.side;
    ext[static_cast<std::size_t>(d.plane[1])] = d.side;
  } else {
    for (int k = 0; k < dim; ++k) ext[static_cast<std::size_t>(k)] = d.side;
  }
  return ext;
}

double box_sup_dist(const Point& p, const Point& corner,
                    const std::array<double, 3>& ext, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    double below = corner[k] - p[k];
    double above = p[k] - (corner[k] + ext[static_cast<std::size_t>(k)]);
    s = std::max(s, std::max({below, above, 0.0}));
  }
  return s;
}

double segment_sup_dist(const Point& p, const Point& a, const Point& b, int dim) {
  double u[3] = {0, 0, 0};
  double v[3] = {0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    u[k] = p[k] - a[k];
    v[k] = b[k] - a[k];
  }
  auto value = [&](double t) {
    double m = 0.0;
    for (int k = 0; k < dim; ++k) m = std::max(m, std::fabs(u[k] - t * v[k]));
    return m;
  };
  // g(t) = max_k |u_k - t v_k| is convex piecewise linear; its minimum over
  // [0,1] is attained at an endpoint, a per-axis zero, or a crossing of two
  // of the |linear| pieces.
  double best = std::min(value(0.0), value(1.0));
  auto consider = [&](double t) {
    if (t > 0.0 && t < 1.0) best = std::min(best, value(t));
  };
  for (int k = 0; k < dim; ++k)
    if (v[k] != 0.0) consider(u[k] / v[k]);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      if (v[i] != v[j]) consider((u[i] - u[j]) / (v[i] - v[j]));
      if (v[i] + v[j] != 0.0) consider((u[i] + u[j]) / (v[i] + v[j]));
    }
  return best;
}

double cantor_sup_dist_rec(const Point& p, double cx, double cy, double side,
                           int depth, double best) {
  double dx = std::max({cx - p[0], p[0] - (cx + side), 0.0});
  double dy = std::max({cy - p[1], p[1] - (cy + side), 0.0});
  double dbox = std::max(dx, dy);
  if (dbox >= best) return best;
  if (depth == 0) return dbox;
  double s = side * 0.25;
  double off = side - s;
  best = cantor_sup_dist_rec(p, cx, cy, s, depth - 1, best);
  best = cantor_sup_dist_rec(p, cx + off, cy, s, depth - 1, best);
  best = cantor_sup_dist_rec(p, cx, cy + off, s, depth - 1, best);
  best = cantor_sup_dist_rec(p, cx + off, cy + off, s, depth - 1, best);
  return best;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void validate(const SetDescriptor& d) {
  switch (d.kind) {
    case SetKind::Segment:
      require(all_finite(d.a) && all_finite(d.b), "segment: non-finite endpoint");
      require(d.a.dim == d.b.dim, "segment: endpoint dimensions differ");
      require(dist2(d.a, d.b) > 0.0, "segment: zero length");
      break;
    case SetKind::Circle:
    case SetKind::Disk:
      require(d.a.dim == 2, "circle/disk: plane sets only");
      require(all_finite(d.a), "circle/disk: non-finite center");
      require(std::isfinite(d.radius) && d.radius > 0.0, "circle/disk: radius must be positive");
      break;
    case SetKind::Square:
      require(all_finite(d.a), "square: non-finite corner");
      require(std::isfinite(d.side) && d.side > 0.0, "square: side must be positive");
      if (d.plane[0] >= 0) {
        require(d.a.dim == 3, "square: plane axes only apply in 3D");
        require(d.plane[0] >= 0 && d.plane[0] < 3 && d.plane[1] >= 0 &&
                    d.plane[1] < 3 && d.plane[0] != d.plane[1],
                "square: invalid plane axes");
      }
      break;
    case SetKind::FourCornerCantor:
      require(d.a.dim == 2, "cantor: plane sets only");
      require(all_finite(d.a), "cantor: non-finite corner");
      require(std::isfinite(d.side) && d.side > 0.0, "cantor: side must be positive");
      require(d.depth >= 0 && d.depth <= 10, "cantor: depth must be in [0, 10]");
      break;
    case SetKind::RandomCloud:
      require(all_finite(d.a) && all_finite(d.b), "cloud: non-finite box");
      require(d.a.dim == d.b.dim, "cloud: box corner dimensions differ");
      require(d.count >= 1, "cloud: count must be >= 1");
      for (int k = 0; k < d.a.dim; ++k)
        require(d.b[k] >= d.a[k], "cloud: box upper corner below lower corner");
      require(dist2(d.a, d.b) > 0.0, "cloud: degenerate box");
      break;
    case SetKind::Union: {
      require(!d.parts.empty(), "union: empty part list");
      int dim = d.parts.front().dim();
      for (const auto& part : d.parts) {
        validate(part);
        require(part.dim() == dim, "union: mixed dimensions");
      }
      break;
    }
  }
}

BoundingBox bounding_box(const SetDescriptor& d) {
  BoundingBox box;
  int dim = d.dim();
  box.lo.dim = box.hi.dim = dim;
  switch (d.kind) {
    case SetKind::Segment:
      for (int k = 0; k < dim; ++k) {
        box.lo[k] = std::min(d.a[k], d.b[k]);
        box.hi[k] = std::max(d.a[k], d.b[k]);
      }
      break;
    case SetKind::Circle:
    case SetKind::Disk:
      for (int k = 0; k < dim; ++k) {
        box.lo[k] = d.a[k] - d.radius;
        box.hi[k] = d.a[k] + d.radius;
      }
      break;
    case SetKind::Square: {
      auto ext = square_extents(d);
      for (int k = 0; k < dim; ++k) {
        box.lo[k] = d.a[k];
        box.hi[k] = d.a[k] + ext[static_cast<std::size_t>(k)];
      }
      break;
    }
    case SetKind::FourCornerCantor:
      for (int k = 0; k < dim; ++k) {
        box.lo[k] = d.a[k];
        box.hi[k] = d.a[k] + d.side;
      }
      break;
    case SetKind::RandomCloud:
      box.lo = d.a;
      box.hi = d.b;
      break;
    case SetKind::Union: {
      box = bounding_box(d.parts.front());
      for (std::size_t i = 1; i < d.parts.size(); ++i) {
        BoundingBox pb = bounding_box(d.parts[i]);
        for (int k = 0; k < dim; ++k) {
          box.lo[k] = std::min(box.lo[k], pb.lo[k]);
          box.hi[k] = std::max(box.hi[k], pb.hi[k]);
        }
      }
      break;
    }
  }
  return box;
}

double diameter(const SetDescriptor& d) {
  switch (d.kind) {
    case SetKind::Segment:
      return dist(d.a, d.b);
    case SetKind::Circle:
    case SetKind::Disk:
      return 2.0 * d.radius;
    case SetKind::Square: {
      auto ext = square_extents(d);
      double s = 0.0;
      for (int k = 0; k < d.dim(); ++k)
        s += ext[static_cast<std::size_t>(k)] * ext[static_cast<std::size_t>(k)];
      return std::sqrt(s);
    }
    case SetKind::FourCornerCantor:
      return d.side * std::sqrt(2.0);
    case SetKind::RandomCloud:
      return dist(d.a, d.b);
    case SetKind::Union: {
      BoundingBox box = bounding_box(d);
      return dist(box.lo, box.hi);
    }
  }
  throw std::logic_error("unknown set kind");
}

std::vector<GridSquare> cantor_squares(int depth, const GridSquare& base) {
  require(depth >= 0 && depth <= 10, "cantor_squares: depth must be in [0, 10]");
  require(base.side > 0.0, "cantor_squares: base side must be positive");
  std::vector<GridSquare> cur{base};
  for (int level = 0; level < depth; ++level) {
    std::vector<GridSquare> next;
    next.reserve(cur.size() * 4);
    for (const GridSquare& q : cur) {
      double s = q.side * 0.25;
      double off = q.side - s;
      next.push_back({Point(q.corner[0], q.corner[1]), s});
      next.push_back({Point(q.corner[0] + off, q.corner[1]), s});
      next.push_back({Point(q.corner[0], q.corner[1] + off), s});
      next.push_back({Point(q.corner[0] + off, q.corner[1] + off), s});
    }
    cur = std::move(next);
  }
  return cur;
}

CompiledSet::CompiledSet(const SetDescriptor& desc) : desc_(desc) {
  if (desc_.kind == SetKind::RandomCloud) {
    int dim = desc_.a.dim;
    cloud_points_.reserve(static_cast<std::size_t>(desc_.count));
    for (int k = 0; k < desc_.count; ++k) {
      Point p;
      p.dim = dim;
      for (int ax = 0; ax < dim; ++ax) {
        double u = rng_unit(desc_.seed,
                            static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(dim) +
                                static_cast<std::uint64_t>(ax));
        p[ax] = desc_.a[ax] + (desc_.b[ax] - desc_.a[ax]) * u;
      }
      cloud_points_.push_back(p);
    }
  } else if (desc_.kind == SetKind::Union) {
    parts_.reserve(desc_.parts.size());
    for (const auto& part : desc_.parts) parts_.emplace_back(part);
  }
}

double CompiledSet::sup_dist(const Point& p) const {
  switch (desc_.kind) {
    case SetKind::Segment:
      return segment_sup_dist(p, desc_.a, desc_.b, desc_.a.dim);
    case SetKind::Circle:
      return std::fabs(dist(p, desc_.a) - desc_.radius);
    case SetKind::Disk:
      return std::max(0.0, dist(p, desc_.a) - desc_.radius);
    case SetKind::Square:
      return box_sup_dist(p, desc_.a, square_extents(desc_), desc_.a.dim);
    case SetKind::FourCornerCantor:
      return cantor_sup_dist_rec(p, desc_.a[0], desc_.a[1], desc_.side,
                                 desc_.depth, std::numeric_limits<double>::infinity());
    case SetKind::RandomCloud: {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : cloud_points_)
        best = std::min(best, sup_dist_points(p, q));
      return best;
    }
    case SetKind::Union: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& part : parts_) best = std::min(best, part.sup_dist(p));
      return best;
    }
  }
  throw std::logic_error("unknown set kind");
}

namespace {

// Grid of spacing s anchored at `anchor`: centers anchor + (i + 1/2) s for a
// proper axis, anchor + i s when the set is flat along the axis (extent 0).
// Emits centers inside [min_c, max_c].
std::vector<double> axis_centers(double anchor, double extent, double s,
                                 double min_c, double max_c) {
  std::vector<double> out;
  double off = extent == 0.0 ? 0.0 : 0.5;
  long i_lo = static_cast<long>(std::floor((min_c - anchor) / s - off)) - 1;
  long i_hi = static_cast<long>(std::ceil((max_c - anchor) / s - off)) + 1;
  for (long i = i_lo; i <= i_hi; ++i) {
    double x = anchor + (static_cast<double>(i) + off) * s;
    if (x >= min_c && x <= max_c) out.push_back(x);
  }
  return out;
}

template <typename F>
void grid_scan(const std::array<std::vector<double>, 3>& ax, int dim, F&& f) {
  if (dim == 2) {
    for (double y : ax[1])
      for (double x : ax[0]) f(Point(x, y));
  } else {
    for (double z : ax[2])
      for (double y : ax[1])
        for (double x : ax[0]) f(Point(x, y, z));
  }
}

// band (< reach of the set, spacing h_band) + mid grid + coarse far grid
std::vector<Point> build_halo(const CompiledSet& cs, const BoundingBox& box,
                              double diam, int dim, double h_band, double reach,
                              double mid_spacing, int far_n) {
  std::vector<Point> halo;
  std::array<std::vector<double>, 3> ax;

  for (int k = 0; k < dim; ++k)
    ax[static_cast<std::size_t>(k)] =
        axis_centers(box.lo[k], box.hi[k] - box.lo[k], h_band,
                     box.lo[k] - (reach + h_band), box.hi[k] + (reach + h_band));
  grid_scan(ax, dim, [&](const Point& p) {
    if (cs.sup_dist(p) < reach) halo.push_back(p);
  });

  for (int k = 0; k < dim; ++k)
    ax[static_cast<std::size_t>(k)] =
        axis_centers(box.lo[k], box.hi[k] - box.lo[k], mid_spacing,
                     box.lo[k] - 0.5 * diam, box.hi[k] + 0.5 * diam);
  grid_scan(ax, dim, [&](const Point& p) { halo.push_back(p); });

  for (int k = 0; k < dim; ++k) {
    double extent = box.hi[k] - box.lo[k];
    double s = (extent + 4.0 * diam) / static_cast<double>(far_n);
    std::vector<double> centers;
    centers.reserve(static_cast<std::size_t>(far_n));
    for (int i = 0; i < far_n; ++i)
      centers.push_back(box.lo[k] - 2.0 * diam + (static_cast<double>(i) + 0.5) * s);
    ax[static_cast<std::size_t>(k)] = std::move(centers);
  }
  grid_scan(ax, dim, [&](const Point& p) { halo.push_back(p); });

  std::sort(halo.begin(), halo.end(), point_less);
  halo.erase(std::unique(halo.begin(), halo.end()), halo.end());
  return halo;
}

}  // namespace

Discretization generate(const SetDescriptor& desc, double h) {
  validate(desc);
  require(std::isfinite(h) && h > 0.0, "generate: h must be positive");
  double diam = diameter(desc);
  require(h <= diam, "generate: h exceeds the set diameter");

  int dim = desc.dim();
  BoundingBox box = bounding_box(desc);
  CompiledSet cs(desc);

  Discretization out;
  out.h = h;

  std::array<std::vector<double>, 3> ax;
  for (int k = 0; k < dim; ++k)
    ax[static_cast<std::size_t>(k)] =
        axis_centers(box.lo[k], box.hi[k] - box.lo[k], h, box.lo[k], box.hi[k]);
  grid_scan(ax, dim, [&](const Point& p) {
    if (cs.sup_dist(p) < 0.5 * h) out.support.push_back(p);
  });
  if (out.support.empty())
    throw DegenerateDiscretization(
        "degenerate discretization: no grid cell of size h meets the set");

  out.halo = build_halo(cs, box, diam, dim, h, 1.5 * h, 4.0 * h,
                        dim == 2 ? 21 : 11);
  return out;
}

std::vector<Point> verification_halo(const SetDescriptor& desc, double h) {
  validate(desc);
  require(std::isfinite(h) && h > 0.0, "verification_halo: h must be positive");
  double diam = diameter(desc);
  BoundingBox box = bounding_box(desc);
  CompiledSet cs(desc);
  int dim = desc.dim();
  return build_halo(cs, box, diam, dim, h / 3.0, 1.5 * h, 4.0 * h / 3.0,
                    dim == 2 ? 43 : 23);
}

SetDescriptor scaled(const SetDescriptor& desc, double lambda) {
  SetDescriptor out = desc;
  for (int k = 0; k < 3; ++k) {
    out.a[k] = desc.a[k] * lambda;
    out.b[k] = desc.b[k] * lambda;
  }
  out.radius = desc.radius * lambda;
  out.side = desc.side * lambda;
  out.parts.clear();
  for (const auto& part : desc.parts) out.parts.push_back(scaled(part, lambda));
  return out;
}

void to_json(nlohmann::json& j, const Point& p) {
  j = nlohmann::json::array();
  for (int k = 0; k < p.dim; ++k) j.push_back(p[k]);
}

void from_json(const nlohmann::json& j, Point& p) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3))
    throw std::invalid_argument("point: expected an array of 2 or 3 numbers");
  p.dim = static_cast<int>(j.size());
  p.c = {0.0, 0.0, 0.0};
  for (int k = 0; k < p.dim; ++k) p[k] = j[static_cast<std::size_t>(k)].get<double>();
}

void to_json(nlohmann::json& j, const SetDescriptor& d) {
  nlohmann::json params;
  switch (d.kind) {
    case SetKind::Segment:
      params["p"] = d.a;
      params["q"] = d.b;
      break;
    case SetKind::Circle:
    case SetKind::Disk:
      params["center"] = d.a;
      params["radius"] = d.radius;
      break;
    case SetKind::Square:
      params["corner"] = d.a;
      params["side"] = d.side;
      if (d.plane[0] >= 0) params["plane"] = d.plane;
      break;
    case SetKind::FourCornerCantor:
      params["corner"] = d.a;
      params["side"] = d.side;
      params["depth"] = d.depth;
      break;
    case SetKind::RandomCloud:
      params["count"] = d.count;
      params["lo"] = d.a;
      params["hi"] = d.b;
      break;
    case SetKind::Union:
      params["parts"] = d.parts;
      break;
  }
  j = nlohmann::json{{"kind", set_kind_name(d.kind)},
                     {"params", params},
                     {"seed", d.seed}};
}

void from_json(const nlohmann::json& j, SetDescriptor& d) {
  d = SetDescriptor{};
  d.kind = set_kind_from_name(j.at("kind").get<std::string>());
  d.seed = j.value("seed", std::uint64_t{0});
  const nlohmann::json& params = j.at("params");
  switch (d.kind) {
    case SetKind::Segment:
      d.a = params.at("p").get<Point>();
      d.b = params.at("q").get<Point>();
      break;
    case SetKind::Circle:
    case SetKind::Disk:
      d.a = params.at("center").get<Point>();
      d.radius = params.at("radius").get<double>();
      break;
    case SetKind::Square:
      d.a = params.at("corner").get<Point>();
      d.side = params.at("side").get<double>();
      if (params.contains("plane")) {
        d.plane[0] = params["plane"].at(0).get<int>();
        d.plane[1] = params["plane"].at(1).get<int>();
      }
      break;
    case SetKind::FourCornerCantor:
      d.a = params.at("corner").get<Point>();
      d.side = params.at("side").get<double>();
      d.depth = params.at("depth").get<int>();
      break;
    case SetKind::RandomCloud:
      d.count = params.at("count").get<int>();
      d.a = params.at("lo").get<Point>();
      d.b = params.at("hi").get<Point>();
      break;
    case SetKind::Union:
      d.parts = params.at("parts").get<std::vector<SetDescriptor>>();
      break;
  }
  validate(d);
}

SetDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open descriptor file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return j.get<SetDescriptor>();
}

}  // namespace czcap
