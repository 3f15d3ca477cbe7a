#include "czcap/symmetry.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "czcap/rng.hpp"

namespace czcap {

namespace {

double pairwise_max(const Triple& t) {
  return std::max({dist(t.z1, t.z2), dist(t.z1, t.z3), dist(t.z2, t.z3)});
}

// exact coordinate differences a - b as double-doubles
void diff_dd(const Point& a, const Point& b, dd* out, int dim) {
  for (int k = 0; k < dim; ++k) out[k] = dd_sub(a[k], b[k]);
}

std::string fmt(double v) { return nlohmann::json(v).dump(); }

}  // namespace

double min_pairwise_dist(const Triple& t) {
  return std::min({dist(t.z1, t.z2), dist(t.z1, t.z3), dist(t.z2, t.z3)});
}

bool triple_degenerate(const Triple& t) {
  return min_pairwise_dist(t) <= kTripleDegeneracy * pairwise_max(t);
}

void require_valid(const Triple& t) {
  if (!all_finite(t.z1) || !all_finite(t.z2) || !all_finite(t.z3))
    throw std::domain_error("triple: non-finite point");
  if (triple_degenerate(t))
    throw std::domain_error("triple: points too close to coincident");
}

dd menger_sq_dd(const Triple& t) {
  dd u[3], v[3], w[3];
  int dim = t.z1.dim;
  diff_dd(t.z2, t.z1, u, dim);
  diff_dd(t.z3, t.z1, v, dim);
  diff_dd(t.z3, t.z2, w, dim);
  dd u2(0.0), v2(0.0), w2(0.0);
  for (int k = 0; k < dim; ++k) {
    u2 += u[k] * u[k];
    v2 += v[k] * v[k];
    w2 += w[k] * w[k];
  }
  // (2 Area)^2; in the plane this is the squared cross product, in general
  // the Gram identity |u|^2 |v|^2 - (u.v)^2
  dd four_area_sq(0.0);
  if (dim == 2) {
    dd cross = u[0] * v[1] - u[1] * v[0];
    four_area_sq = cross * cross;
  } else {
    dd uv(0.0);
    for (int k = 0; k < dim; ++k) uv += u[k] * v[k];
    four_area_sq = u2 * v2 - uv * uv;
    if (four_area_sq.hi < 0.0) four_area_sq = dd(0.0);
  }
  // c^2 = 16 Area^2 / (|u|^2 |v|^2 |w|^2) = 4 (2A)^2 / (...)
  return dd(4.0) * four_area_sq / (u2 * v2 * w2);
}

double menger(const Triple& t) {
  require_valid(t);
  return dd_sqrt(menger_sq_dd(t)).to_double();
}

dd perm_dd(const KernelSpec& spec, const Triple& t) {
  if (spec.delta != 0.0)
    throw std::invalid_argument("perm: kernel must be untruncated (delta = 0)");
  int dim = t.z1.dim;
  dd d12[3], d13[3], d23[3];
  diff_dd(t.z1, t.z2, d12, dim);
  diff_dd(t.z1, t.z3, d13, dim);
  diff_dd(t.z2, t.z3, d23, dim);
  dd k12 = eval_dd(spec, d12, dim);
  dd k13 = eval_dd(spec, d13, dim);
  dd k23 = eval_dd(spec, d23, dim);
  // oddness: K(z2-z1) = -k12, K(z3-z1) = -k13, K(z3-z2) = -k23
  return k12 * k13 - k12 * k23 + k13 * k23;
}

double perm(const KernelSpec& spec, const Triple& t) {
  require_valid(t);
  return perm_dd(spec, t).to_double();
}

double perm_via_identity(int n, const Point& z, const Point& w) {
  if (n < 1) throw std::invalid_argument("perm_via_identity: n must be >= 1");
  Triple t{Point(0.0, 0.0), z, w};
  require_valid(t);

  dd x(z[0]), y(z[1]), a(w[0]), b(w[1]);
  dd xa = dd_sub(z[0], w[0]);  // x - a
  dd yb = dd_sub(z[1], w[1]);  // y - b

  // A(z, w) = sum_k C(n,k) x^(2(n-k)) a^(2(n-k)) (x-a)^(2(n-k)) F_k(z, w)
  // F_k = x^(2k-1) a^(2k-1) (y-b)^(2k) + x^(2k-1) (x-a)^(2k-1) b^(2k)
  //     - a^(2k-1) (x-a)^(2k-1) y^(2k)
  dd acc(0.0);
  double binom = 1.0;  // C(n, 0)
  for (int k = 1; k <= n; ++k) {
    binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
    dd xp = dd_ipow(x, 2 * k - 1);
    dd ap = dd_ipow(a, 2 * k - 1);
    dd xap = dd_ipow(xa, 2 * k - 1);
    dd fk = xp * ap * dd_ipow(yb, 2 * k) + xp * xap * dd_ipow(b, 2 * k) -
            ap * xap * dd_ipow(y, 2 * k);
    dd outer = dd_ipow(x * a * xa, 2 * (n - k));
    acc += dd(binom) * outer * fk;
  }
  dd z2 = x * x + y * y;
  dd w2 = a * a + b * b;
  dd zw2 = xa * xa + yb * yb;
  dd den = dd_ipow(z2, n) * dd_ipow(w2, n) * dd_ipow(zw2, n);
  return (acc / den).to_double();
}

RatioScanReport ratio_scan(int n, std::uint64_t samples, std::uint64_t seed,
                           Point box_corner, double box_side) {
  if (n < 1) throw std::invalid_argument("ratio_scan: n must be >= 1");
  if (samples < 1) throw std::invalid_argument("ratio_scan: samples must be >= 1");
  if (!(box_side > 0.0)) throw std::invalid_argument("ratio_scan: box side must be > 0");

  KernelSpec k1{KernelFamily::OddPowerCoordinate, 1, n, 2, 0.0};
  KernelSpec k2{KernelFamily::OddPowerCoordinate, 2, n, 2, 0.0};

  RatioScanReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = -std::numeric_limits<double>::infinity();

  for (std::uint64_t s = 0; s < samples; ++s) {
    double c[6];
    for (int j = 0; j < 6; ++j)
      c[j] = box_corner[j % 2] + box_side * rng_unit(seed, 6 * s + static_cast<std::uint64_t>(j));
    Triple t{Point(c[0], c[1]), Point(c[2], c[3]), Point(c[4], c[5])};
    if (triple_degenerate(t)) continue;

    dd p1 = perm_dd(k1, t);
    dd p2 = perm_dd(k2, t);
    dd c2 = menger_sq_dd(t);
    double scale = min_pairwise_dist(t);
    double neg_tol = -1e-12 / (scale * scale);
    if (p1.to_double() < neg_tol || p2.to_double() < neg_tol) ++rep.negative_count;
    if (!(c2.hi > 0.0)) continue;  // exactly collinear draw, ratio undefined
    double ratio = ((p1 + p2) / c2).to_double();
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.argmin = t;
    }
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax = t;
    }
  }
  return rep;
}

std::string ratio_scan_csv_header() {
  return "n,samples,min_ratio,max_ratio,negative_count,"
         "argmin_x1,argmin_y1,argmin_x2,argmin_y2,argmin_x3,argmin_y3,"
         "argmax_x1,argmax_y1,argmax_x2,argmax_y2,argmax_x3,argmax_y3";
}

std::string ratio_scan_csv_row(const RatioScanReport& r) {
  std::ostringstream os;
  os << r.n << ',' << r.samples << ',' << fmt(r.min_ratio) << ','
     << fmt(r.max_ratio) << ',' << r.negative_count;
  for (const Point* p : {&r.argmin.z1, &r.argmin.z2, &r.argmin.z3, &r.argmax.z1,
                         &r.argmax.z2, &r.argmax.z3})
    os << ',' << fmt((*p)[0]) << ',' << fmt((*p)[1]);
  return os.str();
}

}  // namespace czcap
