#include "czcap/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace czcap {

std::string kernel_family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::OddPowerCoordinate: return "odd-power-coordinate";
    case KernelFamily::RieszCoordinate: return "riesz-coordinate";
    case KernelFamily::CauchyCoordinate: return "cauchy-coordinate";
    case KernelFamily::Huovinen: return "huovinen";
  }
  throw std::logic_error("unknown kernel family");
}

KernelFamily kernel_family_from_name(const std::string& name) {
  if (name == "odd-power-coordinate") return KernelFamily::OddPowerCoordinate;
  if (name == "riesz-coordinate") return KernelFamily::RieszCoordinate;
  if (name == "cauchy-coordinate") return KernelFamily::CauchyCoordinate;
  if (name == "huovinen") return KernelFamily::Huovinen;
  throw std::invalid_argument("unknown kernel family: " + name);
}

std::string KernelSpec::label() const {
  std::string s = kernel_family_name(family);
  s += " i=" + std::to_string(i);
  if (family == KernelFamily::OddPowerCoordinate) s += " n=" + std::to_string(n);
  s += " d=" + std::to_string(d);
  return s;
}

void validate(const KernelSpec& spec) {
  if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta))
    throw std::invalid_argument("kernel: delta must be >= 0");
  switch (spec.family) {
    case KernelFamily::OddPowerCoordinate:
      if (spec.d != 2) throw std::invalid_argument("odd-power kernel: d must be 2");
      if (spec.n < 1) throw std::invalid_argument("odd-power kernel: n must be >= 1");
      if (spec.i < 1 || spec.i > 2)
        throw std::invalid_argument("odd-power kernel: i must be 1 or 2");
      break;
    case KernelFamily::RieszCoordinate:
      if (spec.d < 1) throw std::invalid_argument("riesz kernel: d must be >= 1");
      if (spec.i < 1 || spec.i > spec.d)
        throw std::invalid_argument("riesz kernel: i must be in [1, d]");
      break;
    case KernelFamily::CauchyCoordinate:
      if (spec.d != 2) throw std::invalid_argument("cauchy kernel: d must be 2");
      if (spec.i < 1 || spec.i > 2)
        throw std::invalid_argument("cauchy kernel: i must be 1 or 2");
      break;
    case KernelFamily::Huovinen:
      if (spec.d != 2) throw std::invalid_argument("huovinen kernel: d must be 2");
      break;
  }
}

double eval(const KernelSpec& spec, const Point& x) {
  double r2 = 0.0;
  for (int k = 0; k < spec.d; ++k) r2 += x[k] * x[k];
  double r = std::sqrt(r2);
  if (r <= spec.delta) {
    if (r == 0.0 && spec.delta == 0.0)
      throw std::domain_error("kernel evaluated at 0 with delta = 0");
    return 0.0;
  }
  switch (spec.family) {
    case KernelFamily::OddPowerCoordinate: {
      double u = x[spec.i - 1] / r;
      double p = u;
      for (int k = 1; k < 2 * spec.n - 1; ++k) p *= u;
      return p / r;
    }
    case KernelFamily::RieszCoordinate:
    case KernelFamily::CauchyCoordinate:
      return (x[spec.i - 1] / r) / r;
    case KernelFamily::Huovinen: {
      double u = x[0] / r;
      double v = x[1] / r;
      return u * v * v / r;
    }
  }
  throw std::logic_error("unknown kernel family");
}

dd eval_dd(const KernelSpec& spec, const dd* x, int dim) {
  dd r2(0.0);
  for (int k = 0; k < dim; ++k) r2 += x[k] * x[k];
  switch (spec.family) {
    case KernelFamily::OddPowerCoordinate:
      // x_i^(2n-1) / (r^2)^n
      return dd_ipow(x[spec.i - 1], 2 * spec.n - 1) / dd_ipow(r2, spec.n);
    case KernelFamily::RieszCoordinate:
    case KernelFamily::CauchyCoordinate:
      return x[spec.i - 1] / r2;
    case KernelFamily::Huovinen:
      return x[0] * x[1] * x[1] / (r2 * r2);
  }
  throw std::logic_error("unknown kernel family");
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void validate(const DiscreteMeasure& mu) {
  if (mu.points.size() != mu.weights.size())
    throw std::invalid_argument("measure: point/weight lengths differ");
  if (mu.points.empty()) throw std::invalid_argument("measure: empty support");
  for (double w : mu.weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("measure: weights must be finite and >= 0");
  for (const Point& p : mu.points)
    if (!all_finite(p)) throw std::invalid_argument("measure: non-finite point");
  double mass = mu.total_mass();
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("measure: total mass must be positive");
  std::vector<Point> pts = mu.points;
  std::sort(pts.begin(), pts.end(), point_less);
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw std::invalid_argument("measure: support points must be pairwise distinct");
}

DiscreteMeasure scaled_mass(const DiscreteMeasure& mu, double lambda) {
  DiscreteMeasure out = mu;
  for (double& w : out.weights) w *= lambda;
  return out;
}

DiscreteMeasure dilated(const DiscreteMeasure& mu, double lambda) {
  DiscreteMeasure out = mu;
  for (Point& p : out.points)
    for (int k = 0; k < p.dim; ++k) p[k] *= lambda;
  return out;
}

double truncated_transform(const KernelSpec& spec, const DiscreteMeasure& mu,
                           double eps, const Point& x) {
  if (!(eps > 0.0)) throw std::invalid_argument("truncated_transform: eps must be > 0");
  // Neumaier-compensated sum in fixed support order
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < mu.points.size(); ++k) {
    const Point& y = mu.points[k];
    if (dist(x, y) <= eps) continue;
    Point diff;
    diff.dim = x.dim;
    for (int ax = 0; ax < x.dim; ++ax) diff[ax] = x[ax] - y[ax];
    double term = eval(spec, diff) * mu.weights[k];
    double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double potential_sup(const KernelSpec& spec, const DiscreteMeasure& mu,
                     const std::vector<Point>& eval_points, double eps) {
  if (eval_points.empty())
    throw std::invalid_argument("potential_sup: eval_points must be non-empty");
  double best = 0.0;
  for (const Point& x : eval_points)
    best = std::max(best, std::fabs(truncated_transform(spec, mu, eps, x)));
  return best;
}

void to_json(nlohmann::json& j, const KernelSpec& spec) {
  j = nlohmann::json{{"family", kernel_family_name(spec.family)},
                     {"i", spec.i},
                     {"n", spec.n},
                     {"d", spec.d},
                     {"delta", spec.delta}};
}

void from_json(const nlohmann::json& j, KernelSpec& spec) {
  spec.family = kernel_family_from_name(j.at("family").get<std::string>());
  spec.i = j.value("i", 1);
  spec.n = j.value("n", 1);
  spec.d = j.value("d", 2);
  spec.delta = j.value("delta", 0.0);
  validate(spec);
}

void to_json(nlohmann::json& j, const DiscreteMeasure& mu) {
  j = nlohmann::json{{"points", mu.points}, {"weights", mu.weights}};
}

void from_json(const nlohmann::json& j, DiscreteMeasure& mu) {
  mu.points = j.at("points").get<std::vector<Point>>();
  mu.weights = j.at("weights").get<std::vector<double>>();
}

}  // namespace czcap
