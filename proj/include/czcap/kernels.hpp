#pragma once

// Calderon-Zygmund kernels of homogeneity -1 and their discrete potentials.
//
// Every kernel is evaluated through ratios u = x_i/|x| in [-1, 1], so powers
// never overflow and the bound |K(x)| <= 1/|x| holds exactly.

#include <string>
#include <vector>

#include "json.hpp"

#include "czcap/dd.hpp"
#include "czcap/geometry.hpp"

namespace czcap {

enum class KernelFamily {
  OddPowerCoordinate,  // x_i^(2n-1)/|x|^(2n), plane only
  RieszCoordinate,     // x_i/|x|^2 in dimension d
  CauchyCoordinate,    // coordinate parts of 1/z, same values as Riesz d=2
  Huovinen,            // x_1 x_2^2/|x|^4, plane only
};

std::string kernel_family_name(KernelFamily f);
KernelFamily kernel_family_from_name(const std::string& name);

struct KernelSpec {
  KernelFamily family = KernelFamily::OddPowerCoordinate;
  int i = 1;           // coordinate index, 1-based
  int n = 1;           // power, odd-power family only
  int d = 2;           // ambient dimension
  double delta = 0.0;  // hard truncation radius: K(x) = 0 for |x| <= delta

  std::string label() const;
};

void validate(const KernelSpec& spec);

// kernel value at displacement x; 0 inside the truncation radius; throws
// std::domain_error at x = 0 when delta = 0
double eval(const KernelSpec& spec, const Point& x);

// untruncated double-double evaluation at an exact displacement, used by the
// triple-wise quantities (requires spec.delta == 0)
dd eval_dd(const KernelSpec& spec, const dd* x, int dim);

struct DiscreteMeasure {
  std::vector<Point> points;
  std::vector<double> weights;

  double total_mass() const;
  std::size_t size() const { return points.size(); }
};

// checks the measure invariants (matching lengths, nonnegative weights,
// pairwise distinct points, positive finite mass); throws std::invalid_argument
void validate(const DiscreteMeasure& mu);

DiscreteMeasure scaled_mass(const DiscreteMeasure& mu, double lambda);
DiscreteMeasure dilated(const DiscreteMeasure& mu, double lambda);

// sum of K(x - y) w(y) over support points y with |x - y| > eps
double truncated_transform(const KernelSpec& spec, const DiscreteMeasure& mu,
                           double eps, const Point& x);

// max over eval_points of |truncated_transform|; discrete sup-norm surrogate
double potential_sup(const KernelSpec& spec, const DiscreteMeasure& mu,
                     const std::vector<Point>& eval_points, double eps);

void to_json(nlohmann::json& j, const KernelSpec& spec);
void from_json(const nlohmann::json& j, KernelSpec& spec);
void to_json(nlohmann::json& j, const DiscreteMeasure& mu);
void from_json(const nlohmann::json& j, DiscreteMeasure& mu);

}  // namespace czcap
