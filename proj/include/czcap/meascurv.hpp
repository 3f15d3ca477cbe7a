#pragma once

// Functionals of discrete measures: Menger curvature energy, permutation
// energies over the eps-separated region, the L^2 symmetrization residual,
// truncated-transform operator norms, discrete linear-growth constants, and
// non-Ahlfors-ball mass via a greedy disjoint-doubles covering.
//
// Triple sums are direct O(N^3) with double-double terms and accumulators;
// parallel chunks are merged in a fixed order so results do not depend on the
// thread count.

#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"

#include "czcap/geometry.hpp"
#include "czcap/kernels.hpp"

namespace czcap {

struct EnergyReport {
  int i = 1;                      // coordinate of the probed kernel
  int n = 1;                      // kernel power
  double eps = 0.0;
  double lhs = 0.0;               // sum_j w_j (T_eps mu (x_j))^2
  double p_eps = 0.0;             // permutation energy over the eps region
  double residual = 0.0;          // |lhs - p_eps / 3|
  double growth_constant = 0.0;
  double mass = 0.0;
};

struct BallStat {
  Point center;
  double radius = 0.0;
  double mass = 0.0;   // mu(B(center, radius)), closed ball
  double theta = 0.0;  // mass / radius
};

// eps chosen as half the minimum pairwise support distance, so the separated
// region excludes only coincidence degeneracies
double default_eps(const DiscreteMeasure& mu);

// triple integral of c^2 over ordered triples with all pairwise gaps > eps
double curvature_energy(const DiscreteMeasure& mu, double eps);

// sum over the given kernels of the eps-restricted triple sum of the
// permutation quantity; all specs must share the ambient dimension and have
// delta = 0
double perm_energy(const std::vector<KernelSpec>& specs,
                   const DiscreteMeasure& mu, double eps);

// both sides of the discrete L^2 symmetrization comparison for the odd-power
// kernel with coordinate i and power n
EnergyReport l2_identity_report(int i, int n, const DiscreteMeasure& mu,
                                double eps);

// power-iteration estimate of the L^2(mu) operator norm of the truncated
// kernel matrix family; deterministic seeded start, fixed iteration count
double transform_norm(const std::vector<KernelSpec>& specs,
                      const DiscreteMeasure& mu, double eps, int iters);

// max over support centers and pairwise-distance radii of mu(B(x, r))/r;
// 0 for a singleton support
double growth_constant(const DiscreteMeasure& mu);

// Greedy covering of the non-Ahlfors balls: candidate balls B(x, r) with x in
// the support, r a pairwise distance >= t and mu(B)/r > M; processed by
// decreasing radius (ties by point index), selected when the doubled balls
// stay pairwise disjoint. Returns the selected balls and sum mu(10 B_j),
// capped at the total mass.
std::pair<double, std::vector<BallStat>> non_ahlfors_mass(
    const DiscreteMeasure& mu, double M, double t);

// report-only density comparison: ((mu(B)/R)^2, c^2(mu|_B)/mu(B))
std::pair<double, double> density_bound_check(const DiscreteMeasure& mu,
                                              const BallStat& ball, double eps);

void to_json(nlohmann::json& j, const EnergyReport& rep);
void to_json(nlohmann::json& j, const BallStat& b);

}  // namespace czcap
