#pragma once

// Grid-discretized capacity estimators: the supremum of total mass over
// nonnegative weights on the support grid, subject to every listed kernel
// potential staying within the bound at every halo point. Each estimator is
// one LP; the witness measure certifies the reported value.
//
// Values are resolution-tagged estimates: the sup-norm bound is enforced only
// on the halo grid, and the leakage diagnostic reports how far a witness
// exceeds the bound on a 3x finer grid.

#include <string>
#include <vector>

#include "json.hpp"

#include "czcap/geometry.hpp"
#include "czcap/kernels.hpp"
#include "czcap/lp.hpp"

namespace czcap {

struct CapacityProblem {
  Discretization disc;
  std::vector<KernelSpec> specs;  // potentials to constrain
  double delta = 0.0;             // kernel truncation radius, default h/2
  double bound = 1.0;             // sup-norm bound on each potential
};

CapacityProblem make_capacity_problem(const Discretization& disc,
                                      std::vector<KernelSpec> specs,
                                      double bound = 1.0);

struct CapacityEstimate {
  double value = 0.0;        // witness total mass
  DiscreteMeasure witness;   // optimal weights on the support grid
  double h = 0.0;
  double delta = 0.0;
  double bound = 1.0;
  std::vector<KernelSpec> specs;
  double lp_gap = 0.0;
  int lp_iterations = 0;
};

// assembles and solves the LP; throws on a degenerate discretization or an
// unbounded program (a support point no constraint can see)
CapacityEstimate estimate(const CapacityProblem& p);

// max over the 3x finer verification halo of |potential| / bound
double constraint_leakage(const SetDescriptor& desc,
                          const CapacityProblem& problem,
                          const CapacityEstimate& est);

// capacity of positive measures with both Cauchy coordinate potentials
// bounded by 1
CapacityEstimate gamma_plus(const SetDescriptor& desc, double h);
// both odd-power coordinate kernels of power n (n = 1 coincides with
// gamma_plus)
CapacityEstimate gamma_n_plus(const SetDescriptor& desc, double h, int n);
// first coordinate at power n, second at power m
CapacityEstimate gamma_nm_plus(const SetDescriptor& desc, double h, int n, int m);
// a single odd-power kernel (coordinate i, power n)
CapacityEstimate gamma_single(const SetDescriptor& desc, double h, int n, int i);
// all d Riesz coordinates in the ambient dimension of the descriptor
CapacityEstimate gamma_riesz_plus(const SetDescriptor& desc, double h);
// the d-1 Riesz coordinates excluding k; 3D sets only
CapacityEstimate gamma_hat_k_plus(const SetDescriptor& desc, double h, int k);

// {"set", "h", "kernels", "bound", "delta"} run descriptor
struct CapacityRun {
  SetDescriptor set;
  double h = 0.0;
  std::vector<KernelSpec> kernels;
  double bound = 1.0;
  double delta = -1.0;  // < 0 means the h/2 default
};

void to_json(nlohmann::json& j, const CapacityRun& run);
void from_json(const nlohmann::json& j, CapacityRun& run);

nlohmann::json estimate_to_json(const CapacityEstimate& est, bool with_witness);

CapacityEstimate run_capacity(const CapacityRun& run);

}  // namespace czcap
