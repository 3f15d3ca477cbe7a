#include "czcap/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace czcap {

CapacityProblem make_capacity_problem(const Discretization& disc,
                                      std::vector<KernelSpec> specs,
                                      double bound) {
  CapacityProblem p;
  p.disc = disc;
  p.specs = std::move(specs);
  p.delta = 0.5 * disc.h;
  p.bound = bound;
  return p;
}

namespace {

void validate_problem(const CapacityProblem& p) {
  if (p.disc.support.empty())
    throw DegenerateDiscretization("capacity: empty support");
  if (p.disc.halo.empty()) throw std::invalid_argument("capacity: empty halo");
  if (p.specs.empty()) throw std::invalid_argument("capacity: no kernels listed");
  if (!(p.delta > 0.0)) throw std::invalid_argument("capacity: delta must be > 0");
  if (!(p.bound >= 0.0)) throw std::invalid_argument("capacity: bound must be >= 0");
  int d = p.specs.front().d;
  for (const auto& s : p.specs) {
    validate(s);
    if (s.d != d) throw std::invalid_argument("capacity: kernels must share d");
  }
  if (p.disc.support.front().dim != d)
    throw std::invalid_argument("capacity: kernel dimension does not match the grid");
}

LpProblem assemble(const CapacityProblem& p) {
  const std::size_t n = p.disc.support.size();
  const std::size_t rows = 2 * p.specs.size() * p.disc.halo.size();
  const int dim = p.disc.support.front().dim;

  LpProblem lp;
  lp.c.assign(n, 1.0);
  lp.A.reserve(rows);
  lp.b.assign(rows, p.bound);

  std::vector<double> coeff(n);
  for (const KernelSpec& base : p.specs) {
    KernelSpec spec = base;
    spec.delta = p.delta;
    for (const Point& y : p.disc.halo) {
      for (std::size_t j = 0; j < n; ++j) {
        Point diff;
        diff.dim = dim;
        for (int ax = 0; ax < dim; ++ax) diff[ax] = y[ax] - p.disc.support[j][ax];
        coeff[j] = eval(spec, diff);
      }
      lp.A.push_back(coeff);
      for (double& v : coeff) v = -v;
      lp.A.push_back(coeff);
      for (double& v : coeff) v = -v;  // restore for the next halo point
    }
  }
  return lp;
}

}  // namespace

CapacityEstimate estimate(const CapacityProblem& p) {
  validate_problem(p);
  LpProblem lp = assemble(p);
  LpResult res = solve(lp);
  if (res.status == LpStatus::Infeasible)
    throw std::logic_error("capacity: LP reported infeasible, but w = 0 is feasible");
  if (res.status == LpStatus::Unbounded)
    throw std::runtime_error(
        "capacity: unbounded program (a support point is invisible to every "
        "halo constraint)");

  CapacityEstimate est;
  est.h = p.disc.h;
  est.delta = p.delta;
  est.bound = p.bound;
  est.specs = p.specs;
  est.lp_gap = res.duality_gap;
  est.lp_iterations = res.iterations;
  est.witness.points = p.disc.support;
  est.witness.weights = res.weights;
  double mass = 0.0;
  for (double& w : est.witness.weights) {
    if (w < 0.0) w = 0.0;
    mass += w;
  }
  est.value = mass;
  return est;
}

double constraint_leakage(const SetDescriptor& desc,
                          const CapacityProblem& problem,
                          const CapacityEstimate& est) {
  if (!(est.bound > 0.0)) return 0.0;
  std::vector<Point> fine = verification_halo(desc, problem.disc.h);
  double worst = 0.0;
  for (const KernelSpec& base : problem.specs) {
    KernelSpec spec = base;
    spec.delta = problem.delta;
    for (const Point& y : fine) {
      double sum = 0.0;
      for (std::size_t j = 0; j < est.witness.points.size(); ++j) {
        Point diff;
        diff.dim = y.dim;
        for (int ax = 0; ax < y.dim; ++ax)
          diff[ax] = y[ax] - est.witness.points[j][ax];
        sum += eval(spec, diff) * est.witness.weights[j];
      }
      worst = std::max(worst, std::fabs(sum));
    }
  }
  return worst / est.bound;
}

namespace {

CapacityEstimate run_with_kernels(const SetDescriptor& desc, double h,
                                  std::vector<KernelSpec> specs) {
  Discretization disc = generate(desc, h);
  return estimate(make_capacity_problem(disc, std::move(specs)));
}

}  // namespace

CapacityEstimate gamma_plus(const SetDescriptor& desc, double h) {
  return run_with_kernels(desc, h,
                          {KernelSpec{KernelFamily::CauchyCoordinate, 1, 1, 2, 0.0},
                           KernelSpec{KernelFamily::CauchyCoordinate, 2, 1, 2, 0.0}});
}

CapacityEstimate gamma_n_plus(const SetDescriptor& desc, double h, int n) {
  return run_with_kernels(desc, h,
                          {KernelSpec{KernelFamily::OddPowerCoordinate, 1, n, 2, 0.0},
                           KernelSpec{KernelFamily::OddPowerCoordinate, 2, n, 2, 0.0}});
}

CapacityEstimate gamma_nm_plus(const SetDescriptor& desc, double h, int n, int m) {
  return run_with_kernels(desc, h,
                          {KernelSpec{KernelFamily::OddPowerCoordinate, 1, n, 2, 0.0},
                           KernelSpec{KernelFamily::OddPowerCoordinate, 2, m, 2, 0.0}});
}

CapacityEstimate gamma_single(const SetDescriptor& desc, double h, int n, int i) {
  return run_with_kernels(desc, h,
                          {KernelSpec{KernelFamily::OddPowerCoordinate, i, n, 2, 0.0}});
}

CapacityEstimate gamma_riesz_plus(const SetDescriptor& desc, double h) {
  int d = desc.dim();
  std::vector<KernelSpec> specs;
  for (int i = 1; i <= d; ++i)
    specs.push_back(KernelSpec{KernelFamily::RieszCoordinate, i, 1, d, 0.0});
  return run_with_kernels(desc, h, std::move(specs));
}

CapacityEstimate gamma_hat_k_plus(const SetDescriptor& desc, double h, int k) {
  int d = desc.dim();
  if (d != 3)
    throw std::invalid_argument("gamma_hat_k_plus: 3D descriptors only");
  if (k < 1 || k > d)
    throw std::invalid_argument("gamma_hat_k_plus: k must be in [1, d]");
  std::vector<KernelSpec> specs;
  for (int i = 1; i <= d; ++i)
    if (i != k)
      specs.push_back(KernelSpec{KernelFamily::RieszCoordinate, i, 1, d, 0.0});
  return run_with_kernels(desc, h, std::move(specs));
}

void to_json(nlohmann::json& j, const CapacityRun& run) {
  j = nlohmann::json{{"set", run.set},
                     {"h", run.h},
                     {"kernels", run.kernels},
                     {"bound", run.bound},
                     {"delta", run.delta}};
}

void from_json(const nlohmann::json& j, CapacityRun& run) {
  run.set = j.at("set").get<SetDescriptor>();
  run.h = j.at("h").get<double>();
  run.kernels = j.at("kernels").get<std::vector<KernelSpec>>();
  run.bound = j.value("bound", 1.0);
  run.delta = j.value("delta", -1.0);
}

nlohmann::json estimate_to_json(const CapacityEstimate& est, bool with_witness) {
  nlohmann::json j{{"value", est.value},
                   {"h", est.h},
                   {"delta", est.delta},
                   {"bound", est.bound},
                   {"lp_gap", est.lp_gap},
                   {"lp_iterations", est.lp_iterations},
                   {"support_size", est.witness.points.size()}};
  nlohmann::json specs = nlohmann::json::array();
  for (const auto& s : est.specs) specs.push_back(s.label());
  j["kernels"] = specs;
  if (with_witness) j["witness"] = est.witness;
  return j;
}

CapacityEstimate run_capacity(const CapacityRun& run) {
  Discretization disc = generate(run.set, run.h);
  CapacityProblem p = make_capacity_problem(disc, run.kernels, run.bound);
  if (run.delta >= 0.0) p.delta = run.delta;
  return estimate(p);
}

}  // namespace czcap
