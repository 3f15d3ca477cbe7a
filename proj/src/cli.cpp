#include "czcap/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "czcap/capacity.hpp"
#include "czcap/geometry.hpp"
#include "czcap/meascurv.hpp"
#include "czcap/symbols.hpp"
#include "czcap/symmetry.hpp"
#include "czcap/version.hpp"

namespace czcap {

nlohmann::json to_json(const RunConfig& cfg) {
  return nlohmann::json{{"command", cfg.command},
                        {"input", cfg.input_path},
                        {"output", cfg.output_path},
                        {"seed", cfg.seed},
                        {"samples", cfg.samples},
                        {"h", cfg.h},
                        {"n", cfg.n},
                        {"m", cfg.m},
                        {"i", cfg.i},
                        {"max_m", cfg.max_m},
                        {"max_n", cfg.max_n},
                        {"eps", cfg.eps},
                        {"M", cfg.big_m},
                        {"t", cfg.t},
                        {"box_corner", {cfg.box_corner_x, cfg.box_corner_y}},
                        {"box_side", cfg.box_side},
                        {"witness", cfg.witness}};
}

namespace {

void write_out(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + cfg.output_path);
  out << text;
}

std::string config_comment(const RunConfig& cfg) {
  return std::string("# ") + kProjectName + " " + kVersion +
         " config=" + to_json(cfg).dump() + "\n";
}

nlohmann::json report_envelope(const RunConfig& cfg) {
  return nlohmann::json{{"artifact", kProjectName},
                        {"version", kVersion},
                        {"config", to_json(cfg)}};
}

// uniform probability measure on the support grid of the descriptor
DiscreteMeasure uniform_measure(const SetDescriptor& desc, double h) {
  Discretization disc = generate(desc, h);
  DiscreteMeasure mu;
  mu.points = disc.support;
  mu.weights.assign(mu.points.size(), 1.0 / static_cast<double>(mu.points.size()));
  return mu;
}

int cmd_scan_ratios(const RunConfig& cfg) {
  Point corner(cfg.box_corner_x, cfg.box_corner_y);
  RatioScanReport rep = ratio_scan(cfg.n, static_cast<std::uint64_t>(cfg.samples),
                                   cfg.seed, corner, cfg.box_side);
  std::ostringstream os;
  os << config_comment(cfg);
  os << ratio_scan_csv_header() << "\n" << ratio_scan_csv_row(rep) << "\n";
  write_out(cfg, os.str());
  if (rep.negative_count != 0) {
    std::cerr << "scan-ratios: " << rep.negative_count
              << " triples violated permutation positivity\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_check_identities(const RunConfig& cfg) {
  nlohmann::json out = report_envelope(cfg);
  bool all_ok = true;

  bool binom_ok = true;
  for (int m = 0; m <= cfg.max_m; ++m)
    if (!binomial_identity_check(m).equal) binom_ok = false;
  out["binomial_identity_equal_all_m"] = binom_ok;

  nlohmann::json consistency = nlohmann::json::array();
  bool positive_ok = true, constant_ok = true;
  for (int n = 1; n <= cfg.max_n; ++n) {
    EvenPoly p = expand_p(n);
    for (const Rational& c : p.coeffs)
      if (!(c > 0)) positive_ok = false;
    ConsistencyReport rep = consistency_report(n);
    if (!rep.constant) constant_ok = false;
    consistency.push_back(to_json(rep));
  }
  out["expanded_polynomial_positive"] = positive_ok;
  out["consistency"] = consistency;
  all_ok = binom_ok && positive_ok && constant_ok;
  out["all_ok"] = all_ok;

  write_out(cfg, out.dump(2) + "\n");
  if (!all_ok) {
    std::cerr << "check-identities: an exact identity failed\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_energy(const RunConfig& cfg) {
  SetDescriptor desc = load_descriptor(cfg.input_path);
  DiscreteMeasure mu = uniform_measure(desc, cfg.h);
  double eps = cfg.eps > 0.0 ? cfg.eps : default_eps(mu);

  nlohmann::json out = report_envelope(cfg);
  out["support_size"] = mu.size();
  out["mass"] = mu.total_mass();
  nlohmann::json reports = nlohmann::json::array();
  for (int i = 1; i <= 2; ++i) {
    EnergyReport rep = l2_identity_report(i, cfg.n, mu, eps);
    nlohmann::json jr;
    to_json(jr, rep);
    reports.push_back(jr);
  }
  out["reports"] = reports;
  out["curvature_energy"] = curvature_energy(mu, eps);
  write_out(cfg, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_capacity(const RunConfig& cfg) {
  std::ifstream in(cfg.input_path);
  if (!in) throw std::invalid_argument("cannot open run descriptor: " + cfg.input_path);
  CapacityRun run = nlohmann::json::parse(in).get<CapacityRun>();

  CapacityProblem prob =
      make_capacity_problem(generate(run.set, run.h), run.kernels, run.bound);
  if (run.delta >= 0.0) prob.delta = run.delta;
  CapacityEstimate est = estimate(prob);
  double leak = constraint_leakage(run.set, prob, est);

  nlohmann::json out = report_envelope(cfg);
  out["estimate"] = estimate_to_json(est, cfg.witness);
  out["leakage"] = leak;
  write_out(cfg, out.dump(2) + "\n");

  if (est.lp_gap > 1e-7 * (1.0 + std::fabs(est.value))) {
    std::cerr << "capacity: duality gap " << est.lp_gap
              << " exceeds the certification tolerance\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
  SetDescriptor desc = load_descriptor(cfg.input_path);
  Discretization disc = generate(desc, cfg.h);

  auto run_specs = [&](std::vector<KernelSpec> specs) {
    return estimate(make_capacity_problem(disc, std::move(specs)));
  };
  CapacityEstimate base =
      run_specs({KernelSpec{KernelFamily::CauchyCoordinate, 1, 1, 2, 0.0},
                 KernelSpec{KernelFamily::CauchyCoordinate, 2, 1, 2, 0.0}});
  CapacityEstimate odd =
      run_specs({KernelSpec{KernelFamily::OddPowerCoordinate, 1, cfg.n, 2, 0.0},
                 KernelSpec{KernelFamily::OddPowerCoordinate, 2, cfg.n, 2, 0.0}});

  std::ostringstream os;
  os << config_comment(cfg);
  os << "kernel_set,value,ratio_to_gamma_plus\n";
  auto row = [&](const std::string& name, const CapacityEstimate& est) {
    os << name << ',' << nlohmann::json(est.value).dump() << ','
       << nlohmann::json(base.value > 0.0 ? est.value / base.value : 0.0).dump()
       << "\n";
  };
  row("cauchy-pair", base);
  row("odd-power-pair-n" + std::to_string(cfg.n), odd);
  double worst_gap = std::max(base.lp_gap, odd.lp_gap);
  double vmax = std::max(base.value, odd.value);
  if (cfg.m > 0) {
    CapacityEstimate mixed =
        run_specs({KernelSpec{KernelFamily::OddPowerCoordinate, 1, cfg.n, 2, 0.0},
                   KernelSpec{KernelFamily::OddPowerCoordinate, 2, cfg.m, 2, 0.0}});
    row("odd-power-n" + std::to_string(cfg.n) + "-m" + std::to_string(cfg.m), mixed);
    worst_gap = std::max(worst_gap, mixed.lp_gap);
    vmax = std::max(vmax, mixed.value);
  }
  write_out(cfg, os.str());

  if (worst_gap > 1e-7 * (1.0 + vmax)) {
    std::cerr << "compare: duality gap exceeds the certification tolerance\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_ahlfors(const RunConfig& cfg) {
  SetDescriptor desc = load_descriptor(cfg.input_path);
  CapacityEstimate est = gamma_plus(desc, cfg.h);
  double t = cfg.t > 0.0 ? cfg.t : 0.5 * cfg.h;
  double M = cfg.big_m;
  if (!(M > 0.0)) M = 100.0 * std::max(growth_constant(est.witness), 1e-12);

  auto [covered, balls] = non_ahlfors_mass(est.witness, M, t);

  // the doubled selected balls must be pairwise disjoint
  for (std::size_t a = 0; a < balls.size(); ++a)
    for (std::size_t bidx = a + 1; bidx < balls.size(); ++bidx)
      if (dist(balls[a].center, balls[bidx].center) <=
          2.0 * (balls[a].radius + balls[bidx].radius)) {
        std::cerr << "ahlfors: selected doubled balls overlap\n";
        return kExitNumeric;
      }

  nlohmann::json out = report_envelope(cfg);
  out["witness_mass"] = est.witness.total_mass();
  out["M"] = M;
  out["t"] = t;
  out["covered_mass"] = covered;
  out["balls"] = balls;
  write_out(cfg, out.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "scan-ratios") return cmd_scan_ratios(cfg);
    if (cfg.command == "check-identities") return cmd_check_identities(cfg);
    if (cfg.command == "energy") return cmd_energy(cfg);
    if (cfg.command == "capacity") return cmd_capacity(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "ahlfors") return cmd_ahlfors(cfg);
    std::cerr << "unknown command: " << cfg.command << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << cfg.command << ": malformed JSON input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace czcap
