#pragma once

// Deterministic dense linear programming for the capacity programs:
//   maximize c'w  subject to  A w <= b, w >= 0.
//
// The capacity LPs have few variables (support cells) and many constraints
// (halo points), so the solver runs the two-phase simplex with Bland's
// smallest-index rule on the dual program, whose tableau has only n rows.
// The primal solution is read off the simplex multipliers, giving a certified
// (primal, dual, gap) triple. All pivoting is deterministic.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace czcap {

struct LpProblem {
  std::vector<double> c;               // objective, length n
  std::vector<std::vector<double>> A;  // m rows of length n
  std::vector<double> b;               // rhs, length m
};

void validate(const LpProblem& p);

enum class LpStatus { Optimal, Unbounded, Infeasible };

std::string lp_status_name(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> weights;  // primal solution w
  double objective = 0.0;       // c'w
  std::vector<double> dual;     // dual solution y
  double duality_gap = 0.0;     // |c'w - b'y|
  int iterations = 0;
  std::uint64_t pivot_hash = 0;  // FNV-1a over the pivot sequence
};

// thrown on numerical breakdown (pivot below 1e-12, lost rank, iteration cap)
struct LpError : std::runtime_error {
  explicit LpError(const std::string& what, std::string trace_ = {})
      : std::runtime_error(what), trace(std::move(trace_)) {}
  std::string trace;
};

LpResult solve(const LpProblem& p);

// worst primal/dual feasibility violations of a reported optimum
struct LpCertificate {
  double primal_bound_violation = 0.0;  // max(A w - b), scaled
  double primal_sign_violation = 0.0;   // max(-w)
  double dual_sign_violation = 0.0;     // max(-y)
  double dual_constraint_violation = 0.0;  // max(c - A'y)
};

LpCertificate certify(const LpProblem& p, const LpResult& r);

// plain-text interchange dump: objective row, then one row per constraint
void dump(const LpProblem& p, std::ostream& os);

}  // namespace czcap
