#include "czcap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace czcap {

namespace {

constexpr double kRcTol = 1e-9;       // reduced-cost threshold, scaled per column
constexpr double kDecisiveRc = 1e-6;  // below this a missing pivot means unbounded
constexpr double kPivTol = 1e-12;     // smallest acceptable pivot magnitude
constexpr double kRelPivTol = 1e-9;   // pivot floor relative to the column/row max
constexpr double kRatioTieTol = 1e-9; // relative tie window in the ratio tests
constexpr int kRefactorInterval = 512;
constexpr int kMaxIterations = 200000;

std::uint64_t fnv_step(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  h *= 1099511628211ULL;
  return h;
}

// Simplex over the dual program
//   min g'v  s.t.  [A' | -I] v = c, v = (y, s) >= 0,
// stored as a dense row tableau with n rows (one per primal variable).
// Artificial identity columns expose the simplex multipliers, which are the
// primal solution w.
//
// Two modes share the machinery:
//  - b >= 0: the slack basis prices out nonnegative, so the dual simplex
//    method runs directly, with no artificial phase. This is the capacity
//    path; those LPs bound each potential from both sides, making the dual
//    columns come in +/- pairs, and an artificial phase-1 walks straight
//    into the resulting near-duplicate columns.
//  - general b: classic two-phase primal simplex on the dual with Bland's
//    smallest-index entering rule.
// Both modes pick the largest pivot among ratio ties and re-check every
// terminal verdict on a tableau refactorized from the original data.
struct Simplex {
  const LpProblem* prob = nullptr;
  bool zero_rhs = false;  // feasibility probe: rhs forced to 0
  int m = 0, n = 0;
  std::size_t width = 0;
  std::vector<double> tab;      // n rows * width
  std::vector<double> red;      // reduced-cost row (last entry = -objective)
  std::vector<int> basis;       // basis[i] = column basic in row i
  std::vector<double> sign;     // row flips applied at construction
  std::vector<double> row_tol;  // rhs feasibility tolerance per row
  std::vector<double> cost;     // structural costs of the current phase
  double art_cost = 0.0;        // artificial-column cost of the current phase
  int iterations = 0;
  std::uint64_t pivot_hash = 1469598103934665603ULL;

  double& at(int row, std::size_t col) {
    return tab[static_cast<std::size_t>(row) * width + col];
  }
  const double& at(int row, std::size_t col) const {
    return tab[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t rhs_col() const { return width - 1; }
  std::size_t art_col(int i) const { return static_cast<std::size_t>(m + n + i); }
  double objective() const { return -red[width - 1]; }

  // slack_start: basis = s with rows flipped so the s columns are +identity;
  // otherwise rows are flipped to rhs >= 0 and the artificials are basic
  void build(const LpProblem& p, bool slack_start, bool probe) {
    prob = &p;
    zero_rhs = probe;
    m = static_cast<int>(p.b.size());
    n = static_cast<int>(p.c.size());
    width = static_cast<std::size_t>(m + 2 * n + 1);
    tab.assign(static_cast<std::size_t>(n) * width, 0.0);
    basis.assign(static_cast<std::size_t>(n), 0);
    sign.assign(static_cast<std::size_t>(n), 1.0);
    row_tol.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double ci = probe ? 0.0 : p.c[static_cast<std::size_t>(i)];
      double flip = slack_start ? -1.0 : (ci < 0.0 ? -1.0 : 1.0);
      sign[static_cast<std::size_t>(i)] = flip;
      row_tol[static_cast<std::size_t>(i)] = kRcTol * (1.0 + std::fabs(ci));
      for (int j = 0; j < m; ++j)
        at(i, static_cast<std::size_t>(j)) =
            flip * p.A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      at(i, static_cast<std::size_t>(m + i)) = -flip;
      at(i, art_col(i)) = 1.0;
      at(i, rhs_col()) = flip * ci;
      basis[static_cast<std::size_t>(i)] = slack_start ? m + i : m + n + i;
    }
  }

  // column of the (flipped) dual constraint matrix from the original data
  void original_column(std::size_t col, std::vector<double>& out) const {
    out.assign(static_cast<std::size_t>(n), 0.0);
    if (col < static_cast<std::size_t>(m)) {
      for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            sign[static_cast<std::size_t>(i)] *
            prob->A[col][static_cast<std::size_t>(i)];
    } else if (col < static_cast<std::size_t>(m + n)) {
      int i = static_cast<int>(col) - m;
      out[static_cast<std::size_t>(i)] = -sign[static_cast<std::size_t>(i)];
    } else if (col < static_cast<std::size_t>(m + 2 * n)) {
      out[static_cast<std::size_t>(static_cast<int>(col) - m - n)] = 1.0;
    } else {
      for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            zero_rhs ? 0.0
                     : sign[static_cast<std::size_t>(i)] *
                           prob->c[static_cast<std::size_t>(i)];
    }
  }

  void set_phase_costs(bool phase_one) {
    cost.assign(static_cast<std::size_t>(m + n), 0.0);
    if (!phase_one)
      for (int j = 0; j < m; ++j)
        cost[static_cast<std::size_t>(j)] = prob->b[static_cast<std::size_t>(j)];
    art_cost = phase_one ? 1.0 : 0.0;
  }

  double basis_cost(int col) const {
    if (col < m + n) return cost[static_cast<std::size_t>(col)];
    return art_cost;
  }

  void recompute_reduced_costs() {
    red.assign(width, 0.0);
    for (std::size_t k = 0; k < static_cast<std::size_t>(m + n); ++k) red[k] = cost[k];
    for (std::size_t k = static_cast<std::size_t>(m + n);
         k < static_cast<std::size_t>(m + 2 * n); ++k)
      red[k] = art_cost;
    for (int i = 0; i < n; ++i) {
      double gb = basis_cost(basis[static_cast<std::size_t>(i)]);
      if (gb == 0.0) continue;
      const double* ri = &tab[static_cast<std::size_t>(i) * width];
      for (std::size_t j = 0; j < width; ++j) red[j] -= gb * ri[j];
    }
  }

  // rebuild the tableau exactly from the original data for the current basis
  void refactor() {
    const int nn = n;
    auto idx = [nn](int r, int cidx) {
      return static_cast<std::size_t>(r) * static_cast<std::size_t>(nn) +
             static_cast<std::size_t>(cidx);
    };
    std::vector<double> B(static_cast<std::size_t>(nn) * static_cast<std::size_t>(nn));
    std::vector<double> col;
    for (int j = 0; j < nn; ++j) {
      original_column(static_cast<std::size_t>(basis[static_cast<std::size_t>(j)]), col);
      for (int i = 0; i < nn; ++i) B[idx(i, j)] = col[static_cast<std::size_t>(i)];
    }
    std::vector<int> perm(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int k = 0; k < nn; ++k) {
      int piv = k;
      double best = std::fabs(B[idx(k, k)]);
      for (int i = k + 1; i < nn; ++i)
        if (std::fabs(B[idx(i, k)]) > best) {
          best = std::fabs(B[idx(i, k)]);
          piv = i;
        }
      if (best < kPivTol)
        throw LpError("degenerate pivot: singular basis during refactorization",
                      "column " + std::to_string(k));
      if (piv != k) {
        for (int j = 0; j < nn; ++j) std::swap(B[idx(piv, j)], B[idx(k, j)]);
        std::swap(perm[static_cast<std::size_t>(piv)], perm[static_cast<std::size_t>(k)]);
      }
      double inv = 1.0 / B[idx(k, k)];
      for (int i = k + 1; i < nn; ++i) {
        double f = B[idx(i, k)] * inv;
        B[idx(i, k)] = f;
        if (f == 0.0) continue;
        for (int j = k + 1; j < nn; ++j) B[idx(i, j)] -= f * B[idx(k, j)];
      }
    }
    std::vector<double> x, y(static_cast<std::size_t>(nn));
    for (std::size_t c = 0; c < width; ++c) {
      original_column(c, x);
      for (int i = 0; i < nn; ++i)
        y[static_cast<std::size_t>(i)] =
            x[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      for (int i = 0; i < nn; ++i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) s -= B[idx(i, j)] * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
      }
      for (int i = nn - 1; i >= 0; --i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < nn; ++j)
          s -= B[idx(i, j)] * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s / B[idx(i, i)];
      }
      for (int i = 0; i < nn; ++i) at(i, c) = y[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < nn; ++i) {
      std::size_t bc = static_cast<std::size_t>(basis[static_cast<std::size_t>(i)]);
      for (int r = 0; r < nn; ++r) at(r, bc) = (r == i) ? 1.0 : 0.0;
    }
    recompute_reduced_costs();
  }

  void pivot(int row, std::size_t col) {
    double piv = at(row, col);
    double inv = 1.0 / piv;
    double* pr = &tab[static_cast<std::size_t>(row) * width];
    for (std::size_t j = 0; j < width; ++j) pr[j] *= inv;
    pr[col] = 1.0;
    for (int i = 0; i < n; ++i) {
      if (i == row) continue;
      double f = at(i, col);
      if (f == 0.0) continue;
      double* ri = &tab[static_cast<std::size_t>(i) * width];
      for (std::size_t j = 0; j < width; ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    double f = red[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j < width; ++j) red[j] -= f * pr[j];
      red[col] = 0.0;
    }
    basis[static_cast<std::size_t>(row)] = static_cast<int>(col);
    pivot_hash = fnv_step(pivot_hash, static_cast<std::uint64_t>(row) * 0x10001ULL +
                                          static_cast<std::uint64_t>(col));
    if (++iterations > kMaxIterations)
      throw LpError("iteration limit exceeded",
                    "iterations " + std::to_string(iterations));
  }

  // ---- primal simplex step (requires rhs >= 0) ----

  struct RatioOutcome {
    int row = -1;
    double max_entry = 0.0;
  };

  // minimum-ratio rows within a relative tie window; the largest pivot wins,
  // remaining ties go to the smallest basis index. Drift noise relative to
  // the column scale is never pivoted on.
  RatioOutcome ratio_test(std::size_t col) const {
    RatioOutcome out;
    double colmax = 0.0;
    for (int i = 0; i < n; ++i) colmax = std::max(colmax, std::fabs(at(i, col)));
    double piv_tol = std::max(kPivTol, kRelPivTol * colmax);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double a = at(i, col);
      out.max_entry = std::max(out.max_entry, a);
      if (a <= piv_tol) continue;
      min_ratio = std::min(min_ratio, std::max(at(i, rhs_col()), 0.0) / a);
    }
    if (!std::isfinite(min_ratio)) return out;
    double window = min_ratio + kRatioTieTol * (1.0 + std::fabs(min_ratio));
    double best_piv = 0.0;
    int best_var = 0;
    for (int i = 0; i < n; ++i) {
      double a = at(i, col);
      if (a <= piv_tol) continue;
      if (std::max(at(i, rhs_col()), 0.0) / a > window) continue;
      int var = basis[static_cast<std::size_t>(i)];
      if (out.row < 0 || a > best_piv || (a == best_piv && var < best_var)) {
        out.row = i;
        best_piv = a;
        best_var = var;
      }
    }
    return out;
  }

  enum class StepOutcome { Optimal, Pivoted, Unbounded };

  // entering rule: Bland smallest index among columns with negative reduced
  // cost; noise-level columns without a usable pivot are skipped, and an
  // unbounded verdict requires a decisively negative reduced cost
  StepOutcome step() {
    std::size_t cols = static_cast<std::size_t>(m + n);
    for (std::size_t k = 0; k < cols; ++k) {
      double scale = 1.0 + std::fabs(cost[k]);
      if (red[k] >= -kRcTol * scale) continue;
      RatioOutcome ro = ratio_test(k);
      if (ro.row >= 0) {
        pivot(ro.row, k);
        return StepOutcome::Pivoted;
      }
      if (red[k] < -kDecisiveRc * scale) {
        if (ro.max_entry > 0.0) {
          std::ostringstream os;
          os << "iteration " << iterations << ", column " << k
             << ", largest pivot candidate " << ro.max_entry;
          throw LpError("degenerate pivot: no pivot above 1e-12", os.str());
        }
        return StepOutcome::Unbounded;
      }
    }
    return StepOutcome::Optimal;
  }

  // ---- dual simplex step (requires reduced costs >= 0) ----

  enum class DualOutcome { Feasible, Pivoted, Infeasible };

  DualOutcome dual_step() {
    int row = -1;
    for (int i = 0; i < n; ++i)
      if (at(i, rhs_col()) < -row_tol[static_cast<std::size_t>(i)]) {
        row = i;
        break;
      }
    if (row < 0) return DualOutcome::Feasible;

    double rowmax = 0.0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(m + n); ++k)
      rowmax = std::max(rowmax, std::fabs(at(row, k)));
    double piv_tol = std::max(kPivTol, kRelPivTol * rowmax);

    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < static_cast<std::size_t>(m + n); ++k) {
      double a = at(row, k);
      if (a >= -piv_tol) continue;
      min_ratio = std::min(min_ratio, std::max(red[k], 0.0) / (-a));
    }
    if (!std::isfinite(min_ratio)) return DualOutcome::Infeasible;

    double window = min_ratio + kRatioTieTol * (1.0 + std::fabs(min_ratio));
    std::size_t best_col = 0;
    double best_piv = 0.0;
    bool found = false;
    for (std::size_t k = 0; k < static_cast<std::size_t>(m + n); ++k) {
      double a = at(row, k);
      if (a >= -piv_tol) continue;
      if (std::max(red[k], 0.0) / (-a) > window) continue;
      if (!found || -a > best_piv) {
        found = true;
        best_col = k;
        best_piv = -a;
      }
    }
    pivot(row, best_col);
    return DualOutcome::Pivoted;
  }

  enum class Verdict { Optimal, DualInfeasible, DualUnbounded };

  // dual steps until the basis is feasible, then primal steps; every
  // terminal verdict must survive a refactorization from original data
  Verdict run(bool use_dual_steps) {
    int last_refactor = iterations;
    bool fresh = false;
    auto refresh = [&] {
      refactor();
      last_refactor = iterations;
      fresh = true;
    };
    for (;;) {
      if (iterations - last_refactor >= kRefactorInterval) refresh();
      if (use_dual_steps) {
        DualOutcome d = dual_step();
        if (d == DualOutcome::Pivoted) {
          fresh = false;
          continue;
        }
        if (d == DualOutcome::Infeasible) {
          if (!fresh) {
            refresh();
            continue;
          }
          return Verdict::DualInfeasible;
        }
      }
      StepOutcome o = step();
      if (o == StepOutcome::Pivoted) {
        fresh = false;
        continue;
      }
      if (!fresh) {
        refresh();
        continue;
      }
      return o == StepOutcome::Optimal ? Verdict::Optimal : Verdict::DualUnbounded;
    }
  }
};

}  // namespace

void validate(const LpProblem& p) {
  if (p.A.empty()) throw std::invalid_argument("lp: constraint matrix must be non-empty");
  if (p.b.size() != p.A.size())
    throw std::invalid_argument("lp: rhs length must match the row count");
  if (p.c.empty()) throw std::invalid_argument("lp: empty objective");
  for (const auto& row : p.A)
    if (row.size() != p.c.size())
      throw std::invalid_argument("lp: inconsistent row length");
  auto finite = [](double v) { return std::isfinite(v); };
  for (double v : p.c)
    if (!finite(v)) throw std::invalid_argument("lp: non-finite objective entry");
  for (double v : p.b)
    if (!finite(v)) throw std::invalid_argument("lp: non-finite rhs entry");
  for (const auto& row : p.A)
    for (double v : row)
      if (!finite(v)) throw std::invalid_argument("lp: non-finite matrix entry");
}

std::string lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::Infeasible: return "infeasible";
  }
  return "?";
}

namespace {

// phase 1 of the general path: minimize the artificial sum
bool phase_one(Simplex& s, double feas_tol) {
  s.set_phase_costs(true);
  s.recompute_reduced_costs();
  Simplex::Verdict v = s.run(false);
  if (v != Simplex::Verdict::Optimal)
    throw LpError("phase-1 objective reported unbounded",
                  "iterations " + std::to_string(s.iterations));
  if (s.objective() > feas_tol) return false;
  for (int i = 0; i < s.n; ++i) {
    if (s.basis[static_cast<std::size_t>(i)] < s.m + s.n) continue;
    bool done = false;
    for (std::size_t k = 0; k < static_cast<std::size_t>(s.m + s.n); ++k) {
      if (std::fabs(s.at(i, k)) > 1e-9) {
        s.pivot(i, k);
        done = true;
        break;
      }
    }
    if (!done)
      throw LpError("degenerate pivot: rank lost while removing artificials",
                    "row " + std::to_string(i));
  }
  return true;
}

// min b'y s.t. A'y >= 0, y >= 0 is bounded (at 0) exactly when the primal
// program has a feasible point
bool primal_feasible(const LpProblem& p) {
  for (double bi : p.b)
    if (bi < 0.0) {
      Simplex s;
      s.build(p, /*slack_start=*/true, /*probe=*/true);
      s.set_phase_costs(false);
      s.recompute_reduced_costs();
      return s.run(false) == Simplex::Verdict::Optimal;
    }
  return true;  // b >= 0, so w = 0 is feasible
}

LpResult extract(const LpProblem& p, Simplex& s) {
  const int m = s.m, n = s.n;
  LpResult res;
  res.status = LpStatus::Optimal;
  res.iterations = s.iterations;
  res.pivot_hash = s.pivot_hash;
  res.dual.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < n; ++i) {
    int bi = s.basis[static_cast<std::size_t>(i)];
    if (bi < m) res.dual[static_cast<std::size_t>(bi)] = s.at(i, s.rhs_col());
  }
  res.weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    res.weights[static_cast<std::size_t>(i)] =
        -s.sign[static_cast<std::size_t>(i)] * s.red[s.art_col(i)];

  double primal = 0.0;
  for (int i = 0; i < n; ++i)
    primal += p.c[static_cast<std::size_t>(i)] * res.weights[static_cast<std::size_t>(i)];
  double dualv = 0.0;
  for (int j = 0; j < m; ++j)
    dualv += p.b[static_cast<std::size_t>(j)] * res.dual[static_cast<std::size_t>(j)];
  res.objective = primal;
  res.duality_gap = std::fabs(primal - dualv);
  return res;
}

}  // namespace

LpResult solve(const LpProblem& p) {
  validate(p);

  bool b_nonneg = true;
  for (double bi : p.b)
    if (bi < 0.0) b_nonneg = false;

  LpResult res;
  Simplex s;
  if (b_nonneg) {
    // slack basis prices out nonnegative: plain dual simplex
    s.build(p, /*slack_start=*/true, /*probe=*/false);
    s.set_phase_costs(false);
    s.recompute_reduced_costs();
    Simplex::Verdict v = s.run(true);
    if (v == Simplex::Verdict::DualInfeasible) {
      res.status = LpStatus::Unbounded;  // w = 0 is feasible here
      res.iterations = s.iterations;
      res.pivot_hash = s.pivot_hash;
      return res;
    }
    if (v == Simplex::Verdict::DualUnbounded) {
      res.status = LpStatus::Infeasible;
      res.iterations = s.iterations;
      res.pivot_hash = s.pivot_hash;
      return res;
    }
    return extract(p, s);
  }

  s.build(p, /*slack_start=*/false, /*probe=*/false);
  double cmax = 0.0;
  for (double ci : p.c) cmax = std::max(cmax, std::fabs(ci));
  if (!phase_one(s, 1e-7 * (1.0 + cmax))) {
    res.status = primal_feasible(p) ? LpStatus::Unbounded : LpStatus::Infeasible;
    res.iterations = s.iterations;
    res.pivot_hash = s.pivot_hash;
    return res;
  }
  s.set_phase_costs(false);
  s.recompute_reduced_costs();
  if (s.run(false) == Simplex::Verdict::DualUnbounded) {
    res.status = LpStatus::Infeasible;
    res.iterations = s.iterations;
    res.pivot_hash = s.pivot_hash;
    return res;
  }
  return extract(p, s);
}

LpCertificate certify(const LpProblem& p, const LpResult& r) {
  LpCertificate cert;
  if (r.status != LpStatus::Optimal) return cert;
  const std::size_t m = p.b.size(), n = p.c.size();
  for (std::size_t j = 0; j < m; ++j) {
    double row = 0.0;
    for (std::size_t i = 0; i < n; ++i) row += p.A[j][i] * r.weights[i];
    cert.primal_bound_violation =
        std::max(cert.primal_bound_violation,
                 (row - p.b[j]) / (1.0 + std::fabs(p.b[j])));
    cert.dual_sign_violation = std::max(cert.dual_sign_violation, -r.dual[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    cert.primal_sign_violation = std::max(cert.primal_sign_violation, -r.weights[i]);
    double col = 0.0;
    for (std::size_t j = 0; j < m; ++j) col += p.A[j][i] * r.dual[j];
    cert.dual_constraint_violation =
        std::max(cert.dual_constraint_violation,
                 (p.c[i] - col) / (1.0 + std::fabs(p.c[i])));
  }
  return cert;
}

void dump(const LpProblem& p, std::ostream& os) {
  os << "lp " << p.b.size() << ' ' << p.c.size() << '\n';
  os << "max";
  for (double ci : p.c) os << ' ' << ci;
  os << '\n';
  for (std::size_t j = 0; j < p.b.size(); ++j) {
    for (std::size_t i = 0; i < p.c.size(); ++i)
      os << p.A[j][i] << (i + 1 == p.c.size() ? "" : " ");
    os << " <= " << p.b[j] << '\n';
  }
}

}  // namespace czcap
