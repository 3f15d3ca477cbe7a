#include "czcap/meascurv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "czcap/dd.hpp"
#include "czcap/rng.hpp"
#include "czcap/symmetry.hpp"

namespace czcap {

namespace {

constexpr std::uint64_t kPowerIterationSeed = 0x706F776572697465ULL;

struct PairTables {
  int n = 0;
  int dim = 2;
  std::vector<double> dist;  // row-major pairwise distances
  double d(int j, int k) const { return dist[static_cast<std::size_t>(j * n + k)]; }
};

PairTables pair_tables(const DiscreteMeasure& mu) {
  PairTables t;
  t.n = static_cast<int>(mu.size());
  t.dim = mu.points.front().dim;
  t.dist.assign(static_cast<std::size_t>(t.n) * static_cast<std::size_t>(t.n), 0.0);
  for (int j = 0; j < t.n; ++j)
    for (int k = j + 1; k < t.n; ++k) {
      double d = dist(mu.points[j], mu.points[k]);
      t.dist[static_cast<std::size_t>(j * t.n + k)] = d;
      t.dist[static_cast<std::size_t>(k * t.n + j)] = d;
    }
  return t;
}

// Sum of f(j, k, l) over unordered index triples j < k < l with all pairwise
// gaps > eps; partial sums are kept per outer index and combined in index
// order, so the result is independent of the parallel chunking.
template <typename Term>
dd separated_triple_sum(const PairTables& t, double eps, Term&& term) {
  const int n = t.n;
  std::vector<dd> partial(static_cast<std::size_t>(n), dd(0.0));
#pragma omp parallel for schedule(dynamic, 4)
  for (int j = 0; j < n; ++j) {
    dd acc(0.0);
    for (int k = j + 1; k < n; ++k) {
      if (t.d(j, k) <= eps) continue;
      for (int l = k + 1; l < n; ++l) {
        if (t.d(j, l) <= eps || t.d(k, l) <= eps) continue;
        acc += term(j, k, l);
      }
    }
    partial[static_cast<std::size_t>(j)] = acc;
  }
  dd total(0.0);
  for (const dd& p : partial) total += p;
  return total;
}

dd menger_sq_from_points(const Point& a, const Point& b, const Point& c) {
  Triple t{a, b, c};
  return menger_sq_dd(t);
}

}  // namespace

double default_eps(const DiscreteMeasure& mu) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < mu.size(); ++j)
    for (std::size_t k = j + 1; k < mu.size(); ++k)
      best = std::min(best, dist(mu.points[j], mu.points[k]));
  if (!std::isfinite(best)) return 1.0;  // singleton
  return 0.5 * best;
}

double curvature_energy(const DiscreteMeasure& mu, double eps) {
  validate(mu);
  if (!(eps > 0.0)) throw std::invalid_argument("curvature_energy: eps must be > 0");
  if (mu.size() < 3) return 0.0;
  PairTables t = pair_tables(mu);
  const auto& pts = mu.points;
  const auto& w = mu.weights;
  dd total = separated_triple_sum(t, eps, [&](int j, int k, int l) {
    dd c2 = menger_sq_from_points(pts[static_cast<std::size_t>(j)],
                                  pts[static_cast<std::size_t>(k)],
                                  pts[static_cast<std::size_t>(l)]);
    double www = w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(k)] *
                 w[static_cast<std::size_t>(l)];
    return c2 * dd(6.0 * www);  // 6 ordered triples per unordered one
  });
  return total.to_double();
}

double perm_energy(const std::vector<KernelSpec>& specs,
                   const DiscreteMeasure& mu, double eps) {
  validate(mu);
  if (specs.empty()) throw std::invalid_argument("perm_energy: empty kernel list");
  int dim = specs.front().d;
  for (const auto& s : specs) {
    validate(s);
    if (s.d != dim) throw std::invalid_argument("perm_energy: kernels must share d");
    if (s.delta != 0.0)
      throw std::invalid_argument("perm_energy: kernels must be untruncated");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("perm_energy: eps must be > 0");
  if (mu.size() < 3) return 0.0;

  PairTables t = pair_tables(mu);
  const int n = t.n;
  const auto& pts = mu.points;
  const auto& w = mu.weights;

  dd grand(0.0);
  std::vector<dd> kmat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const KernelSpec& spec : specs) {
    // pairwise kernel values K(x_j - x_k) for j < k; oddness covers the rest
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        dd diff[3];
        for (int ax = 0; ax < dim; ++ax)
          diff[ax] = dd_sub(pts[static_cast<std::size_t>(j)][ax],
                            pts[static_cast<std::size_t>(k)][ax]);
        kmat[static_cast<std::size_t>(j * n + k)] = eval_dd(spec, diff, dim);
      }
    dd total = separated_triple_sum(t, eps, [&](int j, int k, int l) {
      const dd& kjk = kmat[static_cast<std::size_t>(j * n + k)];
      const dd& kjl = kmat[static_cast<std::size_t>(j * n + l)];
      const dd& kkl = kmat[static_cast<std::size_t>(k * n + l)];
      // p = K(j-k)K(j-l) + K(k-j)K(k-l) + K(l-j)K(l-k)
      dd p = kjk * kjl - kjk * kkl + kjl * kkl;
      double www = w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(k)] *
                   w[static_cast<std::size_t>(l)];
      return p * dd(6.0 * www);
    });
    grand += total;
  }
  return grand.to_double();
}

EnergyReport l2_identity_report(int i, int n, const DiscreteMeasure& mu,
                                double eps) {
  validate(mu);
  if (!(eps > 0.0)) throw std::invalid_argument("l2_identity_report: eps must be > 0");
  KernelSpec spec{KernelFamily::OddPowerCoordinate, i, n, 2, 0.0};
  validate(spec);

  EnergyReport rep;
  rep.i = i;
  rep.n = n;
  rep.eps = eps;
  rep.mass = mu.total_mass();

  dd lhs(0.0);
  for (std::size_t j = 0; j < mu.size(); ++j) {
    double tj = truncated_transform(spec, mu, eps, mu.points[j]);
    lhs += dd(mu.weights[j]) * detail::two_prod(tj, tj);
  }
  rep.lhs = lhs.to_double();
  rep.p_eps = perm_energy({spec}, mu, eps);
  rep.residual = std::fabs(rep.lhs - rep.p_eps / 3.0);
  rep.growth_constant = growth_constant(mu);
  return rep;
}

double transform_norm(const std::vector<KernelSpec>& specs,
                      const DiscreteMeasure& mu, double eps, int iters) {
  validate(mu);
  if (specs.empty()) throw std::invalid_argument("transform_norm: empty kernel list");
  if (iters < 1) throw std::invalid_argument("transform_norm: iters must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("transform_norm: eps must be > 0");
  const int n = static_cast<int>(mu.size());
  const int dim = mu.points.front().dim;
  const std::size_t ns = static_cast<std::size_t>(n);

  // dense truncated kernel matrices M_s[j][k] = K_s(x_j - x_k) 1_{|x_j-x_k|>eps}
  std::vector<std::vector<double>> mats;
  mats.reserve(specs.size());
  for (const KernelSpec& spec : specs) {
    validate(spec);
    if (spec.d != dim)
      throw std::invalid_argument("transform_norm: kernel dimension mismatch");
    std::vector<double> m(ns * ns, 0.0);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (j == k) continue;
        if (dist(mu.points[static_cast<std::size_t>(j)],
                 mu.points[static_cast<std::size_t>(k)]) <= eps)
          continue;
        Point diff;
        diff.dim = dim;
        for (int ax = 0; ax < dim; ++ax)
          diff[ax] = mu.points[static_cast<std::size_t>(j)][ax] -
                     mu.points[static_cast<std::size_t>(k)][ax];
        m[static_cast<std::size_t>(j) * ns + static_cast<std::size_t>(k)] = eval(spec, diff);
      }
    mats.push_back(std::move(m));
  }

  const auto& w = mu.weights;
  auto apply = [&](const std::vector<double>& m, const std::vector<double>& f,
                   std::vector<double>& out) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += m[static_cast<std::size_t>(j) * ns + static_cast<std::size_t>(k)] *
             f[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(k)];
      out[static_cast<std::size_t>(j)] = s;
    }
  };
  auto apply_adjoint = [&](const std::vector<double>& m, const std::vector<double>& g,
                           std::vector<double>& out) {
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += m[static_cast<std::size_t>(j) * ns + static_cast<std::size_t>(k)] *
             g[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(k)] = s;
    }
  };
  auto norm_mu_sq = [&](const std::vector<double>& f) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      s += w[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(j)] *
           f[static_cast<std::size_t>(j)];
    return s;
  };

  std::vector<double> f(ns), tf(ns), next(ns), tmp(ns);
  for (int j = 0; j < n; ++j)
    f[static_cast<std::size_t>(j)] = rng_unit(kPowerIterationSeed, static_cast<std::uint64_t>(j)) - 0.5;

  double rayleigh = 0.0;
  for (int it = 0; it < iters; ++it) {
    // next = T* T f summed over the kernel family
    std::fill(next.begin(), next.end(), 0.0);
    double num = 0.0;
    for (const auto& m : mats) {
      apply(m, f, tf);
      num += norm_mu_sq(tf);
      apply_adjoint(m, tf, tmp);
      for (int j = 0; j < n; ++j) next[static_cast<std::size_t>(j)] += tmp[static_cast<std::size_t>(j)];
    }
    double den = norm_mu_sq(f);
    if (den <= 0.0 || num <= 0.0) return 0.0;
    rayleigh = num / den;
    double scale = 1.0 / std::sqrt(norm_mu_sq(next) + std::numeric_limits<double>::min());
    for (int j = 0; j < n; ++j)
      f[static_cast<std::size_t>(j)] = next[static_cast<std::size_t>(j)] * scale;
  }
  return std::sqrt(rayleigh);
}

namespace {

// per-center sorted distances (including 0 for the center itself) and the
// cumulative mass of the closed ball at each distance
struct CenterProfile {
  std::vector<double> radius;  // strictly increasing
  std::vector<double> mass;    // mu(closed ball of that radius)
};

CenterProfile center_profile(const DiscreteMeasure& mu, std::size_t center) {
  const std::size_t n = mu.size();
  std::vector<std::pair<double, double>> dm;
  dm.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    dm.emplace_back(dist(mu.points[center], mu.points[k]), mu.weights[k]);
  std::sort(dm.begin(), dm.end());
  CenterProfile out;
  double cum = 0.0;
  for (std::size_t k = 0; k < n;) {
    double r = dm[k].first;
    while (k < n && dm[k].first == r) cum += dm[k++].second;
    out.radius.push_back(r);
    out.mass.push_back(cum);
  }
  return out;
}

double ball_mass(const CenterProfile& p, double r) {
  auto it = std::upper_bound(p.radius.begin(), p.radius.end(), r);
  if (it == p.radius.begin()) return 0.0;
  return p.mass[static_cast<std::size_t>(it - p.radius.begin()) - 1];
}

}  // namespace

double growth_constant(const DiscreteMeasure& mu) {
  validate(mu);
  if (mu.size() < 2) return 0.0;  // no pairwise distances to probe
  double best = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    CenterProfile p = center_profile(mu, j);
    for (std::size_t k = 0; k < p.radius.size(); ++k)
      if (p.radius[k] > 0.0) best = std::max(best, p.mass[k] / p.radius[k]);
  }
  return best;
}

std::pair<double, std::vector<BallStat>> non_ahlfors_mass(
    const DiscreteMeasure& mu, double M, double t) {
  validate(mu);
  if (!(M > 0.0)) throw std::invalid_argument("non_ahlfors_mass: M must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("non_ahlfors_mass: t must be > 0");

  const std::size_t n = mu.size();
  std::vector<CenterProfile> profiles;
  profiles.reserve(n);
  for (std::size_t j = 0; j < n; ++j) profiles.push_back(center_profile(mu, j));

  struct Candidate {
    double r;
    std::size_t center;
    double mass;
  };
  std::vector<Candidate> cands;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < profiles[j].radius.size(); ++k) {
      double r = profiles[j].radius[k];
      if (r < t || r <= 0.0) continue;
      double m = profiles[j].mass[k];
      if (m / r > M) cands.push_back({r, j, m});
    }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.r != b.r) return a.r > b.r;
    return a.center < b.center;
  });

  std::vector<BallStat> picked;
  for (const Candidate& c : cands) {
    bool ok = true;
    for (const BallStat& s : picked)
      if (dist(mu.points[c.center], s.center) <= 2.0 * (c.r + s.radius)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    BallStat b;
    b.center = mu.points[c.center];
    b.radius = c.r;
    b.mass = c.mass;
    b.theta = c.mass / c.r;
    picked.push_back(b);
  }

  double covered = 0.0;
  for (std::size_t j = 0; j < picked.size(); ++j) {
    // recover the center index to reuse its profile
    const BallStat& b = picked[j];
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (mu.points[k] == b.center) {
        idx = k;
        break;
      }
    covered += ball_mass(profiles[idx], 10.0 * b.radius);
  }
  covered = std::min(covered, mu.total_mass());
  return {covered, picked};
}

std::pair<double, double> density_bound_check(const DiscreteMeasure& mu,
                                              const BallStat& ball, double eps) {
  validate(mu);
  if (!(ball.radius > 0.0))
    throw std::invalid_argument("density_bound_check: radius must be > 0");
  DiscreteMeasure restricted;
  for (std::size_t k = 0; k < mu.size(); ++k)
    if (dist(mu.points[k], ball.center) <= ball.radius) {
      restricted.points.push_back(mu.points[k]);
      restricted.weights.push_back(mu.weights[k]);
    }
  if (restricted.size() < 3)
    throw std::invalid_argument("density_bound_check: ball must contain >= 3 support points");
  double ball_m = restricted.total_mass();
  double lhs = (ball_m / ball.radius) * (ball_m / ball.radius);
  double rhs = curvature_energy(restricted, eps) / ball_m;
  return {lhs, rhs};
}

void to_json(nlohmann::json& j, const EnergyReport& rep) {
  j = nlohmann::json{{"i", rep.i},
                     {"n", rep.n},
                     {"eps", rep.eps},
                     {"lhs", rep.lhs},
                     {"p_eps", rep.p_eps},
                     {"residual", rep.residual},
                     {"growth_constant", rep.growth_constant},
                     {"mass", rep.mass}};
}

void to_json(nlohmann::json& j, const BallStat& b) {
  j = nlohmann::json{{"center", b.center},
                     {"radius", b.radius},
                     {"mass", b.mass},
                     {"theta", b.theta}};
}

}  // namespace czcap
