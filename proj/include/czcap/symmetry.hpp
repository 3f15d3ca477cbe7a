#pragma once

// Triple-wise quantities: Menger curvature, permutation sums of the kernels,
// the closed-form identity for the odd-power permutation at (0, z, w), and
// comparability ratio scans.
//
// All triple-wise values are computed in double-double arithmetic: the sums
// cancel to O(area^2) near collinear triples and plain doubles would not meet
// the 1e-9 .. 1e-12 tolerances the scans are verified at.

#include <cstdint>

#include "czcap/dd.hpp"
#include "czcap/geometry.hpp"
#include "czcap/kernels.hpp"

namespace czcap {

struct Triple {
  Point z1, z2, z3;
};

// relative degeneracy threshold: triples with min pairwise distance below
// 1e-12 x max pairwise distance are rejected as numerically meaningless
inline constexpr double kTripleDegeneracy = 1e-12;

bool triple_degenerate(const Triple& t);
// throws std::domain_error when the triple is degenerate
void require_valid(const Triple& t);

double min_pairwise_dist(const Triple& t);

// Menger curvature c = 4 Area / (|z1-z2| |z1-z3| |z2-z3|); 0 for collinear
double menger(const Triple& t);
// c^2 without the square root, the quantity the scans actually compare
dd menger_sq_dd(const Triple& t);

// 3-term permutation sum K(z1-z2)K(z1-z3) + K(z2-z1)K(z2-z3) + K(z3-z1)K(z3-z2);
// requires spec.delta == 0
double perm(const KernelSpec& spec, const Triple& t);
dd perm_dd(const KernelSpec& spec, const Triple& t);

// closed form for the odd-power i=1 permutation at the triple (0, z, w),
// via the cubic forms F_k; agrees with perm() up to roundoff
double perm_via_identity(int n, const Point& z, const Point& w);

struct RatioScanReport {
  int n = 1;
  std::uint64_t samples = 0;        // requested sample count
  double min_ratio = 0.0;           // extremes of (p1 + p2)/c^2
  double max_ratio = 0.0;
  Triple argmin;
  Triple argmax;
  std::uint64_t negative_count = 0; // triples with some p_i < -1e-12 (scaled)
};

// draws `samples` triples uniformly in the axis square [corner, corner+side]^2
// from the counter-based stream of `seed`, skips degenerate ones, and records
// the (p1+p2)/c^2 extremes for the odd-power kernels of power n
RatioScanReport ratio_scan(int n, std::uint64_t samples, std::uint64_t seed,
                           Point box_corner, double box_side);

// header + one row per report: n, samples, extremes, witness coordinates
std::string ratio_scan_csv_header();
std::string ratio_scan_csv_row(const RatioScanReport& r);

}  // namespace czcap
