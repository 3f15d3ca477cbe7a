#pragma once

// Exact rational verification of the combinatorial identities behind the
// kernel Fourier symbols: the binomial-transform identity, the a_nu
// coefficients, the expanded even polynomial p(x1, x2), and the closed-form
// b_2m. Everything here is integer/rational arithmetic; no floating point.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace czcap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(int n);
BigInt binomial(int n, int k);

struct BinomialIdentityCheck {
  Rational lhs;  // sum_{k=0}^m (-1)^k 2^(2k) k! / ((2k+1)! (m-k)!)
  Rational rhs;  // 1 / ((2m+1) m!)
  bool equal = false;
};

// exact check of the binomial-transform identity for a single m (m <= 200)
BinomialIdentityCheck binomial_identity_check(int m);

// a_nu = (2 nu)!/(2^(2 nu) nu!) C(2n-1, 2 nu) (-1)^(n-nu-1) (n-1-nu)!,
// nu = 0..n-1 (n <= 64)
std::vector<Rational> a_coeffs(int n);

// homogeneous even polynomial of degree 2n-2; coeffs[m] multiplies
// x1^(2m) x2^(2(n-1-m))
struct EvenPoly {
  int n = 0;
  std::vector<Rational> coeffs;
};

// expansion of sum_nu a_nu x1^(2(n-nu-1)) (x1^2 + x2^2)^nu
EvenPoly expand_p(int n);

// closed form b_2m = (2n-1)! / (2^(2n) (n-m-1)!) * 1/((2m+1) m!)
Rational b_closed_form(int n, int m);

struct ConsistencyReport {
  int n = 0;
  std::vector<Rational> ratios;  // expand_p(n).coeffs[m] / b_closed_form(n, m)
  bool constant = false;         // all ratios equal and positive
};

// per-m ratio between the direct expansion and the closed form; the two
// routes agree up to one global positive factor, which this measures
ConsistencyReport consistency_report(int n);

std::string to_string(const Rational& r);  // "p/q" (or "p" for integers)

// {"n": ..., "ratios": ["p/q", ...], "constant": bool}
nlohmann::json to_json(const ConsistencyReport& rep);

}  // namespace czcap
