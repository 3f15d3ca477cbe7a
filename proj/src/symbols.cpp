#include "czcap/symbols.hpp"

#include <stdexcept>

namespace czcap {

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= (n - k + j);
    r /= j;
  }
  return r;
}

BinomialIdentityCheck binomial_identity_check(int m) {
  if (m < 0 || m > 200)
    throw std::invalid_argument("binomial_identity_check: m must be in [0, 200]");
  BinomialIdentityCheck out;
  for (int k = 0; k <= m; ++k) {
    BigInt num = BigInt(1) << (2 * k);
    num *= factorial(k);
    if (k % 2 == 1) num = -num;
    out.lhs += Rational(num, factorial(2 * k + 1) * factorial(m - k));
  }
  out.rhs = Rational(1, BigInt(2 * m + 1) * factorial(m));
  out.equal = (out.lhs == out.rhs);
  return out;
}

std::vector<Rational> a_coeffs(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("a_coeffs: n must be in [1, 64]");
  std::vector<Rational> a;
  a.reserve(static_cast<std::size_t>(n));
  for (int nu = 0; nu < n; ++nu) {
    Rational v(factorial(2 * nu), BigInt(1) << (2 * nu));
    v /= factorial(nu);
    v *= binomial(2 * n - 1, 2 * nu);
    v *= factorial(n - 1 - nu);
    if ((n - nu - 1) % 2 == 1) v = -v;
    a.push_back(v);
  }
  return a;
}

EvenPoly expand_p(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("expand_p: n must be in [1, 64]");
  std::vector<Rational> a = a_coeffs(n);
  EvenPoly p;
  p.n = n;
  p.coeffs.assign(static_cast<std::size_t>(n), Rational(0));
  // a_nu x1^(2(n-nu-1)) (x1^2+x2^2)^nu -> sum_k C(nu,k) x1^(2(n-nu-1+k)) x2^(2(nu-k))
  for (int nu = 0; nu < n; ++nu)
    for (int k = 0; k <= nu; ++k) {
      int m = n - nu - 1 + k;
      p.coeffs[static_cast<std::size_t>(m)] += a[static_cast<std::size_t>(nu)] * binomial(nu, k);
    }
  return p;
}

Rational b_closed_form(int n, int m) {
  if (n < 1 || n > 64) throw std::invalid_argument("b_closed_form: n must be in [1, 64]");
  if (m < 0 || m > n - 1) throw std::out_of_range("b_closed_form: m must be in [0, n-1]");
  Rational v(factorial(2 * n - 1), BigInt(1) << (2 * n));
  v /= factorial(n - m - 1);
  v /= BigInt(2 * m + 1) * factorial(m);
  return v;
}

ConsistencyReport consistency_report(int n) {
  EvenPoly p = expand_p(n);
  ConsistencyReport rep;
  rep.n = n;
  rep.ratios.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    Rational b = b_closed_form(n, m);
    if (b == 0)
      throw std::logic_error("consistency_report: closed-form coefficient vanished");
    rep.ratios.push_back(p.coeffs[static_cast<std::size_t>(m)] / b);
  }
  rep.constant = true;
  for (const Rational& r : rep.ratios)
    if (r != rep.ratios.front() || !(r > 0)) rep.constant = false;
  return rep;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

nlohmann::json to_json(const ConsistencyReport& rep) {
  nlohmann::json ratios = nlohmann::json::array();
  for (const Rational& r : rep.ratios) ratios.push_back(to_string(r));
  return nlohmann::json{{"n", rep.n}, {"ratios", ratios}, {"constant", rep.constant}};
}

}  // namespace czcap
