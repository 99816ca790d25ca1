#include "wreath/seriesring.hpp"

#include <algorithm>
#include <map>

namespace wreath::series {

std::vector<mpz_class> TruncatedSeries::integer_coefficients() const {
  std::vector<mpz_class> out;
  out.reserve(coeffs_.size());
  for (int m = 0; m <= order_; ++m) {
    const mpq_class& c = coeffs_[m];
    if (c.get_den() != 1) {
      throw NonIntegralCoefficient("coefficient of t^" + std::to_string(m) +
                                   " is " + c.get_str());
    }
    out.push_back(c.get_num());
  }
  return out;
}

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& IntPolynomial::coeff(int k) const {
  static const mpz_class zero = 0;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
  return coeffs_[k];
}

CyclotomicDenominator::CyclotomicDenominator(const std::vector<int>& degrees) {
  std::map<int, int> mult;
  for (int d : degrees) {
    if (d <= 0) throw std::invalid_argument("factor degree must be positive");
    ++mult[d];
  }
  factors_.assign(mult.begin(), mult.end());
}

int CyclotomicDenominator::factor_count() const {
  int n = 0;
  for (const auto& [d, mult] : factors_) n += mult;
  return n;
}

int CyclotomicDenominator::total_degree() const {
  int n = 0;
  for (const auto& [d, mult] : factors_) n += d * mult;
  return n;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int order = std::min(a.order(), b.order());
  TruncatedSeries out(order);
  for (int i = 0; i <= order; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

TruncatedSeries expand_reciprocal_denominator(const CyclotomicDenominator& q,
                                              int order) {
  TruncatedSeries s = TruncatedSeries::one(order);
  // 1/(1-t^d): c[m] += c[m-d], ascending m, once per multiplicity.
  for (const auto& [d, mult] : q.factors()) {
    for (int rep = 0; rep < mult; ++rep) {
      for (int m = d; m <= order; ++m) s[m] += s[m - d];
    }
  }
  return s;
}

IntPolynomial reconstruct_numerator(const TruncatedSeries& s,
                                    const CyclotomicDenominator& q,
                                    int expected_deg) {
  constexpr int kMinSlack = 5;
  if (expected_deg < 0) throw std::invalid_argument("expected_deg must be >= 0");
  if (s.order() < expected_deg + kMinSlack) {
    throw std::invalid_argument(
        "series order " + std::to_string(s.order()) +
        " leaves no slack above expected degree " +
        std::to_string(expected_deg));
  }

  // P = s * prod (1-t^d)^mult: c[m] -= c[m-d], descending m.
  std::vector<mpq_class> c(s.order() + 1);
  for (int m = 0; m <= s.order(); ++m) c[m] = s[m];
  for (const auto& [d, mult] : q.factors()) {
    for (int rep = 0; rep < mult; ++rep) {
      for (int m = s.order(); m >= d; --m) c[m] -= c[m - d];
    }
  }

  std::vector<mpz_class> coeffs;
  coeffs.reserve(expected_deg + 1);
  for (int m = 0; m <= s.order(); ++m) {
    if (c[m].get_den() != 1) {
      throw NonIntegralCoefficient("numerator coefficient of t^" +
                                   std::to_string(m) + " is " +
                                   c[m].get_str());
    }
    if (m > expected_deg) {
      if (c[m] != 0) {
        throw NonvanishingTail("numerator has nonzero coefficient " +
                               c[m].get_str() + " at degree " +
                               std::to_string(m));
      }
    } else {
      coeffs.push_back(c[m].get_num());
    }
  }
  return IntPolynomial(std::move(coeffs));
}

bool is_palindromic(const IntPolynomial& p, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  const int deg = p.degree();
  for (int k = 0; 2 * k <= deg; ++k) {
    if (p.coeff(k) != sign * p.coeff(deg - k)) return false;
  }
  return true;
}

mpz_class eval_at_one(const IntPolynomial& p) {
  mpz_class sum = 0;
  for (const mpz_class& c : p.coefficients()) sum += c;
  return sum;
}

}  // namespace wreath::series
