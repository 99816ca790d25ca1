#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wreath::series {

/// Truncated power series in t with exact rational coefficients,
/// indexed by degree 0..order (inclusive).
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order) : order_(order), coeffs_(order + 1) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
  }

  static TruncatedSeries one(int order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = 1;
    return s;
  }

  int order() const { return order_; }

  mpq_class& operator[](int m) { return coeffs_.at(m); }
  const mpq_class& operator[](int m) const { return coeffs_.at(m); }

  bool operator==(const TruncatedSeries& other) const = default;

  /// All coefficients must be integers; throws otherwise.
  std::vector<mpz_class> integer_coefficients() const;

 private:
  int order_;
  std::vector<mpq_class> coeffs_;
};

/// Dense integer polynomial; empty coefficient list is the zero polynomial.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);

  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of t^k; zero outside the stored range.
  const mpz_class& coeff(int k) const;

  const std::vector<mpz_class>& coefficients() const { return coeffs_; }

  bool operator==(const IntPolynomial& other) const = default;

 private:
  std::vector<mpz_class> coeffs_;  // trimmed, leading coefficient nonzero
};

/// Product of factors (1 - t^d)^mult, kept as a sorted (d, mult) list.
class CyclotomicDenominator {
 public:
  CyclotomicDenominator() = default;
  /// Degrees may repeat; they are merged into multiplicities.
  explicit CyclotomicDenominator(const std::vector<int>& degrees);

  const std::vector<std::pair<int, int>>& factors() const { return factors_; }
  /// Number of factors counted with multiplicity.
  int factor_count() const;
  /// Degree of the expanded product.
  int total_degree() const;

 private:
  std::vector<std::pair<int, int>> factors_;
};

struct NonIntegralCoefficient : std::runtime_error {
  explicit NonIntegralCoefficient(const std::string& what)
      : std::runtime_error(what) {}
};

struct NonvanishingTail : std::runtime_error {
  explicit NonvanishingTail(const std::string& what)
      : std::runtime_error(what) {}
};

/// Cauchy product truncated at min(a.order, b.order). Exact.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Taylor expansion of 1 / prod (1 - t^d)^mult to the given order.
TruncatedSeries expand_reciprocal_denominator(const CyclotomicDenominator& q,
                                              int order);

/// Multiplies s by prod (1 - t^d)^mult and checks that the result is an
/// integer polynomial of degree <= expected_deg, with every coefficient
/// above expected_deg vanishing up to s.order.
/// Requires s.order >= expected_deg + 5 so the tail check has teeth.
IntPolynomial reconstruct_numerator(const TruncatedSeries& s,
                                    const CyclotomicDenominator& q,
                                    int expected_deg);

/// coeff[k] == sign * coeff[deg-k] for all k.  sign is +1 or -1.
bool is_palindromic(const IntPolynomial& p, int sign);

/// Exact sum of coefficients.
mpz_class eval_at_one(const IntPolynomial& p);

}  // namespace wreath::series
