#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "wreath/seriesring.hpp"

using namespace wreath::series;

namespace {

TruncatedSeries from_ints(const std::vector<long>& v) {
  TruncatedSeries s(static_cast<int>(v.size()) - 1);
  for (std::size_t i = 0; i < v.size(); ++i) s[static_cast<int>(i)] = v[i];
  return s;
}

// Plain convolution, independent of series_mul.
std::vector<mpq_class> convolve(const std::vector<mpq_class>& a,
                                const std::vector<mpq_class>& b, int order) {
  std::vector<mpq_class> out(order + 1);
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("series_mul on small examples") {
  const TruncatedSeries a = from_ints({1, 1, 0});
  const TruncatedSeries b = from_ints({1, -1, 0});
  const TruncatedSeries prod = series_mul(a, b);
  CHECK(prod[0] == 1);
  CHECK(prod[1] == 0);
  CHECK(prod[2] == -1);

  const TruncatedSeries s = from_ints({3, 1, 4, 1, 5});
  CHECK(series_mul(TruncatedSeries::one(4), s) == s);
}

TEST_CASE("series_mul matches direct convolution") {
  // geometric series times (1 - t) collapses to 1
  TruncatedSeries geo(5);
  for (int m = 0; m <= 5; ++m) geo[m] = 1;
  const TruncatedSeries one_minus_t = from_ints({1, -1, 0, 0, 0, 0});
  const TruncatedSeries prod = series_mul(geo, one_minus_t);
  for (int m = 0; m <= 5; ++m) CHECK(prod[m] == (m == 0 ? 1 : 0));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int rep = 0; rep < 20; ++rep) {
    TruncatedSeries x(8), y(8);
    std::vector<mpq_class> xv(9), yv(9);
    for (int m = 0; m <= 8; ++m) {
      xv[m] = coeff(rng);
      yv[m] = coeff(rng);
      x[m] = xv[m];
      y[m] = yv[m];
    }
    const TruncatedSeries prod2 = series_mul(x, y);
    const auto expect = convolve(xv, yv, 8);
    for (int m = 0; m <= 8; ++m) CHECK(prod2[m] == expect[m]);
  }
}

TEST_CASE("expand_reciprocal_denominator") {
  SUBCASE("degrees 2,3,4 reproduce the ell=1 reference series") {
    const auto golden = read_coefficients(data_file("molien_ell1.txt"));
    const auto s =
        expand_reciprocal_denominator(CyclotomicDenominator({2, 3, 4}), 12);
    const auto coeffs = s.integer_coefficients();
    REQUIRE(coeffs.size() == golden.size());
    for (std::size_t i = 0; i < golden.size(); ++i) {
      CHECK(coeffs[i] == golden[i]);
    }
  }
  SUBCASE("empty product is 1") {
    const auto s = expand_reciprocal_denominator(CyclotomicDenominator{}, 4);
    for (int m = 0; m <= 4; ++m) CHECK(s[m] == (m == 0 ? 1 : 0));
  }
  SUBCASE("1/(1-t)^2 is the binomial expansion") {
    const auto s =
        expand_reciprocal_denominator(CyclotomicDenominator({1, 1}), 4);
    for (int m = 0; m <= 4; ++m) CHECK(s[m] == m + 1);
  }
}

TEST_CASE("reconstruct_numerator") {
  SUBCASE("1/(1-t) has numerator 1") {
    const auto s =
        expand_reciprocal_denominator(CyclotomicDenominator({1}), 10);
    const auto p = reconstruct_numerator(s, CyclotomicDenominator({1}), 0);
    CHECK(p.degree() == 0);
    CHECK(p.coeff(0) == 1);
  }
  SUBCASE("numerator with several terms survives a round trip") {
    const CyclotomicDenominator q({2, 3, 3, 5});
    const IntPolynomial p({mpz_class(1), mpz_class(0), mpz_class(2),
                           mpz_class(-1), mpz_class(4)});
    auto s = expand_reciprocal_denominator(q, 30);
    // multiply the expansion by p
    TruncatedSeries ps(30);
    for (int m = 0; m <= 30; ++m) {
      for (int k = 0; k <= p.degree() && k <= m; ++k) {
        ps[m] += mpq_class(p.coeff(k)) * s[m - k];
      }
    }
    CHECK(reconstruct_numerator(ps, q, 4) == p);
  }
  SUBCASE("wrong denominator leaves a tail") {
    const auto s =
        expand_reciprocal_denominator(CyclotomicDenominator({2, 3}), 20);
    CHECK_THROWS_AS(reconstruct_numerator(s, CyclotomicDenominator({2}), 3),
                    NonvanishingTail);
  }
  SUBCASE("fractional series is rejected") {
    TruncatedSeries s(10);
    s[0] = 1;
    s[3] = mpq_class(1, 2);
    CHECK_THROWS_AS(reconstruct_numerator(s, CyclotomicDenominator({2}), 4),
                    NonIntegralCoefficient);
  }
  SUBCASE("insufficient slack is rejected") {
    const auto s =
        expand_reciprocal_denominator(CyclotomicDenominator({2}), 6);
    CHECK_THROWS_AS(reconstruct_numerator(s, CyclotomicDenominator({2}), 3),
                    std::invalid_argument);
  }
}

TEST_CASE("expand and reconstruct are mutually inverse on random input") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> deg(1, 6);
  std::uniform_int_distribution<int> nfac(1, 4);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<int> degrees;
    for (int i = 0, n = nfac(rng); i < n; ++i) degrees.push_back(deg(rng));
    const CyclotomicDenominator q(degrees);
    const int order = 40;
    const auto s = expand_reciprocal_denominator(q, order);
    // multiplying back by the product must give exactly 1
    const auto p = reconstruct_numerator(s, q, 0);
    CHECK(p.degree() == 0);
    CHECK(p.coeff(0) == 1);
  }
}

TEST_CASE("palindromicity of the published numerators") {
  const IntPolynomial p0(read_coefficients(data_file("p0_coefficients.txt")));
  const IntPolynomial p1(read_coefficients(data_file("p1_coefficients.txt")));
  REQUIRE(p0.degree() == 113);
  REQUIRE(p1.degree() == 113);
  CHECK(is_palindromic(p0, +1));
  CHECK_FALSE(is_palindromic(p0, -1));
  CHECK(is_palindromic(p1, -1));
  CHECK_FALSE(is_palindromic(p1, +1));

  const IntPolynomial not_pal({mpz_class(1), mpz_class(2)});
  CHECK_FALSE(is_palindromic(not_pal, +1));
}

TEST_CASE("eval_at_one") {
  CHECK(eval_at_one(IntPolynomial{}) == 0);
  const IntPolynomial p0(read_coefficients(data_file("p0_coefficients.txt")));
  const IntPolynomial p1(read_coefficients(data_file("p1_coefficients.txt")));
  CHECK(eval_at_one(p0) == mpz_class("2907852096"));
  // antipalindromic of odd degree, so the coefficients cancel in pairs
  CHECK(eval_at_one(p1) == 0);
}

TEST_CASE("CyclotomicDenominator bookkeeping") {
  const CyclotomicDenominator q(
      {2, 3, 4, 4, 4, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 12, 13});
  CHECK(q.factor_count() == 19);
  CHECK(q.total_degree() == 138);
}
