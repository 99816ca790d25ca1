#include <doctest.h>

#include <map>
#include <random>

#include "wreath/laurent.hpp"

using namespace wreath::laurent;
using wreath::series::TruncatedSeries;

namespace {

// Multiplication by (1 - sign t^a m), the inverse of divide_by_factor,
// written directly against the public cell accessors.
LaurentSeries multiply_by_factor(const LaurentSeries& s, const Factor& f) {
  LaurentSeries out = s;
  for (int m = s.order(); m >= f.tpow; --m) {
    LaurentPoly& dst = out.coeff(m);
    const LaurentPoly& src = s.coeff(m - f.tpow);
    src.for_each_nonzero([&](int e1, int e2, const mpz_class& c) {
      const int t1 = e1 + f.exps[0];
      const int t2 = e2 + f.exps[1];
      if (!dst.in_box(t1, t2)) return;
      if (f.sign > 0) {
        dst.cell(t1, t2) -= c;
      } else {
        dst.cell(t1, t2) += c;
      }
    });
  }
  return out;
}

bool equal_series(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.order() != b.order() || a.nvars() != b.nvars()) return false;
  for (int m = 0; m <= a.order(); ++m) {
    const int cap = std::max(a.coeff(m).cap(), b.coeff(m).cap());
    const int e2hi = a.nvars() == 2 ? cap : 0;
    for (int e1 = -cap; e1 <= cap; ++e1) {
      for (int e2 = -e2hi; e2 <= e2hi; ++e2) {
        if (a.coeff(m).at(e1, e2) != b.coeff(m).at(e1, e2)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("divide_by_factor geometric expansions") {
  SUBCASE("1/(1 - t z)") {
    auto s = LaurentSeries::one(1, 3, linear_cap(1, 1));
    s = divide_by_factor(std::move(s), Factor::one_var(+1, 1, 1));
    for (int m = 0; m <= 3; ++m) {
      CHECK(s.coeff(m).at(m) == 1);
      CHECK(s.coeff(m).at(m - 1) == 0);
    }
  }
  SUBCASE("1/(1 + t)") {
    auto s = LaurentSeries::one(1, 2, uniform_cap(1));
    s = divide_by_factor(std::move(s), Factor::one_var(-1, 1, 0));
    CHECK(s.coeff(0).at(0) == 1);
    CHECK(s.coeff(1).at(0) == -1);
    CHECK(s.coeff(2).at(0) == 1);
  }
  SUBCASE("1/((1 - t z)(1 - t/z)) degree 2 by hand convolution") {
    auto s = LaurentSeries::one(1, 2, linear_cap(1, 1));
    s = divide_by_factor(std::move(s), Factor::one_var(+1, 1, +1));
    s = divide_by_factor(std::move(s), Factor::one_var(+1, 1, -1));
    CHECK(s.coeff(2).at(2) == 1);
    CHECK(s.coeff(2).at(0) == 1);
    CHECK(s.coeff(2).at(-2) == 1);
    CHECK(s.coeff(2).at(1) == 0);
    CHECK(s.coeff(2).at(-1) == 0);
  }
}

TEST_CASE("multiply_weyl_factor stencils") {
  SUBCASE("one circle on the constant") {
    auto s = LaurentSeries::one(1, 0, uniform_cap(0));
    s = multiply_weyl_factor(std::move(s));
    CHECK(s.coeff(0).at(0) == 2);
    CHECK(s.coeff(0).at(1) == -1);
    CHECK(s.coeff(0).at(-1) == -1);
  }
  SUBCASE("one circle on z") {
    LaurentSeries s(1, 0, uniform_cap(1));
    s.coeff(0).cell(1) = 1;
    s = multiply_weyl_factor(std::move(s));
    CHECK(s.coeff(0).at(0) == -1);
    CHECK(s.coeff(0).at(1) == 2);
    CHECK(s.coeff(0).at(2) == -1);
  }
  SUBCASE("two circles on the constant") {
    auto s = LaurentSeries::one(2, 0, uniform_cap(0));
    s = multiply_weyl_factor(std::move(s));
    CHECK(s.coeff(0).at(0, 0) == 4);
    CHECK(s.coeff(0).at(1, 0) == -2);
    CHECK(s.coeff(0).at(0, -1) == -2);
    CHECK(s.coeff(0).at(1, 1) == 1);
    CHECK(s.coeff(0).at(-1, 1) == 1);
  }
}

TEST_CASE("constant_term extraction") {
  SUBCASE("picks the exponent-zero cell") {
    LaurentSeries s(1, 2, uniform_cap(2));
    s.coeff(0).cell(0) = 1;
    s.coeff(1).cell(1) = 1;
    s.coeff(2).cell(0) = 3;
    s.coeff(2).cell(2) = 1;
    const TruncatedSeries ct = constant_term(s);
    CHECK(ct[0] == 1);
    CHECK(ct[1] == 0);
    CHECK(ct[2] == 3);
  }
  SUBCASE("1/((1 - t z)(1 - t/z)) counts balanced pairs") {
    auto s = LaurentSeries::one(1, 4, linear_cap(1, 1));
    s = divide_by_factor(std::move(s), Factor::one_var(+1, 1, +1));
    s = divide_by_factor(std::move(s), Factor::one_var(+1, 1, -1));
    const TruncatedSeries ct = constant_term(s);
    for (int m = 0; m <= 4; ++m) CHECK(ct[m] == (m % 2 == 0 ? 1 : 0));
  }
  SUBCASE("single-rotation average of degree-2 monomials in five weights") {
    // brute force: h_2 over weights -2..2, then the weighted constant term
    std::map<int, long> h2;
    for (int a = -2; a <= 2; ++a) {
      for (int b = a; b <= 2; ++b) ++h2[a + b];
    }
    long expect = 2 * h2[0] - h2[1] - h2[-1];
    CHECK(expect == 2);

    auto s = LaurentSeries::one(1, 2, linear_cap(2, 2));
    for (int j = -2; j <= 2; ++j) {
      s = divide_by_factor(std::move(s), Factor::one_var(+1, 1, j));
    }
    s = multiply_weyl_factor(std::move(s));
    CHECK(constant_term(s)[2] == expect);
  }
}

TEST_CASE("divide then multiply back is the identity up to truncation") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> sign01(0, 1);
  std::uniform_int_distribution<int> tpow(1, 2);
  std::uniform_int_distribution<int> shift(-2, 2);
  for (int rep = 0; rep < 10; ++rep) {
    const int nvars = 1 + sign01(rng);
    std::vector<Factor> factors;
    for (int i = 0; i < 3; ++i) {
      factors.push_back(Factor{sign01(rng) ? 1 : -1,
                               tpow(rng),
                               {shift(rng), nvars == 2 ? shift(rng) : 0}});
    }
    // generous caps so nothing is clipped and the round trip is exact
    auto start = LaurentSeries::one(nvars, 6, linear_cap(4, 2));
    auto s = start;
    for (const Factor& f : factors) s = divide_by_factor(std::move(s), f);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      s = multiply_by_factor(s, *it);
    }
    CHECK(equal_series(s, start));
  }
}

TEST_CASE("factor order does not change the product") {
  const std::vector<Factor> factors = {
      Factor::two_var(+1, 1, 1, 0), Factor::two_var(-1, 1, 0, 1),
      Factor::two_var(+1, 2, -1, 1), Factor::two_var(+1, 1, 2, -2)};
  auto a = LaurentSeries::one(2, 5, linear_cap(2, 2));
  for (const Factor& f : factors) a = divide_by_factor(std::move(a), f);
  auto b = LaurentSeries::one(2, 5, linear_cap(2, 2));
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    b = divide_by_factor(std::move(b), *it);
  }
  CHECK(equal_series(a, b));
}

TEST_CASE("midpoint pruning preserves the constant term") {
  const int order = 8;
  auto run = [&](CapPolicy policy) {
    auto s = LaurentSeries::one(2, order, std::move(policy));
    for (int j = -2; j <= 2; ++j) {
      for (int k = -2; k <= 2; ++k) {
        s = divide_by_factor(std::move(s), Factor::two_var(+1, 1, j, k));
      }
    }
    s = multiply_weyl_factor(std::move(s));
    return constant_term(s);
  };
  const TruncatedSeries pruned = run(midpoint_cap(2, order, 2));
  const TruncatedSeries full = run(linear_cap(2, 2));
  for (int m = 0; m <= order; ++m) CHECK(pruned[m] == full[m]);
}

TEST_CASE("support of the pair-action product stays within |e| <= ell*m") {
  for (int ell : {1, 2}) {
    const int order = 6;
    auto s = LaurentSeries::one(2, order, linear_cap(ell, 2));
    for (int j = -ell; j <= ell; ++j) {
      for (int k = -ell; k <= ell; ++k) {
        s = divide_by_factor(std::move(s), Factor::two_var(+1, 1, j, k));
      }
    }
    for (int m = 0; m <= order; ++m) {
      s.coeff(m).for_each_nonzero([&](int e1, int e2, const mpz_class&) {
        CHECK(std::abs(e1) <= ell * m);
        CHECK(std::abs(e2) <= ell * m);
      });
    }
  }
}

TEST_CASE("cap policy exceeding the hard cap is rejected") {
  CHECK_THROWS_AS(LaurentSeries(1, 10, linear_cap(100, 0), 500), CapOverflow);
  CHECK_NOTHROW(LaurentSeries(1, 10, linear_cap(100, 0), 2000));
}
