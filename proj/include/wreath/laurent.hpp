#pragma once

#include <gmpxx.h>

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wreath/seriesring.hpp"

namespace wreath::laurent {

struct CapOverflow : std::runtime_error {
  explicit CapOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Per-degree bound on the exponent box of a series coefficient.
using CapPolicy = std::function<int(int degree)>;

CapPolicy uniform_cap(int bound);
/// rate * degree + slack.
CapPolicy linear_cap(int rate, int slack);
/// min(rate * m, rate * (order - m)) + slack.  Exponents outside this bound
/// cannot reach exponent zero with the remaining t-budget when every factor
/// shifts exponents by at most `rate` per power of t, so they are prunable
/// when only the constant term up to `order` is wanted.
CapPolicy midpoint_cap(int rate, int order, int slack);

/// Laurent polynomial in 1 or 2 unit-circle variables, stored as a dense
/// box over exponents with |e_i| <= cap.
class LaurentPoly {
 public:
  LaurentPoly(int nvars, int cap);

  int nvars() const { return nvars_; }
  int cap() const { return cap_; }

  bool in_box(int e1, int e2 = 0) const {
    return std::abs(e1) <= cap_ && std::abs(e2) <= cap_;
  }

  /// Zero outside the box.
  const mpz_class& at(int e1, int e2 = 0) const;
  /// Mutable cell; (e1, e2) must lie inside the box.
  mpz_class& cell(int e1, int e2 = 0);
  const mpz_class& cell(int e1, int e2 = 0) const;

  bool is_zero() const;

  /// Calls f(e1, e2, coefficient) on every nonzero cell.
  template <typename F>
  void for_each_nonzero(F&& f) const {
    const int e2hi = nvars_ == 2 ? cap_ : 0;
    for (int e1 = -cap_; e1 <= cap_; ++e1) {
      for (int e2 = -e2hi; e2 <= e2hi; ++e2) {
        const mpz_class& c = cell(e1, e2);
        if (mpz_sgn(c.get_mpz_t()) != 0) f(e1, e2, c);
      }
    }
  }

 private:
  std::size_t index(int e1, int e2) const {
    const std::size_t side = 2 * static_cast<std::size_t>(cap_) + 1;
    std::size_t i = static_cast<std::size_t>(e1 + cap_);
    if (nvars_ == 2) i = i * side + static_cast<std::size_t>(e2 + cap_);
    return i;
  }

  int nvars_;
  int cap_;
  std::vector<mpz_class> data_;
};

/// One factor (1 - sign * t^tpow * z1^{exps[0]} z2^{exps[1]}).
struct Factor {
  int sign;                 // +1 or -1
  int tpow;                 // >= 1
  std::array<int, 2> exps;  // second entry unused for one variable

  static Factor one_var(int sign, int tpow, int e) {
    return Factor{sign, tpow, {e, 0}};
  }
  static Factor two_var(int sign, int tpow, int e1, int e2) {
    return Factor{sign, tpow, {e1, e2}};
  }
};

/// Power series in t whose degree-m coefficient is a LaurentPoly capped
/// according to the series cap policy.
class LaurentSeries {
 public:
  LaurentSeries(int nvars, int order, CapPolicy policy, int hard_cap = 4096);

  static LaurentSeries one(int nvars, int order, CapPolicy policy,
                           int hard_cap = 4096);

  int nvars() const { return nvars_; }
  int order() const { return order_; }

  const LaurentPoly& coeff(int m) const { return coeffs_.at(m); }
  LaurentPoly& coeff(int m) { return coeffs_.at(m); }

 private:
  int nvars_;
  int order_;
  std::vector<LaurentPoly> coeffs_;
};

/// s / (1 - sign t^a m), by the in-degree recurrence
/// c'_m = c_m + sign * monomial * c'_{m-a}, truncated to the caps.
LaurentSeries divide_by_factor(LaurentSeries s, const Factor& f);

/// Multiplies every coefficient by (2 - z - 1/z) for each circle variable.
/// Coefficient boxes grow by one in each direction.
LaurentSeries multiply_weyl_factor(LaurentSeries s);

/// Exponent-zero coefficient of each t-degree.
series::TruncatedSeries constant_term(const LaurentSeries& s);

}  // namespace wreath::laurent
