#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wreath/laurent.hpp"
#include "wreath/seriesring.hpp"
#include "wreath/wigner.hpp"

namespace wreath::molien {

enum class Coset { Gamma0, Gamma1 };

struct NormalizationFailure : std::runtime_error {
  explicit NormalizationFailure(const std::string& what)
      : std::runtime_error(what) {}
};

/// Factor data for det(I - t Dtilde(g))^{-1} on one coset, with the Weyl
/// normalization that turns the torus integral into a constant-term
/// extraction.
struct CosetSpec {
  int ell;          // 1 or 2
  Coset coset;
  int nvars;        // 2 circle variables on Gamma0, 1 on Gamma1
  std::vector<laurent::Factor> scalar_prefactor;  // exponent-free factors
  std::vector<laurent::Factor> circle_factors;
  mpq_class normalization;  // 1/4 on Gamma0, 1/2 on Gamma1

  static CosetSpec make(int ell, Coset coset);
};

/// Molien series coefficients for one coset to the given order.
/// Every coefficient is checked to be a nonnegative integer.
series::TruncatedSeries molien_series(const CosetSpec& spec, int order);

series::TruncatedSeries gamma0_series(int ell, int order);
series::TruncatedSeries gamma1_series(int ell, int order);
/// Arithmetic mean of the two coset series; the whole-group Molien series.
series::TruncatedSeries full_series(int ell, int order);

/// det(I - t Dtilde) for one sampled group element, evaluated two ways:
/// directly on the (2ell+1)^2-dimensional matrix and through the coset's
/// eigenvalue factor list at the sampled rotation angles.  Returns the
/// absolute deviation.
double char_poly_deviation(int ell, Coset coset, const wigner::EulerAngles& g,
                           const wigner::EulerAngles& h, double t);

/// Max deviation over `samples` Haar-sampled pairs (g, h).
double char_poly_check(int ell, Coset coset, int samples, double t,
                       std::uint64_t seed);

/// Irreducible label pair, stored as twice the half-integer values,
/// with twol1 <= twol2.
struct Su2Label {
  int twol1;
  int twol2;
  bool operator==(const Su2Label&) const = default;
};

struct Su2DimRow {
  int dim;
  std::vector<Su2Label> labels;  // empty when no pair projects
};

/// For each n <= max_dim, all (l1, l2) with (2 l1 + 1)(2 l2 + 1) = n and
/// l1 + l2 an integer, listed with l1 <= l2.
std::vector<Su2DimRow> su2_label_table(int max_dim);

}  // namespace wreath::molien
