#include "wreath/molienweyl.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace wreath::molien {

using laurent::Factor;

CosetSpec CosetSpec::make(int ell, Coset coset) {
  if (ell != 1 && ell != 2) throw std::invalid_argument("ell must be 1 or 2");
  CosetSpec spec;
  spec.ell = ell;
  spec.coset = coset;
  if (coset == Coset::Gamma0) {
    spec.nvars = 2;
    spec.normalization = mpq_class(1, 4);
    for (int j = -ell; j <= ell; ++j) {
      for (int k = -ell; k <= ell; ++k) {
        spec.circle_factors.push_back(Factor::two_var(+1, 1, j, k));
      }
    }
    return spec;
  }

  spec.nvars = 1;
  spec.normalization = mpq_class(1, 2);
  if (ell == 1) {
    // (1-t)^2 (1+t) (1-tv)(1-t/v)(1-t^2 v)(1-t^2/v)
    spec.scalar_prefactor = {Factor::one_var(+1, 1, 0),
                             Factor::one_var(+1, 1, 0),
                             Factor::one_var(-1, 1, 0)};
    spec.circle_factors = {Factor::one_var(+1, 1, +1),
                           Factor::one_var(+1, 1, -1),
                           Factor::one_var(+1, 2, +1),
                           Factor::one_var(+1, 2, -1)};
  } else {
    // (1-t)^3 (1+t)^2 (1-t^2 v)^2 (1-t^2/v)^2 (1-tv)^2 (1-t/v)^2
    // (1+tv)(1+t/v)(1-tv^2)(1-t/v^2)(1-t^2 v^3)(1-t^2/v^3)
    spec.scalar_prefactor = {
        Factor::one_var(+1, 1, 0), Factor::one_var(+1, 1, 0),
        Factor::one_var(+1, 1, 0), Factor::one_var(-1, 1, 0),
        Factor::one_var(-1, 1, 0)};
    spec.circle_factors = {
        Factor::one_var(+1, 2, +1), Factor::one_var(+1, 2, +1),
        Factor::one_var(+1, 2, -1), Factor::one_var(+1, 2, -1),
        Factor::one_var(+1, 1, +1), Factor::one_var(+1, 1, +1),
        Factor::one_var(+1, 1, -1), Factor::one_var(+1, 1, -1),
        Factor::one_var(-1, 1, +1), Factor::one_var(-1, 1, -1),
        Factor::one_var(+1, 1, +2), Factor::one_var(+1, 1, -2),
        Factor::one_var(+1, 2, +3), Factor::one_var(+1, 2, -3)};
  }
  return spec;
}

series::TruncatedSeries molien_series(const CosetSpec& spec, int order) {
  // Every factor shifts exponents by at most ell per power of t, so
  // entries beyond ell*(order - m) can never reach exponent zero and the
  // midpoint cap is lossless for the constant term.
  auto s = laurent::LaurentSeries::one(
      spec.nvars, order, laurent::midpoint_cap(spec.ell, order, 2));
  for (const Factor& f : spec.scalar_prefactor) {
    s = laurent::divide_by_factor(std::move(s), f);
  }
  for (const Factor& f : spec.circle_factors) {
    s = laurent::divide_by_factor(std::move(s), f);
  }
  s = laurent::multiply_weyl_factor(std::move(s));
  series::TruncatedSeries ct = laurent::constant_term(s);

  series::TruncatedSeries out(order);
  for (int m = 0; m <= order; ++m) {
    mpq_class v = ct[m] * spec.normalization;
    if (v.get_den() != 1 || v < 0) {
      throw NormalizationFailure("coefficient of t^" + std::to_string(m) +
                                 " is " + v.get_str() +
                                 ", expected a nonnegative integer");
    }
    out[m] = v;
  }
  return out;
}

series::TruncatedSeries gamma0_series(int ell, int order) {
  return molien_series(CosetSpec::make(ell, Coset::Gamma0), order);
}

series::TruncatedSeries gamma1_series(int ell, int order) {
  return molien_series(CosetSpec::make(ell, Coset::Gamma1), order);
}

series::TruncatedSeries full_series(int ell, int order) {
  const series::TruncatedSeries g0 = gamma0_series(ell, order);
  const series::TruncatedSeries g1 = gamma1_series(ell, order);
  series::TruncatedSeries out(order);
  for (int m = 0; m <= order; ++m) {
    mpq_class v = (g0[m] + g1[m]) / 2;
    if (v.get_den() != 1) {
      throw NormalizationFailure("mean coefficient of t^" + std::to_string(m) +
                                 " is " + v.get_str() + ", not an integer");
    }
    out[m] = v;
  }
  return out;
}

namespace {

using Cplx = std::complex<double>;

int vec_index(int m, int mp, int ell) {
  return (m + ell) * (2 * ell + 1) + (mp + ell);
}

// Matrix of S -> D(g) S D(h)^dagger on the (2ell+1)^2-dimensional space.
Eigen::MatrixXcd pair_action_matrix(int ell, const Eigen::MatrixXcd& dg,
                                    const Eigen::MatrixXcd& dh) {
  const int n = (2 * ell + 1) * (2 * ell + 1);
  Eigen::MatrixXcd out(n, n);
  for (int m = -ell; m <= ell; ++m) {
    for (int mp = -ell; mp <= ell; ++mp) {
      for (int mu = -ell; mu <= ell; ++mu) {
        for (int mup = -ell; mup <= ell; ++mup) {
          out(vec_index(m, mp, ell), vec_index(mu, mup, ell)) =
              dg(m + ell, mu + ell) * std::conj(dh(mp + ell, mup + ell));
        }
      }
    }
  }
  return out;
}

// Matrix of S -> D(g) (tau S) D(h)^dagger, where
// (tau S)_{m m'} = (-1)^{m+m'} S_{-m',-m}.
Eigen::MatrixXcd tau_action_matrix(int ell, const Eigen::MatrixXcd& dg,
                                   const Eigen::MatrixXcd& dh) {
  const int n = (2 * ell + 1) * (2 * ell + 1);
  Eigen::MatrixXcd out(n, n);
  for (int m = -ell; m <= ell; ++m) {
    for (int mp = -ell; mp <= ell; ++mp) {
      for (int nu = -ell; nu <= ell; ++nu) {
        for (int nup = -ell; nup <= ell; ++nup) {
          const double sign = ((nu + nup) % 2 == 0) ? 1.0 : -1.0;
          out(vec_index(m, mp, ell), vec_index(nu, nup, ell)) =
              sign * dg(m + ell, -nup + ell) *
              std::conj(dh(mp + ell, -nu + ell));
        }
      }
    }
  }
  return out;
}

Cplx factor_product(const CosetSpec& spec, double t, double theta,
                    double phi) {
  Cplx prod = 1.0;
  const Cplx i(0.0, 1.0);
  for (const Factor& f : spec.scalar_prefactor) {
    prod *= 1.0 - static_cast<double>(f.sign) * std::pow(t, f.tpow);
  }
  for (const Factor& f : spec.circle_factors) {
    Cplx mono = std::exp(i * (f.exps[0] * theta));
    if (spec.nvars == 2) mono *= std::exp(i * (f.exps[1] * phi));
    prod *= 1.0 - static_cast<double>(f.sign) * std::pow(t, f.tpow) * mono;
  }
  return prod;
}

}  // namespace

double char_poly_deviation(int ell, Coset coset, const wigner::EulerAngles& g,
                           const wigner::EulerAngles& h, double t) {
  const CosetSpec spec = CosetSpec::make(ell, coset);
  const Eigen::MatrixXcd dg = wigner::wigner_d_matrix(ell, g);
  const Eigen::MatrixXcd dh = wigner::wigner_d_matrix(ell, h);
  const Eigen::MatrixXcd action = coset == Coset::Gamma0
                                      ? pair_action_matrix(ell, dg, dh)
                                      : tau_action_matrix(ell, dg, dh);
  const int n = static_cast<int>(action.rows());
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) - t * action;
  const Cplx direct = m.fullPivLu().determinant();

  const Eigen::Matrix3d rg = wigner::rotation_matrix(g);
  const Eigen::Matrix3d rh = wigner::rotation_matrix(h);
  Cplx expected;
  if (coset == Coset::Gamma0) {
    expected = factor_product(spec, t, wigner::rotation_angle(rg),
                              wigner::rotation_angle(rh));
  } else {
    // The factor list depends only on the rotation angle of the product gh.
    expected =
        factor_product(spec, t, wigner::rotation_angle(rg * rh), 0.0);
  }
  return std::abs(direct - expected);
}

double char_poly_check(int ell, Coset coset, int samples, double t,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sample_euler = [&]() {
    return wigner::EulerAngles{2 * M_PI * unit(rng),
                               std::acos(1.0 - 2.0 * unit(rng)),
                               2 * M_PI * unit(rng)};
  };
  double worst = 0.0;
  for (int it = 0; it < samples; ++it) {
    const wigner::EulerAngles g = sample_euler();
    const wigner::EulerAngles h = sample_euler();
    worst = std::max(worst, char_poly_deviation(ell, coset, g, h, t));
  }
  return worst;
}

std::vector<Su2DimRow> su2_label_table(int max_dim) {
  if (max_dim < 1) throw std::invalid_argument("max_dim must be >= 1");
  std::vector<Su2DimRow> table;
  table.reserve(max_dim);
  for (int n = 1; n <= max_dim; ++n) {
    Su2DimRow row{n, {}};
    for (int a = 1; a * a <= n; ++a) {
      if (n % a != 0) continue;
      const int b = n / a;
      // dims a = 2 l1 + 1, b = 2 l2 + 1; l1 + l2 integral iff a + b even.
      if ((a + b) % 2 != 0) continue;
      row.labels.push_back(Su2Label{a - 1, b - 1});
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace wreath::molien
