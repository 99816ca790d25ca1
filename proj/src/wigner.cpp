#include "wreath/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <vector>

namespace wreath::wigner {

Surd::Surd(int sign, mpq_class radicand)
    : sign_(sign), radicand_(std::move(radicand)) {
  if (radicand_ < 0) throw std::invalid_argument("radicand must be >= 0");
  if (radicand_ == 0) sign_ = 0;
  if (sign_ == 0 && radicand_ != 0) {
    throw std::invalid_argument("sign 0 requires radicand 0");
  }
  if (sign_ != -1 && sign_ != 0 && sign_ != 1) {
    throw std::invalid_argument("sign must be -1, 0 or +1");
  }
  radicand_.canonicalize();
}

Surd Surd::from_rational(const mpq_class& r) {
  const int s = sgn(r);
  return s == 0 ? Surd() : Surd(s, r * r);
}

bool Surd::is_rational() const {
  if (sign_ == 0) return true;
  return mpz_perfect_square_p(radicand_.get_num().get_mpz_t()) &&
         mpz_perfect_square_p(radicand_.get_den().get_mpz_t());
}

mpq_class Surd::rational_value() const {
  if (sign_ == 0) return 0;
  if (!is_rational()) throw std::domain_error("surd is irrational");
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), radicand_.get_num().get_mpz_t());
  mpz_sqrt(den.get_mpz_t(), radicand_.get_den().get_mpz_t());
  mpq_class v(num, den);
  v.canonicalize();
  return sign_ > 0 ? v : mpq_class(-v);
}

double Surd::to_double() const {
  return sign_ * std::sqrt(radicand_.get_d());
}

Surd Surd::operator-() const {
  Surd s = *this;
  s.sign_ = -s.sign_;
  return s;
}

Surd Surd::operator*(const Surd& other) const {
  if (sign_ == 0 || other.sign_ == 0) return Surd();
  return Surd(sign_ * other.sign_, radicand_ * other.radicand_);
}

namespace {

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

bool triangle_ok(int tj1, int tj2, int tj3) {
  return tj3 >= std::abs(tj1 - tj2) && tj3 <= tj1 + tj2 &&
         (tj1 + tj2 + tj3) % 2 == 0;
}

void check_spin_pair(int tj, int tm, const char* what) {
  if (tj < 0) throw InvalidSpin(std::string(what) + ": negative spin");
  if ((tj + tm) % 2 != 0) {
    throw InvalidSpin(std::string(what) + ": j + m is not an integer");
  }
}

}  // namespace

Surd clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj, int tm) {
  check_spin_pair(tj1, tm1, "j1, m1");
  check_spin_pair(tj2, tm2, "j2, m2");
  check_spin_pair(tj, tm, "j, m");

  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm) > tj) {
    return Surd::zero();
  }
  if (tm1 + tm2 != tm) return Surd::zero();
  if (!triangle_ok(tj1, tj2, tj)) return Surd::zero();

  // Integer factorial arguments, guaranteed by the parity checks above.
  const int a = (tj1 + tj2 - tj) / 2;
  const int b = (tj1 - tj2 + tj) / 2;
  const int c = (-tj1 + tj2 + tj) / 2;
  const int j1pm1 = (tj1 + tm1) / 2;
  const int j1mm1 = (tj1 - tm1) / 2;
  const int j2pm2 = (tj2 + tm2) / 2;
  const int j2mm2 = (tj2 - tm2) / 2;
  const int jpm = (tj + tm) / 2;
  const int jmm = (tj - tm) / 2;
  const int jmj2pm1 = (tj - tj2 + tm1) / 2;
  const int jmj1mm2 = (tj - tj1 - tm2) / 2;

  // Racah alternating sum, an exact rational.
  const int kmin = std::max({0, -jmj2pm1, -jmj1mm2});
  const int kmax = std::min({a, j1mm1, j2pm2});
  mpq_class sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    mpz_class den = factorial(k) * factorial(a - k) * factorial(j1mm1 - k) *
                    factorial(j2pm2 - k) * factorial(jmj2pm1 + k) *
                    factorial(jmj1mm2 + k);
    mpq_class term(k % 2 == 0 ? 1 : -1, den);
    term.canonicalize();
    sum += term;
  }
  if (sum == 0) return Surd::zero();

  // Everything under the radical stays rational.
  mpq_class prefactor(mpz_class(tj + 1) * factorial(a) * factorial(b) *
                          factorial(c) * factorial(j1pm1) * factorial(j1mm1) *
                          factorial(j2pm2) * factorial(j2mm2) * factorial(jpm) *
                          factorial(jmm),
                      factorial((tj1 + tj2 + tj) / 2 + 1));
  prefactor.canonicalize();
  return Surd(sgn(sum), sum * sum * prefactor);
}

namespace {

Surd three_j_direct(const ThreeJKey& k) {
  // (-1)^{j1-j2-m3} / sqrt(2 j3 + 1) * <j3 -m3 | j1 m1; j2 m2>
  Surd cg = clebsch_gordan(k.tj1, k.tm1, k.tj2, k.tm2, k.tj3, -k.tm3);
  if (cg.is_zero()) return cg;
  const int tphase = k.tj1 - k.tj2 - k.tm3;  // even for nonzero values
  Surd scaled = cg * Surd::sqrt_of(mpq_class(1, k.tj3 + 1));
  return (tphase / 2) % 2 == 0 ? scaled : -scaled;
}

// Canonical representative of a key under the 12 symmetry images
// (column rotations, column swaps, simultaneous m negation), together
// with the parity exponent of (-1)^{j1+j2+j3} it picks up.
std::pair<ThreeJKey, int> canonicalize(const ThreeJKey& k) {
  struct Col {
    int tj, tm;
  };
  const std::array<Col, 3> cols = {
      Col{k.tj1, k.tm1}, Col{k.tj2, k.tm2}, Col{k.tj3, k.tm3}};
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                       {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  static constexpr int kParity[6] = {0, 0, 0, 1, 1, 1};
  ThreeJKey best = k;
  int best_parity = 0;
  bool first = true;
  for (int p = 0; p < 6; ++p) {
    for (int flip = 0; flip < 2; ++flip) {
      const int sgnm = flip ? -1 : 1;
      ThreeJKey cand{cols[kPerms[p][0]].tj, cols[kPerms[p][1]].tj,
                     cols[kPerms[p][2]].tj, sgnm * cols[kPerms[p][0]].tm,
                     sgnm * cols[kPerms[p][1]].tm,
                     sgnm * cols[kPerms[p][2]].tm};
      const int parity = kParity[p] ^ flip;
      if (first || cand < best) {
        best = cand;
        best_parity = parity;
        first = false;
      }
    }
  }
  return {best, best_parity};
}

std::map<ThreeJKey, Surd> g_three_j_cache;
std::mutex g_three_j_mutex;

}  // namespace

Surd three_j(const ThreeJKey& key) {
  check_spin_pair(key.tj1, key.tm1, "j1, m1");
  check_spin_pair(key.tj2, key.tm2, "j2, m2");
  check_spin_pair(key.tj3, key.tm3, "j3, m3");
  if (key.tm1 + key.tm2 + key.tm3 != 0) return Surd::zero();
  if (!triangle_ok(key.tj1, key.tj2, key.tj3)) return Surd::zero();
  if (std::abs(key.tm1) > key.tj1 || std::abs(key.tm2) > key.tj2 ||
      std::abs(key.tm3) > key.tj3) {
    return Surd::zero();
  }

  const auto [canon, parity] = canonicalize(key);
  const int tJ = key.tj1 + key.tj2 + key.tj3;
  const bool flip_sign = parity == 1 && (tJ / 2) % 2 == 1;

  {
    std::lock_guard<std::mutex> lock(g_three_j_mutex);
    auto it = g_three_j_cache.find(canon);
    if (it != g_three_j_cache.end()) {
      return flip_sign ? -it->second : it->second;
    }
  }
  Surd value = three_j_direct(canon);
  {
    std::lock_guard<std::mutex> lock(g_three_j_mutex);
    g_three_j_cache.emplace(canon, value);
  }
  return flip_sign ? -value : value;
}

namespace {

double dfactorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// d^ell_{mp,m}(beta), Wigner convention matching active zyz rotations.
double little_d(int ell, int mp, int m, double beta) {
  const double c = std::cos(beta / 2);
  const double s = std::sin(beta / 2);
  double sum = 0.0;
  const int kmin = std::max(0, m - mp);
  const int kmax = std::min(ell + m, ell - mp);
  for (int k = kmin; k <= kmax; ++k) {
    const double num = ((mp - m + k) % 2 == 0 ? 1.0 : -1.0) *
                       std::pow(c, 2 * ell + m - mp - 2 * k) *
                       std::pow(s, mp - m + 2 * k);
    const double den = dfactorial(ell + m - k) * dfactorial(k) *
                       dfactorial(ell - k - mp) * dfactorial(k + mp - m);
    sum += num / den;
  }
  return sum * std::sqrt(dfactorial(ell + mp) * dfactorial(ell - mp) *
                         dfactorial(ell + m) * dfactorial(ell - m));
}

}  // namespace

Eigen::MatrixXcd wigner_d_matrix(int ell, const EulerAngles& e) {
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  const int n = 2 * ell + 1;
  Eigen::MatrixXcd d(n, n);
  const std::complex<double> i(0.0, 1.0);
  for (int mp = -ell; mp <= ell; ++mp) {
    for (int m = -ell; m <= ell; ++m) {
      d(mp + ell, m + ell) = std::exp(-i * (mp * e.alpha)) *
                             little_d(ell, mp, m, e.beta) *
                             std::exp(-i * (m * e.gamma));
    }
  }
  return d;
}

Eigen::Matrix3d rotation_matrix(const EulerAngles& e) {
  auto rz = [](double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return r;
  };
  auto ry = [](double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
    return r;
  };
  return rz(e.alpha) * ry(e.beta) * rz(e.gamma);
}

EulerAngles euler_from_rotation(const Eigen::Matrix3d& r) {
  EulerAngles e;
  if (std::abs(r(2, 2)) < 1.0 - 1e-12) {
    e.beta = std::acos(std::clamp(r(2, 2), -1.0, 1.0));
    e.alpha = std::atan2(r(1, 2), r(0, 2));
    e.gamma = std::atan2(r(2, 1), -r(2, 0));
  } else if (r(2, 2) > 0) {
    e.beta = 0.0;
    e.alpha = std::atan2(r(1, 0), r(0, 0));
    e.gamma = 0.0;
  } else {
    e.beta = M_PI;
    e.alpha = std::atan2(-r(1, 0), -r(0, 0));
    e.gamma = 0.0;
  }
  return e;
}

double rotation_angle(const Eigen::Matrix3d& r) {
  return std::acos(std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0));
}

Eigen::MatrixXd cg_matrix(int j1, int j2) {
  const int n = (2 * j1 + 1) * (2 * j2 + 1);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  int row = 0;
  for (int j = std::abs(j1 - j2); j <= j1 + j2; ++j) {
    for (int m = -j; m <= j; ++m, ++row) {
      for (int m1 = -j1; m1 <= j1; ++m1) {
        const int m2 = m - m1;
        if (std::abs(m2) > j2) continue;
        const int col = (m1 + j1) * (2 * j2 + 1) + (m2 + j2);
        c(row, col) =
            clebsch_gordan(2 * j1, 2 * m1, 2 * j2, 2 * m2, 2 * j, 2 * m)
                .to_double();
      }
    }
  }
  return c;
}

double cg_block_check(int j1, int j2, int rotations, std::uint64_t seed) {
  const int n = (2 * j1 + 1) * (2 * j2 + 1);
  const Eigen::MatrixXd c = cg_matrix(j1, j2);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int it = 0; it < rotations; ++it) {
    EulerAngles e{2 * M_PI * unit(rng), std::acos(1.0 - 2.0 * unit(rng)),
                  2 * M_PI * unit(rng)};
    const Eigen::MatrixXcd d1 = wigner_d_matrix(j1, e);
    const Eigen::MatrixXcd d2 = wigner_d_matrix(j2, e);
    Eigen::MatrixXcd kron(n, n);
    for (int a = 0; a < 2 * j1 + 1; ++a) {
      for (int b = 0; b < 2 * j2 + 1; ++b) {
        for (int ap = 0; ap < 2 * j1 + 1; ++ap) {
          for (int bp = 0; bp < 2 * j2 + 1; ++bp) {
            kron(a * (2 * j2 + 1) + b, ap * (2 * j2 + 1) + bp) =
                d1(a, ap) * d2(b, bp);
          }
        }
      }
    }
    Eigen::MatrixXcd lhs = c * kron * c.transpose();
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, n);
    int off = 0;
    for (int j = std::abs(j1 - j2); j <= j1 + j2; ++j) {
      rhs.block(off, off, 2 * j + 1, 2 * j + 1) = wigner_d_matrix(j, e);
      off += 2 * j + 1;
    }
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace wreath::wigner
