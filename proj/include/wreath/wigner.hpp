#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace wreath::wigner {

/// Exact value of the form sign * sqrt(radicand) with radicand a
/// nonnegative rational.  Closed under negation and multiplication;
/// sums of unlike surds are evaluated in floating point by callers.
class Surd {
 public:
  Surd() : sign_(0), radicand_(0) {}
  Surd(int sign, mpq_class radicand);

  static Surd zero() { return Surd(); }
  static Surd sqrt_of(const mpq_class& radicand) { return Surd(1, radicand); }
  /// Exact rational r as a surd: sign(r) * sqrt(r^2).
  static Surd from_rational(const mpq_class& r);

  int sign() const { return sign_; }
  const mpq_class& radicand() const { return radicand_; }
  bool is_zero() const { return sign_ == 0; }

  /// Exact square, always rational.
  mpq_class square() const { return radicand_; }

  /// True when the radicand is a perfect square of a rational.
  bool is_rational() const;
  /// Exact rational value; valid only when is_rational().
  mpq_class rational_value() const;

  double to_double() const;

  Surd operator-() const;
  Surd operator*(const Surd& other) const;
  bool operator==(const Surd& other) const = default;

 private:
  int sign_;            // -1, 0, +1;  0 iff radicand == 0
  mpq_class radicand_;  // nonnegative
};

/// Spins and projections as twice their value, so half-integers stay exact.
struct ThreeJKey {
  int tj1, tj2, tj3;
  int tm1, tm2, tm3;
  auto operator<=>(const ThreeJKey&) const = default;
};

struct InvalidSpin : std::invalid_argument {
  explicit InvalidSpin(const std::string& what)
      : std::invalid_argument(what) {}
};

/// <j m | j1 m1; j2 m2> by the Racah closed-form sum, exact.
/// Arguments are twice the spin values.  Returns the zero surd when a
/// selection rule fails; throws InvalidSpin when j_i + m_i is not an
/// integer or a spin is negative.
Surd clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj, int tm);

/// Wigner 3j symbol, exact, with a process-wide cache keyed by
/// symmetry-canonicalized keys.
Surd three_j(const ThreeJKey& key);

inline Surd three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  return three_j(ThreeJKey{tj1, tj2, tj3, tm1, tm2, tm3});
}

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Active zyz rotation matrix D^(ell)(alpha, beta, gamma) on the
/// spherical basis, rows and columns indexed m = -ell..ell.
/// Satisfies conj(D[m][m']) == (-1)^{m+m'} D[-m][-m'].
Eigen::MatrixXcd wigner_d_matrix(int ell, const EulerAngles& e);

/// 3x3 rotation matrix Rz(alpha) Ry(beta) Rz(gamma).
Eigen::Matrix3d rotation_matrix(const EulerAngles& e);

/// zyz Euler angles of a rotation matrix.
EulerAngles euler_from_rotation(const Eigen::Matrix3d& r);

/// Rotation angle of a 3x3 rotation matrix, in [0, pi].
double rotation_angle(const Eigen::Matrix3d& r);

/// Unitary coupling matrix; rows are (j, m) with j ascending from
/// |j1 - j2| to j1 + j2, columns are (m1, m2) with m1 outermost.
/// Real in the Condon-Shortley convention.
Eigen::MatrixXd cg_matrix(int j1, int j2);

/// Largest deviation of C (D^{j1} x D^{j2}) C^T from the block-diagonal
/// stack D^{|j1-j2|} .. D^{j1+j2} over the sampled rotations; covers both
/// off-block leakage and in-block error.
double cg_block_check(int j1, int j2, int rotations, std::uint64_t seed);

}  // namespace wreath::wigner
