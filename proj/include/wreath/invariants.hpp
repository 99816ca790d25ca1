#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreath/wigner.hpp"

namespace wreath::invariants {

struct NonRealResult : std::runtime_error {
  explicit NonRealResult(const std::string& what)
      : std::runtime_error(what) {}
};

struct RankUnstable : std::runtime_error {
  explicit RankUnstable(const std::string& what) : std::runtime_error(what) {}
};

/// Complex (2 ell + 1) x (2 ell + 1) matrix S in the spherical basis with
/// the reality condition conj(S[m][m']) == (-1)^{m+m'} S[-m][-m'],
/// checked to 1e-12 on construction.
class OrderTensor {
 public:
  OrderTensor(int ell, Eigen::MatrixXcd entries);

  static OrderTensor zero(int ell);
  /// Gaussian entries projected onto the reality-condition subspace;
  /// deterministic per seed.
  static OrderTensor random(int ell, std::uint64_t seed);

  int ell() const { return ell_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  std::complex<double> at(int m, int mp) const {
    return entries_(m + ell_, mp + ell_);
  }

  double norm() const { return entries_.norm(); }

 private:
  int ell_;
  Eigen::MatrixXcd entries_;
};

/// S -> D(g) S D(h)^dagger.
OrderTensor act_gamma0(const wigner::EulerAngles& g,
                       const wigner::EulerAngles& h, const OrderTensor& s);

/// (tau S)_{m m'} = (-1)^{m+m'} S_{-m',-m}; the transposition involution.
OrderTensor act_tau(const OrderTensor& s);

/// Quadratic invariant |S|^2.
double inv2(const OrderTensor& s);

/// Cubic invariant: double 3j contraction of three copies of S (ell = 2).
double inv3(const OrderTensor& s);

/// Degree-2 covariant U^{(j,j')} coupling two copies of S through two 3j
/// symbols; (2j+1) x (2j'+1), rows k = -j..j.  Requires ell = 2, 0 <= j,
/// j' <= 4.
Eigen::MatrixXcd supertensor(const OrderTensor& s, int j, int jp);

/// Quartic invariant: full self-contraction of U^{(j,j')}.
double inv4(const OrderTensor& s, int j, int jp);

double inv4_sym(const OrderTensor& s, int j, int jp);
double inv4_skew(const OrderTensor& s, int j, int jp);

struct IdentityResidual {
  std::string name;
  double residual;  // absolute value of the linear combination
  double scale;     // largest absolute term entering it
};

/// The eight linear identities among the quartic invariants.
std::vector<IdentityResidual> verify_identities(const OrderTensor& s);

enum class CandidateSet { kAll13, kTauInvariant };

/// Numerical rank of the sample-by-candidate value matrix for the quartic
/// invariant candidates.  Columns are scaled to unit norm; singular values
/// above 1e-8 of the largest count toward the rank.  Throws RankUnstable
/// when the spectrum gap straddles the threshold by less than 10x.
int degree4_rank(int n_samples, std::uint64_t seed, CandidateSet subset);

struct Ell1Invariants {
  double i2;  // tr(A^T A)
  double i3;  // det A
  double i4;  // tr(A^T A A^T A)
};

Ell1Invariants ell1_invariants(const Eigen::Matrix3d& a);

}  // namespace wreath::invariants
