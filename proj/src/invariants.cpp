#include "wreath/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wreath::invariants {

namespace {

constexpr double kRealityTol = 1e-12;
constexpr double kRealTol = 1e-9;  // relative bound on spurious imaginary parts

double sign_pow(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

void check_reality(int ell, const Eigen::MatrixXcd& s) {
  const int n = 2 * ell + 1;
  if (s.rows() != n || s.cols() != n) {
    throw std::invalid_argument("order tensor has the wrong shape");
  }
  double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  for (int m = -ell; m <= ell; ++m) {
    for (int mp = -ell; mp <= ell; ++mp) {
      const std::complex<double> lhs = std::conj(s(m + ell, mp + ell));
      const std::complex<double> rhs =
          sign_pow(m + mp) * s(-m + ell, -mp + ell);
      if (std::abs(lhs - rhs) > kRealityTol * scale) {
        throw std::invalid_argument("reality condition violated at (" +
                                    std::to_string(m) + ", " +
                                    std::to_string(mp) + ")");
      }
    }
  }
}

}  // namespace

OrderTensor::OrderTensor(int ell, Eigen::MatrixXcd entries)
    : ell_(ell), entries_(std::move(entries)) {
  if (ell != 1 && ell != 2) throw std::invalid_argument("ell must be 1 or 2");
  check_reality(ell_, entries_);
}

OrderTensor OrderTensor::zero(int ell) {
  return OrderTensor(ell, Eigen::MatrixXcd::Zero(2 * ell + 1, 2 * ell + 1));
}

OrderTensor OrderTensor::random(int ell, std::uint64_t seed) {
  const int n = 2 * ell + 1;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  // Project: the entries with (m, m') lexicographically above (-m, -m')
  // are kept, their mirrors overwritten; (0, 0) is made real.
  for (int m = -ell; m <= ell; ++m) {
    for (int mp = -ell; mp <= ell; ++mp) {
      if (m > 0 || (m == 0 && mp > 0)) {
        s(-m + ell, -mp + ell) = sign_pow(m + mp) * std::conj(s(m + ell, mp + ell));
      }
    }
  }
  s(ell, ell) = std::complex<double>(s(ell, ell).real(), 0.0);
  return OrderTensor(ell, std::move(s));
}

OrderTensor act_gamma0(const wigner::EulerAngles& g,
                       const wigner::EulerAngles& h, const OrderTensor& s) {
  const Eigen::MatrixXcd dg = wigner::wigner_d_matrix(s.ell(), g);
  const Eigen::MatrixXcd dh = wigner::wigner_d_matrix(s.ell(), h);
  return OrderTensor(s.ell(), dg * s.matrix() * dh.adjoint());
}

OrderTensor act_tau(const OrderTensor& s) {
  const int ell = s.ell();
  const int n = 2 * ell + 1;
  Eigen::MatrixXcd out(n, n);
  for (int m = -ell; m <= ell; ++m) {
    for (int mp = -ell; mp <= ell; ++mp) {
      out(m + ell, mp + ell) = sign_pow(m + mp) * s.at(-mp, -m);
    }
  }
  return OrderTensor(ell, std::move(out));
}

double inv2(const OrderTensor& s) { return s.matrix().squaredNorm(); }

namespace {

// w3[j] holds 3j(2, 2, j; m1, m2, -m1-m2) as doubles, indexed [m1+2][m2+2].
const std::array<std::array<std::array<double, 5>, 5>, 5>& coupling_table() {
  static const auto table = [] {
    std::array<std::array<std::array<double, 5>, 5>, 5> t{};
    for (int j = 0; j <= 4; ++j) {
      for (int m1 = -2; m1 <= 2; ++m1) {
        for (int m2 = -2; m2 <= 2; ++m2) {
          t[j][m1 + 2][m2 + 2] =
              wigner::three_j(4, 4, 2 * j, 2 * m1, 2 * m2, -2 * (m1 + m2))
                  .to_double();
        }
      }
    }
    return t;
  }();
  return table;
}

double require_real(std::complex<double> v, const char* what) {
  const double scale = std::max(1.0, std::abs(v.real()));
  if (std::abs(v.imag()) > kRealTol * scale) {
    throw NonRealResult(std::string(what) + " has imaginary part " +
                        std::to_string(v.imag()));
  }
  return v.real();
}

}  // namespace

double inv3(const OrderTensor& s) {
  if (s.ell() != 2) throw std::invalid_argument("inv3 requires ell = 2");
  const auto& w3 = coupling_table();
  std::complex<double> sum = 0.0;
  for (int m1 = -2; m1 <= 2; ++m1) {
    for (int m2 = -2; m2 <= 2; ++m2) {
      const int m3 = -m1 - m2;
      if (std::abs(m3) > 2) continue;
      const double c = w3[2][m1 + 2][m2 + 2];
      if (c == 0.0) continue;
      for (int n1 = -2; n1 <= 2; ++n1) {
        for (int n2 = -2; n2 <= 2; ++n2) {
          const int n3 = -n1 - n2;
          if (std::abs(n3) > 2) continue;
          const double cp = w3[2][n1 + 2][n2 + 2];
          if (cp == 0.0) continue;
          sum += c * cp * s.at(m1, n1) * s.at(m2, n2) * s.at(m3, n3);
        }
      }
    }
  }
  return require_real(sum, "inv3");
}

Eigen::MatrixXcd supertensor(const OrderTensor& s, int j, int jp) {
  if (s.ell() != 2) throw std::invalid_argument("supertensor requires ell = 2");
  if (j < 0 || j > 4 || jp < 0 || jp > 4) {
    throw std::invalid_argument("supertensor needs 0 <= j, j' <= 4");
  }
  const auto& w3 = coupling_table();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * j + 1, 2 * jp + 1);
  for (int m1 = -2; m1 <= 2; ++m1) {
    for (int m2 = -2; m2 <= 2; ++m2) {
      const int k = -m1 - m2;
      if (std::abs(k) > j) continue;
      const double c = w3[j][m1 + 2][m2 + 2];
      if (c == 0.0) continue;
      for (int n1 = -2; n1 <= 2; ++n1) {
        for (int n2 = -2; n2 <= 2; ++n2) {
          const int kp = -n1 - n2;
          if (std::abs(kp) > jp) continue;
          const double cp = w3[jp][n1 + 2][n2 + 2];
          if (cp == 0.0) continue;
          u(k + j, kp + jp) += c * cp * s.at(m1, n1) * s.at(m2, n2);
        }
      }
    }
  }
  return u;
}

double inv4(const OrderTensor& s, int j, int jp) {
  const Eigen::MatrixXcd u = supertensor(s, j, jp);
  std::complex<double> sum = 0.0;
  for (int k = -j; k <= j; ++k) {
    for (int kp = -jp; kp <= jp; ++kp) {
      sum += sign_pow(k + kp) * u(k + j, kp + jp) * u(-k + j, -kp + jp);
    }
  }
  return require_real(sum, "inv4");
}

double inv4_sym(const OrderTensor& s, int j, int jp) {
  return 0.5 * (inv4(s, j, jp) + inv4(s, jp, j));
}

double inv4_skew(const OrderTensor& s, int j, int jp) {
  return 0.5 * (inv4(s, j, jp) - inv4(s, jp, j));
}

std::vector<IdentityResidual> verify_identities(const OrderTensor& s) {
  const double d0 = inv4(s, 0, 0);
  const double d1 = inv4(s, 1, 1);
  const double d2 = inv4(s, 2, 2);
  const double d3 = inv4(s, 3, 3);
  const double d4 = inv4(s, 4, 4);
  const double sym02 = inv4_sym(s, 0, 2);
  const double sym04 = inv4_sym(s, 0, 4);
  const double sym13 = inv4_sym(s, 1, 3);
  const double sym24 = inv4_sym(s, 2, 4);
  const double skw02 = inv4_skew(s, 0, 2);
  const double skw04 = inv4_skew(s, 0, 4);
  const double skw13 = inv4_skew(s, 1, 3);
  const double skw24 = inv4_skew(s, 2, 4);

  struct Term {
    double coeff;
    double value;
  };
  auto combine = [](std::string name,
                    std::initializer_list<Term> terms) -> IdentityResidual {
    double sum = 0.0;
    double scale = 0.0;
    for (const Term& t : terms) {
      sum += t.coeff * t.value;
      scale = std::max(scale, std::abs(t.coeff * t.value));
    }
    return IdentityResidual{std::move(name), std::abs(sum), scale};
  };

  return {
      combine("4 d00 + 9 d11 + 5 d22 - 14 d33 - 54 d44",
              {{4, d0}, {9, d1}, {5, d2}, {-14, d3}, {-54, d4}}),
      combine("60 d00 + 9 d11 + 245 d22 - 784 d33 - 280 sym02",
              {{60, d0}, {9, d1}, {245, d2}, {-784, d3}, {-280, sym02}}),
      combine("212 d00 - 909 d11 + 2695 d22 - 3136 d33 - 1512 sym04",
              {{212, d0}, {-909, d1}, {2695, d2}, {-3136, d3}, {-1512, sym04}}),
      combine("100 d00 + 99 d11 - 1225 d22 + 784 d33 - 1008 sym13",
              {{100, d0}, {99, d1}, {-1225, d2}, {784, d3}, {-1008, sym13}}),
      combine("220 d00 - 387 d11 - 535 d22 + 112 d33 - 2160 sym24",
              {{220, d0}, {-387, d1}, {-535, d2}, {112, d3}, {-2160, sym24}}),
      combine("5 skew02 + 9 skew04", {{5, skw02}, {9, skw04}}),
      combine("5 skew02 + 6 skew13", {{5, skw02}, {6, skw13}}),
      combine("7 skew02 - 18 skew24", {{7, skw02}, {-18, skw24}}),
  };
}

namespace {

std::vector<double> candidate_values(const OrderTensor& s, CandidateSet set) {
  std::vector<double> v;
  for (int j = 0; j <= 4; ++j) v.push_back(inv4(s, j, j));
  static constexpr std::pair<int, int> kOffDiag[] = {
      {0, 2}, {0, 4}, {1, 3}, {2, 4}};
  for (const auto& [j, jp] : kOffDiag) v.push_back(inv4_sym(s, j, jp));
  if (set == CandidateSet::kAll13) {
    for (const auto& [j, jp] : kOffDiag) v.push_back(inv4_skew(s, j, jp));
  }
  return v;
}

}  // namespace

int degree4_rank(int n_samples, std::uint64_t seed, CandidateSet subset) {
  if (n_samples < 20) throw std::invalid_argument("need at least 20 samples");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> rows;
  rows.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    rows.push_back(candidate_values(OrderTensor::random(2, rng()), subset));
  }
  const int ncand = static_cast<int>(rows.front().size());
  Eigen::MatrixXd m(n_samples, ncand);
  for (int i = 0; i < n_samples; ++i) {
    for (int c = 0; c < ncand; ++c) m(i, c) = rows[i][c];
  }
  for (int c = 0; c < ncand; ++c) {
    const double norm = m.col(c).norm();
    if (norm > 0) m.col(c) /= norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  const double threshold = 1e-8 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  // The decision must be clear-cut on both sides of the threshold.
  if (rank > 0 && sv(rank - 1) < 10.0 * threshold) {
    throw RankUnstable("smallest retained singular value " +
                       std::to_string(sv(rank - 1)) +
                       " sits within 10x of the threshold");
  }
  if (rank < sv.size() && sv(rank) > threshold / 10.0) {
    throw RankUnstable("largest rejected singular value " +
                       std::to_string(sv(rank)) +
                       " sits within 10x of the threshold");
  }
  return rank;
}

Ell1Invariants ell1_invariants(const Eigen::Matrix3d& a) {
  const Eigen::Matrix3d b = a.transpose() * a;
  return Ell1Invariants{b.trace(), a.determinant(), (b * b).trace()};
}

}  // namespace wreath::invariants
