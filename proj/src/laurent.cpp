#include "wreath/laurent.hpp"

#include <algorithm>
#include <string>

namespace wreath::laurent {

namespace {
const mpz_class kZero = 0;
}

CapPolicy uniform_cap(int bound) {
  return [bound](int) { return bound; };
}

CapPolicy linear_cap(int rate, int slack) {
  return [rate, slack](int m) { return rate * m + slack; };
}

CapPolicy midpoint_cap(int rate, int order, int slack) {
  return [rate, order, slack](int m) {
    return rate * std::min(m, order - m) + slack;
  };
}

LaurentPoly::LaurentPoly(int nvars, int cap) : nvars_(nvars), cap_(cap) {
  if (nvars != 1 && nvars != 2) {
    throw std::invalid_argument("LaurentPoly supports 1 or 2 variables");
  }
  if (cap < 0) throw std::invalid_argument("cap must be >= 0");
  const std::size_t side = 2 * static_cast<std::size_t>(cap) + 1;
  data_.resize(nvars == 2 ? side * side : side);
}

const mpz_class& LaurentPoly::at(int e1, int e2) const {
  if (!in_box(e1, e2)) return kZero;
  return data_[index(e1, e2)];
}

mpz_class& LaurentPoly::cell(int e1, int e2) { return data_[index(e1, e2)]; }

const mpz_class& LaurentPoly::cell(int e1, int e2) const {
  return data_[index(e1, e2)];
}

bool LaurentPoly::is_zero() const {
  for (const mpz_class& c : data_) {
    if (mpz_sgn(c.get_mpz_t()) != 0) return false;
  }
  return true;
}

LaurentSeries::LaurentSeries(int nvars, int order, CapPolicy policy,
                             int hard_cap)
    : nvars_(nvars), order_(order) {
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
  coeffs_.reserve(order + 1);
  for (int m = 0; m <= order; ++m) {
    const int cap = policy(m);
    if (cap < 0 || cap > hard_cap) {
      throw CapOverflow("cap " + std::to_string(cap) + " at degree " +
                        std::to_string(m) + " exceeds hard cap " +
                        std::to_string(hard_cap));
    }
    coeffs_.emplace_back(nvars, cap);
  }
}

LaurentSeries LaurentSeries::one(int nvars, int order, CapPolicy policy,
                                 int hard_cap) {
  LaurentSeries s(nvars, order, std::move(policy), hard_cap);
  s.coeff(0).cell(0, 0) = 1;
  return s;
}

namespace {

// dst += sign * z1^{s1} z2^{s2} * src, clipped to the dst box.
void add_shifted(LaurentPoly& dst, const LaurentPoly& src, int sign, int s1,
                 int s2) {
  const int bd = dst.cap();
  const int bs = src.cap();
  const int lo1 = std::max(-bd, -bs + s1);
  const int hi1 = std::min(bd, bs + s1);
  if (dst.nvars() == 1) {
    for (int e = lo1; e <= hi1; ++e) {
      const mpz_class& v = src.cell(e - s1);
      if (mpz_sgn(v.get_mpz_t()) == 0) continue;
      mpz_class& d = dst.cell(e);
      if (sign > 0) {
        mpz_add(d.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
      } else {
        mpz_sub(d.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
      }
    }
    return;
  }
  const int lo2 = std::max(-bd, -bs + s2);
  const int hi2 = std::min(bd, bs + s2);
  for (int e1 = lo1; e1 <= hi1; ++e1) {
    for (int e2 = lo2; e2 <= hi2; ++e2) {
      const mpz_class& v = src.cell(e1 - s1, e2 - s2);
      if (mpz_sgn(v.get_mpz_t()) == 0) continue;
      mpz_class& d = dst.cell(e1, e2);
      if (sign > 0) {
        mpz_add(d.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
      } else {
        mpz_sub(d.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
      }
    }
  }
}

// dst += weight * z1^{s1} z2^{s2} * src with small integer weight.
void addmul_shifted(LaurentPoly& dst, const LaurentPoly& src, long weight,
                    int s1, int s2) {
  const int bd = dst.cap();
  const int bs = src.cap();
  const unsigned long w = static_cast<unsigned long>(std::abs(weight));
  const bool neg = weight < 0;
  const int lo1 = std::max(-bd, -bs + s1);
  const int hi1 = std::min(bd, bs + s1);
  const int lo2 = dst.nvars() == 1 ? 0 : std::max(-bd, -bs + s2);
  const int hi2 = dst.nvars() == 1 ? 0 : std::min(bd, bs + s2);
  for (int e1 = lo1; e1 <= hi1; ++e1) {
    for (int e2 = lo2; e2 <= hi2; ++e2) {
      const mpz_class& v = src.cell(e1 - s1, e2 - s2);
      if (mpz_sgn(v.get_mpz_t()) == 0) continue;
      mpz_class& d = dst.cell(e1, e2);
      if (neg) {
        mpz_submul_ui(d.get_mpz_t(), v.get_mpz_t(), w);
      } else {
        mpz_addmul_ui(d.get_mpz_t(), v.get_mpz_t(), w);
      }
    }
  }
}

}  // namespace

LaurentSeries divide_by_factor(LaurentSeries s, const Factor& f) {
  if (f.tpow < 1) throw std::invalid_argument("factor needs tpow >= 1");
  if (f.sign != 1 && f.sign != -1) {
    throw std::invalid_argument("factor sign must be +-1");
  }
  for (int m = f.tpow; m <= s.order(); ++m) {
    add_shifted(s.coeff(m), s.coeff(m - f.tpow), f.sign, f.exps[0], f.exps[1]);
  }
  return s;
}

LaurentSeries multiply_weyl_factor(LaurentSeries s) {
  const int nv = s.nvars();
  for (int m = 0; m <= s.order(); ++m) {
    const LaurentPoly& in = s.coeff(m);
    LaurentPoly out(nv, in.cap() + 1);
    if (nv == 1) {
      // (2 - z - 1/z)
      addmul_shifted(out, in, 2, 0, 0);
      addmul_shifted(out, in, -1, 1, 0);
      addmul_shifted(out, in, -1, -1, 0);
    } else {
      // (2 - z - 1/z)(2 - w - 1/w)
      static constexpr struct {
        int s1, s2;
        long w;
      } kStencil[] = {{0, 0, 4},  {1, 0, -2},  {-1, 0, -2}, {0, 1, -2},
                      {0, -1, -2}, {1, 1, 1},   {1, -1, 1},  {-1, 1, 1},
                      {-1, -1, 1}};
      for (const auto& st : kStencil) addmul_shifted(out, in, st.w, st.s1, st.s2);
    }
    s.coeff(m) = std::move(out);
  }
  return s;
}

series::TruncatedSeries constant_term(const LaurentSeries& s) {
  series::TruncatedSeries out(s.order());
  for (int m = 0; m <= s.order(); ++m) {
    out[m] = mpq_class(s.coeff(m).at(0, 0));
  }
  return out;
}

}  // namespace wreath::laurent
