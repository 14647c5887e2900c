#ifndef QHL_QUADRIC_HPP
#define QHL_QUADRIC_HPP

// Zero enumeration for diagonal quaternary forms in the box [X/2, 2X]^4,
// smooth-weighted counts N(a;X), the dual form and offset classification,
// and the two desk-scale experiments (eigenvalue cancellation over the
// quadric, and the r-weighted double sum).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <vector>

#include "qhl/expsums.hpp"
#include "qhl/modforms.hpp"
#include "qhl/smooth.hpp"

namespace qhl {

// F^{-1}(c) = sum_i (prod_{j != i} A_j) c_i^2
inline i64 dual_form(const DiagonalForm& F, const std::array<i64, 4>& c) {
  i64 v = 0;
  for (int i = 0; i < 4; ++i) {
    i64 adj = 1;
    for (int j = 0; j < 4; ++j)
      if (j != i) adj *= F.coeff[j];
    v += adj * c[i] * c[i];
  }
  return v;
}

inline i64 dual_form_rest(const DiagonalForm& F, const std::array<i64, 3>& cp) {
  return dual_form(F, {0, cp[0], cp[1], cp[2]});
}

struct OffsetClasses {
  std::vector<std::array<i64, 3>> c0;  // F^{-1}(0,c') = 0
  std::vector<std::array<i64, 3>> c1;  // F^{-1}(0,c') != 0
};

inline OffsetClasses classify_offsets(const DiagonalForm& F, i64 bound) {
  if (bound < 0) throw std::domain_error("classify_offsets: bound must be nonnegative");
  OffsetClasses out;
  for (i64 a = -bound; a <= bound; ++a)
    for (i64 b = -bound; b <= bound; ++b)
      for (i64 c = -bound; c <= bound; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        std::array<i64, 3> cp{a, b, c};
        (dual_form_rest(F, cp) == 0 ? out.c0 : out.c1).push_back(cp);
      }
  return out;
}

enum class EnumMethod { naive, meet_in_middle };

struct SmoothWeight {
  double width = 1.0;  // in (0,1]; w(x) = prod bump0(((4x-5)/3)/width)

  double operator()(const std::array<double, 4>& x) const {
    double v = 1.0;
    for (double xi : x) v *= bump0((4.0 * xi - 5.0) / (3.0 * width));
    return v;
  }
};

// Visit every x in [ceil(X/2), 2X]^4 with F(x) = 0.  The meet-in-the-middle
// route matches A1 x1^2 + A2 x2^2 against -(A3 x3^2 + A4 x4^2) through one
// sorted table.
template <typename Visit>
void visit_zeros(const DiagonalForm& F, i64 X, EnumMethod method, Visit&& visit) {
  if (X < 1) throw std::domain_error("visit_zeros: X must be positive");
  i64 lo = (X + 1) / 2, hi = 2 * X;
  if (method == EnumMethod::naive) {
    if (X > 60) throw capacity_error("visit_zeros: naive method capped at X <= 60");
    for (i64 x1 = lo; x1 <= hi; ++x1)
      for (i64 x2 = lo; x2 <= hi; ++x2)
        for (i64 x3 = lo; x3 <= hi; ++x3)
          for (i64 x4 = lo; x4 <= hi; ++x4)
            if (F.evaluate({x1, x2, x3, x4}) == 0) visit(std::array<i64, 4>{x1, x2, x3, x4});
    return;
  }
  if (X > 2000) throw capacity_error("visit_zeros: meet-in-middle capped at X <= 2000");
  i64 side = hi - lo + 1;
  // encode (value, x3, x4) into one u64 so the table sorts by value first
  i64 maxmag = 0;
  for (i64 a : {F.coeff[2], F.coeff[3]}) maxmag += std::abs(a) * hi * hi;
  for (i64 a : {F.coeff[0], F.coeff[1]}) maxmag = std::max(maxmag, std::abs(a) * hi * hi * 2);
  if (maxmag >= (i64(1) << 39) || side >= (i64(1) << 12))
    throw capacity_error("visit_zeros: coefficients too large for packed table");
  const u64 bias = u64(1) << 39;
  std::vector<u64> rhs;
  rhs.reserve(std::size_t(side) * std::size_t(side));
  for (i64 x3 = lo; x3 <= hi; ++x3)
    for (i64 x4 = lo; x4 <= hi; ++x4) {
      i64 v = -(F.coeff[2] * x3 * x3 + F.coeff[3] * x4 * x4);
      rhs.push_back(((u64(v) + bias) << 24) | (u64(x3 - lo) << 12) | u64(x4 - lo));
    }
  std::sort(rhs.begin(), rhs.end());
  for (i64 x1 = lo; x1 <= hi; ++x1)
    for (i64 x2 = lo; x2 <= hi; ++x2) {
      i64 v = F.coeff[0] * x1 * x1 + F.coeff[1] * x2 * x2;
      u64 key = (u64(v) + bias) << 24;
      auto it = std::lower_bound(rhs.begin(), rhs.end(), key);
      for (; it != rhs.end() && (*it >> 24) == (key >> 24); ++it) {
        i64 x3 = lo + i64((*it >> 12) & 0xfff);
        i64 x4 = lo + i64(*it & 0xfff);
        visit(std::array<i64, 4>{x1, x2, x3, x4});
      }
    }
}

inline std::vector<std::array<i64, 4>> enumerate_zeros(const DiagonalForm& F, i64 X,
                                                       EnumMethod method) {
  std::vector<std::array<i64, 4>> out;
  visit_zeros(F, X, method, [&](const std::array<i64, 4>& x) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

enum class WeightChoice { unit, lambda, abs_lambda };

struct CountResult {
  i64 X;
  double weighted_value;
  i64 zero_count;
  double seconds;
};

inline CountResult weighted_count(const DiagonalForm& F, i64 X, WeightChoice a,
                                  const SmoothWeight& w, const TauTable* table,
                                  EnumMethod method = EnumMethod::meet_in_middle) {
  if (a != WeightChoice::unit) {
    if (!table) throw std::domain_error("weighted_count: eigenvalue weights need a tau table");
    if (table->limit() < 2 * X) throw capacity_error("weighted_count: tau table too short");
  }
  auto t0 = std::chrono::steady_clock::now();
  double acc = 0.0;
  i64 count = 0;
  double Xd = double(X);
  visit_zeros(F, X, method, [&](const std::array<i64, 4>& x) {
    ++count;
    double wv = w({x[0] / Xd, x[1] / Xd, x[2] / Xd, x[3] / Xd});
    if (wv == 0.0) return;
    double av = 1.0;
    if (a == WeightChoice::lambda)
      av = table->lambda(x[0]);
    else if (a == WeightChoice::abs_lambda)
      av = std::abs(table->lambda(x[0]));
    acc += wv * av;
  });
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {X, acc, count, secs};
}

struct CancellationRow {
  i64 X;
  double n_lambda_abs;  // |N(lambda; X)|
  double n_abs_lambda;  // N(|lambda|; X)
  double ratio;
  i64 zero_count;
};

struct CancellationResult {
  std::vector<CancellationRow> rows;
  double exponent_lambda;      // least-squares slope of log |N(lambda;X)| vs log X
  double exponent_abs_lambda;  // same for N(|lambda|;X)
};

inline double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double n = double(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline CancellationResult cancellation_experiment(const DiagonalForm& F,
                                                  const std::vector<i64>& x_list,
                                                  const TauTable& table,
                                                  const SmoothWeight& w = {}) {
  if (x_list.size() < 2) throw std::domain_error("cancellation_experiment: need >= 2 scales");
  for (std::size_t i = 1; i < x_list.size(); ++i)
    if (x_list[i] <= x_list[i - 1])
      throw std::domain_error("cancellation_experiment: X list must increase");
  CancellationResult out;
  std::vector<double> lx, ll, la;
  for (i64 X : x_list) {
    auto cl = weighted_count(F, X, WeightChoice::lambda, w, &table);
    auto ca = weighted_count(F, X, WeightChoice::abs_lambda, w, &table);
    double nl = std::abs(cl.weighted_value), na = ca.weighted_value;
    out.rows.push_back({X, nl, na, na > 0 ? nl / na : 0.0, cl.zero_count});
    lx.push_back(std::log(double(X)));
    ll.push_back(std::log(std::max(nl, 1e-300)));
    la.push_back(std::log(std::max(na, 1e-300)));
  }
  out.exponent_lambda = ls_slope(lx, ll);
  out.exponent_abs_lambda = ls_slope(lx, la);
  return out;
}

// sum_{m,n <= X} r(A m^2 + B n^2) lambda(m), with r(t) = 0 for t < 0
inline double r_weighted_sum(i64 A, i64 B, i64 X, const TauTable& table) {
  if (A == 0 || B == 0) throw std::domain_error("r_weighted_sum: coefficients must be nonzero");
  if (X < 1 || X > 2000) throw capacity_error("r_weighted_sum: X capped at 2000");
  if (table.limit() < X) throw capacity_error("r_weighted_sum: tau table too short");
  double acc = 0.0;
  for (i64 m = 1; m <= X; ++m) {
    i64 rsum = 0;
    for (i64 n = 1; n <= X; ++n) rsum += r_two_squares(A * m * m + B * n * n);
    acc += double(rsum) * table.lambda(m);
  }
  return acc;
}

}  // namespace qhl

#endif  // QHL_QUADRIC_HPP
