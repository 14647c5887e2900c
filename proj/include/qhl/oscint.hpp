#ifndef QHL_OSCINT_HPP
#define QHL_OSCINT_HPP

// Oscillatory-integral checks: Bessel J, the Hankel transform behind the
// Voronoi formula, Poisson and Voronoi summation as numerical identities,
// the dissection identity, and the quadratic-log phase integral.
//
// J_nu uses three regimes: long-double ascending series below the turning
// point, Miller's normalized downward recurrence in the middle, and the
// Hankel asymptotic expansion for large argument.

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "qhl/arith.hpp"
#include "qhl/modforms.hpp"
#include "qhl/quadric.hpp"
#include "qhl/smooth.hpp"

namespace qhl {

namespace detail {

inline long double bessel_series(int nu, long double x) {
  long double term = 1.0L;
  for (int i = 1; i <= nu; ++i) term *= x / (2.0L * i);
  long double sum = 0.0L;
  for (int j = 0; j < 120; ++j) {
    sum += term;
    term *= -(x * x / 4.0L) / ((long double)(j + 1) * (j + 1 + nu));
    if (std::abs(term) < 1e-30L * std::abs(sum) && j > 4) break;
  }
  return sum;
}

inline double bessel_miller(int nu, double x) {
  // downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized by
  // J_0 + 2 sum J_{2k} = 1
  int start = int(x) + nu + 40 + int(10.0 * std::cbrt(x));
  if (start % 2 == 1) ++start;
  long double jp = 0.0L, jc = 1e-30L;
  long double norm = 0.0L, target = 0.0L;
  for (int k = start; k >= 1; --k) {
    long double jm = (2.0L * k / x) * jc - jp;
    jp = jc;
    jc = jm;
    if (k - 1 == nu) target = jc;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0L * jc;
    if (std::abs(jc) > 1e280L) {
      jc *= 1e-280L;
      jp *= 1e-280L;
      norm *= 1e-280L;
      target *= 1e-280L;
    }
  }
  return double(target / norm);
}

inline double bessel_asymptotic(int nu, double x) {
  // Hankel expansion: J_nu(x) = sqrt(2/(pi x)) (P cos(chi) - Q sin(chi))
  long double mu = 4.0L * nu * nu;
  long double P = 1.0L, Q = 0.0L;
  long double term = 1.0L;
  long double ex = 8.0L * x;
  for (int k = 1; k <= 12; ++k) {
    term *= (mu - (2.0L * k - 1) * (2.0L * k - 1)) / (k * ex);
    if (k % 2 == 1)
      Q += (k % 4 == 1) ? term : -term;
    else
      P += (k % 4 == 2) ? -term : term;
  }
  long double chi = x - (0.5L * nu + 0.25L) * std::numbers::pi_v<long double>;
  return double(std::sqrt(2.0L / (std::numbers::pi_v<long double> * x)) *
                (P * std::cos(chi) - Q * std::sin(chi)));
}

}  // namespace detail

inline double bessel_j(int order, double x) {
  if (order < 0 || order > 50) throw capacity_error("bessel_j: order must be in [0, 50]");
  if (x < 0.0 || x > 1e6) throw capacity_error("bessel_j: x must be in [0, 1e6]");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= order + 10) return double(detail::bessel_series(order, (long double)x));
  double asym_from = std::max(2000.0, 4.0 * order * order);
  if (x >= asym_from) return detail::bessel_asymptotic(order, x);
  return detail::bessel_miller(order, x);
}

// |d/dx (x^k J_k) - x^k J_{k-1}| via a centered difference
inline double bessel_derivative_identity(int k, double x) {
  if (k < 1) throw std::domain_error("bessel_derivative_identity: k must be >= 1");
  double h = 1e-5 * std::max(1.0, x);
  auto f = [k](double t) { return std::pow(t, k) * bessel_j(k, t); };
  double deriv = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
  return std::abs(deriv - std::pow(x, k) * bessel_j(k - 1, x));
}

struct QuadratureConfig {
  double tolerance = 1e-10;
  int max_panels = 20000000;
  double panels_per_period = 0.75;  // GL16 panel holds two 8-node periods; 0.75 adds margin
};

// (2 pi i^k / d) int g(x) J_{k-1}(4 pi sqrt(x m) / d) dx, via x = y^2
inline cplx hankel_transform(const SmoothFunction1D& g, i64 d, i64 m, int k,
                             const QuadratureConfig& cfg = {}) {
  if (d < 1 || m < 1) throw std::domain_error("hankel_transform: d, m must be positive");
  if (g.b > 4.0e4) throw capacity_error("hankel_transform: support cap exceeded");
  double t = 4.0 * std::numbers::pi * std::sqrt(double(m)) / double(d);
  double y0 = std::sqrt(std::max(g.a, 0.0)), y1 = std::sqrt(g.b);
  double periods = (y1 - y0) * t / (2.0 * std::numbers::pi);
  int panels = std::max(8, int(periods * cfg.panels_per_period) + 4);
  if (panels > cfg.max_panels) throw convergence_error("hankel_transform: panel budget exceeded");
  int km1 = k - 1;
  double val = integrate_gl16(
      [&](double y) { return 2.0 * y * g(y * y) * bessel_j(km1, t * y); }, y0, y1, panels);
  cplx ik = std::pow(cplx(0.0, 1.0), k);
  return 2.0 * std::numbers::pi * ik * val / double(d);
}

namespace detail {

// n-th derivative by central differences, n <= 6
inline double fd_derivative(const std::function<double(double)>& f, double x, int n, double h) {
  switch (n) {
    case 0:
      return f(x);
    case 1:
      return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
    case 2:
      return (f(x - h) - 2 * f(x) + f(x + h)) / (h * h);
    case 3:
      return (-f(x - 2 * h) + 2 * f(x - h) - 2 * f(x + h) + f(x + 2 * h)) / (2 * h * h * h);
    case 4:
      return (f(x - 2 * h) - 4 * f(x - h) + 6 * f(x) - 4 * f(x + h) + f(x + 2 * h)) /
             (h * h * h * h);
    case 5:
      return (-f(x - 3 * h) + 4 * f(x - 2 * h) - 5 * f(x - h) + 5 * f(x + h) - 4 * f(x + 2 * h) +
              f(x + 3 * h)) /
             (2 * std::pow(h, 5));
    case 6:
      return (f(x - 3 * h) - 6 * f(x - 2 * h) + 15 * f(x - h) - 20 * f(x) + 15 * f(x + h) -
              6 * f(x + 2 * h) + f(x + 3 * h)) /
             std::pow(h, 6);
    default:
      throw std::domain_error("fd_derivative: order must be <= 6");
  }
}

// crude numerical stand-in for the weighted Sobolev norm driving the
// Hankel-decay truncation bound; a large safety factor absorbs both the
// implicit constants in the bound and finite-difference error
inline double sobolev_norm_estimate(const std::function<double(double)>& f, double lo, double hi,
                                    int l) {
  double norm = 0.0;
  for (int v = 0; v <= l; ++v) {
    auto integrand = [&](double x) {
      return std::pow(std::abs(x), v) * std::abs(fd_derivative(f, x, v, 0.004));
    };
    double binom = 1.0;
    for (int i = 0; i < v; ++i) binom = binom * (l - i) / (i + 1);
    norm += binom * integrate_gl16(integrand, lo, hi, 64);
  }
  return norm;
}

}  // namespace detail

struct IdentityCheck {
  double lhs;
  double rhs;
  double abs_diff;
  i64 truncation;  // dual-side cutoff used
};

// Voronoi: sum_{m = b mod q} lambda(m) g(m)
//        = (1/q) sum_{d|q} sum_m lambda(m) S(b,m;d) gcheck_d(m),
// weight k = 12.  The dual sum is truncated where the Hankel decay bound
// (with exponent l + 1/2) pushes the tail below tail_frac * (1 + |lhs|).
inline std::vector<IdentityCheck> voronoi_suite(i64 q, const SmoothFunction1D& g,
                                                const TauTable& table, int l = 6,
                                                double tail_frac = 1e-5, int jobs = 1) {
  if (q < 1 || q > 6) throw capacity_error("voronoi_suite: q capped at 6");
  if (g.a < 1.0) throw std::domain_error("voronoi_suite: support must lie in x >= 1");
  const int k = 12;
  std::vector<double> lhs(std::size_t(q), 0.0);
  i64 mlo = i64(g.a), mhi = i64(g.b) + 1;
  if (mhi > table.limit()) throw capacity_error("voronoi_suite: tau table too short for lhs");
  for (i64 m = std::max<i64>(mlo, 1); m <= mhi; ++m)
    lhs[std::size_t(mod_reduce(m, q))] += table.lambda(m) * g(m);

  // rescale support into [a/X0, b/X0] with X0 = b/2 so the decay bound's
  // normalized geometry applies
  double X0 = g.b / 2.0;
  auto G = [&](double u) { return g(u * X0); };
  // x10 covers the finite-difference error of the derivative estimates
  double norm = detail::sobolev_norm_estimate(G, g.a / X0, g.b / X0, l) * 10.0;
  double lhs_min = std::abs(lhs[0]);
  for (double v : lhs) lhs_min = std::min(lhs_min, std::abs(v));
  double tail_target = tail_frac * (1.0 + lhs_min);

  std::vector<double> rhs(std::size_t(q), 0.0);
  i64 trunc_used = 0;
  for (i64 d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    // tail over m > M of |lambda(m) S(b,m;d) gcheck_d(m)|
    //   <= 16 m^{1/4} * d * (2pi/d) X0 norm (4 pi sqrt(m X0)/d)^{-(l+1/2)},
    // summed by integral comparison; find the least adequate M
    double base = 2.0 * std::numbers::pi * X0 * norm * 16.0;
    double texp = double(l) + 0.5;
    auto tail_at = [&](double M) {
      double c = base * std::pow(4.0 * std::numbers::pi * std::sqrt(X0) / double(d), -texp);
      double expo = 0.25 - texp / 2.0;  // per-term m-exponent
      return c * std::pow(M, expo + 1.0) / (-expo - 1.0);
    };
    i64 M = 8;
    while (tail_at(double(M)) > tail_target && M < (i64(1) << 24)) M *= 2;
    if (tail_at(double(M)) > tail_target)
      throw convergence_error("voronoi_suite: truncation bound unattainable");
    if (M > table.limit())
      throw capacity_error("voronoi_suite: tau table too short for dual sum");
    trunc_used = std::max(trunc_used, M);
    std::vector<double> gh(std::size_t(M) + 1, 0.0);
    auto worker = [&](i64 start, i64 step) {
      // i^12 = 1 and the m-sum pairs conjugates, so only the real part survives
      for (i64 m = start; m <= M; m += step)
        gh[std::size_t(m)] = hankel_transform(g, d, m, k).real();
    };
    if (jobs <= 1) {
      worker(1, 1);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, i64(t) + 1, i64(jobs));
      for (auto& th : pool) th.join();
    }
    for (i64 m = 1; m <= M; ++m) {
      double lam_gh = table.lambda(m) * gh[std::size_t(m)];
      for (i64 b = 0; b < q; ++b) {
        double S = kloosterman(b, m, d).real();
        if (S != 0.0) rhs[std::size_t(b)] += lam_gh * S;
      }
    }
  }
  std::vector<IdentityCheck> out;
  for (i64 b = 0; b < q; ++b) {
    double r = rhs[std::size_t(b)] / double(q);
    out.push_back({lhs[std::size_t(b)], r, std::abs(lhs[std::size_t(b)] - r), trunc_used});
  }
  return out;
}

inline IdentityCheck voronoi_check(i64 q, i64 b, const SmoothFunction1D& g, const TauTable& table,
                                   int l = 6, double tail_frac = 1e-5) {
  auto all = voronoi_suite(q, g, table, l, tail_frac);
  return all[std::size_t(mod_reduce(b, q))];
}

// Poisson: sum_{n = b mod q} w(n) = (1/q) sum_m what(m/q) e_q(bm)
inline IdentityCheck poisson_check(i64 q, i64 b, const SmoothFunction1D& w,
                                   const QuadratureConfig& cfg = {}) {
  if (q < 1 || q > 20) throw capacity_error("poisson_check: q capped at 20");
  double lhs = 0.0;
  for (i64 n = i64(std::floor(w.a)); n <= i64(std::ceil(w.b)); ++n)
    if (mod_reduce(n - b, q) == 0) lhs += w(n);

  auto what = [&](double xi) {
    double periods = (w.b - w.a) * std::abs(xi);
    int panels = std::max(8, int(periods * cfg.panels_per_period) + 4);
    if (panels > cfg.max_panels) throw convergence_error("poisson_check: panel budget exceeded");
    return integrate_gl16_complex(
        [&](double x) {
          double ph = -2.0 * std::numbers::pi * x * xi;
          return w(x) * cplx(std::cos(ph), std::sin(ph));
        },
        w.a, w.b, panels);
  };

  cplx rhs = what(0.0);
  int quiet = 0;
  for (i64 m = 1; m <= 4000 && quiet < 25; ++m) {
    cplx term = 0.0;
    for (i64 s : {m, -m}) {
      cplx wv = what(double(s) / double(q));
      term += wv * unit_root(b * s, q);
    }
    rhs += term;
    quiet = std::abs(term) < 1e-12 * (1.0 + std::abs(lhs)) ? quiet + 1 : 0;
  }
  if (quiet < 25) throw convergence_error("poisson_check: dual sum did not settle");
  rhs /= double(q);
  return {lhs, rhs.real(), std::abs(lhs - rhs.real()), 0};
}

// int w(x) e(A x^2 + B log x) dx on the support of w
inline cplx phase_integral(double A, double B, const SmoothFunction1D& w,
                           const QuadratureConfig& cfg = {}) {
  if (A == 0.0) throw std::domain_error("phase_integral: A must be nonzero");
  if (std::abs(A) > 1e6) throw capacity_error("phase_integral: |A| capped at 1e6");
  // |phase'| / (2 pi) <= 2|A| x + |B| / x <= 4|A| + 2|B| on [1/2, 2]
  double periods = (w.b - w.a) * (4.0 * std::abs(A) + 2.0 * std::abs(B));
  int panels = std::max(8, int(periods * cfg.panels_per_period) + 4);
  if (panels > cfg.max_panels) throw convergence_error("phase_integral: panel budget exceeded");
  return integrate_gl16_complex(
      [&](double x) {
        double ph = 2.0 * std::numbers::pi * (A * x * x + B * std::log(x));
        return w(x) * cplx(std::cos(ph), std::sin(ph));
      },
      w.a, w.b, panels);
}

// int_{R^3} c0^{-3} w0^(3)((x'-y')/delta) w(x1, x') dy' = delta^3 w(x)
inline double dissection_check(const SmoothWeight& w, double delta,
                               const std::array<double, 4>& x) {
  if (delta <= 0.0 || delta > 1.0) throw std::domain_error("dissection_check: delta in (0,1]");
  static const double c0 = integrate_gl16([](double u) { return bump0(u); }, -1.0, 1.0, 32);
  double wx = w(x);
  // w(x1, delta u + v) at v = y', u = (x'-y')/delta collapses to w(x), but
  // integrate the full product honestly
  auto integrand = [&](double y2, double y3, double y4) {
    std::array<double, 3> u = {(x[1] - y2) / delta, (x[2] - y3) / delta, (x[3] - y4) / delta};
    double b3 = bump0(u[0]) * bump0(u[1]) * bump0(u[2]);
    if (b3 == 0.0) return 0.0;
    std::array<double, 4> arg = {x[0], delta * u[0] + y2, delta * u[1] + y3, delta * u[2] + y4};
    return b3 * w(arg);
  };
  const auto& xs = gl16_nodes();
  const auto& ws = gl16_weights();
  const int P = 3;  // panels per axis
  double lhs = 0.0;
  double h = 2.0 * delta / P;
  for (int p2 = 0; p2 < P; ++p2)
    for (int i2 = 0; i2 < 16; ++i2) {
      double y2 = x[1] - delta + (p2 + 0.5 + 0.5 * xs[i2]) * h;
      for (int p3 = 0; p3 < P; ++p3)
        for (int i3 = 0; i3 < 16; ++i3) {
          double y3 = x[2] - delta + (p3 + 0.5 + 0.5 * xs[i3]) * h;
          for (int p4 = 0; p4 < P; ++p4)
            for (int i4 = 0; i4 < 16; ++i4) {
              double y4 = x[3] - delta + (p4 + 0.5 + 0.5 * xs[i4]) * h;
              lhs += ws[i2] * ws[i3] * ws[i4] * integrand(y2, y3, y4);
            }
        }
    }
  lhs *= std::pow(0.5 * h, 3) / std::pow(c0, 3);
  return std::abs(lhs - delta * delta * delta * wx);
}

}  // namespace qhl

#endif  // QHL_OSCINT_HPP
