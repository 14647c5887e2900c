#ifndef QHL_SMOOTH_HPP
#define QHL_SMOOTH_HPP

// The standard compactly supported bump w0(x) = exp(-1/(1-x^2)) on (-1,1),
// 1-D smooth function wrappers, and fixed-order Gauss-Legendre panels used
// by the oscillatory-integral checks.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qhl/arith.hpp"

namespace qhl {

inline double bump0(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

// first derivative, exact formula
inline double bump0_deriv(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  double d = 1.0 - x * x;
  return bump0(x) * (-2.0 * x / (d * d));
}

struct SmoothFunction1D {
  double a, b;  // support interval
  std::function<double(double)> eval;

  double operator()(double x) const { return (x <= a || x >= b) ? 0.0 : eval(x); }
};

// bump supported on (lo, hi)
inline SmoothFunction1D scaled_bump(double lo, double hi) {
  double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  return {lo, hi, [c, r](double x) { return bump0((x - c) / r); }};
}

// 16-point Gauss-Legendre nodes/weights on [-1,1]
inline const std::array<double, 16>& gl16_nodes() {
  static const std::array<double, 16> n = {
      -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
      -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
      0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
      0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
  return n;
}

inline const std::array<double, 16>& gl16_weights() {
  static const std::array<double, 16> w = {
      0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
      0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
      0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  return w;
}

template <typename Fn>
double integrate_gl16(Fn&& f, double a, double b, int panels) {
  if (panels < 1) throw std::domain_error("integrate_gl16: need at least one panel");
  const auto& xs = gl16_nodes();
  const auto& ws = gl16_weights();
  double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h, half = 0.5 * h;
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += ws[i] * f(mid + half * xs[i]);
    acc += s * half;
  }
  return acc;
}

template <typename Fn>
cplx integrate_gl16_complex(Fn&& f, double a, double b, int panels) {
  if (panels < 1) throw std::domain_error("integrate_gl16_complex: need at least one panel");
  const auto& xs = gl16_nodes();
  const auto& ws = gl16_weights();
  double h = (b - a) / panels;
  cplx acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h, half = 0.5 * h;
    cplx s = 0.0;
    for (int i = 0; i < 16; ++i) s += ws[i] * f(mid + half * xs[i]);
    acc += s * half;
  }
  return acc;
}

// C^1 polynomial window (1-u^2)^2 on (lo, hi); unlike the flat bump its
// oscillatory-integral decay is polynomial, hence measurable in doubles
inline SmoothFunction1D poly_window(double lo, double hi) {
  double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  return {lo, hi, [c, r](double x) {
            double u = (x - c) / r;
            double d = 1.0 - u * u;
            return d > 0.0 ? d * d : 0.0;
          }};
}

// product bump on R^4 supported in (1/2,2)^4, built from bump0
inline double weight4(const std::array<double, 4>& x) {
  double v = 1.0;
  for (double xi : x) v *= bump0((4.0 * xi - 5.0) / 3.0);
  return v;
}

inline double weight4_1d(double x) { return bump0((4.0 * x - 5.0) / 3.0); }

}  // namespace qhl

#endif  // QHL_SMOOTH_HPP
