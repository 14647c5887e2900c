#ifndef QHL_EXPSUMS_HPP
#define QHL_EXPSUMS_HPP

// Complete exponential sums attached to a diagonal quaternary quadratic
// form: quadratic Gauss sums, Kloosterman and Ramanujan sums, the offset
// sums A_q(c) and S_{d,q}(c), and closed-form evaluation of S_q(n) at
// prime powers under Condition A0, combined multiplicatively.
//
// Every closed form here has a brute-force companion; the brute sums are
// the ground truth and the closed forms are checked against them.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qhl/arith.hpp"

namespace qhl {

struct DiagonalForm {
  std::array<i64, 4> coeff;  // A1..A4, all nonzero

  DiagonalForm(i64 a1, i64 a2, i64 a3, i64 a4) : coeff{a1, a2, a3, a4} {
    for (i64 a : coeff)
      if (a == 0) throw std::domain_error("DiagonalForm: coefficients must be nonzero");
  }

  i64 discriminant() const { return coeff[0] * coeff[1] * coeff[2] * coeff[3]; }

  i64 evaluate(const std::array<i64, 4>& x) const {
    i64 v = 0;
    for (int i = 0; i < 4; ++i) v += coeff[i] * x[i] * x[i];
    return v;
  }

  int coeff_valuation(int i, i64 p) const { return valuation(coeff[i], p); }
};

struct OffsetVector {
  i64 c1;
  std::array<i64, 3> rest;  // (c2, c3, c4)
};

// e_q(x) = exp(2 pi i x / q); table of q-th roots of unity for hot loops.
class UnitRoots {
 public:
  explicit UnitRoots(i64 q) : q_(q), roots_(std::size_t(q)) {
    for (i64 r = 0; r < q; ++r) {
      double t = 2.0 * std::numbers::pi * double(r) / double(q);
      roots_[std::size_t(r)] = {std::cos(t), std::sin(t)};
    }
  }
  cplx operator()(i64 x) const { return roots_[std::size_t(mod_reduce(x, q_))]; }
  i64 modulus() const { return q_; }

 private:
  i64 q_;
  std::vector<cplx> roots_;
};

inline cplx unit_root(i64 x, i64 q) {
  double t = 2.0 * std::numbers::pi * double(mod_reduce(x, q)) / double(q);
  return {std::cos(t), std::sin(t)};
}

// ---------------------------------------------------------------------------
// Gauss sums G(s,t;q) = sum_{b mod q} e_q(s b^2 + t b)
// ---------------------------------------------------------------------------

inline cplx gauss_sum_brute(i64 s, i64 t, i64 q) {
  if (q < 1) throw std::domain_error("gauss_sum_brute: q must be positive");
  UnitRoots e(q);
  cplx acc = 0;
  for (i64 b = 0; b < q; ++b) acc += e(mod_mul(mod_reduce(s, q), mod_mul(b, b, q), q) + mod_mul(mod_reduce(t, q), b, q));
  return acc;
}

inline cplx gauss_sum_closed(i64 s, i64 t, i64 q) {
  if (q < 1) throw std::domain_error("gauss_sum_closed: q must be positive");
  if (q == 1) return 1.0;
  s = mod_reduce(s, q);
  t = mod_reduce(t, q);
  if (s == 0) return (t == 0) ? cplx(double(q), 0.0) : cplx(0.0, 0.0);
  i64 g = std::gcd(s, q);
  if (g > 1) {
    if (t % g != 0) return 0.0;
    return double(g) * gauss_sum_closed(s / g, t / g, q / g);
  }
  double sq = std::sqrt(double(q));
  if (q % 2 == 1) {
    i64 inv4s = mod_inverse(4 * s % q, q);
    return epsilon_marker(q) * sq * double(jacobi(s, q)) *
           unit_root(-mod_mul(inv4s, mod_mul(t, t, q), q), q);
  }
  if (q % 4 == 2) {
    i64 v = q / 2;
    if (t % 2 == 0) return 0.0;  // delta_t factor
    if (v == 1) return 2.0;
    i64 inv8s = mod_inverse(8 * s % v, v);
    return 2.0 * epsilon_marker(v) * std::sqrt(double(v)) * double(jacobi(2 * s, v)) *
           unit_root(-mod_mul(inv8s, mod_mul(t, t, v), v), v);
  }
  // 4 | q
  if (t % 2 == 1) return 0.0;
  i64 q4 = 4 * q;
  i64 invs = mod_inverse(s, q4);
  cplx eps_s_inv = std::conj(epsilon_marker(s));
  return cplx(1.0, 1.0) * eps_s_inv * sq * double(jacobi(q, s)) *
         unit_root(-mod_mul(invs, mod_mul(t, t, q4), q4), q4);
}

// ---------------------------------------------------------------------------
// Kloosterman and Ramanujan sums
// ---------------------------------------------------------------------------

inline cplx kloosterman(i64 m, i64 n, i64 q) {
  if (q < 1) throw std::domain_error("kloosterman: q must be positive");
  UnitRoots e(q);
  cplx acc = 0;
  for (i64 x = 0; x < q; ++x) {
    if (std::gcd(x, q) != 1 && q != 1) continue;
    i64 xb = q == 1 ? 0 : mod_inverse(x, q);
    acc += e(mod_mul(mod_reduce(m, q), x, q) + mod_mul(mod_reduce(n, q), xb, q));
  }
  return acc;
}

inline i64 ramanujan_sum(i64 q, i64 m) {
  if (q < 1) throw std::domain_error("ramanujan_sum: q must be positive");
  i64 g = std::gcd(q, mod_reduce(m, q));
  if (g == 0) g = q;
  // c_q(m) = sum_{d | (q,m)} d mu(q/d)
  i64 acc = 0;
  Factorization fg = factorize(g);
  std::vector<i64> divisors{1};
  for (const auto& en : fg.entries) {
    std::size_t base = divisors.size();
    i64 pk = 1;
    for (int i = 1; i <= en.exponent; ++i) {
      pk *= en.prime;
      for (std::size_t j = 0; j < base; ++j) divisors.push_back(divisors[j] * pk);
    }
  }
  for (i64 d : divisors) acc += d * multiplicative_basics(q / d).mobius;
  return acc;
}

// c_{p^k}(m) given only v_p(m); avoids forming m when it would overflow.
inline double ramanujan_prime_power(i64 p, int k, int vp_m) {
  if (k == 0) return 1.0;
  if (vp_m >= k) {
    double phi = std::pow(double(p), k - 1) * double(p - 1);
    return phi;
  }
  if (vp_m == k - 1) return -std::pow(double(p), k - 1);
  return 0.0;
}

// ---------------------------------------------------------------------------
// S^{+-}(p^k, n): twisted unit sums at odd prime powers
// ---------------------------------------------------------------------------

enum class TwistSign { plus, minus };

inline cplx s_plus_minus_brute(i64 p, int k, i64 n, TwistSign sign) {
  if (p < 3 || !is_prime(p)) throw std::domain_error("s_plus_minus: p must be an odd prime");
  i64 q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  UnitRoots e(q);
  i64 n2 = mod_mul(mod_reduce(n, q), mod_reduce(n, q), q);
  cplx acc = 0;
  for (i64 a = 0; a < q; ++a) {
    if (a % p == 0) continue;
    double chi = sign == TwistSign::minus ? double(jacobi(a, p)) : 1.0;
    acc += chi * e(mod_mul(a, n2, q));
  }
  return acc;
}

inline cplx s_plus_minus(i64 p, int k, i64 n, TwistSign sign) {
  if (p < 3 || !is_prime(p)) throw std::domain_error("s_plus_minus: p must be an odd prime");
  int vn = n == 0 ? 2 * k : valuation(n, p);  // treat v_p(0) as large
  int vn2 = 2 * vn;
  if (sign == TwistSign::plus) return ramanujan_prime_power(p, k, vn2);
  if (k % 2 == 0) return 0.0;
  if (vn2 != k - 1) return 0.0;
  // n^2 / p^(k-1) is a unit square, so its Legendre symbol is 1; keep the
  // symbol explicit for clarity on general input.
  i64 unit = 1;
  if (n != 0) {
    i64 red = n;
    for (int i = 0; i < vn; ++i) red /= p;
    unit = mod_mul(mod_reduce(red, p), mod_reduce(red, p), p);
  }
  return epsilon_marker(p) * std::pow(double(p), double(k) - 0.5) * double(jacobi(unit, p));
}

// ---------------------------------------------------------------------------
// Condition A0 and the Jacobi-symbol product J(q)
// ---------------------------------------------------------------------------

inline bool condition_a0(const Factorization& qf, const std::array<i64, 4>& l, i64 delta) {
  for (const auto& en : qf.entries) {
    i64 p = en.prime;
    int k = en.exponent;
    std::array<int, 4> v;
    for (int i = 0; i < 4; ++i) v[i] = valuation(l[i], p);
    if (p == 2) {
      if (k < 3 + *std::max_element(v.begin(), v.end())) return false;
    } else if (delta % p != 0) {
      if (k < *std::max_element(v.begin(), v.end())) return false;
    } else {
      if (k < std::max({2 + v[0], v[1], v[2], v[3]})) return false;
    }
  }
  return true;
}

inline bool condition_a0(i64 q, const std::array<i64, 4>& l, i64 delta) {
  return condition_a0(factorize(q), l, delta);
}

inline bool condition_a0(const DiagonalForm& F, i64 q) {
  return condition_a0(q, F.coeff, F.discriminant());
}

// (2/m) for odd m, via m mod 8.
inline int kronecker2(i64 m) {
  i64 r = mod_reduce(m, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

inline double jacobi_product_J_prime_power(const DiagonalForm& F, i64 p, int k) {
  std::array<int, 4> a;
  std::array<i64, 4> abar;
  for (int i = 0; i < 4; ++i) {
    a[i] = F.coeff_valuation(i, p);
    abar[i] = F.coeff[i];
    for (int j = 0; j < a[i]; ++j) abar[i] /= p;
  }
  double J = 1.0;
  if (p != 2) {
    i64 inv1 = mod_inverse(abar[0], p);
    for (int i = 1; i < 4; ++i) {
      int e = k - a[i];
      if (e % 2 == 1) J *= double(jacobi(mod_mul(inv1, mod_reduce(abar[i], p), p), p));
    }
  } else {
    i64 inv1 = mod_inverse(mod_reduce(abar[0], 8), 8);
    for (int i = 1; i < 4; ++i) {
      int e = k - a[i];
      if (e % 2 == 1) J *= double(kronecker2(inv1 * mod_reduce(abar[i], 8)));
    }
  }
  return J;
}

inline double jacobi_product_J(const DiagonalForm& F, const Factorization& qf) {
  if (!condition_a0(qf, F.coeff, F.discriminant()))
    throw std::domain_error("jacobi_product_J: Condition A0 fails");
  double J = 1.0;
  for (const auto& en : qf.entries) J *= jacobi_product_J_prime_power(F, en.prime, en.exponent);
  return J;
}

inline double jacobi_product_J(const DiagonalForm& F, i64 q) {
  return jacobi_product_J(F, factorize(q));
}

// ---------------------------------------------------------------------------
// Closed-form S_q(n) = A_q(n, 0) under Condition A0
// ---------------------------------------------------------------------------

// Odd prime power p^k.  Reduce each inner Gauss sum G(a A_i, 0; p^k) by the
// gcd rule, pull the a-independent factors out, and substitute a -> a/A1bar
// to leave the twisted unit sum S^{+-}(p^{k-a1}, n).
inline cplx sq_closed_odd_prime_power(const DiagonalForm& F, i64 p, int k, i64 n) {
  std::array<int, 4> a;
  std::array<i64, 4> abar;
  for (int i = 0; i < 4; ++i) {
    a[i] = F.coeff_valuation(i, p);
    abar[i] = F.coeff[i];
    for (int j = 0; j < a[i]; ++j) abar[i] /= p;
  }
  i64 inv1 = mod_inverse(abar[0], p);
  cplx pref = 1.0;
  int twist_parity = 0;
  for (int i = 1; i < 4; ++i) {
    int e = k - a[i];
    pref *= std::pow(double(p), 0.5 * double(k + a[i]));
    if (e > 0) {
      i64 pe = 1;
      for (int j = 0; j < e; ++j) pe *= p;
      pref *= epsilon_marker(pe);
      if (e % 2 == 1) {
        pref *= double(jacobi(mod_mul(inv1, mod_reduce(abar[i], p), p), p));
        twist_parity ^= 1;
      }
    }
  }
  int K = k - a[0];
  int vn = valuation(n, p);
  cplx unit_sum;
  if (twist_parity == 0) {
    unit_sum = ramanujan_prime_power(p, K, 2 * vn);
  } else {
    if (K % 2 == 0 || 2 * vn != K - 1)
      unit_sum = 0.0;
    else
      unit_sum = epsilon_marker(p) * std::pow(double(p), double(K) - 0.5);
  }
  return pref * std::pow(double(p), double(a[0])) * unit_sum;
}

// p = 2, k >= 3 + max a_i.  After reducing the three inner Gauss sums and
// substituting a -> a/A1bar, the unit sum collapses to four terms mod 8:
//   S = (1+i)^3 2^{(5k+a2+a3+a4)/2 - 3} 1_{2^{k-3-a1} | n^2}
//       sum_{u in (Z/8)^*} e_8(u m) H(u),
// with m = n^2 / 2^{k-3-a1} and
//   H(u) = prod_{i=2..4} eps^{-1}_{u A1bar^{-1} A_ibar} (2 / u A1bar^{-1} A_ibar)^{k-a_i}.
inline cplx sq_closed_even_prime_power(const DiagonalForm& F, int k, i64 n) {
  std::array<int, 4> a;
  std::array<i64, 4> ubar;  // A1bar^{-1} A_ibar mod 8
  i64 abar0 = F.coeff[0];
  for (int j = 0; j < (a[0] = F.coeff_valuation(0, 2)); ++j) abar0 /= 2;
  i64 inv1 = mod_inverse(mod_reduce(abar0, 8), 8);
  for (int i = 1; i < 4; ++i) {
    a[i] = F.coeff_valuation(i, 2);
    i64 ab = F.coeff[i];
    for (int j = 0; j < a[i]; ++j) ab /= 2;
    ubar[i] = mod_reduce(inv1 * mod_reduce(ab, 8), 8);
  }
  int K = k - a[0];  // >= 3 under A0
  int vn2 = 2 * valuation(n, 2);
  if (vn2 < K - 3) return 0.0;
  int e = vn2 - (K - 3);
  i64 m8 = e >= 3 ? 0 : (i64(1) << e);  // odd part of n^2 is 1 mod 8
  cplx acc = 0;
  for (i64 u : {1, 3, 5, 7}) {
    cplx H = 1.0;
    for (int i = 1; i < 4; ++i) {
      i64 w = mod_reduce(u * ubar[i], 8);
      H *= std::conj(epsilon_marker(w));
      if ((k - a[i]) % 2 == 1) H *= double(kronecker2(w));
    }
    acc += unit_root(u * m8, 8) * H;
  }
  cplx one_plus_i_cubed(-2.0, 2.0);
  double scale = std::pow(2.0, 0.5 * double(5 * k + a[1] + a[2] + a[3]) - 3.0);
  return one_plus_i_cubed * scale * acc;
}

inline cplx sq_closed(const DiagonalForm& F, const Factorization& qf, i64 n) {
  if (!condition_a0(qf, F.coeff, F.discriminant()))
    throw std::domain_error("sq_closed: Condition A0 fails for this modulus");
  cplx v = 1.0;
  for (const auto& en : qf.entries) {
    if (en.prime == 2)
      v *= sq_closed_even_prime_power(F, en.exponent, n);
    else
      v *= sq_closed_odd_prime_power(F, en.prime, en.exponent, n);
    if (v == cplx(0.0)) break;
  }
  return v;
}

inline cplx sq_closed(const DiagonalForm& F, i64 q, i64 n) {
  return sq_closed(F, factorize(q), n);
}

// ---------------------------------------------------------------------------
// Brute oracles for A_q(c) = sum*_a sum_{b' mod q} e_q(a F(c1,b') + b'.c')
// ---------------------------------------------------------------------------

enum class BruteTier { full, factored };

// Per-unit profile P(a) = prod_{i=2..4} sum_b e_q(a A_i b^2 + b c_i);
// A_q(n, c') = sum*_a e_q(a A1 n^2) P(a).  O(q^2) to build.
inline std::vector<cplx> a_q_profile(const DiagonalForm& F, i64 q,
                                     const std::array<i64, 3>& cp) {
  UnitRoots e(q);
  std::vector<cplx> profile(std::size_t(q), cplx(0.0));
  for (i64 a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1 && q != 1) continue;
    cplx prod = 1.0;
    for (int i = 0; i < 3; ++i) {
      cplx inner = 0;
      i64 Ai = mod_reduce(F.coeff[i + 1], q);
      i64 ci = mod_reduce(cp[std::size_t(i)], q);
      for (i64 b = 0; b < q; ++b)
        inner += e(mod_mul(a, mod_mul(Ai, mod_mul(b, b, q), q), q) + mod_mul(ci, b, q));
      prod *= inner;
    }
    profile[std::size_t(a)] = prod;
  }
  return profile;
}

inline cplx a_q_from_profile(const DiagonalForm& F, i64 q, const std::vector<cplx>& profile,
                             i64 c1) {
  UnitRoots e(q);
  i64 A1 = mod_reduce(F.coeff[0], q);
  i64 n2 = mod_mul(mod_reduce(c1, q), mod_reduce(c1, q), q);
  cplx acc = 0;
  for (i64 a = 0; a < q; ++a) {
    if (profile[std::size_t(a)] == cplx(0.0) && !(q == 1 && a == 0)) {
      if (std::gcd(a, q) != 1 && q != 1) continue;
    }
    if (std::gcd(a, q) != 1 && q != 1) continue;
    acc += e(mod_mul(a, mod_mul(A1, n2, q), q)) * profile[std::size_t(a)];
  }
  return acc;
}

inline cplx a_q_brute(const DiagonalForm& F, i64 q, const OffsetVector& c, BruteTier tier) {
  if (q < 1) throw std::domain_error("a_q_brute: q must be positive");
  if (tier == BruteTier::full) {
    if (q > 64) throw capacity_error("a_q_brute: full tier capped at q <= 64");
    UnitRoots e(q);
    cplx acc = 0;
    for (i64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1 && q != 1) continue;
      for (i64 b2 = 0; b2 < q; ++b2)
        for (i64 b3 = 0; b3 < q; ++b3)
          for (i64 b4 = 0; b4 < q; ++b4) {
            i64 fv = mod_reduce(
                mod_reduce(F.coeff[0] % q * mod_mul(mod_reduce(c.c1, q), mod_reduce(c.c1, q), q), q) +
                    mod_mul(mod_reduce(F.coeff[1], q), mod_mul(b2, b2, q), q) +
                    mod_mul(mod_reduce(F.coeff[2], q), mod_mul(b3, b3, q), q) +
                    mod_mul(mod_reduce(F.coeff[3], q), mod_mul(b4, b4, q), q),
                q);
            i64 dot = mod_reduce(mod_mul(b2, mod_reduce(c.rest[0], q), q) +
                                     mod_mul(b3, mod_reduce(c.rest[1], q), q) +
                                     mod_mul(b4, mod_reduce(c.rest[2], q), q),
                                 q);
            acc += e(mod_mul(a, fv, q) + dot);
          }
    }
    return acc;
  }
  if (q > 4000) throw capacity_error("a_q_brute: factored tier capped at q <= 4000");
  auto profile = a_q_profile(F, q, c.rest);
  return a_q_from_profile(F, q, profile, c.c1);
}

// All of S_q(1..q) via one profile; used by the verification grids.
inline std::vector<cplx> sq_brute_table(const DiagonalForm& F, i64 q,
                                        const std::array<i64, 3>& cp = {0, 0, 0}) {
  if (q > 4000) throw capacity_error("sq_brute_table: capped at q <= 4000");
  auto profile = a_q_profile(F, q, cp);
  UnitRoots e(q);
  i64 A1 = mod_reduce(F.coeff[0], q);
  std::vector<cplx> out(std::size_t(q), cplx(0.0));
  for (i64 n = 1; n <= q; ++n) {
    i64 n2 = mod_mul(mod_reduce(n, q), mod_reduce(n, q), q);
    cplx acc = 0;
    for (i64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1 && q != 1) continue;
      acc += e(mod_mul(a, mod_mul(A1, n2, q), q)) * profile[std::size_t(a)];
    }
    out[std::size_t(n - 1)] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// q-decomposition and the (theta, kappa, s_q(F)) structure
// ---------------------------------------------------------------------------

struct QDecomposition {
  i64 q_even = 1;
  i64 q1 = 1;  // odd part, k_p - (a2+a3+a4) odd
  i64 q2 = 1;  // odd part, k_p - (a2+a3+a4) even
  i64 q3 = 1;  // part of q2 with k_p - a1 odd
  i64 q4 = 1;  // part of q2 with k_p - a1 even
};

inline QDecomposition decompose_q(const DiagonalForm& F, i64 q) {
  if (q < 1) throw std::domain_error("decompose_q: q must be positive");
  QDecomposition d;
  for (const auto& en : factorize(q).entries) {
    i64 pk = 1;
    for (int i = 0; i < en.exponent; ++i) pk *= en.prime;
    if (en.prime == 2) {
      d.q_even = pk;
      continue;
    }
    int a1 = F.coeff_valuation(0, en.prime);
    int asum = 0;
    for (int i = 1; i < 4; ++i) asum += F.coeff_valuation(i, en.prime);
    if ((en.exponent - asum) % 2 != 0) {
      d.q1 *= pk;
    } else {
      d.q2 *= pk;
      if ((en.exponent - a1) % 2 != 0)
        d.q3 *= pk;
      else
        d.q4 *= pk;
    }
  }
  return d;
}

struct SqStructure {
  i64 theta;
  i64 kappa;
  cplx s_value;
  double max_violation;  // worst deviation from the indicator model over n in [1,q]
};

// Extract (theta, kappa, s) from the closed form and verify the indicator
// shape over a full period.  Throws if the shape is violated rather than
// patching it up.
inline SqStructure sq_structure(const DiagonalForm& F, i64 q, double tol_scale = 1e-9) {
  Factorization qf = factorize(q);
  if (!condition_a0(qf, F.coeff, F.discriminant()))
    throw std::domain_error("sq_structure: Condition A0 fails");
  std::vector<cplx> vals(std::size_t(q), cplx(0.0));
  for (i64 n = 1; n <= q; ++n) vals[std::size_t(n - 1)] = sq_closed(F, qf, n);
  double bound = std::pow(double(q), 2.5);
  double tol = tol_scale * bound;
  i64 theta = q;
  for (i64 n = 1; n <= q; ++n)
    if (std::abs(vals[std::size_t(n - 1)]) > tol) theta = std::gcd(theta, n);
  // kappa: primes p | q with S_q(theta * p) = 0
  i64 kappa = 1;
  for (const auto& en : qf.entries) {
    i64 m = mod_reduce(theta * en.prime, q);
    if (m == 0) m = q;
    if (std::abs(vals[std::size_t(m - 1)]) <= tol) kappa *= en.prime;
  }
  cplx s = vals[std::size_t(theta - 1)];
  double worst = 0.0;
  for (i64 n = 1; n <= q; ++n) {
    bool on = (n % theta == 0) && std::gcd(n / theta, kappa) == 1;
    cplx expect = on ? s : cplx(0.0);
    worst = std::max(worst, std::abs(vals[std::size_t(n - 1)] - expect));
  }
  if (worst > tol)
    throw std::runtime_error("sq_structure: indicator model violated (worst " +
                             std::to_string(worst) + ")");
  return {theta, kappa, s, worst};
}

// ---------------------------------------------------------------------------
// S_{d,q}(c) = sum*_a sum_{b mod q} e_q(a F(b) + b'.c') S(b1, c1; d)
// ---------------------------------------------------------------------------

inline cplx s_dq_brute(const DiagonalForm& F, i64 d, i64 q, const OffsetVector& c) {
  if (q < 1 || d < 1 || q % d != 0) throw std::domain_error("s_dq_brute: need d | q");
  if (q > 32) throw capacity_error("s_dq_brute: full 5-fold sum capped at q <= 32");
  UnitRoots e(q);
  std::vector<cplx> kl(std::size_t(d), cplx(0.0));
  for (i64 b1 = 0; b1 < d; ++b1) kl[std::size_t(b1)] = kloosterman(b1, c.c1, d);
  cplx acc = 0;
  for (i64 a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1 && q != 1) continue;
    for (i64 b1 = 0; b1 < q; ++b1)
      for (i64 b2 = 0; b2 < q; ++b2)
        for (i64 b3 = 0; b3 < q; ++b3)
          for (i64 b4 = 0; b4 < q; ++b4) {
            i64 fv = mod_reduce(mod_mul(mod_reduce(F.coeff[0], q), mod_mul(b1, b1, q), q) +
                                    mod_mul(mod_reduce(F.coeff[1], q), mod_mul(b2, b2, q), q) +
                                    mod_mul(mod_reduce(F.coeff[2], q), mod_mul(b3, b3, q), q) +
                                    mod_mul(mod_reduce(F.coeff[3], q), mod_mul(b4, b4, q), q),
                                q);
            i64 dot = mod_reduce(mod_mul(b2, mod_reduce(c.rest[0], q), q) +
                                     mod_mul(b3, mod_reduce(c.rest[1], q), q) +
                                     mod_mul(b4, mod_reduce(c.rest[2], q), q),
                                 q);
            acc += e(mod_mul(a, fv, q) + dot) * kl[std::size_t(b1 % d)];
          }
  }
  return acc;
}

// Same sum via distributivity of the exponential over independent b_i.
inline cplx s_dq_factored(const DiagonalForm& F, i64 d, i64 q, const OffsetVector& c) {
  if (q < 1 || d < 1 || q % d != 0) throw std::domain_error("s_dq_factored: need d | q");
  if (q > 512) throw capacity_error("s_dq_factored: capped at q <= 512");
  UnitRoots e(q);
  std::vector<cplx> kl(std::size_t(d), cplx(0.0));
  for (i64 b1 = 0; b1 < d; ++b1) kl[std::size_t(b1)] = kloosterman(b1, c.c1, d);
  cplx acc = 0;
  for (i64 a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1 && q != 1) continue;
    cplx s1 = 0;
    i64 A1 = mod_reduce(F.coeff[0], q);
    for (i64 b1 = 0; b1 < q; ++b1)
      s1 += e(mod_mul(a, mod_mul(A1, mod_mul(b1, b1, q), q), q)) * kl[std::size_t(b1 % d)];
    cplx prod = s1;
    for (int i = 0; i < 3; ++i) {
      cplx si = 0;
      i64 Ai = mod_reduce(F.coeff[i + 1], q);
      i64 ci = mod_reduce(c.rest[std::size_t(i)], q);
      for (i64 b = 0; b < q; ++b)
        si += e(mod_mul(a, mod_mul(Ai, mod_mul(b, b, q), q), q) + mod_mul(ci, b, q));
      prod *= si;
    }
    acc += prod;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// T_q = sum_{r mod q} |T_q(r)|
// ---------------------------------------------------------------------------

struct TqResult {
  std::vector<double> per_r;
  double total = 0.0;
};

inline TqResult t_q_brute(const DiagonalForm& F, i64 q, const std::array<i64, 3>& cp) {
  if (q < 1) throw std::domain_error("t_q_brute: q must be positive");
  if (q > 128) throw capacity_error("t_q_brute: capped at q <= 128");
  UnitRoots e(q);
  // the three c'-twisted quadratic sums depend on a only
  std::vector<cplx> tail(std::size_t(q), cplx(0.0));
  for (i64 a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1 && q != 1) continue;
    cplx prod = 1.0;
    for (int i = 0; i < 3; ++i) {
      cplx si = 0;
      i64 Ai = mod_reduce(F.coeff[i + 1], q);
      i64 ci = mod_reduce(cp[std::size_t(i)], q);
      for (i64 b = 0; b < q; ++b)
        si += e(mod_mul(a, mod_mul(Ai, mod_mul(b, b, q), q), q) + mod_mul(ci, b, q));
      prod *= si;
    }
    tail[std::size_t(a)] = prod;
  }
  TqResult out;
  out.per_r.resize(std::size_t(q));
  i64 A1 = mod_reduce(F.coeff[0], q);
  for (i64 r = 0; r < q; ++r) {
    cplx acc = 0;
    for (i64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1 && q != 1) continue;
      cplx s1 = 0;
      for (i64 b1 = 0; b1 < q; ++b1)
        s1 += e(mod_mul(a, mod_mul(A1, mod_mul(b1, b1, q), q), q) + mod_mul(r, b1, q));
      acc += s1 * tail[std::size_t(a)];
    }
    out.per_r[std::size_t(r)] = std::abs(acc);
    out.total += std::abs(acc);
  }
  return out;
}

// T_p = p^2 sum_r |c_p(F^{-1}(r, c'))| for odd primes p not dividing 2*Delta.
inline TqResult t_q_prime_fast(const DiagonalForm& F, i64 p, const std::array<i64, 3>& cp) {
  if (!is_prime(p) || p == 2) throw std::domain_error("t_q_prime_fast: p must be an odd prime");
  if (F.discriminant() % p == 0)
    throw std::domain_error("t_q_prime_fast: requires p coprime to the discriminant");
  if (p > 997) throw capacity_error("t_q_prime_fast: capped at p <= 997");
  // F^{-1}(r, c') = (A2 A3 A4) r^2 + F^{-1}(0, c')
  i64 lead = F.coeff[1] * F.coeff[2] * F.coeff[3];
  i64 base = F.coeff[2] * F.coeff[3] * cp[0] * cp[0] + F.coeff[1] * F.coeff[3] * cp[1] * cp[1] +
             F.coeff[1] * F.coeff[2] * cp[2] * cp[2];
  TqResult out;
  out.per_r.resize(std::size_t(p));
  double p2 = double(p) * double(p);
  for (i64 r = 0; r < p; ++r) {
    i64 dual = mod_reduce(mod_mul(mod_reduce(lead, p), mod_mul(r, r, p), p) + mod_reduce(base, p), p);
    double v = p2 * std::abs(double(ramanujan_sum(p, dual)));
    out.per_r[std::size_t(r)] = v;
    out.total += v;
  }
  return out;
}

}  // namespace qhl

#endif  // QHL_EXPSUMS_HPP
