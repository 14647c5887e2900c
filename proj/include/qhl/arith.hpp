#ifndef QHL_ARITH_HPP
#define QHL_ARITH_HPP

// Exact integer arithmetic: factorization, Jacobi symbols, modular
// inverses, CRT, and the unit markers delta_n / epsilon_n used by the
// quadratic Gauss sum evaluations.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;
using cplx = std::complex<double>;

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
  std::string s;
  while (x) {
    s.push_back(char('0' + int(x % 10)));
    x /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

inline i64 mod_reduce(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mod_mul(i64 a, i64 b, i64 m) {
  return i64((i128(a) * b) % m);
}

inline i64 mod_pow(i64 b, i64 e, i64 m) {
  b = mod_reduce(b, m);
  i64 r = m == 1 ? 0 : 1;
  while (e > 0) {
    if (e & 1) r = mod_mul(r, b, m);
    b = mod_mul(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's cycle variant; n must be odd composite with no small factors.
inline i64 pollard_rho(i64 n) {
  for (i64 c = 1;; ++c) {
    auto f = [&](i64 x) { return mod_reduce(mod_mul(x, x, n) + c, n); };
    i64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(std::abs(x - y), n);
    }
    if (d != n) return d;
  }
}

struct FactorEntry {
  i64 prime;
  int exponent;
};

struct Factorization {
  std::vector<FactorEntry> entries;  // primes strictly increasing

  i64 value() const {
    i64 v = 1;
    for (const auto& e : entries)
      for (int i = 0; i < e.exponent; ++i) v *= e.prime;
    return v;
  }
  int exponent_of(i64 p) const {
    for (const auto& e : entries)
      if (e.prime == p) return e.exponent;
    return 0;
  }
};

inline Factorization factorize(i64 n) {
  if (n <= 0) throw std::domain_error("factorize: argument must be positive");
  Factorization f;
  auto add = [&](i64 p, int e) {
    if (e > 0) f.entries.push_back({p, e});
  };
  for (i64 p : {i64(2), i64(3), i64(5)}) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    add(p, e);
  }
  for (i64 p = 7; p <= 1000 && p * p <= n; p += 2) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    add(p, e);
  }
  std::vector<i64> stack;
  if (n > 1) stack.push_back(n);
  std::vector<i64> primes;
  while (!stack.empty()) {
    i64 m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      primes.push_back(m);
      continue;
    }
    i64 d = pollard_rho(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    add(primes[i], int(j - i));
    i = j;
  }
  std::sort(f.entries.begin(), f.entries.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return a.prime < b.prime; });
  return f;
}

inline int valuation(i64 n, i64 p) {
  if (n == 0) throw std::domain_error("valuation: v_p(0) is infinite");
  int v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

inline int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi: modulus must be odd and positive");
  a = mod_reduce(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

inline i64 mod_inverse(i64 a, i64 q) {
  if (q <= 0) throw std::domain_error("mod_inverse: modulus must be positive");
  i64 r0 = q, r1 = mod_reduce(a, q);
  i64 s0 = 0, s1 = 1;
  while (r1 != 0) {
    i64 k = r0 / r1;
    r0 -= k * r1;
    std::swap(r0, r1);
    s0 -= k * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: argument not invertible");
  return mod_reduce(s0, q);
}

struct MultiplicativeBasics {
  i64 phi;
  int mobius;
  i64 squarefree_kernel;  // s(n)
  i64 rho;                // prod p^ceil(k/2)
};

inline MultiplicativeBasics multiplicative_basics(const Factorization& f) {
  MultiplicativeBasics b{1, 1, 1, 1};
  for (const auto& e : f.entries) {
    i64 pk1 = 1;
    for (int i = 0; i < e.exponent - 1; ++i) pk1 *= e.prime;
    b.phi *= pk1 * (e.prime - 1);
    b.mobius = e.exponent > 1 ? 0 : -b.mobius;
    b.squarefree_kernel *= e.prime;
    i64 r = 1;
    for (int i = 0; i < (e.exponent + 1) / 2; ++i) r *= e.prime;
    b.rho *= r;
  }
  return b;
}

inline MultiplicativeBasics multiplicative_basics(i64 n) {
  return multiplicative_basics(factorize(n));
}

struct CrtResult {
  i64 residue;
  i64 modulus;
};

inline CrtResult crt_combine(const std::vector<std::pair<i64, i64>>& congruences) {
  i64 r = 0, m = 1;
  for (auto [ri, mi] : congruences) {
    if (mi <= 0) throw std::domain_error("crt_combine: moduli must be positive");
    if (std::gcd(m, mi) != 1) throw std::domain_error("crt_combine: moduli not coprime");
    ri = mod_reduce(ri, mi);
    // x = r + m*k with r + m*k == ri (mod mi)
    i64 k = mod_mul(mod_reduce(ri - r, mi), mod_inverse(m, mi), mi);
    r = r + m * k;
    m = m * mi;
    r = mod_reduce(r, m);
  }
  return {r, m};
}

// delta_n: parity marker, 1 for odd n.
inline int delta_marker(i64 n) { return mod_reduce(n, 2) == 1 ? 1 : 0; }

// epsilon_n: 1 if n = 1 (mod 4), i if n = 3 (mod 4); odd n only.
inline cplx epsilon_marker(i64 n) {
  i64 r = mod_reduce(n, 4);
  if (r == 1) return {1.0, 0.0};
  if (r == 3) return {0.0, 1.0};
  throw std::domain_error("epsilon_marker: argument must be odd");
}

struct UnitMarker {
  int delta;
  cplx epsilon;
};

inline UnitMarker unit_markers(i64 n) { return {delta_marker(n), epsilon_marker(n)}; }

}  // namespace qhl

#endif  // QHL_ARITH_HPP
