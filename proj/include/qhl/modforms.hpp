#ifndef QHL_MODFORMS_HPP
#define QHL_MODFORMS_HPP

// Exact Ramanujan tau coefficients via the pentagonal-number expansion of
// the eta product, normalized eigenvalues lambda(n) = tau(n)/n^{11/2}, the
// two-squares representation count r(n), and twisted partial sums.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "qhl/arith.hpp"

namespace qhl {

inline double i128_to_double(i128 v) {
  bool neg = v < 0;
  u128 x = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
  double d = double(u64(x >> 64)) * 18446744073709551616.0 + double(u64(x));
  return neg ? -d : d;
}

class TauTable {
 public:
  explicit TauTable(i64 limit) : n_(limit) {
    if (limit < 1) throw std::domain_error("TauTable: limit must be positive");
    if (limit > 100000) throw capacity_error("TauTable: limit capped at 1e5");
    build();
  }

  i64 limit() const { return n_; }

  i128 tau(i64 n) const {
    if (n < 1 || n > n_) throw std::domain_error("TauTable::tau: index out of range");
    return tau_[std::size_t(n - 1)];
  }

  double lambda(i64 n) const {
    if (n < 1 || n > n_) throw std::domain_error("TauTable::lambda: index out of range");
    return i128_to_double(tau_[std::size_t(n - 1)]) / std::pow(double(n), 5.5);
  }

  void save(const std::string& path) const {
    const u64 two63 = u64(1) << 63;
    for (i128 t : tau_) {
      u128 mag = t < 0 ? -static_cast<u128>(t) : static_cast<u128>(t);
      if (mag >= two63)
        throw capacity_error("TauTable::save: coefficient exceeds 64-bit cache format");
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("TauTable::save: cannot open " + path);
    std::fwrite("TAUTBL01", 1, 8, f);
    i64 n = n_;
    std::fwrite(&n, sizeof n, 1, f);
    for (i128 t : tau_) {
      i64 v = i64(t);
      std::fwrite(&v, sizeof v, 1, f);
    }
    std::fclose(f);
  }

  static TauTable load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("TauTable::load: cannot open " + path);
    char magic[8];
    i64 n = 0;
    if (std::fread(magic, 1, 8, f) != 8 || std::string(magic, 8) != "TAUTBL01" ||
        std::fread(&n, sizeof n, 1, f) != 1 || n < 1) {
      std::fclose(f);
      throw std::runtime_error("TauTable::load: bad header in " + path);
    }
    TauTable t(private_tag{}, n);
    t.tau_.resize(std::size_t(n));
    for (i64 i = 0; i < n; ++i) {
      i64 v;
      if (std::fread(&v, sizeof v, 1, f) != 1) {
        std::fclose(f);
        throw std::runtime_error("TauTable::load: truncated file " + path);
      }
      t.tau_[std::size_t(i)] = v;
    }
    std::fclose(f);
    return t;
  }

 private:
  struct private_tag {};
  TauTable(private_tag, i64 limit) : n_(limit) {}

  void build() {
    // tau(n) = coefficient of x^{n-1} in prod (1-x^m)^24.
    // The single eta factor is sparse (pentagonal numbers), so raise to the
    // 24th power by 24 sparse multiplies into a dense accumulator.
    std::size_t len = std::size_t(n_);
    std::vector<std::pair<i64, int>> pent;  // (index, sign)
    pent.push_back({0, 1});
    for (i64 k = 1;; ++k) {
      i64 g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      int s = (k % 2 == 0) ? 1 : -1;
      bool any = false;
      if (g1 < n_) pent.push_back({g1, s}), any = true;
      if (g2 < n_) pent.push_back({g2, s}), any = true;
      if (!any) break;
    }
    std::vector<i128> cur(len, 0);
    cur[0] = 1;
    std::vector<i128> next(len);
    for (int rep = 0; rep < 24; ++rep) {
      std::fill(next.begin(), next.end(), i128(0));
      for (auto [g, s] : pent) {
        if (s > 0)
          for (std::size_t i = std::size_t(g); i < len; ++i) next[i] += cur[i - std::size_t(g)];
        else
          for (std::size_t i = std::size_t(g); i < len; ++i) next[i] -= cur[i - std::size_t(g)];
      }
      cur.swap(next);
    }
    tau_ = std::move(cur);
  }

  i64 n_;
  std::vector<i128> tau_;
};

inline bool hecke_convolution_check(const TauTable& t, i64 m, i64 n, double rel_tol = 1e-9) {
  if (m < 1 || n < 1 || m * n > t.limit())
    throw std::domain_error("hecke_convolution_check: mn out of table range");
  double rhs = 0.0;
  i64 g = std::gcd(m, n);
  for (i64 d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    int mu = multiplicative_basics(d).mobius;
    if (mu == 0) continue;
    rhs += mu * t.lambda(m / d) * t.lambda(n / d);
  }
  double lhs = t.lambda(m * n);
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) <= rel_tol * scale;
}

// r(n) = #{(a,b) in Z^2 : a^2+b^2 = n}; 4 sum_{d|n} chi4(d) for n >= 1.
inline i64 r_two_squares(i64 n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  if (n > 100000000) throw capacity_error("r_two_squares: capped at 1e8");
  i64 acc = 1;  // product over odd primes of the divisor-sum factor
  for (const auto& en : factorize(n).entries) {
    if (en.prime == 2) continue;
    if (en.prime % 4 == 1) {
      acc *= en.exponent + 1;
    } else {
      if (en.exponent % 2 == 1) return 0;
    }
  }
  return 4 * acc;
}

inline i64 r_two_squares_brute(i64 n) {
  if (n < 0) return 0;
  i64 count = 0;
  for (i64 a = 0; a * a <= n; ++a) {
    i64 rem = n - a * a;
    i64 b = i64(std::sqrt(double(rem)));
    while (b * b > rem) --b;
    while ((b + 1) * (b + 1) <= rem) ++b;
    if (b * b == rem) {
      i64 ways = (a == 0 ? 1 : 2) * (b == 0 ? 1 : 2);
      if (a == 0 && b == 0) ways = 1;
      count += ways;
    }
  }
  return count;
}

struct TwistedSumResult {
  cplx value;
  double wilton_ratio;  // |S| / (sqrt(z) log z), z >= 2
};

inline TwistedSumResult twisted_sum(const TauTable& t, i64 z, double alpha) {
  if (z < 1) throw std::domain_error("twisted_sum: z must be positive");
  if (z > t.limit()) throw capacity_error("twisted_sum: z exceeds table limit");
  cplx acc = 0;
  for (i64 n = 1; n <= z; ++n) {
    double ph = 2.0 * std::numbers::pi * alpha * double(n);
    acc += t.lambda(n) * cplx(std::cos(ph), std::sin(ph));
  }
  double ratio = z >= 2 ? std::abs(acc) / (std::sqrt(double(z)) * std::log(double(z))) : 0.0;
  return {acc, ratio};
}

}  // namespace qhl

#endif  // QHL_MODFORMS_HPP
