#ifndef QHL_SUITES_HPP
#define QHL_SUITES_HPP

// The fourteen verification criteria, each packaged as a function returning a
// VerificationReport plus witness notes.  Shared by the CLI `verify`
// subcommand and the acceptance binary.

#include <chrono>
#include <random>
#include <sstream>

#include "qhl/expsums.hpp"
#include "qhl/modforms.hpp"
#include "qhl/oscint.hpp"
#include "qhl/quadric.hpp"
#include "qhl/report.hpp"

namespace qhl {

struct CriterionResult {
  int index = 0;
  std::string name;
  VerificationReport report;
  std::string note;          // witness values for the human reader
  double time_limit = 0.0;   // seconds; 0 means no budget
  std::string error;         // non-empty if the criterion aborted

  bool passed() const {
    return error.empty() && report.passed() &&
           (time_limit <= 0.0 || report.elapsed_seconds < time_limit);
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline std::string form_tag(const DiagonalForm& F) {
  std::ostringstream os;
  os << "(" << F.coeff[0] << "," << F.coeff[1] << "," << F.coeff[2] << "," << F.coeff[3] << ")";
  return os.str();
}

inline std::vector<DiagonalForm> config_forms(const RunConfig& cfg) {
  std::vector<DiagonalForm> out;
  for (const auto& a : cfg.forms) out.emplace_back(a[0], a[1], a[2], a[3]);
  return out;
}

// one shared eigenvalue table, big enough for every criterion that needs one
inline const TauTable& shared_tau() {
  static TauTable t(40000);
  return t;
}

}  // namespace detail

// 1. Gauss sums: closed form vs brute for all q <= 64 and all (s,t) mod q.
inline CriterionResult criterion_gauss(const RunConfig& cfg) {
  CriterionResult r{1, "gauss closed vs brute, q <= 64", {}, "", 10.0};
  r.report.suite = "gauss";
  detail::Stopwatch sw;
  for (i64 q = 1; q <= 64; ++q) {
    double tol = 1e-8 * std::sqrt(double(q)) * cfg.tol_mult;
    for (i64 s = 0; s < q; ++s)
      for (i64 t = 0; t < q; ++t) {
        cplx b = gauss_sum_brute(s, t, q);
        cplx c = gauss_sum_closed(s, t, q);
        std::ostringstream os;
        os << "q=" << q << ",s=" << s << ",t=" << t;
        r.report.record(os.str(), 0.0, std::abs(b - c), tol);
      }
  }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "max |closed-brute| = " + detail::double_repr(r.report.max_error);
  return r;
}

// 2. S_q(n) closed form vs factored-tier oracle on all A0 prime powers.
inline CriterionResult criterion_sq_closed(const RunConfig& cfg) {
  CriterionResult r{2, "S_q(n) closed vs factored oracle, prime powers", {}, "", 300.0};
  r.report.suite = "sq_closed";
  detail::Stopwatch sw;
  i64 structure_violations = 0;
  for (const auto& F : detail::config_forms(cfg))
    for (i64 p : cfg.primes)
      for (i64 q = p; q <= cfg.prime_power_cap; q *= p) {
        if (!condition_a0(F, q)) continue;
        Factorization qf = factorize(q);
        double tol = 1e-6 * std::pow(double(q), 2.5) * cfg.tol_mult;
        auto brute = sq_brute_table(F, q);
        for (i64 n = 1; n <= q; ++n) {
          cplx c = sq_closed(F, qf, n);
          std::ostringstream os;
          os << "F=" << detail::form_tag(F) << ",q=" << q << ",n=" << n;
          r.report.record(os.str(), 0.0, std::abs(c - brute[std::size_t(n - 1)]), tol);
        }
        try {
          sq_structure(F, q);
        } catch (const std::exception&) {
          ++structure_violations;
          r.report.record_flag("structure:F=" + detail::form_tag(F) + ",q=" + std::to_string(q),
                               false);
        }
        if (q > cfg.prime_power_cap / p) break;  // avoid overflow on q *= p
      }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "structure violations = " + std::to_string(structure_violations) +
           ", max error = " + detail::double_repr(r.report.max_error);
  return r;
}

// 3. Factored-tier oracle vs full brute oracle, q <= 30, all n in [1,q].
inline CriterionResult criterion_tiers(const RunConfig& cfg) {
  CriterionResult r{3, "factored tier vs full brute tier, q <= 30", {}, "", 0.0};
  r.report.suite = "tiers";
  detail::Stopwatch sw;
  for (const auto& F : detail::config_forms(cfg))
    for (i64 q = 1; q <= 30; ++q) {
      double tol = 1e-8 * double(q) * double(q) * cfg.tol_mult;
      for (i64 n = 1; n <= q; ++n) {
        OffsetVector c{n, {0, 0, 0}};
        cplx full = a_q_brute(F, q, c, BruteTier::full);
        cplx fact = a_q_brute(F, q, c, BruteTier::factored);
        std::ostringstream os;
        os << "F=" << detail::form_tag(F) << ",q=" << q << ",n=" << n;
        r.report.record(os.str(), 0.0, std::abs(full - fact), tol);
      }
    }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "max |full-factored| = " + detail::double_repr(r.report.max_error);
  return r;
}

// 4. Multiplicativity of S_{d,q} and A_q over random coprime splittings.
inline CriterionResult criterion_multiplicativity(const RunConfig& cfg) {
  CriterionResult r{4, "S_dq and A_q multiplicativity, 200 random splittings each", {}, "", 0.0};
  r.report.suite = "multiplicativity";
  detail::Stopwatch sw;
  auto forms = detail::config_forms(cfg);
  std::mt19937_64 rng(cfg.seed);
  auto inv_or_zero = [](i64 a, i64 m) {
    return m == 1 ? i64(0) : mod_inverse(mod_reduce(a, m), m);
  };

  // A_q(c) = A_{v1}(c1, v2bar c') A_{v2}(c1, v1bar c')
  int done = 0;
  while (done < 200) {
    i64 v1 = 2 + i64(rng() % 30), v2 = 2 + i64(rng() % 30);
    if (std::gcd(v1, v2) != 1 || v1 * v2 > 900) continue;
    i64 q = v1 * v2;
    const DiagonalForm& F = forms[std::size_t(done) % forms.size()];
    OffsetVector c{i64(rng() % u64(q)),
                   {i64(rng() % u64(q)), i64(rng() % u64(q)), i64(rng() % u64(q))}};
    i64 v2b = inv_or_zero(v2, v1), v1b = inv_or_zero(v1, v2);
    OffsetVector c_1{c.c1, {v2b * c.rest[0], v2b * c.rest[1], v2b * c.rest[2]}};
    OffsetVector c_2{c.c1, {v1b * c.rest[0], v1b * c.rest[1], v1b * c.rest[2]}};
    cplx lhs = a_q_brute(F, q, c, BruteTier::factored);
    cplx rhs = a_q_brute(F, v1, c_1, BruteTier::factored) *
               a_q_brute(F, v2, c_2, BruteTier::factored);
    std::ostringstream os;
    os << "A_q:F=" << detail::form_tag(F) << ",v1=" << v1 << ",v2=" << v2;
    r.report.record(os.str(), 0.0, std::abs(lhs - rhs),
                    1e-6 * std::max(1.0, std::abs(lhs)) * cfg.tol_mult);
    ++done;
  }

  // S_{d,q}(c) = S_{u1,v1}(u2bar^2 c1, v2bar c') S_{u2,v2}(u1bar^2 c1, v1bar c')
  done = 0;
  while (done < 200) {
    i64 v1 = 1 + i64(rng() % 20), v2 = 1 + i64(rng() % 20);
    if (std::gcd(v1, v2) != 1 || v1 * v2 > 400 || v1 * v2 == 1) continue;
    auto random_divisor = [&](i64 v) {
      std::vector<i64> ds;
      for (i64 d = 1; d <= v; ++d)
        if (v % d == 0) ds.push_back(d);
      return ds[rng() % ds.size()];
    };
    i64 u1 = random_divisor(v1), u2 = random_divisor(v2);
    i64 d = u1 * u2, q = v1 * v2;
    const DiagonalForm& F = forms[std::size_t(done) % forms.size()];
    OffsetVector c{i64(rng() % u64(q)),
                   {i64(rng() % u64(q)), i64(rng() % u64(q)), i64(rng() % u64(q))}};
    i64 u2b = inv_or_zero(u2, u1), u1b = inv_or_zero(u1, u2);
    i64 v2b = inv_or_zero(v2, v1), v1b = inv_or_zero(v1, v2);
    OffsetVector c_1{u1 == 1 ? 0 : mod_mul(mod_mul(u2b, u2b, u1), c.c1, u1),
                     {v2b * c.rest[0], v2b * c.rest[1], v2b * c.rest[2]}};
    OffsetVector c_2{u2 == 1 ? 0 : mod_mul(mod_mul(u1b, u1b, u2), c.c1, u2),
                     {v1b * c.rest[0], v1b * c.rest[1], v1b * c.rest[2]}};
    cplx lhs = s_dq_factored(F, d, q, c);
    cplx rhs = s_dq_factored(F, u1, v1, c_1) * s_dq_factored(F, u2, v2, c_2);
    std::ostringstream os;
    os << "S_dq:F=" << detail::form_tag(F) << ",u1=" << u1 << ",v1=" << v1 << ",u2=" << u2
       << ",v2=" << v2;
    r.report.record(os.str(), 0.0, std::abs(lhs - rhs),
                    1e-6 * std::max(1.0, std::abs(lhs)) * cfg.tol_mult);
    ++done;
  }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "max splitting defect = " + detail::double_repr(r.report.max_error);
  return r;
}

// 5. Collapse: A_q(n, c') = S_q(n) on null offsets.
inline CriterionResult criterion_collapse(const RunConfig& cfg) {
  CriterionResult r{5, "A_q collapse to S_q on null offsets", {}, "", 0.0};
  r.report.suite = "collapse";
  detail::Stopwatch sw;
  struct Case {
    DiagonalForm F;
    std::array<i64, 3> cp;
  };
  std::vector<Case> cases = {
      {{1, 1, 1, -1}, {3, 4, 5}}, {{2, 1, 1, -1}, {5, 12, 13}}, {{3, 1, 1, -1}, {3, 4, 5}}};
  i64 covered = 0;
  for (const auto& cs : cases)
    for (i64 q : {5, 7, 9, 11, 13, 25, 27, 49}) {
      if (!condition_a0(cs.F, q)) continue;
      bool val_ok = true;
      for (int i = 1; i < 4; ++i)
        for (const auto& en : factorize(q).entries)
          if (valuation(cs.cp[std::size_t(i - 1)], en.prime) < cs.F.coeff_valuation(i, en.prime))
            val_ok = false;
      if (!val_ok) continue;
      ++covered;
      double tol = 1e-6 * std::pow(double(q), 2.5) * cfg.tol_mult;
      auto profile = a_q_profile(cs.F, q, cs.cp);
      Factorization qf = factorize(q);
      for (i64 n = 1; n <= q; ++n) {
        cplx lhs = a_q_from_profile(cs.F, q, profile, n);
        cplx rhs = sq_closed(cs.F, qf, n);
        std::ostringstream os;
        os << "F=" << detail::form_tag(cs.F) << ",q=" << q << ",n=" << n;
        r.report.record(os.str(), 0.0, std::abs(lhs - rhs), tol);
      }
    }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "admissible (F,c',q) combinations = " + std::to_string(covered) +
           ", max defect = " + detail::double_repr(r.report.max_error);
  return r;
}

// 6. S_dq vanishing on non-null offsets, and the exact 3p^3 bound at q = p.
inline CriterionResult criterion_vanishing(const RunConfig& cfg) {
  CriterionResult r{6, "S_dq vanishing on non-null offsets at q = p^2", {}, "", 0.0};
  r.report.suite = "vanishing";
  detail::Stopwatch sw;
  DiagonalForm F(1, 1, 1, 1);
  i64 delta = F.discriminant();
  std::vector<std::array<i64, 3>> offsets = {{1, 0, 0}, {1, 1, 0}, {2, 1, 0}, {1, 1, 1}, {0, 2, 1}};
  for (i64 p : {3, 5, 7}) {
    i64 q = p * p;
    double tol = 1e-6 * std::pow(double(q), 3.5) * cfg.tol_mult;
    for (const auto& cp : offsets) {
      i64 dual = dual_form_rest(F, cp);
      if (dual == 0 || (2 * delta * dual) % p == 0) continue;
      for (i64 d : {i64(1), p, q}) {
        cplx v = s_dq_factored(F, d, q, {0, cp});
        std::ostringstream os;
        os << "p=" << p << ",d=" << d << ",c'=(" << cp[0] << "," << cp[1] << "," << cp[2] << ")";
        r.report.record(os.str(), 0.0, std::abs(v), tol);
      }
      // |S_{p,p}(c)| <= 3 p^3, exact on the grid
      for (i64 c1 = 0; c1 < p; ++c1) {
        cplx v = s_dq_factored(F, p, p, {c1, cp});
        std::ostringstream os;
        os << "bound:p=" << p << ",c1=" << c1 << ",c'=(" << cp[0] << "," << cp[1] << "," << cp[2]
           << ")";
        r.report.record(os.str(), 0.0, std::abs(v),
                        3.0 * std::pow(double(p), 3.0) + 1e-6 * cfg.tol_mult);
      }
    }
  }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "max |S_dq| on vanishing grid within tolerance";
  return r;
}

// 7. Tau table: build time, pinned values, Hecke relations, Deligne bound.
inline CriterionResult criterion_tau(const RunConfig& cfg) {
  CriterionResult r{7, "tau table build, Hecke and Deligne checks", {}, "", 120.0};
  r.report.suite = "tau";
  detail::Stopwatch sw;
  TauTable t(cfg.tau_limit);
  double build_secs = sw.seconds();
  const i64 pinned[] = {0, 0, -24, 252, -1472, 4830, -6048, -16744};
  for (i64 n = 2; n <= 7; ++n)
    r.report.record("tau(" + std::to_string(n) + ")", double(pinned[n]), i128_to_double(t.tau(n)),
                    0.0);
  i64 hecke_checked = 0, hecke_bad = 0;
  for (i64 m = 2; m * m <= t.limit(); ++m)
    for (i64 n = m; m * n <= t.limit(); ++n) {
      ++hecke_checked;
      if (!hecke_convolution_check(t, m, n)) {
        ++hecke_bad;
        r.report.record_flag("hecke:m=" + std::to_string(m) + ",n=" + std::to_string(n), false);
      } else
        ++r.report.cases;
    }
  // Deligne: |lambda(n)| <= d(n), via a divisor-count sieve
  std::vector<int> divs(std::size_t(t.limit()) + 1, 0);
  for (i64 d = 1; d <= t.limit(); ++d)
    for (i64 n = d; n <= t.limit(); n += d) ++divs[std::size_t(n)];
  i64 deligne_bad = 0;
  for (i64 n = 1; n <= t.limit(); ++n) {
    if (std::abs(t.lambda(n)) > double(divs[std::size_t(n)]) + 1e-9) {
      ++deligne_bad;
      r.report.record_flag("deligne:n=" + std::to_string(n), false);
    } else
      ++r.report.cases;
  }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "build " + detail::double_repr(build_secs) + "s, hecke pairs " +
           std::to_string(hecke_checked) + " (bad " + std::to_string(hecke_bad) +
           "), deligne bad " + std::to_string(deligne_bad);
  return r;
}

// 8. Voronoi identity q in 1..6 (all residues) and Poisson identity q <= 20.
inline CriterionResult criterion_voronoi_poisson(const RunConfig& cfg) {
  CriterionResult r{8, "Voronoi (q <= 6) and Poisson (q <= 20) identities", {}, "", 180.0};
  r.report.suite = "voronoi_poisson";
  detail::Stopwatch sw;
  const TauTable& t = detail::shared_tau();
  SmoothFunction1D g = scaled_bump(500.0, 2000.0);
  i64 max_trunc = 0;
  for (i64 q = 1; q <= 6; ++q) {
    auto checks = voronoi_suite(q, g, t, 6, 1e-5, cfg.jobs);
    for (i64 b = 0; b < q; ++b) {
      const auto& c = checks[std::size_t(b)];
      max_trunc = std::max(max_trunc, c.truncation);
      std::ostringstream os;
      os << "voronoi:q=" << q << ",b=" << b;
      r.report.record(os.str(), 0.0, c.abs_diff,
                      1e-4 * (1.0 + std::abs(c.lhs)) * cfg.tol_mult);
    }
  }
  SmoothFunction1D w = scaled_bump(500.0, 2000.0);
  for (i64 q = 1; q <= 20; ++q)
    for (i64 b : {i64(0), i64(1), q / 2, q - 1}) {
      if (b >= q) continue;
      auto c = poisson_check(q, b, w);
      std::ostringstream os;
      os << "poisson:q=" << q << ",b=" << b;
      r.report.record(os.str(), 0.0, c.abs_diff, 1e-6 * (1.0 + std::abs(c.lhs)) * cfg.tol_mult);
    }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "max dual truncation M = " + std::to_string(max_trunc) +
           ", max residual = " + detail::double_repr(r.report.max_error);
  return r;
}

// 9. Dissection identity at three widths and five probe points.
inline CriterionResult criterion_dissection(const RunConfig& cfg) {
  CriterionResult r{9, "dissection identity residuals", {}, "", 0.0};
  r.report.suite = "dissection";
  detail::Stopwatch sw;
  SmoothWeight w;
  std::vector<std::array<double, 4>> probes = {{1.25, 1.25, 1.25, 1.25},
                                               {1.0, 1.4, 0.9, 1.6},
                                               {0.8, 1.1, 1.3, 1.9},
                                               {1.5, 1.5, 0.75, 1.0},
                                               {3.0, 3.0, 3.0, 3.0}};
  for (double delta : {1.0, 0.5, 0.25})
    for (std::size_t i = 0; i < probes.size(); ++i) {
      double res = dissection_check(w, delta, probes[i]);
      std::ostringstream os;
      os << "delta=" << delta << ",probe=" << i;
      r.report.record(os.str(), 0.0, res, 1e-6 * delta * delta * delta * cfg.tol_mult);
    }
  r.report.elapsed_seconds = sw.seconds();
  r.note = "max residual = " + detail::double_repr(r.report.max_error);
  return r;
}

// 10. Eigenvalue cancellation trend over the quadric.
inline CriterionResult criterion_cancellation(const RunConfig& cfg) {
  CriterionResult r{10, "cancellation trend |N(lambda;X)| / N(|lambda|;X)", {}, "", 120.0};
  r.report.suite = "cancellation";
  detail::Stopwatch sw;
  DiagonalForm F(1, 1, 1, -1);
  auto res = cancellation_experiment(F, cfg.x_list, detail::shared_tau());
  const auto& first = res.rows.front();
  const auto& last = res.rows.back();
  r.report.record_flag("ratio decreases", last.ratio < first.ratio);
  r.report.record_flag("final ratio < 0.5", last.ratio < 0.5);
  r.report.record_flag("exponent gap >= 0.05",
                       res.exponent_lambda <= res.exponent_abs_lambda - 0.05);
  r.report.elapsed_seconds = sw.seconds();
  std::ostringstream os;
  os << "ratio " << detail::double_repr(first.ratio) << " -> " << detail::double_repr(last.ratio)
     << ", exponents " << detail::double_repr(res.exponent_lambda) << " vs "
     << detail::double_repr(res.exponent_abs_lambda);
  r.note = os.str();
  return r;
}

// 11. Stationary phase: scaling at the stationary point, decay without one.
inline CriterionResult criterion_stationary_phase(const RunConfig& cfg) {
  CriterionResult r{11, "stationary phase scaling and non-stationary decay", {}, "", 0.0};
  r.report.suite = "stationary_phase";
  detail::Stopwatch sw;
  SmoothFunction1D w = poly_window(0.5, 2.0);
  std::vector<double> scaled;
  for (double A : {1e2, 1e3, 1e4}) {
    double v = std::abs(phase_integral(A, -2.0 * A, w)) * std::sqrt(A);
    scaled.push_back(v);
    std::ostringstream os;
    os << "stationary:A=" << A;
    r.report.record_flag(os.str(), v > 0.05 * cfg.tol_mult && v < 5.0 / cfg.tol_mult);
  }
  double prev = std::abs(phase_integral(1e2, 0.0, w));
  for (double A : {1e3, 1e4}) {
    double cur = std::abs(phase_integral(A, 0.0, w));
    std::ostringstream os;
    os << "decay:A=" << A;
    r.report.record_flag(os.str(), cur * 50.0 <= prev);
    prev = cur;
  }
  r.report.elapsed_seconds = sw.seconds();
  std::ostringstream os;
  os << "|I| sqrt(A) = " << detail::double_repr(scaled[0]) << ", "
     << detail::double_repr(scaled[1]) << ", " << detail::double_repr(scaled[2]);
  r.note = os.str();
  return r;
}

// 12. Enumeration method equivalence and meet-in-middle throughput.
inline CriterionResult criterion_enumeration(const RunConfig& cfg) {
  CriterionResult r{12, "naive vs meet-in-middle zero sets; X = 2000 run", {}, "", 0.0};
  r.report.suite = "enumeration";
  detail::Stopwatch sw;
  for (const auto& F : detail::config_forms(cfg)) {
    bool pos = true, neg = true;
    for (i64 a : F.coeff) (a > 0 ? neg : pos) = false;
    if (pos || neg) continue;  // definite forms have no zeros; nothing to compare
    for (i64 X = 1; X <= 40; ++X) {
      auto a = enumerate_zeros(F, X, EnumMethod::naive);
      auto b = enumerate_zeros(F, X, EnumMethod::meet_in_middle);
      std::ostringstream os;
      os << "F=" << detail::form_tag(F) << ",X=" << X;
      r.report.record_flag(os.str(), a == b);
    }
  }
  detail::Stopwatch big;
  auto big_count = weighted_count(DiagonalForm(1, 1, 1, -1), 2000, WeightChoice::unit, {}, nullptr);
  double big_secs = big.seconds();
  r.report.record("mitm X=2000 runtime", 0.0, big_secs, 60.0);
  r.report.elapsed_seconds = sw.seconds();
  r.note = "X=2000 zeros = " + std::to_string(big_count.zero_count) + " in " +
           detail::double_repr(big_secs) + "s";
  return r;
}

// 13. Closed-form throughput at a large squarefull modulus.
inline CriterionResult criterion_throughput(const RunConfig& cfg) {
  CriterionResult r{13, "sq_closed under 1 ms at q = 3^5 5^4 7^3 13^2", {}, "", 0.0};
  r.report.suite = "throughput";
  detail::Stopwatch sw;
  DiagonalForm F(1, 1, 1, 1);
  Factorization qf;
  qf.entries = {{3, 5}, {5, 4}, {7, 3}, {13, 2}};
  i64 q = qf.value();
  volatile double sink = 0.0;
  const int calls = 10000;
  detail::Stopwatch inner;
  for (int i = 0; i < calls; ++i) sink = sink + std::abs(sq_closed(F, qf, 1 + (i64(i) * 9973) % q));
  double avg_ms = inner.seconds() * 1000.0 / calls;
  r.report.record("avg call time (ms)", 0.0, avg_ms, 1.0 * cfg.tol_mult);
  r.report.elapsed_seconds = sw.seconds();
  r.note = "q = " + std::to_string(q) + ", avg " + detail::double_repr(avg_ms) + " ms/call";
  return r;
}

// 14. T_q: fast prime path vs brute, plus the recorded size witness.
inline CriterionResult criterion_tq(const RunConfig& cfg) {
  CriterionResult r{14, "T_q fast prime path vs brute; size witness", {}, "", 0.0};
  r.report.suite = "tq";
  detail::Stopwatch sw;
  DiagonalForm F(1, 1, 1, 1);
  std::array<i64, 3> cp{1, 0, 0};
  for (i64 p : {3, 5, 7, 11, 13}) {
    auto brute = t_q_brute(F, p, cp);
    auto fast = t_q_prime_fast(F, p, cp);
    r.report.record("p=" + std::to_string(p), brute.total, fast.total,
                    1e-6 * std::pow(double(p), 4.0) * cfg.tol_mult);
  }
  double total = 0.0;
  for (i64 q = 1; q <= 60; ++q) total += t_q_brute(F, q, cp).total;
  double witness = total / std::pow(60.0, 4.0);
  r.report.elapsed_seconds = sw.seconds();
  r.note = "sum_{q<=60} T_q / 60^4 = " + detail::double_repr(witness);
  return r;
}

inline std::vector<CriterionResult> run_acceptance(const RunConfig& cfg) {
  cfg.validate();
  using Fn = CriterionResult (*)(const RunConfig&);
  const Fn fns[] = {criterion_gauss,        criterion_sq_closed,
                    criterion_tiers,        criterion_multiplicativity,
                    criterion_collapse,     criterion_vanishing,
                    criterion_tau,          criterion_voronoi_poisson,
                    criterion_dissection,   criterion_cancellation,
                    criterion_stationary_phase, criterion_enumeration,
                    criterion_throughput,   criterion_tq};
  std::vector<CriterionResult> out;
  int idx = 1;
  for (Fn f : fns) {
    try {
      out.push_back(f(cfg));
    } catch (const std::exception& e) {
      CriterionResult bad;
      bad.index = idx;
      bad.name = "criterion " + std::to_string(idx);
      bad.error = e.what();
      out.push_back(bad);
    }
    ++idx;
  }
  return out;
}

inline std::vector<int> suite_criteria(const std::string& name) {
  if (name == "expsums") return {1, 2, 3, 4, 5, 6, 13, 14};
  if (name == "modforms") return {7};
  if (name == "quadric") return {10, 12};
  if (name == "oscint") return {8, 9, 11};
  if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
  throw std::domain_error("unknown suite '" + name + "'");
}

inline VerificationReport run_suite(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  auto wanted = suite_criteria(name);
  using Fn = CriterionResult (*)(const RunConfig&);
  const Fn fns[] = {criterion_gauss,        criterion_sq_closed,
                    criterion_tiers,        criterion_multiplicativity,
                    criterion_collapse,     criterion_vanishing,
                    criterion_tau,          criterion_voronoi_poisson,
                    criterion_dissection,   criterion_cancellation,
                    criterion_stationary_phase, criterion_enumeration,
                    criterion_throughput,   criterion_tq};
  VerificationReport agg;
  agg.suite = name;
  for (int i : wanted) agg.merge(fns[i - 1](cfg).report);
  return agg;
}

}  // namespace qhl

#endif  // QHL_SUITES_HPP
