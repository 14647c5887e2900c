#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "qhl/expsums.hpp"

using namespace qhl;

static const std::vector<DiagonalForm> kForms = {
    {1, 1, 1, 1}, {1, 1, 1, -1}, {1, 2, 3, -6}, {2, 3, 5, 7}, {3, 1, 1, -1}};

TEST_CASE("gauss sum examples") {
  CHECK(std::abs(gauss_sum_brute(1, 0, 1) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(gauss_sum_brute(1, 0, 3) - cplx(0, std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(gauss_sum_brute(2, 0, 4)) < 1e-12);
  CHECK(std::abs(gauss_sum_closed(1, 1, 4)) < 1e-12);
  CHECK(std::abs(gauss_sum_closed(1, 0, 3) - cplx(0, std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(gauss_sum_closed(2, 2, 4) - gauss_sum_brute(2, 2, 4)) < 1e-10);
}

TEST_CASE("gauss closed matches brute, q <= 36") {
  for (i64 q = 1; q <= 36; ++q) {
    double tol = 1e-8 * std::sqrt(double(q));
    for (i64 s = 0; s < q; ++s)
      for (i64 t = 0; t < q; ++t) {
        cplx b = gauss_sum_brute(s, t, q);
        cplx c = gauss_sum_closed(s, t, q);
        INFO("q=" << q << " s=" << s << " t=" << t);
        REQUIRE(std::abs(b - c) < tol);
      }
  }
}

TEST_CASE("gauss magnitude for odd q") {
  for (i64 q = 1; q <= 99; q += 2)
    for (i64 s = 1; s < q; ++s) {
      if (std::gcd(s, q) != 1) continue;
      REQUIRE(std::abs(std::abs(gauss_sum_closed(s, 0, q)) - std::sqrt(double(q))) < 1e-9);
    }
}

TEST_CASE("kloosterman examples and Weil bound") {
  CHECK(std::abs(kloosterman(1, 1, 1) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(kloosterman(1, 1, 2) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(kloosterman(1, 1, 3) - cplx(-1, 0)) < 1e-12);
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                73, 79, 83, 89, 97, 101}) {
    for (i64 m = 1; m < p; ++m)
      for (i64 n = 1; n < p; ++n) {
        cplx s = kloosterman(m, n, p);
        REQUIRE(std::abs(s.imag()) < 1e-8 * p);
        REQUIRE(std::abs(s) <= 2.0 * std::sqrt(double(p)) + 1e-8);
      }
  }
}

TEST_CASE("ramanujan sum") {
  CHECK(ramanujan_sum(1, 5) == 1);
  CHECK(ramanujan_sum(4, 2) == -2);
  CHECK(ramanujan_sum(5, 10) == 4);
  for (i64 q = 1; q <= 40; ++q)
    for (i64 m = 0; m < q; ++m)
      REQUIRE(std::abs(double(ramanujan_sum(q, m)) - kloosterman(m, 0, q).real()) < 1e-8);
  // prime-power valuation form
  for (i64 p : {2, 3, 5})
    for (int k = 1; k <= 4; ++k) {
      i64 q = 1;
      for (int i = 0; i < k; ++i) q *= p;
      for (i64 m = 1; m <= q; ++m)
        REQUIRE(ramanujan_prime_power(p, k, valuation(m, p)) ==
                Catch::Approx(double(ramanujan_sum(q, m))));
    }
}

TEST_CASE("s_plus_minus") {
  CHECK(std::abs(s_plus_minus(3, 2, 1, TwistSign::minus)) < 1e-12);
  CHECK(std::abs(s_plus_minus(3, 1, 1, TwistSign::minus) - cplx(0, std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(s_plus_minus(3, 1, 1, TwistSign::plus) - cplx(-1, 0)) < 1e-12);
  CHECK_THROWS_AS(s_plus_minus(4, 1, 1, TwistSign::plus), std::domain_error);
  for (i64 p : {3, 5, 7})
    for (int k = 1; k <= 3; ++k) {
      i64 q = 1;
      for (int i = 0; i < k; ++i) q *= p;
      for (i64 n = 0; n <= q; ++n)
        for (TwistSign s : {TwistSign::plus, TwistSign::minus}) {
          INFO("p=" << p << " k=" << k << " n=" << n);
          REQUIRE(std::abs(s_plus_minus(p, k, n, s) - s_plus_minus_brute(p, k, n, s)) <
                  1e-7 * std::pow(double(q), 1.5));
        }
    }
}

TEST_CASE("a_q_brute examples and tier agreement") {
  DiagonalForm F(1, 1, 1, 1);
  CHECK(std::abs(a_q_brute(F, 1, {5, {2, 3, 4}}, BruteTier::full) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(a_q_brute(F, 3, {1, {0, 0, 0}}, BruteTier::full) - cplx(9, 0)) < 1e-10);
  CHECK(std::abs(a_q_brute(F, 2, {1, {0, 0, 0}}, BruteTier::full)) < 1e-10);
  CHECK_THROWS_AS(a_q_brute(F, 100, {1, {0, 0, 0}}, BruteTier::full), capacity_error);

  std::mt19937_64 rng(99);
  for (const auto& G : kForms)
    for (i64 q : {2, 3, 4, 5, 6, 8, 9, 12}) {
      OffsetVector c{i64(rng() % u64(q)),
                     {i64(rng() % u64(q)), i64(rng() % u64(q)), i64(rng() % u64(q))}};
      cplx full = a_q_brute(G, q, c, BruteTier::full);
      cplx fact = a_q_brute(G, q, c, BruteTier::factored);
      REQUIRE(std::abs(full - fact) < 1e-8 * double(q) * double(q));
    }
}

TEST_CASE("a_q periodicity in c1") {
  DiagonalForm F(1, 2, 3, -6);
  i64 q = 7;
  for (i64 n = 0; n < q; ++n) {
    OffsetVector a{n, {1, 2, 3}}, b{n + q, {1, 2, 3}};
    REQUIRE(std::abs(a_q_brute(F, q, a, BruteTier::factored) -
                     a_q_brute(F, q, b, BruteTier::factored)) < 1e-9 * double(q * q));
  }
}

TEST_CASE("condition A0") {
  CHECK(condition_a0(3, {1, 1, 1, 1}, 1));
  CHECK_FALSE(condition_a0(4, {1, 1, 1, 1}, 1));
  CHECK(condition_a0(8, {1, 1, 1, 1}, 1));
  CHECK_FALSE(condition_a0(3, {3, 1, 1, 1}, 3));  // p | Delta needs k >= 2 + v_3(l1)
  CHECK(condition_a0(27, {3, 1, 1, 1}, 3));
}

TEST_CASE("jacobi product J") {
  CHECK(jacobi_product_J(DiagonalForm(1, 1, 1, 1), 3) == 1.0);
  CHECK(jacobi_product_J(DiagonalForm(1, 1, 1, 1), 1) == 1.0);
  // independent recomputation for F=(1,2,3,-6), q=5: a_i=0, exponents k-a_i=1
  {
    DiagonalForm F(1, 2, 3, -6);
    double expect = 1.0;
    for (i64 Ai : {2, 3, -6}) expect *= jacobi(mod_reduce(Ai, 5), 5);
    CHECK(jacobi_product_J(F, 5) == expect);
  }
  CHECK_THROWS_AS(jacobi_product_J(DiagonalForm(1, 1, 1, 1), 4), std::domain_error);
}

TEST_CASE("sq_closed examples") {
  DiagonalForm F(1, 1, 1, 1);
  CHECK(std::abs(sq_closed(F, 3, 1) - cplx(9, 0)) < 1e-9);
  CHECK(std::abs(sq_closed(F, 3, 3)) < 1e-9);
  CHECK(std::abs(sq_closed(F, 9, 6) - cplx(162, 0)) < 1e-8);
  CHECK_THROWS_AS(sq_closed(F, 4, 1), std::domain_error);
}

TEST_CASE("sq_closed matches brute table") {
  std::vector<i64> moduli = {3, 9, 27, 5, 25, 7, 49, 8, 16, 32, 11, 13};
  for (const auto& F : kForms)
    for (i64 q : moduli) {
      if (!condition_a0(F, q)) continue;
      auto brute = sq_brute_table(F, q);
      double tol = 1e-6 * std::pow(double(q), 2.5);
      for (i64 n = 1; n <= q; ++n) {
        INFO("F=(" << F.coeff[0] << "," << F.coeff[1] << "," << F.coeff[2] << "," << F.coeff[3]
                   << ") q=" << q << " n=" << n);
        REQUIRE(std::abs(sq_closed(F, q, n) - brute[std::size_t(n - 1)]) < tol);
      }
    }
}

TEST_CASE("sq_closed at even q with 2-adic coefficient content") {
  // forms with v_2(A_i) > 0 exercise the a_i offsets in the 2-power branch
  std::vector<DiagonalForm> forms = {{2, 1, 1, 1}, {1, 2, 1, 1}, {4, 1, 2, 1}, {2, 2, 1, -1}};
  for (const auto& F : forms)
    for (i64 q : {8, 16, 32, 64}) {
      if (!condition_a0(F, q)) continue;
      auto brute = sq_brute_table(F, q);
      double tol = 1e-6 * std::pow(double(q), 2.5);
      for (i64 n = 1; n <= q; ++n) {
        INFO("q=" << q << " n=" << n);
        REQUIRE(std::abs(sq_closed(F, q, n) - brute[std::size_t(n - 1)]) < tol);
      }
    }
}

TEST_CASE("A_q multiplicativity") {
  // A_q(c) = A_{v1}(c1, v2bar c') A_{v2}(c1, v1bar c')
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 60) {
    i64 v1 = 2 + i64(rng() % 30), v2 = 2 + i64(rng() % 30);
    if (std::gcd(v1, v2) != 1) continue;
    i64 q = v1 * v2;
    if (q > 900) continue;
    const DiagonalForm& F = kForms[done % kForms.size()];
    OffsetVector c{i64(rng() % u64(q)),
                   {i64(rng() % u64(q)), i64(rng() % u64(q)), i64(rng() % u64(q))}};
    i64 v2b = mod_inverse(v2 % v1 == 0 ? 1 : v2 % v1, v1);
    i64 v1b = mod_inverse(v1 % v2 == 0 ? 1 : v1 % v2, v2);
    OffsetVector c_1{c.c1, {v2b * c.rest[0], v2b * c.rest[1], v2b * c.rest[2]}};
    OffsetVector c_2{c.c1, {v1b * c.rest[0], v1b * c.rest[1], v1b * c.rest[2]}};
    cplx lhs = a_q_brute(F, q, c, BruteTier::factored);
    cplx rhs = a_q_brute(F, v1, c_1, BruteTier::factored) *
               a_q_brute(F, v2, c_2, BruteTier::factored);
    double scale = std::max(1.0, std::abs(lhs));
    REQUIRE(std::abs(lhs - rhs) < 1e-6 * scale);
    ++done;
  }
}

TEST_CASE("S_dq multiplicativity") {
  // S_{d,q}(c) = S_{u1,v1}(u2bar^2 c1, v2bar c') S_{u2,v2}(u1bar^2 c1, v1bar c')
  std::mt19937_64 rng(55);
  struct Split {
    i64 u1, v1, u2, v2;
  };
  std::vector<Split> splits = {{1, 2, 3, 9},  {2, 4, 1, 3},  {1, 3, 2, 8}, {3, 3, 2, 4},
                               {1, 5, 2, 2},  {5, 5, 1, 4},  {2, 2, 3, 3}, {1, 4, 1, 5},
                               {4, 4, 3, 3},  {1, 8, 3, 3}};
  for (const auto& sp : splits) {
    i64 d = sp.u1 * sp.u2, q = sp.v1 * sp.v2;
    REQUIRE(q % d == 0);
    const DiagonalForm& F = kForms[std::size_t(rng() % kForms.size())];
    OffsetVector c{i64(rng() % u64(q)),
                   {i64(rng() % u64(q)), i64(rng() % u64(q)), i64(rng() % u64(q))}};
    auto inv_or_zero = [](i64 a, i64 m) { return m == 1 ? i64(0) : mod_inverse(mod_reduce(a, m), m); };
    i64 u2b = inv_or_zero(sp.u2, sp.u1), u1b = inv_or_zero(sp.u1, sp.u2);
    i64 v2b = inv_or_zero(sp.v2, sp.v1), v1b = inv_or_zero(sp.v1, sp.v2);
    OffsetVector c_1{mod_mul(u2b * u2b % std::max<i64>(sp.u1, 1), c.c1, std::max<i64>(sp.u1, 1)),
                     {v2b * c.rest[0], v2b * c.rest[1], v2b * c.rest[2]}};
    if (sp.u1 == 1) c_1.c1 = 0;
    OffsetVector c_2{mod_mul(u1b * u1b % std::max<i64>(sp.u2, 1), c.c1, std::max<i64>(sp.u2, 1)),
                     {v1b * c.rest[0], v1b * c.rest[1], v1b * c.rest[2]}};
    if (sp.u2 == 1) c_2.c1 = 0;
    cplx lhs = s_dq_factored(F, d, q, c);
    cplx rhs = s_dq_factored(F, sp.u1, sp.v1, c_1) * s_dq_factored(F, sp.u2, sp.v2, c_2);
    double scale = std::max(1.0, std::abs(lhs));
    INFO("d=" << d << " q=" << q);
    REQUIRE(std::abs(lhs - rhs) < 1e-6 * scale);
  }
}

TEST_CASE("s_dq brute vs factored") {
  std::mt19937_64 rng(31);
  for (const auto& F : kForms)
    for (i64 q : {2, 3, 4, 6, 8, 9, 12}) {
      for (i64 d : {i64(1), q}) {
        OffsetVector c{i64(rng() % u64(q)),
                       {i64(rng() % u64(q)), i64(rng() % u64(q)), i64(rng() % u64(q))}};
        cplx b = s_dq_brute(F, d, q, c);
        cplx f = s_dq_factored(F, d, q, c);
        REQUIRE(std::abs(b - f) < 1e-7 * std::pow(double(q), 2.5));
      }
    }
  DiagonalForm F(1, 1, 1, 1);
  CHECK(std::abs(s_dq_brute(F, 1, 1, {0, {0, 0, 0}}) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(s_dq_brute(F, 1, 2, {1, {1, 0, 0}})) < 1e-10);
  CHECK_THROWS_AS(s_dq_brute(F, 3, 8, {0, {0, 0, 0}}), std::domain_error);
}

TEST_CASE("decompose_q") {
  DiagonalForm F(1, 1, 1, 1);
  auto d12 = decompose_q(F, 12);
  CHECK(d12.q_even == 4);
  CHECK(d12.q1 == 3);
  CHECK(d12.q2 == 1);
  CHECK(d12.q3 == 1);
  CHECK(d12.q4 == 1);
  auto d1 = decompose_q(F, 1);
  CHECK(d1.q_even * d1.q1 * d1.q2 == 1);
  auto d9 = decompose_q(F, 9);
  CHECK(d9.q_even == 1);
  CHECK(d9.q1 == 1);
  CHECK(d9.q2 == 9);
  CHECK(d9.q3 == 1);
  CHECK(d9.q4 == 9);
  // invariants on a spread of q
  DiagonalForm G(1, 2, 3, -6);
  for (i64 q = 1; q <= 200; ++q) {
    auto d = decompose_q(G, q);
    REQUIRE(d.q_even * d.q1 * d.q2 == q);
    REQUIRE(d.q3 * d.q4 == d.q2);
    REQUIRE((d.q_even & (d.q_even - 1)) == 0);
    REQUIRE(d.q1 % 2 == 1);
    REQUIRE(d.q2 % 2 == 1);
    REQUIRE(std::gcd(d.q1, d.q2) == 1);
  }
}

TEST_CASE("sq_structure 2-adic sign flip is reported") {
  // At q = 2^k (k even branch) the closed form carries a unit factor that
  // flips sign with (n^2 / 2^(k-2)) mod 4 whenever the form's unit invariant
  // is +-i, e.g. for (1,1,1,-1).  The brute oracle confirms both signs occur,
  // so the single-constant indicator model cannot hold there; the extractor
  // must report this rather than patch it.
  CHECK_THROWS_AS(sq_structure(DiagonalForm(1, 1, 1, -1), 16), std::runtime_error);
  // with unit invariant +-1 the two branch values coincide and the model holds
  CHECK_NOTHROW(sq_structure(DiagonalForm(1, 1, 1, 1), 16));
}

TEST_CASE("sq_structure") {
  DiagonalForm F(1, 1, 1, 1);
  auto s9 = sq_structure(F, 9);
  CHECK(s9.theta == 3);
  CHECK(s9.kappa == 1);
  CHECK(std::abs(s9.s_value - cplx(162, 0)) < 1e-7);
  auto s1 = sq_structure(F, 1);
  CHECK(s1.theta == 1);
  CHECK(s1.kappa == 1);
  CHECK(std::abs(s1.s_value - cplx(1, 0)) < 1e-12);
  auto s3 = sq_structure(F, 3);
  CHECK(s3.theta == 1);
  CHECK(s3.kappa == 3);
  CHECK(std::abs(s3.s_value - cplx(9, 0)) < 1e-9);
  // theta lower-bound witness (reported metric): theta vs rho(q/(s(q)(q,A1)))
  for (i64 q : {3, 9, 27, 25, 8, 16}) {
    if (!condition_a0(F, q)) continue;
    auto st = sq_structure(F, q);
    auto mb = multiplicative_basics(q);
    i64 denom = mb.squarefree_kernel * std::gcd(q, F.coeff[0]);
    i64 arg = q / std::gcd(q, denom);
    i64 lower = multiplicative_basics(std::max<i64>(arg, 1)).rho;
    REQUIRE(st.theta * 4 >= lower);  // constant 4 recorded empirically, not asserted as sharp
  }
}

TEST_CASE("A_q collapse to S_q on null offsets, small cases") {
  // F^{-1}(0,c') = 0 offsets: A_q(n, c') = S_q(n)
  struct Case {
    DiagonalForm F;
    std::array<i64, 3> cp;
  };
  std::vector<Case> cases = {{{1, 1, 1, -1}, {3, 4, 5}}, {{2, 1, 1, -1}, {5, 12, 13}}};
  for (const auto& cs : cases)
    for (i64 q : {5, 7, 9, 25}) {
      if (!condition_a0(cs.F, q)) continue;
      bool val_ok = true;
      for (int i = 1; i < 4; ++i)
        for (const auto& en : factorize(q).entries)
          if (valuation(cs.cp[std::size_t(i - 1)], en.prime) < cs.F.coeff_valuation(i, en.prime))
            val_ok = false;
      if (!val_ok) continue;
      double tol = 1e-6 * std::pow(double(q), 2.5);
      auto profile = a_q_profile(cs.F, q, cs.cp);
      for (i64 n = 1; n <= q; ++n) {
        cplx lhs = a_q_from_profile(cs.F, q, profile, n);
        cplx rhs = sq_closed(cs.F, q, n);
        INFO("q=" << q << " n=" << n);
        REQUIRE(std::abs(lhs - rhs) < tol);
      }
    }
}

TEST_CASE("S_dq vanishing on non-null offsets") {
  DiagonalForm F(1, 1, 1, 1);
  for (i64 p : {3, 5}) {
    i64 q = p * p;
    // find c' with p not dividing 2*Delta*Finv and Finv != 0
    std::array<i64, 3> cp = {1, 0, 0};  // F^{-1}(0,c') = 1
    for (i64 d : {i64(1), p, q}) {
      OffsetVector c{0, cp};
      cplx v = s_dq_factored(F, d, q, c);
      REQUIRE(std::abs(v) < 1e-6 * std::pow(double(q), 3.5));
    }
  }
}

TEST_CASE("t_q") {
  DiagonalForm F(1, 1, 1, 1);
  CHECK(t_q_brute(F, 1, {0, 0, 0}).total == Catch::Approx(1.0));
  CHECK(t_q_brute(F, 3, {1, 0, 0}).total == Catch::Approx(27.0).margin(1e-7));
  for (i64 p : {3, 5, 7, 11, 13}) {
    auto brute = t_q_brute(F, p, {1, 0, 0});
    auto fast = t_q_prime_fast(F, p, {1, 0, 0});
    REQUIRE(brute.total == Catch::Approx(fast.total).margin(1e-6 * std::pow(double(p), 4)));
  }
}
