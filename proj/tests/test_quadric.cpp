#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qhl/quadric.hpp"

using namespace qhl;

TEST_CASE("dual_form") {
  DiagonalForm F(1, 1, 1, -1);
  CHECK(dual_form(F, {0, 0, 0, 0}) == 0);
  CHECK(dual_form(F, {0, 3, 4, 5}) == 0);
  CHECK(dual_form(DiagonalForm(1, 1, 1, 1), {0, 1, 0, 0}) == 1);
  // adjugate cross-check on random inputs
  std::mt19937_64 rng(4);
  for (int t = 0; t < 1000; ++t) {
    std::array<i64, 4> A, c;
    for (int i = 0; i < 4; ++i) {
      A[i] = i64(rng() % 9) - 4;
      if (A[i] == 0) A[i] = 1;
      c[i] = i64(rng() % 21) - 10;
    }
    DiagonalForm G(A[0], A[1], A[2], A[3]);
    i64 expect = 0;
    for (int i = 0; i < 4; ++i) {
      i64 adj = 1;
      for (int j = 0; j < 4; ++j)
        if (j != i) adj *= A[j];
      expect += adj * c[i] * c[i];
    }
    REQUIRE(dual_form(G, c) == expect);
  }
}

TEST_CASE("classify_offsets") {
  auto both = classify_offsets(DiagonalForm(1, 1, 1, 1), 5);
  CHECK(both.c0.empty());
  CHECK(both.c1.size() == 11 * 11 * 11 - 1);
  auto cls = classify_offsets(DiagonalForm(1, 1, 1, -1), 5);
  bool found = false;
  for (const auto& c : cls.c0)
    if (c == std::array<i64, 3>{3, 4, 5}) found = true;
  CHECK(found);
  auto zero = classify_offsets(DiagonalForm(1, 1, 1, -1), 0);
  CHECK(zero.c0.empty());
  CHECK(zero.c1.empty());
}

TEST_CASE("enumerate_zeros") {
  DiagonalForm def(1, 1, 1, 1);
  CHECK(enumerate_zeros(def, 10, EnumMethod::meet_in_middle).empty());
  DiagonalForm F(1, 1, 1, -1);
  auto z2 = enumerate_zeros(F, 2, EnumMethod::naive);
  bool has = false;
  for (const auto& x : z2)
    if (x == std::array<i64, 4>{1, 2, 2, 3}) has = true;
  CHECK(has);
  for (const auto& x : z2) {
    REQUIRE(F.evaluate(x) == 0);
    for (i64 xi : x) {
      REQUIRE(xi >= 1);
      REQUIRE(xi <= 4);
    }
  }
}

TEST_CASE("method equivalence") {
  std::vector<DiagonalForm> forms = {
      {1, 1, 1, -1}, {2, 1, 1, -1}, {3, 1, 1, -1}, {1, 2, 3, -6}, {1, 1, -1, -1}};
  for (const auto& F : forms)
    for (i64 X : {5, 13, 40}) {
      auto a = enumerate_zeros(F, X, EnumMethod::naive);
      auto b = enumerate_zeros(F, X, EnumMethod::meet_in_middle);
      INFO("X=" << X);
      REQUIRE(a == b);
    }
}

static const TauTable& table() {
  static TauTable t(900);
  return t;
}

TEST_CASE("weighted_count") {
  SmoothWeight w;
  DiagonalForm def(1, 1, 1, 1);
  CHECK(weighted_count(def, 50, WeightChoice::unit, w, nullptr).weighted_value == 0.0);
  DiagonalForm F(1, 1, 1, -1);
  auto unit = weighted_count(F, 50, WeightChoice::unit, w, nullptr);
  CHECK(unit.weighted_value > 0.0);
  // independent naive recomputation
  double naive = 0.0;
  visit_zeros(F, 50, EnumMethod::naive, [&](const std::array<i64, 4>& x) {
    naive += w({x[0] / 50.0, x[1] / 50.0, x[2] / 50.0, x[3] / 50.0});
  });
  CHECK(unit.weighted_value == Catch::Approx(naive).epsilon(1e-12));

  auto nl = weighted_count(F, 50, WeightChoice::lambda, w, &table());
  auto na = weighted_count(F, 50, WeightChoice::abs_lambda, w, &table());
  CHECK(std::abs(nl.weighted_value) < na.weighted_value);
  CHECK(na.weighted_value <= unit.weighted_value * 3.0);  // |lambda| <= d
  CHECK_THROWS_AS(weighted_count(F, 500, WeightChoice::lambda, w, &table()), capacity_error);

  // monotone in nested weights
  SmoothWeight narrow{0.8};
  auto small = weighted_count(F, 50, WeightChoice::unit, narrow, nullptr);
  CHECK(small.weighted_value <= unit.weighted_value);
}

TEST_CASE("cancellation_experiment") {
  CHECK_THROWS_AS(cancellation_experiment(DiagonalForm(1, 1, 1, -1), {50}, table()),
                  std::domain_error);
  auto res = cancellation_experiment(DiagonalForm(1, 1, 1, -1), {50, 100, 200, 400}, table());
  REQUIRE(res.rows.size() == 4);
  CHECK(res.rows[3].ratio < res.rows[0].ratio);
  CHECK(res.rows[3].ratio < 0.5);
  CHECK(res.exponent_lambda < res.exponent_abs_lambda - 0.05);
  // unit-weight growth exponent ~ 2
  std::vector<double> lx, ly;
  for (i64 X : {50, 100, 200, 400}) {
    auto u = weighted_count(DiagonalForm(1, 1, 1, -1), X, WeightChoice::unit, {}, nullptr);
    lx.push_back(std::log(double(X)));
    ly.push_back(std::log(u.weighted_value));
  }
  double slope = ls_slope(lx, ly);
  CHECK(slope > 1.8);
  CHECK(slope < 2.2);
}

TEST_CASE("r_weighted_sum") {
  const auto& t = table();
  CHECK(r_weighted_sum(1, 1, 1, t) == Catch::Approx(4.0));
  double expect = 12.0 + 12.0 * t.lambda(2);
  CHECK(r_weighted_sum(1, 1, 2, t) == Catch::Approx(expect).epsilon(1e-10));
  // r(A+B) lambda(1) at X=1 for other coefficients
  CHECK(r_weighted_sum(2, 3, 1, t) == Catch::Approx(double(r_two_squares(5))));
  CHECK(r_weighted_sum(1, -1, 1, t) == Catch::Approx(1.0));  // r(0) = 1
  CHECK(r_weighted_sum(-1, -1, 5, t) == 0.0);
}
