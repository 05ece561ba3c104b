#include <algorithm>
#include <cmath>
#include <random>

#include "irbox/core_model.hpp"
#include "irbox/risk_indices.hpp"
#include "test_util.hpp"

using namespace irbox;
using irbox::test::ulp_distance;

TEST_SUITE("risk_indices") {
  TEST_CASE("balanced firm") {
    auto ix = compute_indices(1.0, 1.0);
    CHECK(ix.tr == 2);
    CHECK(ix.nr == 0);
    CHECK(ix.aco == 2);
    CHECK(ix.firi == 1);
    CHECK(ix.firi_h == 1);
    CHECK(ix.firi_v == 1);
    REQUIRE(ix.gear);
    CHECK(*ix.gear == 1);
    CHECK(ix.pi == 1);
  }

  TEST_CASE("debt-heavy firm") {
    auto ix = compute_indices(3.0, 1.0);
    CHECK(ix.tr == 4);
    CHECK(ix.nr == 2);
    CHECK(ix.aco == 2);
    CHECK(ix.firi == 0.5);
    CHECK(ix.firi_h == 0.5);
    CHECK(ix.firi_v == 1.5);
    CHECK(*ix.gear == 3);
    CHECK(ix.pi == 1.5);
  }

  TEST_CASE("all-debt boundary") {
    auto ix = compute_indices(5.0, 0.0);
    CHECK(ix.firi == 0);
    CHECK(ix.firi_h == 0);
    CHECK(ix.firi_v == 2);
    CHECK_FALSE(ix.gear.has_value());
    CHECK(ix.pi == 2);
  }

  TEST_CASE("degenerate denominator") {
    CHECK_ERROR_CODE(compute_indices(0.0, 0.0), ErrorCode::DegenerateRecord);
    CHECK_ERROR_CODE(compute_indices(1.0, -1.0), ErrorCode::DegenerateRecord);
  }

  TEST_CASE("pi_fraction") {
    CHECK(pi_fraction(4, 3, 1) == 1.5);
    CHECK(pi_fraction(2, 1, 1) == 1);
    CHECK(pi_fraction(4, 0, 4) == 0);
    CHECK_ERROR_CODE(pi_fraction(0, 1, 1), ErrorCode::ZeroAssets);
  }

  TEST_CASE("record indices use the record's own assets for pi") {
    auto r = BalanceSheetRecord::make("A", 1, Decimal(3), Decimal(1), Decimal::parse("4.000000001"));
    auto ix = compute_indices(r);
    CHECK(ix.firi == 0.5);
    CHECK(ix.pi == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(ix.pi != 1.5);
  }

  TEST_CASE("score_panel composes compute_indices in order") {
    auto panel = build_panel({BalanceSheetRecord::make("A", 7, Decimal(1), Decimal(1)),
                              BalanceSheetRecord::make("B", 7, Decimal(3), Decimal(1))},
                             PanelAxis::CrossSection);
    auto scored = score_panel(panel);
    REQUIRE(scored.size() == 2);
    CHECK(scored[0].key == "A@7");
    CHECK(scored[0].indices.firi == 1);
    CHECK(scored[1].key == "B@7");
    CHECK(scored[1].indices.firi == 0.5);
    CHECK(scored[1].indices.pi == 1.5);
  }

  TEST_CASE("1000 random records satisfy every index invariant") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::int64_t> units(0, 10'000'000);
    std::vector<BalanceSheetRecord> records;
    for (int i = 0; i < 1000; ++i) {
      std::int64_t d = units(rng), e = units(rng);
      if (d + e == 0) e = 1;
      records.push_back(BalanceSheetRecord::make("F" + std::to_string(i), 1,
                                                 Decimal::parse(std::to_string(d) + "e-2"),
                                                 Decimal::parse(std::to_string(e) + "e-2")));
    }
    auto scored = score_panel(build_panel(records, PanelAxis::CrossSection));
    REQUIRE(scored.size() == 1000);
    for (std::size_t i = 0; i < scored.size(); ++i) {
      const auto& ix = scored[i].indices;
      const double d = records[i].d(), e = records[i].e();
      CAPTURE(d);
      CAPTURE(e);
      CHECK(ix.firi >= 0);
      CHECK(ix.firi <= 1);
      CHECK(ix.firi_h >= 0);
      CHECK(ix.firi_h <= 2);
      CHECK(ix.firi_v >= 0);
      CHECK(ix.firi_v <= 2);
      CHECK(ix.aco == doctest::Approx(ix.tr - ix.nr).epsilon(1e-12));
      CHECK(ulp_distance(ix.firi, 2 * std::min(d, e) / (d + e)) <= 4);
      CHECK(ulp_distance(ix.firi_h + ix.firi_v, 2.0) <= 4);
      CHECK(ulp_distance(ix.pi, ix.firi_v) <= 4);
    }
  }

  TEST_CASE("scale invariance of the dimensionless indices") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> amount(1e-3, 1e6);
    std::uniform_real_distribution<double> log_lambda(-20, 20);
    for (int i = 0; i < 2000; ++i) {
      const double d = amount(rng), e = amount(rng);
      const double lambda = std::exp2(std::round(log_lambda(rng)));  // exact scaling
      auto a = compute_indices(d, e);
      auto b = compute_indices(lambda * d, lambda * e);
      CHECK(a.firi == b.firi);
      CHECK(a.firi_h == b.firi_h);
      CHECK(a.firi_v == b.firi_v);
      CHECK(a.pi == b.pi);
      CHECK(*a.gear == *b.gear);
      CHECK(b.tr == lambda * a.tr);
      CHECK(b.nr == lambda * a.nr);
      CHECK(b.aco == lambda * a.aco);
      // arbitrary λ: within a few ulps
      const double mu = amount(rng) / 1e3;
      auto c = compute_indices(mu * d, mu * e);
      CHECK(ulp_distance(a.firi, c.firi) <= 4);
    }
  }

  TEST_CASE("symmetry") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> amount(0, 1e9);
    for (int i = 0; i < 2000; ++i) {
      const double d = amount(rng), e = amount(rng) + 1e-9;
      auto a = compute_indices(d, e);
      auto b = compute_indices(e, d);
      CHECK(a.firi == b.firi);
      CHECK(a.firi_h == b.firi_v);
      CHECK(a.firi_v == b.firi_h);
    }
  }

  TEST_CASE("firi strictly decreases in nr at fixed tr") {
    const double tr = 100;
    double prev = 2;
    for (int k = 0; k <= 100; ++k) {
      const double nr = k;  // d - e = nr, d + e = tr
      auto ix = compute_indices((tr + nr) / 2, (tr - nr) / 2);
      CHECK(ix.nr == nr);
      CHECK(ix.firi < prev);
      prev = ix.firi;
    }
  }

  TEST_CASE("distress records report the formula value") {
    auto ix = compute_indices(3.0, -1.0);
    CHECK(ix.tr == 2);
    CHECK(ix.firi == -1);
    CHECK(ix.pi == 3);
    CHECK(*ix.gear == -3);
  }
}
