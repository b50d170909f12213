#include <doctest.h>

#include <cmath>
#include <random>

#include "nlcs/errors.hpp"
#include "nlcs/nonclassicality.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace nlcs;

TEST_CASE("measure names round trip") {
  REQUIRE(all_measures().size() == kMeasureCount);
  for (const Measure m : all_measures()) CHECK(parse_measure(measure_name(m)) == m);
  CHECK(measure_name(Measure::uncertainty_saturation_X) == "uncertainty_saturation_X");
  CHECK_THROWS_AS(parse_measure("S_y1"), UnknownMeasure);
}

TEST_CASE("moments_diagonal") {
  const ChargeState s = build_state(1.0, 0, model_unit(), Parity::full);
  CHECK(moments_diagonal(s, [](int, int) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(moments_diagonal(s, [](int n1, int n2) { return double(n1) * n2; }) ==
        doctest::Approx(oracle::kMeanN1N2UnitQ0X1).epsilon(1e-14));
  const ChargeState t = build_state(0.8, -3, model_poschl_teller(3.0), Parity::full);
  CHECK(moments_diagonal(t, [](int n1, int n2) { return double(n1 - n2); }) == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("ladder moments") {
  const auto h = model_hydrogen();
  const Complex xi(0.4, -0.3);
  SUBCASE("full state is a K- eigenstate") {
    const LadderMoments m = ladder_moments(build_state(xi, 2, h, Parity::full), true);
    CHECK(std::abs(m.lower - xi) < 1e-14);
    CHECK(std::abs(m.lower_squared - xi * xi) < 1e-14);
  }
  SUBCASE("even state") {
    const LadderMoments m = ladder_moments(build_state(xi, 2, h, Parity::even), true);
    CHECK(m.lower == Complex(0.0));
    CHECK(std::abs(m.lower_squared - xi * xi) < 1e-14);
  }
  SUBCASE("small x, f = 1") {
    const LadderMoments m = ladder_moments(build_state(std::sqrt(1e-6), 0, model_unit(), Parity::full), false);
    CHECK(m.raise_lower == doctest::Approx(1e-6).epsilon(1e-5));
    CHECK(m.k0 == doctest::Approx(0.5).epsilon(1e-5));
  }
}

TEST_CASE("single-mode variances") {
  const ChargeState vac = build_state(0.0, 0, model_poschl_teller(3.0), Parity::full);
  CHECK(single_mode_variances(vac).y == 0.25);
  CHECK(single_mode_variances(vac).z == 0.25);
  const ChargeState low = build_state(1e-5, 2, model_unit(), Parity::full);
  CHECK(single_mode_variances(low).y == doctest::Approx(1.25).epsilon(1e-9));
  CHECK(single_mode_variances(low).z == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("generalized single-mode variances") {
  SUBCASE("f = 1 reduces to the plain variances") {
    const ChargeState s = build_state(1.3, 2, model_unit(), Parity::full);
    const auto g = generalized_single_mode_variances(s);
    CHECK(g.Y1 == doctest::Approx(single_mode_variances(s).y).epsilon(1e-14));
    CHECK(g.rhs_Y == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(g.rhs_Z == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("vacuum, Poschl-Teller") {
    const auto g = generalized_single_mode_variances(build_state(0.0, 0, model_poschl_teller(3.0), Parity::full));
    CHECK(g.Y1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.rhs_Y == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(g.squeeze_Y == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("vacuum two-mode and Mandel behaviour") {
  const ChargeState vac = build_state(0.0, 0, model_unit(), Parity::full);
  CHECK(two_mode_squeezing(vac, false).first == doctest::Approx(0.0));
  CHECK(two_mode_squeezing(vac, false).second == doctest::Approx(0.0));
  CHECK_THROWS_AS(mandel(vac, false, 1), UndefinedMeasure);
  CHECK_THROWS_AS(correlation(vac, true), UndefinedMeasure);
  const MeasureReport r = evaluate(vac);
  CHECK_FALSE(r[Measure::Q_a1].has_value());
  CHECK_FALSE(r[Measure::g].has_value());
  CHECK(r[Measure::var_y1].has_value());
  CHECK_THROWS_AS(mandel(vac, false, 3), InvalidParameter);
}

TEST_CASE("number-state limit of the Mandel parameter") {
  const ChargeState s = build_state(1e-4, 2, model_poschl_teller(3.0), Parity::even);
  CHECK(mandel(s, false, 1) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("every measure against the operator oracle") {
  for (const auto& c : oracle::kMeasureCases) {
    const auto f = testing::oracle_model(c.model);
    const ChargeState s = build_state(std::sqrt(c.x), c.q, f, parse_parity(c.parity));
    const MeasureReport analytic = evaluate(s);
    const MeasureReport fock = evaluate_via_fock(s);
    for (std::size_t i = 0; i < kMeasureCount; ++i) {
      const Measure m = all_measures()[i];
      INFO(c.model, " q=", c.q, " x=", c.x, " ", c.parity, " ", measure_name(m));
      REQUIRE(analytic[m].has_value());
      REQUIRE(fock[m].has_value());
      CHECK(testing::close(*analytic[m], c.values[i], 1e-10));
      CHECK(testing::close(*fock[m], c.values[i], 1e-10));
    }
  }
}

TEST_CASE("f = 1 correlation is one and the full-state G is one") {
  for (const double x : {0.1, 1.0, 7.0}) {
    const ChargeState s = build_state(std::sqrt(x), 2, model_unit(), Parity::full);
    CHECK(correlation(s, false) == doctest::Approx(1.0).epsilon(1e-12));
    const ChargeState b = build_state(std::sqrt(x), 2, model_barut_girardello(0.5), Parity::full);
    CHECK(correlation(b, true) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("property: uncertainty floors and variance signs") {
  std::mt19937 rng(11);
  auto models = catalog_models();
  models.push_back(model_unit());
  for (const auto& f : models) {
    for (int trial = 0; trial < 3; ++trial) {
      const double x = testing::sample_x(rng, f);
      for (const Parity p : {Parity::full, Parity::even, Parity::odd}) {
        const ChargeState s = build_state(std::polar(std::sqrt(x), 0.3 * trial), trial, f, p);
        INFO(f.label(), " x=", x, " parity=", to_string(p));
        const auto v = single_mode_variances(s);
        CHECK(v.y * v.y >= 1.0 / 16.0);
        CHECK(v.z * v.z >= 1.0 / 16.0);
        const auto gv = generalized_single_mode_variances(s);
        CHECK(gv.Y1 >= 0.0);
        CHECK(gv.Z1 >= 0.0);
        // var X1 var X2 >= (1/4)|<[X1, X2]>|^2
        const auto su = su11_squeezing(s, true);
        const double h = 0.5 * std::abs(ladder_moments(s, true).k0);
        CHECK((su.first + h) * (su.second + h) >= h * h * (1.0 - 1e-10));
        const MeasureReport r = evaluate(s);
        if (r[Measure::g]) CHECK(*r[Measure::g] >= 0.0);
        if (r[Measure::G]) CHECK(*r[Measure::G] >= 0.0);
      }
    }
  }
}

TEST_CASE("property: parity selection of K- moments") {
  std::mt19937 rng(13);
  for (const auto& f : catalog_models()) {
    const double x = testing::sample_x(rng, f);
    const Complex xi = std::polar(std::sqrt(x), 1.1);
    for (const Parity p : {Parity::even, Parity::odd}) {
      const LadderMoments m = ladder_moments(build_state(xi, 1, f, p), true);
      CHECK(m.lower == Complex(0.0));
      CHECK(std::abs(m.lower_squared - xi * xi) < 1e-10 * std::max(1.0, x));
    }
  }
}

TEST_CASE("property: deformed measures equal undeformed ones at f = 1") {
  std::mt19937 rng(17);
  const auto f = model_unit();
  for (int trial = 0; trial < 20; ++trial) {
    const double x = testing::sample_x(rng, f);
    const ChargeState s = build_state(std::sqrt(x), trial % 4, f, trial % 3 == 0 ? Parity::odd : Parity::full);
    const MeasureReport r = evaluate(s);
    const std::pair<Measure, Measure> pairs[] = {{Measure::S_X1, Measure::S_x1}, {Measure::S_X2, Measure::S_x2},
                                                 {Measure::Q_A1, Measure::Q_a1}, {Measure::Q_A2, Measure::Q_a2},
                                                 {Measure::G, Measure::g},       {Measure::S_W1, Measure::S_w1},
                                                 {Measure::S_W2, Measure::S_w2}};
    for (const auto& [deformed, plain] : pairs) {
      INFO(measure_name(deformed), " x=", x);
      REQUIRE(r[deformed].has_value() == r[plain].has_value());
      if (r[plain]) CHECK(testing::close(*r[deformed], *r[plain], 1e-12));
    }
  }
}

TEST_CASE("property: analytic and Fock paths agree on random states") {
  std::mt19937 rng(19);
  auto models = catalog_models();
  for (const auto& f : models) {
    const double x = testing::sample_x(rng, f);
    const Parity p = static_cast<Parity>(rng() % 3);
    const ChargeState s = build_state(std::polar(std::sqrt(x), 0.5), 1, f, p);
    const MeasureReport a = evaluate(s);
    const MeasureReport b = evaluate_via_fock(s);
    for (const Measure m : all_measures()) {
      INFO(f.label(), " x=", x, " ", measure_name(m));
      REQUIRE(a[m].has_value() == b[m].has_value());
      if (a[m]) CHECK(testing::close(*a[m], *b[m], 1e-9));
    }
  }
}
