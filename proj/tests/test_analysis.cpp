#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <future>
#include <numbers>
#include <vector>

#include "analysis.hpp"
#include "doctest.h"

using namespace qbell;

namespace {

constexpr double kPi = std::numbers::pi;

// Reduced-resolution config keeping the unit suite fast; the acceptance
// suite uses the defaults.
SearchConfig quick_config() {
  SearchConfig cfg;
  cfg.coarse_steps = 400;
  cfg.refine_tolerance = 1e-5;
  cfg.kappa_bisect_tolerance = 1e-4;
  return cfg;
}

}  // namespace

TEST_CASE("search config validation") {
  SearchConfig bad;
  bad.theta_min = -1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = SearchConfig{};
  bad.theta_max = bad.theta_min;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = SearchConfig{};
  bad.coarse_steps = 1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = SearchConfig{};
  bad.refine_tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_NOTHROW(SearchConfig{}.validate());
}

TEST_CASE("c_q at the frozen reference points") {
  // CHSH at theta = pi/4, kappa = 0, q = 1: the Shannon value
  // 2 h((1-cos(pi/4))/2) - 6 h((1-cos(pi/12))/2).
  const ScenarioSpec chsh(Scenario::ChshDephasing, kPi / 4.0, 0.0);
  const double chsh_c1 = 0.3153571296691806;
  CHECK(c_q(chsh, MetricKind::DeltaQ, EntropyOrder(1.0)) ==
        doctest::Approx(chsh_c1).epsilon(1e-9));
  CHECK(c_q(chsh, MetricKind::DTildeQ, EntropyOrder(1.0)) ==
        doctest::Approx(chsh_c1).epsilon(1e-9));

  // Leggett-Garg spin-1/2 at theta = pi/6, kappa = 0, q = 1:
  // 2 h(1/4) - 4 h((1-cos(pi/6))/2).
  const ScenarioSpec lg(Scenario::LgSpinHalfDephasing, kPi / 6.0, 0.0);
  const double lg_c1 = 0.1415688225637327;
  CHECK(c_q(lg, MetricKind::DeltaQ, EntropyOrder(1.0)) ==
        doctest::Approx(lg_c1).epsilon(1e-9));
  CHECK(c_q(lg, MetricKind::DTildeQ, EntropyOrder(1.0)) ==
        doctest::Approx(lg_c1).epsilon(1e-9));
}

TEST_CASE("c_q vanishes as theta approaches zero") {
  for (Scenario s :
       {Scenario::ChshDephasing, Scenario::LgSpinHalfDephasing,
        Scenario::LgSpinHalfDepolarizing, Scenario::LgSpinOneDephasing}) {
    const ScenarioSpec spec(s, 1e-11, 0.5);
    CHECK(std::abs(c_q(spec, MetricKind::DTildeQ, EntropyOrder(2.0))) <= 1e-9);
    CHECK(std::abs(c_q(spec, MetricKind::DeltaQ, EntropyOrder(1.0))) <= 1e-9);
  }
}

TEST_CASE("the two metric kinds coincide at q = 1") {
  for (Scenario s :
       {Scenario::ChshDephasing, Scenario::LgSpinHalfDephasing,
        Scenario::LgSpinHalfDepolarizing, Scenario::LgSpinOneDephasing}) {
    for (double theta : {0.3, 0.9, 1.8, 2.9}) {
      for (double kappa : {0.0, 0.4, 1.5}) {
        const ScenarioSpec spec(s, theta, kappa);
        const double delta = c_q(spec, MetricKind::DeltaQ, EntropyOrder(1.0));
        const double dtilde = c_q(spec, MetricKind::DTildeQ, EntropyOrder(1.0));
        CHECK(std::abs(delta - dtilde) <= 1e-12);
      }
    }
  }
}

TEST_CASE("c_q is continuous in kappa") {
  for (double theta : {0.5, 1.2, 2.4}) {
    for (double kappa : {0.0, 0.3, 1.0}) {
      const ScenarioSpec a(Scenario::ChshDephasing, theta, kappa);
      const ScenarioSpec b(Scenario::ChshDephasing, theta, kappa + 1e-6);
      const double va = c_q(a, MetricKind::DTildeQ, EntropyOrder(2.0));
      const double vb = c_q(b, MetricKind::DTildeQ, EntropyOrder(2.0));
      CHECK(std::abs(va - vb) <= 1e-4);
    }
  }
}

TEST_CASE("s_q lower bound, determinism and refinement dominance") {
  const SearchConfig cfg = quick_config();
  const auto r = s_q(Scenario::ChshDephasing, MetricKind::DTildeQ,
                     EntropyOrder(1.0), 0.0, cfg);
  // The pi/4 evaluation bounds the supremum from below.
  CHECK(r.s_value >= 0.3153571296691806);

  const auto again = s_q(Scenario::ChshDephasing, MetricKind::DTildeQ,
                         EntropyOrder(1.0), 0.0, cfg);
  CHECK(r.theta_star == again.theta_star);
  CHECK(r.s_value == again.s_value);

  // Refinement never loses against the coarse grid it started from.
  double coarse_best = -1e300;
  for (int i = 0; i <= cfg.coarse_steps; ++i) {
    const double theta = cfg.theta_min +
                         (cfg.theta_max - cfg.theta_min) * i / cfg.coarse_steps;
    coarse_best = std::max(
        coarse_best, c_q(ScenarioSpec(Scenario::ChshDephasing, theta, 0.0),
                         MetricKind::DTildeQ, EntropyOrder(1.0)));
  }
  CHECK(r.s_value >= coarse_best);
}

TEST_CASE("s_q input validation") {
  CHECK_THROWS_AS(s_q(Scenario::ChshDephasing, MetricKind::DTildeQ,
                      EntropyOrder(1.0), -0.5, quick_config()),
                  ValidationError);
}

TEST_CASE("violation strength grows from q = 1 to q = 2 at zero noise") {
  const SearchConfig cfg = quick_config();
  const double s1 = s_q(Scenario::ChshDephasing, MetricKind::DTildeQ,
                        EntropyOrder(1.0), 0.0, cfg)
                        .s_value;
  const double s2 = s_q(Scenario::ChshDephasing, MetricKind::DTildeQ,
                        EntropyOrder(2.0), 0.0, cfg)
                        .s_value;
  CHECK(s2 > s1);
}

TEST_CASE("far beyond the threshold the supremum is nonpositive") {
  const SearchConfig cfg = quick_config();
  for (Scenario s :
       {Scenario::ChshDephasing, Scenario::LgSpinHalfDephasing,
        Scenario::LgSpinHalfDepolarizing, Scenario::LgSpinOneDephasing}) {
    CHECK(s_q(s, MetricKind::DTildeQ, EntropyOrder(2.0), 5.0, cfg).s_value <=
          0.0);
  }
}

TEST_CASE("kappa threshold existence and monotonicity sample") {
  const SearchConfig cfg = quick_config();
  const auto k1 = kappa_threshold(Scenario::ChshDephasing, MetricKind::DTildeQ,
                                  EntropyOrder(1.0), cfg);
  REQUIRE(k1.has_value());
  CHECK(*k1 > 0.0);

  const auto k2 = kappa_threshold(Scenario::ChshDephasing, MetricKind::DTildeQ,
                                  EntropyOrder(2.0), cfg);
  REQUIRE(k2.has_value());
  CHECK(*k2 >= *k1);

  // Spin-1 loses the violation earlier than spin-1/2 at matching q.
  const auto k_half = kappa_threshold(Scenario::LgSpinHalfDephasing,
                                      MetricKind::DTildeQ, EntropyOrder(1.2),
                                      cfg);
  const auto k_one = kappa_threshold(Scenario::LgSpinOneDephasing,
                                     MetricKind::DTildeQ, EntropyOrder(1.2),
                                     cfg);
  REQUIRE(k_half.has_value());
  REQUIRE(k_one.has_value());
  CHECK(*k_one < *k_half);
}

TEST_CASE("kappa threshold is absent without a violation at kappa = 0") {
  // CHSH at q = 0.3 never violates: S(0) < 0.
  const auto none = kappa_threshold(Scenario::ChshDephasing,
                                    MetricKind::DTildeQ, EntropyOrder(0.3),
                                    quick_config());
  CHECK_FALSE(none.has_value());
}

TEST_CASE("scan consistency, ordering and flags") {
  const SearchConfig cfg = quick_config();

  // A single-cell scan equals the direct supremum call.
  const auto single = scan(Scenario::LgSpinHalfDephasing, MetricKind::DTildeQ,
                           {1.5}, {0.2}, cfg);
  REQUIRE(single.size() == 1);
  const auto direct = s_q(Scenario::LgSpinHalfDephasing, MetricKind::DTildeQ,
                          EntropyOrder(1.5), 0.2, cfg);
  CHECK(single[0].theta_star == direct.theta_star);
  CHECK(single[0].s_value == direct.s_value);
  CHECK(single[0].positive == (direct.s_value > cfg.positivity_epsilon));

  // Rows come out ordered by (q, kappa) regardless of input order.
  const auto rows = scan(Scenario::ChshDephasing, MetricKind::DTildeQ,
                         {2.0, 1.0}, {0.1, 0.0}, cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].q == 1.0);
  CHECK(rows[0].kappa == 0.0);
  CHECK(rows[1].q == 1.0);
  CHECK(rows[1].kappa == 0.1);
  CHECK(rows[2].q == 2.0);
  CHECK(rows[3].q == 2.0);

  CHECK_THROWS_AS(scan(Scenario::ChshDephasing, MetricKind::DTildeQ, {}, {0.0},
                       cfg),
                  ValidationError);
  CHECK_THROWS_AS(scan(Scenario::ChshDephasing, MetricKind::DTildeQ, {1.0}, {},
                       cfg),
                  ValidationError);
}

TEST_CASE("grid cells evaluate independently across threads") {
  const SearchConfig cfg = quick_config();
  const auto cell = [&](double q, double kappa) {
    return s_q(Scenario::ChshDephasing, MetricKind::DTildeQ, EntropyOrder(q),
               kappa, cfg)
        .s_value;
  };
  std::vector<std::future<double>> jobs;
  for (double q : {1.0, 1.5, 2.0})
    for (double kappa : {0.0, 0.1, 0.2})
      jobs.push_back(std::async(std::launch::async, cell, q, kappa));
  std::size_t i = 0;
  for (double q : {1.0, 1.5, 2.0})
    for (double kappa : {0.0, 0.1, 0.2})
      CHECK(jobs[i++].get() == cell(q, kappa));
}

TEST_CASE("dominance over the q = 1 curve inside its positivity range") {
  const SearchConfig cfg = quick_config();
  for (Scenario s : {Scenario::ChshDephasing, Scenario::LgSpinHalfDephasing}) {
    for (double kappa : {0.0, 0.05, 0.1, 0.15, 0.2}) {
      const double s1 =
          s_q(s, MetricKind::DTildeQ, EntropyOrder(1.0), kappa, cfg).s_value;
      if (s1 <= cfg.positivity_epsilon) continue;
      for (double q : {1.2, 1.5, 2.0}) {
        const double sq =
            s_q(s, MetricKind::DTildeQ, EntropyOrder(q), kappa, cfg).s_value;
        CHECK(sq >= s1 - 1e-12);
      }
    }
  }
}
