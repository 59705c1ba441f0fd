#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "doctest.h"
#include "qbell.h"

extern "C" int qbell_capi_c_check(void);

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("header is consumable from C") { CHECK(qbell_capi_c_check() == 0); }

TEST_CASE("version and status names") {
  CHECK(std::strlen(qbell_version()) > 0);
  CHECK(std::string(qbell_status_name(QBELL_OK)) == "ok");
  CHECK(std::string(qbell_status_name(QBELL_ERR_USAGE)) == "usage");
  CHECK(std::string(qbell_status_name(QBELL_ERR_VALIDATION)) == "validation");
}

TEST_CASE("scenario and metric name round-trips") {
  const qbell_scenario scenarios[] = {
      QBELL_SCENARIO_CHSH_DEPHASING, QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING,
      QBELL_SCENARIO_LG_SPIN_HALF_DEPOLARIZING,
      QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING};
  for (qbell_scenario s : scenarios) {
    qbell_scenario parsed;
    REQUIRE(qbell_scenario_parse(qbell_scenario_name(s), &parsed) == QBELL_OK);
    CHECK(parsed == s);
  }
  qbell_scenario out;
  CHECK(qbell_scenario_parse("bogus", &out) == QBELL_ERR_USAGE);
  CHECK(std::strlen(qbell_last_error()) > 0);

  qbell_metric m;
  REQUIRE(qbell_metric_parse("delta", &m) == QBELL_OK);
  CHECK(m == QBELL_METRIC_DELTA);
  REQUIRE(qbell_metric_parse("dtilde", &m) == QBELL_OK);
  CHECK(m == QBELL_METRIC_DTILDE);
  CHECK(qbell_metric_parse("manhattan", &m) == QBELL_ERR_USAGE);
}

TEST_CASE("q_log through the C boundary") {
  double out = 0.0;
  CHECK(qbell_q_log(4.0, 0.5, &out) == QBELL_OK);
  CHECK(out == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(qbell_q_log(0.0, 2.0, &out) == QBELL_ERR_VALIDATION);
  CHECK(qbell_q_log(1.0, -2.0, &out) == QBELL_ERR_VALIDATION);
  CHECK(qbell_q_log(1.0, 2.0, nullptr) == QBELL_ERR_NULL_POINTER);
}

TEST_CASE("tsallis entropy through the C boundary") {
  const double uniform[2] = {0.5, 0.5};
  double out = 0.0;
  CHECK(qbell_tsallis_entropy(uniform, 2, 2.0, &out) == QBELL_OK);
  CHECK(out == doctest::Approx(0.5).epsilon(1e-15));

  const double bad[2] = {0.5, 0.6};
  CHECK(qbell_tsallis_entropy(bad, 2, 2.0, &out) == QBELL_ERR_VALIDATION);
}

TEST_CASE("joint handle lifecycle and queries") {
  const double indep[4] = {0.25, 0.25, 0.25, 0.25};
  qbell_joint* joint = nullptr;
  REQUIRE(qbell_joint_create(indep, 2, 2, &joint) == QBELL_OK);
  REQUIRE(joint != nullptr);

  double v = 0.0;
  CHECK(qbell_joint_entropy(joint, 2.0, &v) == QBELL_OK);
  CHECK(v == doctest::Approx(0.75).epsilon(1e-14));

  CHECK(qbell_joint_marginal_entropy(joint, 2.0, QBELL_X_GIVEN_Y, &v) ==
        QBELL_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-14));

  CHECK(qbell_joint_conditional_entropy(joint, 2.0, QBELL_X_GIVEN_Y,
                                        QBELL_COND_CHAIN, &v) == QBELL_OK);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(qbell_joint_conditional_entropy(joint, 2.0, QBELL_X_GIVEN_Y,
                                        QBELL_COND_AVERAGE, &v) == QBELL_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-14));

  CHECK(qbell_joint_mutual_information(joint, 2.0, &v) == QBELL_OK);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-14));

  int regime = -1;
  CHECK(qbell_joint_metric(joint, 2.0, QBELL_METRIC_DTILDE, &v, &regime) ==
        QBELL_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(regime == 1);
  CHECK(qbell_joint_metric(joint, 0.5, QBELL_METRIC_DTILDE, &v, &regime) ==
        QBELL_OK);
  CHECK(regime == 0);

  CHECK(qbell_joint_conditional_entropy(joint, 2.0, QBELL_X_GIVEN_Y,
                                        static_cast<qbell_cond_form>(7), &v) ==
        QBELL_ERR_USAGE);
  CHECK(qbell_joint_entropy(joint, -1.0, &v) == QBELL_ERR_VALIDATION);
  qbell_joint_free(joint);

  const double bad[4] = {0.5, 0.5, 0.5, 0.5};
  qbell_joint* rejected = nullptr;
  CHECK(qbell_joint_create(bad, 2, 2, &rejected) == QBELL_ERR_VALIDATION);
  CHECK(rejected == nullptr);
  CHECK(qbell_joint_create(nullptr, 2, 2, &rejected) ==
        QBELL_ERR_NULL_POINTER);
}

TEST_CASE("pair distributions through the C boundary") {
  double cells[9] = {};
  size_t dim = 0;
  REQUIRE(qbell_pair_conditional(QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING,
                                 QBELL_ROLE_LG_ADJACENT, kPi / 6.0, 0.0, cells,
                                 &dim) == QBELL_OK);
  CHECK(dim == 2);
  CHECK(cells[0] == doctest::Approx(0.9330127018922193).epsilon(1e-12));

  REQUIRE(qbell_pair_joint(QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING,
                           QBELL_ROLE_LG_END_TO_END, 0.8, 0.5, cells, &dim) ==
          QBELL_OK);
  CHECK(dim == 3);
  double total = 0.0;
  for (int i = 0; i < 9; ++i) total += cells[i];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(qbell_pair_conditional(QBELL_SCENARIO_CHSH_DEPHASING,
                               QBELL_ROLE_LG_ADJACENT, 1.0, 0.0, cells,
                               &dim) == QBELL_ERR_USAGE);
  CHECK(qbell_pair_conditional(QBELL_SCENARIO_CHSH_DEPHASING,
                               QBELL_ROLE_CHSH_AB, -1.0, 0.0, cells, &dim) ==
        QBELL_ERR_VALIDATION);
  CHECK(qbell_pair_conditional(static_cast<qbell_scenario>(9),
                               QBELL_ROLE_CHSH_AB, 1.0, 0.0, cells, &dim) ==
        QBELL_ERR_USAGE);
}

TEST_CASE("oracle calls through the C boundary") {
  double closed[9] = {};
  double simulated[4] = {};
  size_t dim = 0;

  REQUIRE(qbell_pair_conditional(QBELL_SCENARIO_CHSH_DEPHASING,
                                 QBELL_ROLE_CHSH_AB, 0.9, 0.6, closed, &dim) ==
          QBELL_OK);
  REQUIRE(qbell_chsh_oracle_default(0.9, 0.6, QBELL_ROLE_CHSH_AB, simulated) ==
          QBELL_OK);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(simulated[i] - closed[i]) <= 1e-10);

  // Explicit timeline with the right combination.
  const double target = 0.6 * 0.9 / 3.0;
  REQUIRE(qbell_chsh_oracle(0.9, 0.6, QBELL_ROLE_CHSH_AB, 0.1 * target,
                            0.8 * target, simulated) == QBELL_OK);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(simulated[i] - closed[i]) <= 1e-10);

  CHECK(qbell_chsh_oracle(0.9, 0.6, QBELL_ROLE_CHSH_AB, 1.0, 1.0, simulated) ==
        QBELL_ERR_VALIDATION);

  double lg[9] = {};
  REQUIRE(qbell_lg_oracle(QBELL_LG_SPIN_ONE, QBELL_LG_DEPHASING, 0.8, 0.3, 1,
                          lg, &dim) == QBELL_OK);
  CHECK(dim == 3);
  REQUIRE(qbell_pair_conditional(QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING,
                                 QBELL_ROLE_LG_ADJACENT, 0.8, 0.3, closed,
                                 &dim) == QBELL_OK);
  for (int i = 0; i < 9; ++i) CHECK(std::abs(lg[i] - closed[i]) <= 1e-8);

  CHECK(qbell_lg_oracle(QBELL_LG_SPIN_ONE, QBELL_LG_DEPOLARIZING, 0.8, 0.3, 1,
                        lg, &dim) == QBELL_ERR_USAGE);

  double dev = 0.0;
  REQUIRE(qbell_validate_oracle(QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING, 4, 3,
                                2.0, &dev) == QBELL_OK);
  CHECK(dev <= qbell_oracle_tolerance(QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING));
  CHECK(qbell_oracle_tolerance(QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING) == 1e-8);
}

TEST_CASE("analysis calls through the C boundary") {
  qbell_search_config cfg;
  qbell_search_config_default(&cfg);
  CHECK(cfg.theta_max == doctest::Approx(kPi));
  CHECK(cfg.coarse_steps == 2000);
  cfg.coarse_steps = 400;
  cfg.refine_tolerance = 1e-5;
  cfg.kappa_bisect_tolerance = 1e-4;

  double v = 0.0;
  REQUIRE(qbell_cq(QBELL_SCENARIO_CHSH_DEPHASING, QBELL_METRIC_DELTA, 1.0,
                   kPi / 4.0, 0.0, &v) == QBELL_OK);
  CHECK(v == doctest::Approx(0.3153571296691806).epsilon(1e-9));

  double theta_star = 0.0;
  double s_value = 0.0;
  REQUIRE(qbell_sq(QBELL_SCENARIO_CHSH_DEPHASING, QBELL_METRIC_DTILDE, 1.0,
                   0.0, &cfg, &theta_star, &s_value) == QBELL_OK);
  CHECK(s_value >= 0.3153571296691806);
  // Null config selects the defaults.
  REQUIRE(qbell_sq(QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING, QBELL_METRIC_DTILDE,
                   2.0, 0.0, nullptr, &theta_star, &s_value) == QBELL_OK);
  CHECK(s_value > 0.0);

  int exists = -1;
  double kappa_s = 0.0;
  REQUIRE(qbell_kappa_threshold(QBELL_SCENARIO_CHSH_DEPHASING,
                                QBELL_METRIC_DTILDE, 1.0, &cfg, &exists,
                                &kappa_s) == QBELL_OK);
  CHECK(exists == 1);
  CHECK(kappa_s > 0.0);
  REQUIRE(qbell_kappa_threshold(QBELL_SCENARIO_CHSH_DEPHASING,
                                QBELL_METRIC_DTILDE, 0.3, &cfg, &exists,
                                &kappa_s) == QBELL_OK);
  CHECK(exists == 0);

  const double qs[2] = {2.0, 1.0};
  const double kappas[2] = {0.1, 0.0};
  qbell_scan* scan = nullptr;
  REQUIRE(qbell_scan_run(QBELL_SCENARIO_CHSH_DEPHASING, QBELL_METRIC_DTILDE,
                         qs, 2, kappas, 2, &cfg, &scan) == QBELL_OK);
  REQUIRE(scan != nullptr);
  REQUIRE(qbell_scan_size(scan) == 4);
  qbell_scan_record rec;
  REQUIRE(qbell_scan_get(scan, 0, &rec) == QBELL_OK);
  CHECK(rec.q == 1.0);
  CHECK(rec.kappa == 0.0);
  CHECK(rec.positive == 1);
  CHECK(rec.scenario == QBELL_SCENARIO_CHSH_DEPHASING);
  CHECK(rec.metric == QBELL_METRIC_DTILDE);
  CHECK(qbell_scan_get(scan, 4, &rec) == QBELL_ERR_USAGE);
  qbell_scan_free(scan);
}
