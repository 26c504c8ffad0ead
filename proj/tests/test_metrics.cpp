#include <doctest.h>

#include <cmath>
#include <limits>

#include "cqc/errors.hpp"
#include "cqc/metrics.hpp"
#include "support.hpp"

using namespace cqc;
using namespace cqc::test;

TEST_CASE("trace and positivity drift") {
  for (int i = 0; i < 100; ++i) CHECK(trace_drift(random_state()) <= 1e-16 * 2);
  CHECK(trace_drift(Herm2{0.6, 0.5, 0.0}) == doctest::Approx(0.1));
  CHECK(positivity_drift(0.5 * Herm2::identity()) == 0.0);
  CHECK(positivity_drift(Herm2{1.2, -0.2, 0.0}) == doctest::Approx(0.2));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(std::isinf(trace_drift(Herm2{nan, 0.0, 0.0})));
  CHECK(std::isinf(positivity_drift(Herm2{0.0, 0.0, cplx{nan, 0.0}})));
}

TEST_CASE("contact defect") {
  const Herm2 rho = random_state();
  CHECK(contact_defect(rho, random_state(), Herm2::zero(), 0.3, 0.3) == 0.0);
  // a static state only sees the running-cost increment
  CHECK(contact_defect(rho, rho, random_herm(), 1.0, 1.0 + 0.05 * 1.0 * 0.01) == doctest::Approx(5e-4));
}

TEST_CASE("global error") {
  const ControlSchedule u = ControlSchedule::sine_pulse(100, 0.01, 4.0);
  const Trajectory t = propagate(Scheme::ContactLgvi, Herm2::excited(), u, 0.01, 1.0);
  for (double e : global_error(t, t)) CHECK(e == 0.0);

  Trajectory bumped = t;
  const double eps = 1e-3;
  bumped.rho[40] = bumped.rho[40] + eps * Herm2::pauli_x();
  const auto err = global_error(bumped, t);
  CHECK(err[40] == doctest::Approx(std::sqrt(2.0) * eps).epsilon(1e-12));
  CHECK(err[39] == 0.0);

  const Trajectory other = propagate(Scheme::ContactLgvi, Herm2::excited(), u, 0.02, 1.0);
  CHECK_THROWS_AS(global_error(t, other), UsageError);
  const Trajectory shorter = propagate(Scheme::ContactLgvi, Herm2::excited(), ControlSchedule::constant(50, 0.0), 0.01, 1.0);
  CHECK_THROWS_AS(global_error(t, shorter), UsageError);
}

TEST_CASE("summaries") {
  const Trajectory empty = propagate(Scheme::ContactLgvi, Herm2::excited(), ControlSchedule{}, 0.01, 1.0);
  const RunSummary z = summarize(empty, backward_sweep(empty, Herm2::ground(), 1.0),
                                 accumulate_cost(ControlSchedule{}, 0.05, 0.01));
  CHECK(z.max_trace_drift == 0.0);
  CHECK(z.max_pos_drift == 0.0);
  CHECK(z.max_abs_theta == 0.0);
  CHECK_FALSE(z.max_glob_err);
  CHECK_FALSE(z.diverged_at);

  // valid CPTP runs: no drift beyond round-off anywhere
  for (int i = 0; i < 20; ++i) {
    const double amp = uniform(-6, 6), gamma = uniform(0, 20);
    const ControlSchedule u = ControlSchedule::sine_pulse(200, 0.01, amp);
    const Trajectory t = propagate(Scheme::ContactLgvi, random_state(), u, 0.01, gamma);
    const auto steps = step_metrics(t, backward_sweep(t, Herm2::ground(), gamma), accumulate_cost(u, 0.05, 0.01));
    REQUIRE(steps.size() == 201);
    CHECK_FALSE(steps.back().theta);
    for (const StepMetrics& m : steps) {
      CHECK(m.trace_drift <= 1e-14);
      CHECK(m.pos_drift <= 1e-14);
    }
  }
}

TEST_CASE("summary of a diverged run keeps finite maxima and the index") {
  const ControlSchedule u = ControlSchedule::constant(200, 1.0);
  const Trajectory t = propagate(Scheme::Rk2Heun, Herm2::excited(), u, 1.0, 1000.0);
  REQUIRE(t.diverged_at);
  const auto steps = step_metrics(t, backward_sweep(t, Herm2::ground(), 1000.0), accumulate_cost(u, 0.05, 1.0));
  CHECK(std::isinf(steps.back().trace_drift));
  const RunSummary s = summarize(Scheme::Rk2Heun, steps, t.diverged_at);
  CHECK(s.diverged_at == t.diverged_at);
  CHECK(std::isfinite(s.max_pos_drift));
  CHECK(s.max_pos_drift > 1e100);
  CHECK(s.max_pos_drift == s.max_pos_drift_raw);
}

TEST_CASE("positivity clamp only affects the summary") {
  Trajectory t;
  t.dt = 0.1;
  t.u = {0.0};
  t.rho = {Herm2{1.0 + 5e-15, -5e-15, 0.0}, Herm2::ground()};
  const auto steps = step_metrics(t, backward_sweep(t, Herm2::ground(), 0.0), accumulate_cost(ControlSchedule{t.u}, 0.0, 0.1));
  CHECK(steps[0].pos_drift == doctest::Approx(5e-15));
  const RunSummary s = summarize(Scheme::ContactLgvi, steps, std::nullopt);
  CHECK(s.max_pos_drift == 0.0);
  CHECK(s.max_pos_drift_raw == doctest::Approx(5e-15));
}
