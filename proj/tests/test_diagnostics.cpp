#include "doctest.h"
#include "helpers.hpp"

#include "vrsgd/diagnostics.hpp"
#include "vrsgd/solver.hpp"

using namespace vrsgd;

TEST_CASE("finite differences") {
  const Vec<double> x = (Vec<double>(2) << 1, 2).finished();
  const Vec<double> g = finite_diff_grad([](const Vec<double>& p) { return 0.5 * p.squaredNorm(); }, x, 1e-5);
  CHECK((g - x).cwiseAbs().maxCoeff() <= 1e-8);
  const Vec<double> z = finite_diff_grad([](const Vec<double>&) { return 3.0; }, x, 1e-3);
  CHECK(z.isZero(0));
  CHECK_THROWS(finite_diff_grad([](const Vec<double>&) { return 0.0; }, x, 0.0));
}

TEST_CASE("finite differences are second order") {
  const auto ds = testing::classification(1, 30, 4);
  const Objective<double> obj(ds, LossKind::logistic, Regularizer<double>::none());
  testing::CounterRng rng(2);
  const Vec<double> x = testing::random_vec(rng, 4);
  const Vec<double> exact = obj.smooth_gradient(x);
  auto f = [&](const Vec<double>& p) { return obj.smooth_value(p); };
  const double e1 = (finite_diff_grad(f, x, 1e-2) - exact).norm();
  const double e2 = (finite_diff_grad(f, x, 5e-3) - exact).norm();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK((finite_diff_grad(f, x, 1e-5) - exact).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("ridge closed form") {
  SUBCASE("identity design") {
    const Vec<double> b = (Vec<double>(3) << 1, -2, 0.5).finished();
    const auto ds = Dataset<double>::from_dense(Mat<double>::Identity(3, 3), b);
    // (I/3) x = b/3
    CHECK((ridge_closed_form(ds, 0.0) - b).norm() <= 1e-14);
    CHECK(ridge_closed_form(ds, 1e6).norm() <= 1e-5 * b.norm());
  }
  SUBCASE("gradient vanishes at the solution") {
    const auto ds = testing::regression(3, 50, 5);
    const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(0.1));
    CHECK(obj.gradient(ridge_closed_form(ds, 0.1)).norm() <= 1e-10);
  }
  SUBCASE("singular without regularization") {
    const auto ds = Dataset<double>::from_dense(Mat<double>::Zero(3, 2), Vec<double>::Ones(3));
    CHECK_THROWS_AS(ridge_closed_form(ds, 0.0), std::domain_error);
  }
}

TEST_CASE("ridge optimum agrees with long gradient descent") {
  const auto ds = testing::regression(4, 40, 4);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(0.2));
  SolverConfig<double> cfg;
  cfg.algorithm = Algorithm::gd;
  cfg.epochs = 400;
  cfg.eta0 = 1 / (obj.smoothness() + 0.2);
  CHECK((run(cfg, obj).x_hat - ridge_closed_form(ds, 0.2)).norm() <= 1e-8);
}

TEST_CASE("rate calculator") {
  const auto r = theoretical_rate_sc(1, 0.1, 0.1, 2000, 1, RateOption::II);
  // 2(0.1)(2001)/(1999 * 0.7) + 0.9/(0.01 * 1999 * 0.7)
  CHECK(r.rho == doctest::Approx(0.2860 + 0.06432).epsilon(1e-3));
  CHECK(std::abs(r.rho - 0.350) <= 1e-3);
  CHECK(r.convergent);
  const auto tiny_c = theoretical_rate_sc(1, 0.1, 0.1, 2000, 1e-12);
  CHECK(tiny_c.rho == doctest::Approx(2 * 0.1 * 2000 / (1999 * 0.7)).epsilon(1e-9));
  const auto opt1 = theoretical_rate_sc(1, 0.1, 0.1, 2000, 1, RateOption::I);
  CHECK(opt1.rho == doctest::Approx(2 * 0.1 * 2001 / (2000 * 0.7) + 0.9 / (2000 * 0.01 * 0.7)));
  CHECK(opt1.rho < r.rho);
  CHECK_THROWS_AS(theoretical_rate_sc(1, 0.1, 1.0 / 3, 2000, 1), std::domain_error);
  CHECK_THROWS_AS(theoretical_rate_sc(3, 0.1, 0.2, 2000, 1), std::domain_error);
  CHECK_THROWS(theoretical_rate_sc(1, 0.0, 0.1, 2000, 1));
  CHECK_THROWS(theoretical_rate_sc(1, 0.1, 0.1, 1, 1));
  CHECK_FALSE(theoretical_rate_sc(1, 0.001, 0.3, 20, 5).convergent);
}

TEST_CASE("rate grows with c") {
  for (auto opt : {RateOption::I, RateOption::II}) {
    for (double eta = 0.01; eta < 0.33; eta += 0.02) {
      double prev = 0;
      for (double c = 0.1; c < 50; c *= 1.7) {
        const double rho = theoretical_rate_sc(1, 0.05, eta, 500, c, opt).rho;
        CHECK(rho > prev);
        prev = rho;
      }
    }
  }
}

TEST_CASE("rate is unimodal in eta") {
  // the c term blows up as eta -> 0 and the first term as eta -> 1/(3L)
  for (auto opt : {RateOption::I, RateOption::II}) {
    for (double c : {0.1, 1.0, 10.0}) {
      int turns = 0;
      double prev = theoretical_rate_sc(1, 0.05, 1e-3, 500, c, opt).rho;
      bool falling = true;
      for (double eta = 2e-3; eta < 0.333; eta += 1e-3) {
        const double rho = theoretical_rate_sc(1, 0.05, eta, 500, c, opt).rho;
        if (falling && rho > prev) {
          falling = false;
          ++turns;
        } else if (!falling) {
          CHECK(rho > prev);
        }
        prev = rho;
      }
      CHECK(turns == 1);
    }
  }
}

TEST_CASE("snapshot constant estimates") {
  const std::vector<double> start{2.0, 1.0, 3.0};
  const std::vector<double> prev{2.0, 5.0, 1.0};
  const auto est = snapshot_constant_estimate(start, prev, 1.0, 10);
  REQUIRE(est.size() == 3);
  CHECK(*est[0].c == 1.0);
  CHECK(*est[1].c == 0.0);
  CHECK(*est[1].c_over_m == 0.0);
  CHECK_FALSE(est[2].c.has_value());
  CHECK_THROWS(snapshot_constant_estimate(start, std::vector<double>{1.0}, 0.0, 10));
}

TEST_CASE("measured constant is far below the epoch length on ridge") {
  const auto ds = testing::regression(5, 200, 10);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(1e-2));
  SolverConfig<double> cfg;
  cfg.epochs = 12;
  cfg.eta0 = 0.25 / obj.smoothness();
  cfg.track_start_objective = true;
  const double fstar = obj.value(ridge_closed_form(ds, 1e-2));
  const auto rec = run(cfg, obj);
  std::vector<double> start, prev;
  for (std::size_t s = 1; s < rec.epochs.size(); ++s) {
    start.push_back(*rec.epochs[s].start_objective);
    prev.push_back(rec.epochs[s - 1].objective);
  }
  int checked = 0;
  for (const auto& e : snapshot_constant_estimate(start, prev, fstar, cfg.resolved_epoch_length(200))) {
    if (!e.c || prev[static_cast<std::size_t>(e.epoch - 1)] - fstar < 1e-12) continue;
    CHECK(*e.c_over_m < 0.1);
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("variance bounds") {
  const auto ds = testing::regression(6, 10, 3);
  const Objective<double> obj(ds, LossKind::squared, Regularizer<double>::l2(0.05));
  const Vec<double> xs = ridge_closed_form(ds, 0.05);

  SUBCASE("everything at the optimum") {
    const auto r = variance_bound_report(obj, xs, xs, xs, 1);
    CHECK(r.lhs <= 1e-28);
    CHECK(std::abs(r.rhs) <= 1e-14);
    CHECK(r.satisfied);
  }
  SUBCASE("full batch has no variance") {
    testing::CounterRng rng(1);
    const auto r = variance_bound_report(obj, testing::random_vec(rng, 3), testing::random_vec(rng, 3), xs, 10);
    CHECK(r.lhs <= 1e-26);
    CHECK(r.rhs == 0.0);
  }
  SUBCASE("bound holds and shrinks with the batch") {
    testing::CounterRng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
      const Vec<double> x = testing::random_vec(rng, 3);
      const Vec<double> a = testing::random_vec(rng, 3);
      double prev = std::numeric_limits<double>::infinity();
      for (Index b = 1; b <= 10; ++b) {
        const auto r = variance_bound_report(obj, x, a, xs, b);
        CHECK(r.satisfied);
        CHECK(r.lhs <= prev * (1 + 1e-12));
        prev = r.lhs;
      }
    }
  }
  SUBCASE("enumeration limit") {
    const auto big = testing::regression(7, 13, 2);
    const Objective<double> o(big, LossKind::squared, Regularizer<double>::l2(0.05));
    const Vec<double> z = Vec<double>::Zero(2);
    CHECK_THROWS(variance_bound_report(o, z, z, z, 2));
    CHECK_NOTHROW(variance_bound_report(o, z, z, z, 1));
  }
}
