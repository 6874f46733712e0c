#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nsopt/harness.hpp"

using namespace nsopt;

namespace {

Eigen::VectorXd vec1(double v) { return Eigen::VectorXd::Constant(1, v); }

FunctionSequence shock_sequence(int T, int tau) {
    FunctionSequence seq;
    seq.horizon = T;
    seq.box = Box(-2.0, 3.0);
    for (int t = 1; t <= T; ++t)
        seq.costs.push_back(CostInstance::quadratic1d(1.0, t <= tau ? 1.0 : 0.0, 1.0));
    seq.family_g = 5.5;
    seq.family_h = 1.0;
    return seq;
}

} // namespace

TEST_CASE("dynamic oracle totals") {
    // f* = 1 − b^2/2: 0.5 before the shock, 1 after
    const auto seq = shock_sequence(1000, 250);
    const auto oracle = dynamic_oracle(seq);
    CHECK(oracle.total == doctest::Approx(0.5 * 250 + 1.0 * 750));
    CHECK(oracle.per_epoch_min[0].first[0] == doctest::Approx(1.0));
    CHECK(oracle.per_epoch_min[999].first[0] == doctest::Approx(0.0));

    FunctionSequence constant;
    constant.horizon = 10;
    constant.box = Box(-2.0, 3.0);
    for (int t = 0; t < 10; ++t) constant.costs.push_back(CostInstance::quadratic1d(1.0, 0.5, 1.0));
    CHECK(dynamic_oracle(constant).total == doctest::Approx(10 * 0.875));
}

TEST_CASE("static oracle closed form and search agree") {
    const auto seq = shock_sequence(1000, 250);
    const auto [x, total] = static_oracle(seq);
    CHECK(x[0] == doctest::Approx(0.25));  // mean(b)/a = tau/T

    // golden-section path on a piecewise sequence
    FunctionSequence pw;
    pw.horizon = 3;
    pw.box = Box(0.0, 1.0);
    pw.costs.push_back(CostInstance::piecewise(0.1, +1));
    pw.costs.push_back(CostInstance::piecewise(0.1, -1));
    pw.costs.push_back(CostInstance::piecewise(0.05, +1));
    const auto [xp, vp] = static_oracle(pw);
    double best = 1e18, bx = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
        const double u = i / 1000000.0;
        double s = 0.0;
        for (const auto& f : pw.costs) s += eval(f, vec1(u));
        if (s < best) { best = s; bx = u; }
    }
    CHECK(xp[0] == doctest::Approx(bx).epsilon(1e-4));
    CHECK(vp == doctest::Approx(best).epsilon(1e-9));

    CHECK_THROWS_AS(static_oracle(seq, 5, 4), std::invalid_argument);
}

TEST_CASE("the dynamic oracle dominates the static one") {
    const auto seq = shock_sequence(200, 50);
    CHECK(dynamic_oracle(seq).total <= static_oracle(seq).second + 1e-12);
}

TEST_CASE("oracle-gap instance separates the benchmarks by T/4") {
    for (int T : {4, 100, 2000}) {
        const auto seq = make_oracle_gap(T);
        const double gap = static_oracle(seq).second - dynamic_oracle(seq).total;
        CHECK(gap == doctest::Approx(T / 4.0).epsilon(1e-9));
    }
    const auto seq4 = make_oracle_gap(4);
    CHECK(dynamic_oracle(seq4).total == doctest::Approx(-2.0));
    CHECK(static_oracle(seq4).first[0] == doctest::Approx(0.5));
    CHECK(static_oracle(seq4).second == doctest::Approx(-1.0));
}

TEST_CASE("trajectories accumulate regret monotonically") {
    const auto seq = shock_sequence(2000, 400);
    PolicyContext ctx;
    ctx.horizon = 2000;
    ctx.G = 5.5;
    ctx.H = 1.0;
    ctx.r = 2.5;
    auto policy = make_policy("restarted-ogd", ctx);
    RandomStream noise(1, 0, kNoiseSub), prng(1, 0, kPolicySub);
    const auto rec = run_trajectory(*policy, seq, NoiseModel{0.3}, noise, prng);
    REQUIRE(!rec.fault);
    REQUIRE(static_cast<int>(rec.cumulative_regret.size()) == 2000);
    for (std::size_t t = 1; t < rec.cumulative_regret.size(); ++t)
        CHECK(rec.cumulative_regret[t] >= rec.cumulative_regret[t - 1] - 1e-12);
    CHECK(rec.final_regret == doctest::Approx(rec.cumulative_regret.back()));
}

TEST_CASE("per-batch split reconstructs the total regret") {
    const auto seq = shock_sequence(2000, 400);
    PolicyContext ctx;
    ctx.horizon = 2000;
    ctx.G = 5.5;
    ctx.H = 1.0;
    ctx.r = 2.5;
    auto policy = make_policy("restarted-ogd", ctx);
    RandomStream noise(2, 0, kNoiseSub), prng(2, 0, kPolicySub);
    TrajectoryOptions opts;
    opts.diagnostics = true;
    const auto rec = run_trajectory(*policy, seq, NoiseModel{0.3}, noise, prng, opts);
    REQUIRE(!rec.batches.empty());
    double sum = 0.0;
    for (const auto& b : rec.batches) {
        sum += b.j1 + b.j2;
        CHECK(b.j2 >= -1e-9);  // the fixed action can't beat the per-epoch minimizers
        const int batch_len = b.last - b.first + 1;
        CHECK(b.j2 <= 2.0 * batch_len * b.batch_variation + 1e-9);
    }
    CHECK(sum == doctest::Approx(rec.final_regret).epsilon(1e-9));
}

TEST_CASE("wrapping with a batch at least the horizon changes nothing") {
    const auto seq = shock_sequence(500, 100);
    PolicyContext ctx;
    ctx.horizon = 500;
    ctx.G = 5.5;
    ctx.H = 1.0;
    ctx.r = 2.5;

    auto bare = std::make_unique<OgdPolicy>(StepSchedule::strongly_convex(1.0));
    auto wrapped = restart_wrap(std::make_unique<OgdPolicy>(StepSchedule::strongly_convex(1.0)),
                                500, RestartVariant::Full);
    RandomStream n1(3, 0, kNoiseSub), p1(3, 0, kPolicySub);
    RandomStream n2(3, 0, kNoiseSub), p2(3, 0, kPolicySub);
    const auto r1 = run_trajectory(*bare, seq, NoiseModel{0.3}, n1, p1);
    const auto r2 = run_trajectory(*wrapped, seq, NoiseModel{0.3}, n2, p2);
    REQUIRE(r1.actions.size() == r2.actions.size());
    for (std::size_t t = 0; t < r1.actions.size(); ++t)
        CHECK(r1.actions[t][0] == r2.actions[t][0]);  // bit-identical
    CHECK(r1.final_regret == r2.final_regret);
}

TEST_CASE("linear regret of unrestarted descent on the failure instance") {
    // eta_t = C/t with C = 1 is the decaying schedule with H = 1
    const int T = 10000;
    const auto seq = make_ogd_failure(OgdFailureVariant::DecayingStep, T, 1.0);
    OgdPolicy policy(StepSchedule::strongly_convex(1.0), InitMode::Given, vec1(1.0));
    RandomStream noise(4, 0, kNoiseSub), prng(4, 0, kPolicySub);
    TrajectoryOptions opts;
    opts.record_path = false;
    const auto rec = run_trajectory(policy, seq, NoiseModel{0.0}, noise, prng, opts);
    CHECK(rec.final_regret >= T / (2.0 * std::exp(12.0)));
    CHECK(rec.final_regret / T > 0.01);  // linear, not sublinear
}

TEST_CASE("relative loss") {
    CHECK(relative_loss(0.0, 123.0) == doctest::Approx(0.0));
    CHECK(relative_loss(50.0, 1000.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(relative_loss(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("rate fitting") {
    const std::vector<std::pair<double, double>> pts = {
        {1000.0, 316.228}, {4000.0, 632.456}, {16000.0, 1264.911}};
    const auto fit = fit_rate(pts);
    CHECK(fit.alpha == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(fit.c == doctest::Approx(10.0).epsilon(1e-4));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(fit_rate({{1000.0, 1.0}, {2000.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({{1000.0, 1.0}, {1000.0, 2.0}, {3000.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({{1000.0, -1.0}, {2000.0, 2.0}, {3000.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("experiment runner is deterministic and stream-indexed") {
    ExperimentConfig cfg;
    cfg.pattern = "shock";
    cfg.policy = "restarted-ogd";
    cfg.feedback = "grad";
    cfg.sigma = 0.3;
    cfg.horizons = {500};
    cfg.replications = 1;
    cfg.base_seed = 11;

    const auto res1 = run_experiment(cfg);
    const auto res2 = run_experiment(cfg);
    CHECK(to_csv(cfg, res1) == to_csv(cfg, res2));

    // a single replication reproduces a hand-built trajectory with the same streams
    RandomStream env(11, 0, kEnvSub), noise(11, 0, kNoiseSub), prng(11, 0, kPolicySub);
    const auto seq = generate_sequence(cfg, 500, env);
    PolicyContext ctx;
    ctx.horizon = 500;
    ctx.tuning_budget = 1.0;
    ctx.G = seq.family_g;
    ctx.H = seq.family_h;
    ctx.r = radius(seq.box);
    ctx.nu = default_nu(seq);
    auto policy = make_policy(cfg.policy, ctx);
    TrajectoryOptions opts;
    opts.record_path = false;
    const auto rec = run_trajectory(*policy, seq, NoiseModel{0.3}, noise, prng, opts);
    CHECK(res1.cells[0].mean_regret == doctest::Approx(rec.final_regret).epsilon(1e-12));

    SUBCASE("config validation") {
        ExperimentConfig bad = cfg;
        bad.feedback = "cost";  // restarted-ogd consumes gradients
        CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
        bad = cfg;
        bad.horizons = {500, 400};
        CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
        bad = cfg;
        bad.replications = 0;
        CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
        bad = cfg;
        bad.pattern = "mystery";
        CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
    }
}

TEST_CASE("csv schema") {
    ExperimentConfig cfg;
    cfg.pattern = "shock";
    cfg.policy = "restarted-ogd";
    cfg.feedback = "grad";
    cfg.sigma = 0.3;
    cfg.horizons = {500, 700, 900};
    cfg.replications = 2;
    cfg.base_seed = 5;
    const auto res = run_experiment(cfg);
    const std::string csv = to_csv(cfg, res);
    CHECK(csv.rfind("pattern,policy,feedback,sigma,T,replications,mean_regret,stderr_regret,"
                    "mean_loss_pct,alpha,c,r2\n", 0) == 0);
    // 3 data rows + fit row + header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(res.fit.has_value());
}
