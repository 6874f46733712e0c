#include <doctest.h>

#include <cmath>

#include "nsopt/generators.hpp"

using namespace nsopt;

namespace {

int find_tau(const FunctionSequence& seq) {
    // last epoch with b == 1 before the drift starts
    for (int t = 1; t < seq.horizon; ++t)
        if (seq.costs[t].b[0] != 1.0) return t;  // 0-based index of first drifted epoch
    return seq.horizon;
}

} // namespace

TEST_CASE("drift patterns follow their closed forms") {
    PatternSpec spec;
    spec.horizon = 1000;

    for (Pattern p : {Pattern::Shock, Pattern::Decay, Pattern::Linear}) {
        spec.pattern = p;
        const auto seq = make_appendix_c(spec, 42u);
        REQUIRE(seq.horizon == 1000);
        const int tau = find_tau(seq);
        CHECK(tau >= 1);
        CHECK(tau <= 250);  // tau ~ U{1..T/4}
        for (int t = 0; t < tau; ++t) CHECK(seq.costs[t].b[0] == 1.0);
        for (int t = tau; t < seq.horizon; ++t) {
            const double b = seq.costs[t].b[0];
            const int t1 = t + 1;  // 1-based epoch
            if (p == Pattern::Shock) CHECK(b == 0.0);
            if (p == Pattern::Decay)
                CHECK(b == doctest::Approx(std::exp(-10.0 * (t1 - tau) / 1000.0)));
            if (p == Pattern::Linear)
                CHECK(b == doctest::Approx(static_cast<double>(1000 - t1) / (1000 - tau)));
        }
        // b is non-increasing after the changepoint
        for (int t = tau; t + 1 < seq.horizon; ++t)
            CHECK(seq.costs[t + 1].b[0] <= seq.costs[t].b[0] + 1e-15);
        CHECK(seq.family_g == doctest::Approx(5.5));
        CHECK(seq.family_h == doctest::Approx(1.0));
        CHECK(seq.budget_claimed);
        CHECK(variation(seq, seq.budget_mode) <= seq.declared_budget + 1e-9);
    }
}

TEST_CASE("decay pattern hits e^{-1} a tenth of a horizon past the changepoint") {
    PatternSpec spec;
    spec.pattern = Pattern::Decay;
    spec.horizon = 1000;
    const auto seq = make_appendix_c(spec, 7u);
    const int tau = find_tau(seq);
    const int t = tau + 100 - 1;  // 0-based index of epoch tau + T/10
    REQUIRE(t < seq.horizon);
    CHECK(seq.costs[t].b[0] == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("generators are deterministic in the seed") {
    PatternSpec spec;
    spec.pattern = Pattern::Linear;
    spec.horizon = 500;
    const auto s1 = make_appendix_c(spec, 99u);
    const auto s2 = make_appendix_c(spec, 99u);
    const auto s3 = make_appendix_c(spec, 100u);
    for (int t = 0; t < 500; ++t) CHECK(s1.costs[t].b[0] == s2.costs[t].b[0]);
    CHECK(find_tau(s1) != find_tau(s3));  // different seed, different changepoint (these seeds)
}

TEST_CASE("adversarial convex instance matches the tuning formulas") {
    AdversarySpec spec;
    spec.family = AdversarySpec::Family::ConvexGrad;
    spec.horizon = 1000;
    spec.budget = 1.0;
    spec.noise_constant = 1.0 / (2.0 * 0.3 * 0.3);
    const auto seq = make_adversarial_convex(spec, 5u);

    // batch 35, delta = 35/2000
    CHECK(seq.costs[0].delta == doctest::Approx(0.0175));
    for (int t = 0; t < seq.horizon; ++t) {
        const int j = t / 35;
        CHECK(seq.costs[t].sign == seq.costs[j * 35].sign);  // constant within batches
    }
    bool saw_change = false;
    for (int t = 1; t < seq.horizon; ++t) {
        if (!seq.costs[t].same_params(seq.costs[t - 1])) {
            CHECK(t % 35 == 0);  // changes only at batch boundaries
            saw_change = true;
        }
    }
    CHECK(saw_change);
    CHECK(seq.budget_mode == VariationMode::Full);
    CHECK(variation(seq, VariationMode::Full) <= 1.0 + 1e-9);

    const auto m1 = minimize(seq.costs[0], seq.box);
    const double d = seq.costs[0].delta;
    CHECK(m1.first[0] == doctest::Approx(seq.costs[0].sign > 0 ? 0.75 + d : 0.25 - d));
}

TEST_CASE("adversarial convex rejects oversized budgets") {
    AdversarySpec spec;
    spec.family = AdversarySpec::Family::ConvexGrad;
    spec.horizon = 1000;
    spec.budget = 1000.0;
    spec.noise_constant = 5.5556;
    CHECK_THROWS_AS(make_adversarial_convex(spec, 1u), std::invalid_argument);
    spec.budget = 0.5;
    CHECK_THROWS_AS(make_adversarial_convex(spec, 1u), std::invalid_argument);
}

TEST_CASE("adversarial strongly convex instance matches the tuning formulas") {
    AdversarySpec spec;
    spec.family = AdversarySpec::Family::StronglyConvex;
    spec.horizon = 10000;
    spec.budget = 1.0;
    spec.noise_constant = 1.0 / (2.0 * 0.3 * 0.3);
    const auto seq = make_adversarial_strongly_convex(spec, 5u);

    const double d = std::sqrt(2.0 * 30.0 / 10000.0);  // batch size 30
    bool saw_f2 = false;
    for (int t = 0; t < seq.horizon; ++t) {
        const auto& f = seq.costs[t];
        CHECK(f.a == 2.0);
        const double xstar = minimize(f, seq.box).first[0];
        if (f.b[0] == 1.0) {
            CHECK(xstar == doctest::Approx(0.5));
        } else {
            CHECK(f.b[0] == doctest::Approx(1.0 + d));
            CHECK(xstar == doctest::Approx((1.0 + d) / 2.0));
            saw_f2 = true;
        }
        if (t > 0 && !f.same_params(seq.costs[t - 1])) CHECK(t % 30 == 0);
    }
    CHECK(saw_f2);
    CHECK(d == doctest::Approx(0.0774597).epsilon(1e-5));
    CHECK(seq.family_h == doctest::Approx(2.0));
    CHECK(variation(seq, VariationMode::Hull) <= 1.0 + 1e-9);
}

TEST_CASE("gradient-descent failure instances") {
    SUBCASE("decaying step: two batches with alpha = 1") {
        const auto seq = make_ogd_failure(OgdFailureVariant::DecayingStep, 1000, 1.0);
        REQUIRE(seq.horizon == 1000);
        for (int t = 0; t < 500; ++t) {
            CHECK(seq.costs[t].b[0] == doctest::Approx(2.0));   // (x−1)^2
            CHECK(seq.costs[t].c == doctest::Approx(1.0));
        }
        for (int t = 500; t < 1000; ++t) CHECK(seq.costs[t].b[0] == 0.0);  // x^2
        // (x−alpha)^2 vanishes at alpha
        CHECK(eval(seq.costs[0], Eigen::VectorXd::Constant(1, 1.0)) == doctest::Approx(0.0));
        CHECK(variation(seq, VariationMode::Hull) == doctest::Approx(1.0));
        CHECK_THROWS_AS(make_ogd_failure(OgdFailureVariant::DecayingStep, 999, 1.0),
                        std::invalid_argument);
    }
    SUBCASE("constant step: batch length and alpha from the step size") {
        const auto seq = make_ogd_failure(OgdFailureVariant::ConstStep, 10000, 0.5);
        const double alpha = 1.0 + std::pow(0.99, 101);
        // alternating batches of 101 of (x−alpha)^2 and x^2
        CHECK(seq.costs[0].b[0] == doctest::Approx(2.0 * alpha));
        CHECK(seq.costs[100].b[0] == doctest::Approx(2.0 * alpha));
        CHECK(seq.costs[101].b[0] == 0.0);
        CHECK(seq.costs[202].b[0] == doctest::Approx(2.0 * alpha));
        CHECK_THROWS_AS(make_ogd_failure(OgdFailureVariant::ConstStep, 100, 6.0),
                        std::invalid_argument);
    }
}

TEST_CASE("oracle-gap instance") {
    const auto seq = make_oracle_gap(4);
    CHECK(minimize(seq.costs[0], seq.box).first[0] == doctest::Approx(0.0));
    CHECK(minimize(seq.costs[3], seq.box).first[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(make_oracle_gap(5), std::invalid_argument);
}
