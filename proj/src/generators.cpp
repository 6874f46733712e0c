#include "nsopt/generators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nsopt {

namespace {

void cache_bounds(FunctionSequence& seq) {
    for (auto& f : seq.costs) {
        const auto [gv, gg] = cost_bounds(f, seq.box);
        f.g_value = gv;
        f.g_grad = gg;
    }
}

void check_budget(const FunctionSequence& seq) {
    const double measured = variation(seq, seq.budget_mode);
    if (measured > seq.declared_budget + 1e-9)
        throw std::logic_error("generator produced a sequence exceeding its declared budget");
}

int batch_count(int T, int delta) { return (T + delta - 1) / delta; }

} // namespace

FunctionSequence make_appendix_c(const PatternSpec& spec, RandomStream& rng) {
    const int T = spec.horizon;
    if (T < 1) throw std::invalid_argument("make_appendix_c: horizon < 1");
    const int tau_max = std::max(T / 4, 1);
    const int tau = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(tau_max))) + 1;

    FunctionSequence seq;
    seq.horizon = T;
    seq.box = spec.box;
    seq.costs.reserve(T);
    for (int t = 1; t <= T; ++t) {
        double b = 1.0;
        if (t > tau) {
            switch (spec.pattern) {
                case Pattern::Shock: b = 0.0; break;
                case Pattern::Decay: b = std::exp(-spec.decay_rate * (t - tau) / T); break;
                case Pattern::Linear: b = static_cast<double>(T - t) / (T - tau); break;
            }
        }
        seq.costs.push_back(CostInstance::quadratic1d(1.0, b, 1.0));
    }

    // Family-wide exact constants over b in [0,1]: sup |f| is attained at
    // (x,b) = (3,0) giving 5.5; sup |f'| = sup |x − b| = 3; H = a = 1.
    seq.family_g = 5.5;
    seq.family_h = 1.0;

    seq.budget_mode = VariationMode::Hull;
    seq.declared_budget = variation(seq, VariationMode::Hull);
    seq.budget_claimed = true;

    std::ostringstream tag;
    tag << (spec.pattern == Pattern::Shock ? "shock" :
            spec.pattern == Pattern::Decay ? "decay" : "linear")
        << " tau=" << tau;
    seq.generator_tag = tag.str();
    cache_bounds(seq);
    return seq;
}

FunctionSequence make_appendix_c(const PatternSpec& spec, std::uint64_t seed) {
    RandomStream rng(seed, 0, kEnvSub);
    return make_appendix_c(spec, rng);
}

FunctionSequence make_adversarial_convex(const AdversarySpec& spec, RandomStream& rng) {
    const int T = spec.horizon;
    const double V = spec.budget;
    if (T < 1) throw std::invalid_argument("make_adversarial_convex: horizon < 1");
    if (V < 1.0 || V > T) throw std::invalid_argument("make_adversarial_convex: budget outside [1, T]");
    const double Ct = spec.noise_constant;
    if (Ct <= 0.0) throw std::invalid_argument("make_adversarial_convex: noise constant must be positive");

    const int delta_T = std::max(
        static_cast<int>(std::floor(std::cbrt(1.0 / (4.0 * Ct)) * std::pow(T / V, 2.0 / 3.0))), 1);
    const double d = V * delta_T / (2.0 * T);
    if (!(d > 0.0 && d < 0.25))
        throw std::invalid_argument("make_adversarial_convex: budget too large (delta out of (0, 1/4))");

    FunctionSequence seq;
    seq.horizon = T;
    seq.box = Box{0.0, 1.0};
    seq.costs.reserve(T);
    const int m = batch_count(T, delta_T);
    for (int j = 0; j < m; ++j) {
        const int s = rng.rademacher() > 0 ? +1 : -1;
        const CostInstance f = CostInstance::piecewise(d, s);
        const int hi = std::min((j + 1) * delta_T, T);
        for (int t = j * delta_T; t < hi; ++t) seq.costs.push_back(f);
    }

    const auto [gv, gg] = cost_bounds(seq.costs.front(), seq.box);
    seq.family_g = std::max(gv, gg);
    seq.family_h = 0.0;  // convex but not strongly convex away from the caps

    seq.budget_mode = VariationMode::Full;
    seq.declared_budget = V;
    seq.budget_claimed = true;

    std::ostringstream tag;
    tag << "adv-convex delta=" << d << " batch=" << delta_T;
    seq.generator_tag = tag.str();
    cache_bounds(seq);
    check_budget(seq);
    return seq;
}

FunctionSequence make_adversarial_convex(const AdversarySpec& spec, std::uint64_t seed) {
    RandomStream rng(seed, 0, kEnvSub);
    return make_adversarial_convex(spec, rng);
}

FunctionSequence make_adversarial_strongly_convex(const AdversarySpec& spec, RandomStream& rng) {
    const int T = spec.horizon;
    const double V = spec.budget;
    if (T < 1) throw std::invalid_argument("make_adversarial_strongly_convex: horizon < 1");
    if (V < 1.0 || V > T) throw std::invalid_argument("make_adversarial_strongly_convex: budget outside [1, T]");
    const double Ct = spec.noise_constant;
    if (Ct <= 0.0) throw std::invalid_argument("make_adversarial_strongly_convex: noise constant must be positive");

    const int delta_T = std::max(
        static_cast<int>(std::floor(std::sqrt(T / V) / std::sqrt(2.0 * Ct))), 1);
    const double d = std::sqrt(2.0 * V * delta_T / T);
    if (!(d < 1.0))
        throw std::invalid_argument("make_adversarial_strongly_convex: budget too large (delta >= 1)");

    // f1 = x^2 − x + 3/4 and f2 = x^2 − (1+delta)x + 3/4 + delta/2, i.e.
    // curvature a = 2 with minimizers 1/2 and (1+delta)/2.
    const CostInstance f1 = CostInstance::quadratic1d(2.0, 1.0, 0.75);
    const CostInstance f2 = CostInstance::quadratic1d(2.0, 1.0 + d, 0.75 + d / 2.0);

    FunctionSequence seq;
    seq.horizon = T;
    seq.box = Box{0.0, 1.0};
    seq.costs.reserve(T);
    const int m = batch_count(T, delta_T);
    for (int j = 0; j < m; ++j) {
        const CostInstance& f = rng.rademacher() > 0 ? f1 : f2;
        const int hi = std::min((j + 1) * delta_T, T);
        for (int t = j * delta_T; t < hi; ++t) seq.costs.push_back(f);
    }

    const auto [gv1, gg1] = cost_bounds(f1, seq.box);
    const auto [gv2, gg2] = cost_bounds(f2, seq.box);
    seq.family_g = std::max({gv1, gg1, gv2, gg2});
    seq.family_h = 2.0;

    seq.budget_mode = VariationMode::Hull;
    seq.declared_budget = V;
    seq.budget_claimed = true;

    std::ostringstream tag;
    tag << "adv-strong delta=" << d << " batch=" << delta_T;
    seq.generator_tag = tag.str();
    cache_bounds(seq);
    check_budget(seq);
    return seq;
}

FunctionSequence make_adversarial_strongly_convex(const AdversarySpec& spec, std::uint64_t seed) {
    RandomStream rng(seed, 0, kEnvSub);
    return make_adversarial_strongly_convex(spec, rng);
}

FunctionSequence make_ogd_failure(OgdFailureVariant variant, int T, double step_constant) {
    if (T < 2) throw std::invalid_argument("make_ogd_failure: horizon too small");
    if (step_constant <= 0.0) throw std::invalid_argument("make_ogd_failure: step constant must be positive");

    double alpha;
    int delta_T;
    if (variant == OgdFailureVariant::DecayingStep) {
        if (T % 2 != 0) throw std::invalid_argument("make_ogd_failure: decaying_step needs even T");
        alpha = 1.0;
        delta_T = T / 2;
    } else {
        const double eta = step_constant / std::sqrt(static_cast<double>(T));
        if (eta > 0.5) throw std::invalid_argument("make_ogd_failure: const_step needs C/sqrt(T) <= 1/2");
        delta_T = static_cast<int>(std::floor(1.0 + 1.0 / (2.0 * eta)));
        alpha = 1.0 + std::pow(1.0 - 2.0 * eta, delta_T);
    }

    // g1 = (x−alpha)^2 and g2 = x^2 in the (a/2)x^2 − bx + c normalization.
    const CostInstance g1 = CostInstance::quadratic1d(2.0, 2.0 * alpha, alpha * alpha);
    const CostInstance g2 = CostInstance::quadratic1d(2.0, 0.0, 0.0);

    FunctionSequence seq;
    seq.horizon = T;
    seq.box = Box{-1.0, 3.0};
    seq.costs.reserve(T);
    if (variant == OgdFailureVariant::DecayingStep) {
        for (int t = 0; t < T; ++t) seq.costs.push_back(t < T / 2 ? g1 : g2);
    } else {
        for (int t = 0; t < T; ++t) seq.costs.push_back((t / delta_T) % 2 == 0 ? g1 : g2);
    }

    seq.family_g = std::max({cost_bounds(g1, seq.box).first, cost_bounds(g1, seq.box).second,
                             cost_bounds(g2, seq.box).first, cost_bounds(g2, seq.box).second});
    seq.family_h = 2.0;

    seq.budget_mode = VariationMode::Hull;
    seq.declared_budget = variation(seq, VariationMode::Hull);
    seq.budget_claimed = true;

    std::ostringstream tag;
    tag << "ogd-failure " << (variant == OgdFailureVariant::DecayingStep ? "decaying" : "const")
        << " alpha=" << alpha << " batch=" << delta_T;
    seq.generator_tag = tag.str();
    cache_bounds(seq);
    return seq;
}

FunctionSequence make_oracle_gap(int T) {
    if (T < 2 || T % 2 != 0) throw std::invalid_argument("make_oracle_gap: horizon must be even and >= 2");

    const CostInstance f1 = CostInstance::quadratic1d(2.0, 0.0, 0.0);  // x^2
    const CostInstance f2 = CostInstance::quadratic1d(2.0, 2.0, 0.0);  // x^2 − 2x

    FunctionSequence seq;
    seq.horizon = T;
    seq.box = Box{-1.0, 2.0};
    seq.costs.reserve(T);
    for (int t = 0; t < T; ++t) seq.costs.push_back(t < T / 2 ? f1 : f2);

    seq.family_g = std::max({cost_bounds(f1, seq.box).first, cost_bounds(f1, seq.box).second,
                             cost_bounds(f2, seq.box).first, cost_bounds(f2, seq.box).second});
    seq.family_h = 2.0;

    // Single change; the budget is quoted as 1 in the source construction and
    // is not a compliance claim for either variation functional.
    seq.declared_budget = 1.0;
    seq.budget_claimed = false;
    seq.generator_tag = "oracle-gap";
    cache_bounds(seq);
    return seq;
}

} // namespace nsopt
