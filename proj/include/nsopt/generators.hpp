#pragma once

#include <cstdint>
#include <string>

#include "nsopt/cost.hpp"
#include "nsopt/rng.hpp"

namespace nsopt {

// Gradual/abrupt drift patterns for the quadratic family
// f_t(x) = x^2/2 − b_t x + 1 on [−2,3]: b_t = 1 up to a random changepoint
// tau ~ U{1..floor(T/4)}, then drops to 0 (shock), decays exponentially
// (decay), or ramps linearly to 0 (linear).
enum class Pattern { Shock, Decay, Linear };

struct PatternSpec {
    Pattern pattern = Pattern::Shock;
    int horizon = 1000;
    double decay_rate = 10.0;
    Box box{-2.0, 3.0};
};

// Two-function adversarial constructions with batch-level coin flips.
struct AdversarySpec {
    enum class Family { ConvexGrad, StronglyConvex };
    Family family = Family::ConvexGrad;
    int horizon = 1000;
    double budget = 1.0;          // V_T
    double noise_constant = 0.0;  // C-tilde; <= 0 means use 1/(2*sigma^2)
};

FunctionSequence make_appendix_c(const PatternSpec& spec, RandomStream& rng);
FunctionSequence make_appendix_c(const PatternSpec& spec, std::uint64_t seed);

FunctionSequence make_adversarial_convex(const AdversarySpec& spec, RandomStream& rng);
FunctionSequence make_adversarial_convex(const AdversarySpec& spec, std::uint64_t seed);

FunctionSequence make_adversarial_strongly_convex(const AdversarySpec& spec, RandomStream& rng);
FunctionSequence make_adversarial_strongly_convex(const AdversarySpec& spec, std::uint64_t seed);

// Deterministic instances where gradient descent without restarting accrues
// linear regret: two quadratics (x−alpha)^2 and x^2 on [−1,3].
enum class OgdFailureVariant { ConstStep, DecayingStep };
FunctionSequence make_ogd_failure(OgdFailureVariant variant, int T, double step_constant);

// Two-phase instance where the best fixed action trails the per-epoch
// minimizers by exactly T/4 in total cost.
FunctionSequence make_oracle_gap(int T);

} // namespace nsopt
