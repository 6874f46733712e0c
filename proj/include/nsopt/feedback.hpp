#pragma once

#include <Eigen/Core>

#include "nsopt/cost.hpp"
#include "nsopt/rng.hpp"

namespace nsopt {

// Additive Gaussian observation noise; sigma = 0 is the noiseless channel.
struct NoiseModel {
    double sigma = 0.0;
};

enum class FeedbackKind { Cost, Gradient };

struct FeedbackSample {
    FeedbackKind kind;
    double cost = 0.0;          // valid when kind == Cost
    Eigen::VectorXd gradient;   // valid when kind == Gradient
};

// Noisy cost observation: f(x) + N(0, sigma^2).
inline FeedbackSample observe_cost(const CostInstance& f, const Eigen::VectorXd& x,
                                   const NoiseModel& noise, RandomStream& rng) {
    FeedbackSample s;
    s.kind = FeedbackKind::Cost;
    s.cost = eval(f, x);
    if (noise.sigma > 0.0) s.cost += noise.sigma * rng.gaussian();
    return s;
}

// Noisy gradient observation: grad f(x) + iid N(0, sigma^2) per coordinate.
inline FeedbackSample observe_grad(const CostInstance& f, const Eigen::VectorXd& x,
                                   const NoiseModel& noise, RandomStream& rng) {
    FeedbackSample s;
    s.kind = FeedbackKind::Gradient;
    s.gradient = grad(f, x);
    if (noise.sigma > 0.0)
        for (Eigen::Index i = 0; i < s.gradient.size(); ++i)
            s.gradient[i] += noise.sigma * rng.gaussian();
    return s;
}

} // namespace nsopt
