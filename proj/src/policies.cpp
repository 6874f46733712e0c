#include "nsopt/policies.hpp"

#include <algorithm>
#include <cmath>

namespace nsopt {

double default_nu(const FunctionSequence& seq) {
    const Box hull = minimizer_hull(seq);
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < seq.box.dim(); ++i) {
        dist = std::min(dist, hull.lo[i] - seq.box.lo[i]);
        dist = std::min(dist, seq.box.hi[i] - hull.hi[i]);
    }
    return std::max(0.5 * dist, 1e-3);
}

namespace {

double parse_step(const std::string& name, const std::string& prefix) {
    const std::string s = name.substr(prefix.size());
    std::size_t pos = 0;
    double a;
    try {
        a = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("make_policy: bad step in '" + name + "'");
    }
    if (pos != s.size() || !(a > 0.0))
        throw std::invalid_argument("make_policy: bad step in '" + name + "'");
    return a;
}

} // namespace

std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyContext& ctx) {
    if (ctx.horizon < 1) throw std::invalid_argument("make_policy: horizon < 1");
    const int batch = ctx.strong_batching
                          ? batch_size_strongly_convex_grad(ctx.horizon, ctx.tuning_budget)
                          : batch_size_convex(ctx.horizon, ctx.tuning_budget);

    if (name == "restarted-ogd") {
        if (ctx.ogd_batch_constant)
            return restart_wrap(std::make_unique<OgdPolicy>(StepSchedule::ogd_batch(ctx.r, ctx.G, batch)),
                                batch, RestartVariant::Full);
        return restart_wrap(std::make_unique<OgdPolicy>(StepSchedule::strongly_convex(ctx.H)),
                            batch, RestartVariant::WarmStart);
    }
    if (name == "ogd")
        return std::make_unique<OgdPolicy>(StepSchedule::strongly_convex(ctx.H));
    if (name == "tuned-ogd")
        return std::make_unique<OgdPolicy>(
            StepSchedule::tuned(ctx.r, ctx.G, ctx.tuning_budget, ctx.horizon));
    if (name.rfind("fixed-ogd:", 0) == 0)
        return std::make_unique<OgdPolicy>(StepSchedule::fixed(parse_step(name, "fixed-ogd:")));
    if (name == "restarted-egs")
        return restart_wrap(
            std::make_unique<EgsPolicy>(EgsSchedule::decaying(ctx.H, ctx.dim, ctx.nu),
                                        InitMode::Center, ctx.egs_fresh_psi),
            batch, RestartVariant::WarmStart);
    if (name == "egs")
        return std::make_unique<EgsPolicy>(EgsSchedule::decaying(ctx.H, ctx.dim, ctx.nu),
                                           InitMode::Center, ctx.egs_fresh_psi);
    if (name.rfind("fixed-egs:", 0) == 0)
        return std::make_unique<EgsPolicy>(
            EgsSchedule::fixed(parse_step(name, "fixed-egs:"), ctx.dim, ctx.nu),
            InitMode::Center, ctx.egs_fresh_psi);
    throw std::invalid_argument("make_policy: unknown policy '" + name + "'");
}

} // namespace nsopt
