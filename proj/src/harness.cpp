#include "nsopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nsopt {

OracleResult dynamic_oracle(const FunctionSequence& seq) {
    OracleResult r;
    r.per_epoch_min.reserve(seq.horizon);
    for (const auto& f : seq.costs) {
        auto m = minimize(f, seq.box);
        r.total += m.second;
        r.per_epoch_min.push_back(std::move(m));
    }
    return r;
}

namespace {

// Golden-section search for the minimizer of a unimodal g on [lo, hi].
template <typename G>
double golden_section(G&& g, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = g(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = g(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

std::pair<Eigen::VectorXd, double> static_oracle(const FunctionSequence& seq, int first, int last) {
    if (first < 0 || last >= seq.horizon || first > last)
        throw std::invalid_argument("static_oracle: bad epoch range");

    const auto K = CostInstance::Kind::Quadratic;
    bool equal_a_quadratics = true;
    for (int t = first; t <= last; ++t)
        if (seq.costs[t].kind != K || seq.costs[t].a != seq.costs[first].a) {
            equal_a_quadratics = false;
            break;
        }

    Eigen::VectorXd x;
    if (equal_a_quadratics) {
        // The sum is a quadratic with the same curvature and mean linear
        // coefficient, so the constrained minimizer is clamp(mean(b)/a).
        Eigen::VectorXd bsum = Eigen::VectorXd::Zero(seq.box.dim());
        for (int t = first; t <= last; ++t) bsum += seq.costs[t].b;
        x = project(seq.box, (bsum / ((last - first + 1) * seq.costs[first].a)).eval());
    } else {
        if (seq.box.dim() != 1)
            throw std::invalid_argument("static_oracle: search path supports d=1 only");
        auto g = [&](double v) {
            Eigen::VectorXd p = Eigen::VectorXd::Constant(1, v);
            double s = 0.0;
            for (int t = first; t <= last; ++t) s += eval(seq.costs[t], p);
            return s;
        };
        x = Eigen::VectorXd::Constant(1, golden_section(g, seq.box.lo[0], seq.box.hi[0], 1e-10));
    }
    double total = 0.0;
    for (int t = first; t <= last; ++t) total += eval(seq.costs[t], x);
    return {x, total};
}

std::pair<Eigen::VectorXd, double> static_oracle(const FunctionSequence& seq) {
    return static_oracle(seq, 0, seq.horizon - 1);
}

TrajectoryRecord run_trajectory(Policy& policy, const FunctionSequence& seq,
                                const NoiseModel& noise, RandomStream& noise_rng,
                                RandomStream& policy_rng, const TrajectoryOptions& opts) {
    seq.validate();
    TrajectoryRecord rec;
    const int T = seq.horizon;

    std::vector<double> fstar(T);
    for (int t = 0; t < T; ++t) {
        fstar[t] = minimize(seq.costs[t], seq.box).second;
        rec.oracle_total += fstar[t];
    }

    if (opts.record_path) {
        rec.actions.reserve(T);
        rec.expected_costs.reserve(T);
        rec.cumulative_regret.reserve(T);
    }

    const bool want_grad = policy.feedback_kind() == FeedbackKind::Gradient;
    policy.reset(seq.box, policy_rng);

    double regret = 0.0;
    for (int t = 0; t < T; ++t) {
        const Eigen::VectorXd x = policy.action();
        if (!seq.box.contains(x, 1e-12))
            throw std::logic_error("run_trajectory: policy emitted an infeasible action");
        const double cost = eval(seq.costs[t], x);
        regret += cost - fstar[t];
        if (opts.record_path) {
            rec.actions.push_back(x);
            rec.expected_costs.push_back(cost);
            rec.cumulative_regret.push_back(regret);
        }
        try {
            const Eigen::VectorXd q = policy.query_point();
            const FeedbackSample s = want_grad ? observe_grad(seq.costs[t], q, noise, noise_rng)
                                               : observe_cost(seq.costs[t], q, noise, noise_rng);
            policy.update(s, policy_rng);
        } catch (const NumericFault&) {
            rec.fault = true;
            break;
        }
    }
    rec.final_regret = regret;

    if (opts.diagnostics && !rec.fault) {
        const auto* wrapper = dynamic_cast<const RestartedPolicy*>(&policy);
        if (wrapper && opts.record_path) {
            const int batch = wrapper->batch_size();
            for (int first = 0; first < T; first += batch) {
                const int last = std::min(first + batch, T) - 1;
                BatchDiagnostics d;
                d.first = first;
                d.last = last;
                double incurred = 0.0, oracle = 0.0;
                for (int t = first; t <= last; ++t) {
                    incurred += rec.expected_costs[t];
                    oracle += fstar[t];
                }
                const double best_fixed = static_oracle(seq, first, last).second;
                d.j1 = incurred - best_fixed;
                d.j2 = best_fixed - oracle;
                for (int t = first + 1; t <= last; ++t)
                    d.batch_variation += sup_diff(seq.costs[t], seq.costs[t - 1], seq.box);
                rec.batches.push_back(d);
            }
        }
    }
    return rec;
}

double relative_loss(double final_regret, double oracle_total) {
    if (oracle_total == 0.0)
        throw std::invalid_argument("relative_loss: zero oracle total (report regret only)");
    return 100.0 * final_regret / oracle_total;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
    std::set<double> ts;
    for (const auto& [T, regret] : points) {
        if (!(T > 0.0) || !(regret > 0.0))
            throw std::invalid_argument("fit_rate: points must be positive");
        if (!ts.insert(T).second) throw std::invalid_argument("fit_rate: duplicate horizon");
    }
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [T, regret] : points) {
        const double x = std::log(T), y = std::log(regret);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    RateFit fit;
    fit.alpha = cxy / vx;
    fit.c = std::exp((sy - fit.alpha * sx) / n);
    fit.r_squared = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
    return fit;
}

FunctionSequence generate_sequence(const ExperimentConfig& cfg, int horizon, RandomStream& env_rng) {
    const double ct = cfg.noise_constant > 0.0
                          ? cfg.noise_constant
                          : (cfg.sigma > 0.0 ? 1.0 / (2.0 * cfg.sigma * cfg.sigma) : 1.0);
    if (cfg.pattern == "shock" || cfg.pattern == "decay" || cfg.pattern == "linear") {
        PatternSpec spec;
        spec.pattern = cfg.pattern == "shock" ? Pattern::Shock
                     : cfg.pattern == "decay" ? Pattern::Decay
                                              : Pattern::Linear;
        spec.horizon = horizon;
        spec.decay_rate = cfg.decay_rate;
        return make_appendix_c(spec, env_rng);
    }
    if (cfg.pattern == "adv-convex" || cfg.pattern == "adv-strong") {
        AdversarySpec spec;
        spec.family = cfg.pattern == "adv-convex" ? AdversarySpec::Family::ConvexGrad
                                                  : AdversarySpec::Family::StronglyConvex;
        spec.horizon = horizon;
        spec.budget = cfg.budget;
        spec.noise_constant = ct;
        return spec.family == AdversarySpec::Family::ConvexGrad
                   ? make_adversarial_convex(spec, env_rng)
                   : make_adversarial_strongly_convex(spec, env_rng);
    }
    if (cfg.pattern == "ogd-failure")
        return make_ogd_failure(cfg.ogd_failure_variant == "const_step"
                                    ? OgdFailureVariant::ConstStep
                                    : OgdFailureVariant::DecayingStep,
                                horizon, cfg.step_constant);
    if (cfg.pattern == "oracle-gap") return make_oracle_gap(horizon);
    throw std::invalid_argument("unknown pattern '" + cfg.pattern + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.replications < 1) throw std::invalid_argument("run_experiment: replications < 1");
    if (cfg.horizons.empty()) throw std::invalid_argument("run_experiment: empty horizon grid");
    for (std::size_t i = 1; i < cfg.horizons.size(); ++i)
        if (cfg.horizons[i] <= cfg.horizons[i - 1])
            throw std::invalid_argument("run_experiment: horizon grid must be strictly increasing");
    if (cfg.feedback != "grad" && cfg.feedback != "cost")
        throw std::invalid_argument("run_experiment: feedback must be 'grad' or 'cost'");

    const NoiseModel noise{cfg.sigma};
    ExperimentResult result;
    std::vector<std::pair<double, double>> fit_points;

    for (const int T : cfg.horizons) {
        CellResult cell;
        cell.horizon = T;
        std::vector<double> regrets, losses;
        regrets.reserve(cfg.replications);

        for (int rep = 0; rep < cfg.replications; ++rep) {
            RandomStream env_rng(cfg.base_seed, static_cast<std::uint64_t>(rep), kEnvSub);
            RandomStream noise_rng(cfg.base_seed, static_cast<std::uint64_t>(rep), kNoiseSub);
            RandomStream policy_rng(cfg.base_seed, static_cast<std::uint64_t>(rep), kPolicySub);

            const FunctionSequence seq = generate_sequence(cfg, T, env_rng);

            PolicyContext ctx;
            ctx.horizon = T;
            ctx.tuning_budget = cfg.tuning_budget > 0.0 ? cfg.tuning_budget : cfg.budget;
            ctx.G = seq.family_g;
            ctx.H = seq.family_h > 0.0 ? seq.family_h : 1.0;
            ctx.r = radius(seq.box);
            ctx.nu = cfg.nu > 0.0 ? cfg.nu : default_nu(seq);
            ctx.dim = static_cast<int>(seq.box.dim());
            ctx.egs_fresh_psi = cfg.egs_fresh_psi;
            ctx.strong_batching = cfg.strong_batching;
            ctx.ogd_batch_constant = cfg.ogd_batch_constant;
            auto policy = make_policy(cfg.policy, ctx);

            const bool want_grad = policy->feedback_kind() == FeedbackKind::Gradient;
            if (want_grad != (cfg.feedback == "grad"))
                throw std::invalid_argument("run_experiment: feedback kind does not match policy");

            TrajectoryOptions opts;
            opts.record_path = false;
            const TrajectoryRecord rec =
                run_trajectory(*policy, seq, noise, noise_rng, policy_rng, opts);
            if (rec.fault) {
                ++cell.faults;
                continue;
            }
            regrets.push_back(rec.final_regret);
            losses.push_back(relative_loss(rec.final_regret, rec.oracle_total));
        }

        const double n = static_cast<double>(regrets.size());
        if (n > 0) {
            double mean = 0.0;
            for (double r : regrets) mean += r;
            mean /= n;
            double var = 0.0;
            for (double r : regrets) var += (r - mean) * (r - mean);
            cell.mean_regret = mean;
            cell.stderr_regret = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
            double loss = 0.0;
            for (double l : losses) loss += l;
            cell.mean_loss_pct = loss / n;
            fit_points.emplace_back(static_cast<double>(T), mean);
        }
        result.cells.push_back(cell);
    }

    if (cfg.horizons.size() >= 3 && fit_points.size() >= 3) result.fit = fit_rate(fit_points);
    return result;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

} // namespace

std::string to_csv(const ExperimentConfig& cfg, const ExperimentResult& result) {
    std::ostringstream os;
    os << "pattern,policy,feedback,sigma,T,replications,mean_regret,stderr_regret,"
          "mean_loss_pct,alpha,c,r2\n";
    for (const auto& cell : result.cells) {
        os << cfg.pattern << ',' << cfg.policy << ',' << cfg.feedback << ',' << fmt(cfg.sigma)
           << ',' << cell.horizon << ',' << cfg.replications << ',' << fmt(cell.mean_regret)
           << ',' << fmt(cell.stderr_regret) << ',' << fmt(cell.mean_loss_pct) << ",,,\n";
    }
    if (result.fit) {
        os << cfg.pattern << ',' << cfg.policy << ',' << cfg.feedback << ',' << fmt(cfg.sigma)
           << ",,,,,," << fmt(result.fit->alpha) << ',' << fmt(result.fit->c) << ','
           << fmt(result.fit->r_squared) << '\n';
    }
    return os.str();
}

} // namespace nsopt
