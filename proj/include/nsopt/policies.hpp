#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "nsopt/box.hpp"
#include "nsopt/cost.hpp"
#include "nsopt/feedback.hpp"
#include "nsopt/rng.hpp"

namespace nsopt {

// Raised when a policy receives or would emit a non-finite value; the
// trajectory is aborted and flagged rather than silently clamped.
struct NumericFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Step-size schedule evaluated on the policy's local clock: the k-th gradient
// step since the last (re)start uses step(k), k = 1, 2, ...
struct StepSchedule {
    enum class Kind { Constant, OgdBatch, StronglyConvex, Tuned, Fixed };
    Kind kind = Kind::Constant;
    double eta = 0.0;  // precomputed value for the constant-in-t kinds
    double H = 0.0;    // strong-convexity modulus for the decaying kind

    static StepSchedule constant(double eta) {
        if (eta <= 0.0) throw std::invalid_argument("StepSchedule: eta must be positive");
        return {Kind::Constant, eta, 0.0};
    }
    // eta = r / (G * sqrt(batch)) — the batch-tuned constant step.
    static StepSchedule ogd_batch(double r, double G, int batch) {
        if (r <= 0.0 || G <= 0.0 || batch < 1)
            throw std::invalid_argument("StepSchedule: bad batch tuning");
        return {Kind::OgdBatch, r / (G * std::sqrt(static_cast<double>(batch))), 0.0};
    }
    // eta_k = 1 / (H k).
    static StepSchedule strongly_convex(double H) {
        if (H <= 0.0) throw std::invalid_argument("StepSchedule: H must be positive");
        return {Kind::StronglyConvex, 0.0, H};
    }
    // eta = (r/G) * (V/T)^{1/3} — the variation-aware constant step.
    static StepSchedule tuned(double r, double G, double V, double T) {
        if (r <= 0.0 || G <= 0.0 || V < 1.0 || V > T)
            throw std::invalid_argument("StepSchedule: bad tuned parameters");
        return {Kind::Tuned, (r / G) * std::cbrt(V / T), 0.0};
    }
    static StepSchedule fixed(double a) {
        if (a <= 0.0) throw std::invalid_argument("StepSchedule: fixed step must be positive");
        return {Kind::Fixed, a, 0.0};
    }

    double step(int k) const {
        return kind == Kind::StronglyConvex ? 1.0 / (H * k) : eta;
    }
};

inline StepSchedule tuned_ogd_schedule(double r, double G, double V, double T) {
    return StepSchedule::tuned(r, G, V, T);
}

// Gradient-free schedule: a_k = 2d/(H k), h_k = delta_k = min(nu, a_k^{1/4});
// the fixed variant holds a and h constant.
struct EgsSchedule {
    double H = 1.0;
    int d = 1;
    double nu = 1.0;
    bool is_fixed = false;
    double fixed_a = 0.0;

    static EgsSchedule decaying(double H, int d, double nu) {
        if (H <= 0.0 || d < 1 || nu <= 0.0)
            throw std::invalid_argument("EgsSchedule: bad parameters");
        return {H, d, nu, false, 0.0};
    }
    static EgsSchedule fixed(double a, int d, double nu) {
        if (a <= 0.0 || d < 1 || nu <= 0.0)
            throw std::invalid_argument("EgsSchedule: bad parameters");
        return {1.0, d, nu, true, a};
    }

    double a(int k) const { return is_fixed ? fixed_a : 2.0 * d / (H * k); }
    double h(int k) const { return std::min(nu, std::pow(a(k), 0.25)); }
};

enum class InitMode { Center, ZeroIfFeasible, Given };

inline Eigen::VectorXd initial_action(const Box& box, InitMode mode,
                                      const Eigen::VectorXd* given = nullptr) {
    switch (mode) {
        case InitMode::Center:
            return box.center();
        case InitMode::ZeroIfFeasible: {
            Eigen::VectorXd z = Eigen::VectorXd::Zero(box.dim());
            return box.contains(z) ? z : box.center();
        }
        case InitMode::Given:
            if (!given || !box.contains(*given))
                throw std::invalid_argument("initial_action: given point infeasible");
            return *given;
    }
    throw std::invalid_argument("initial_action: bad mode");
}

// Batch size ceil((T/V)^{2/3}) for the convex / gradient-free regimes.
inline int batch_size_convex(int T, double V) {
    if (V < 1.0 || V > T) throw std::invalid_argument("batch_size_convex: V outside [1, T]");
    return static_cast<int>(std::ceil(std::pow(T / V, 2.0 / 3.0)));
}

// Batch size ceil(sqrt(T ln T / V)) for the strongly-convex gradient regime
// (natural log).
inline int batch_size_strongly_convex_grad(int T, double V) {
    if (T < 2) throw std::invalid_argument("batch_size_strongly_convex_grad: T < 2");
    if (V < 1.0 || V > T) throw std::invalid_argument("batch_size_strongly_convex_grad: V outside [1, T]");
    return static_cast<int>(std::ceil(std::sqrt(T * std::log(static_cast<double>(T)) / V)));
}

// A policy is a resettable state machine driven by one feedback sample per
// epoch. action() is the point the policy is charged for; query_point() is
// where feedback is observed (they differ for the gradient-free policy).
class Policy {
  public:
    virtual ~Policy() = default;
    virtual void reset(const Box& box, RandomStream& rng) = 0;
    // Warm restart: rewind schedule clocks, keep the current iterate.
    virtual void restart_schedules() = 0;
    virtual Eigen::VectorXd action() const = 0;
    virtual Eigen::VectorXd query_point() const = 0;
    virtual FeedbackKind feedback_kind() const = 0;
    virtual void update(const FeedbackSample& sample, RandomStream& rng) = 0;
};

// Projected gradient descent: X <- P_box(X − eta_k g).
class OgdPolicy final : public Policy {
  public:
    OgdPolicy(StepSchedule schedule, InitMode init = InitMode::Center,
              Eigen::VectorXd given = {})
        : schedule_(schedule), init_(init), given_(std::move(given)) {}

    void reset(const Box& box, RandomStream&) override {
        box_ = box;
        x_ = initial_action(box, init_, given_.size() ? &given_ : nullptr);
        k_ = 0;
    }
    void restart_schedules() override { k_ = 0; }
    Eigen::VectorXd action() const override { return x_; }
    Eigen::VectorXd query_point() const override { return x_; }
    FeedbackKind feedback_kind() const override { return FeedbackKind::Gradient; }

    void update(const FeedbackSample& sample, RandomStream&) override {
        if (!sample.gradient.allFinite()) throw NumericFault("OGD: non-finite gradient feedback");
        ++k_;
        x_ = project(box_, (x_ - schedule_.step(k_) * sample.gradient).eval());
    }

  private:
    StepSchedule schedule_;
    InitMode init_;
    Eigen::VectorXd given_;
    Box box_;
    Eigen::VectorXd x_;
    int k_ = 0;
};

// Gradient-free descent from one-point cost observations: probe the cost at
// Z + h_k psi_k for a random signed coordinate direction psi_k, form the
// estimate (y/h_k) psi_k, and step Z into the shrinking interior. The action
// charged at step k+1 is Z + h_{k+1} psi_k (the previous direction); the
// fresh_psi variant uses the new direction so action and probe coincide.
class EgsPolicy final : public Policy {
  public:
    EgsPolicy(EgsSchedule schedule, InitMode init = InitMode::Center, bool fresh_psi = false)
        : schedule_(schedule), init_(init), fresh_psi_(fresh_psi) {}

    void reset(const Box& box, RandomStream& rng) override {
        box_ = box;
        k_ = 1;
        z_ = project_interior(box, initial_action(box, init_), schedule_.h(1));
        psi_cur_ = draw_psi(rng);
        psi_prev_ = psi_cur_;
        first_ = true;
    }

    void restart_schedules() override {
        k_ = 1;
        z_ = project_interior(box_, z_, schedule_.h(1));
        first_ = true;  // the batch reopens from Z itself, with no probe offset
    }

    Eigen::VectorXd action() const override {
        if (first_) return z_;
        return z_ + schedule_.h(k_) * (fresh_psi_ ? psi_cur_ : psi_prev_);
    }

    Eigen::VectorXd query_point() const override { return z_ + schedule_.h(k_) * psi_cur_; }
    FeedbackKind feedback_kind() const override { return FeedbackKind::Cost; }

    void update(const FeedbackSample& sample, RandomStream& rng) override {
        if (!std::isfinite(sample.cost)) throw NumericFault("EGS: non-finite cost feedback");
        const double h = schedule_.h(k_);
        const Eigen::VectorXd ghat = (sample.cost / h) * psi_cur_;
        z_ = project_interior(box_, (z_ - schedule_.a(k_) * ghat).eval(), schedule_.h(k_));
        psi_prev_ = psi_cur_;
        psi_cur_ = draw_psi(rng);
        ++k_;
        first_ = false;
    }

  private:
    Eigen::VectorXd draw_psi(RandomStream& rng) const {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(box_.dim());
        const Eigen::Index axis =
            box_.dim() > 1 ? static_cast<Eigen::Index>(rng.uniform_int(box_.dim())) : 0;
        p[axis] = rng.rademacher();
        return p;
    }

    EgsSchedule schedule_;
    InitMode init_;
    bool fresh_psi_;
    Box box_;
    Eigen::VectorXd z_, psi_prev_, psi_cur_;
    int k_ = 1;
    bool first_ = true;
};

enum class RestartVariant { Full, WarmStart };

// Restarting wrapper: re-initializes the inner policy's schedule clocks (and,
// in the full variant, its iterate) every batch_size epochs.
class RestartedPolicy final : public Policy {
  public:
    RestartedPolicy(std::unique_ptr<Policy> inner, int batch_size, RestartVariant variant)
        : inner_(std::move(inner)), batch_size_(batch_size), variant_(variant) {
        if (batch_size < 1) throw std::invalid_argument("RestartedPolicy: batch size < 1");
    }

    void reset(const Box& box, RandomStream& rng) override {
        box_ = box;
        epoch_ = 0;
        inner_->reset(box, rng);
    }
    void restart_schedules() override { inner_->restart_schedules(); }
    Eigen::VectorXd action() const override { return inner_->action(); }
    Eigen::VectorXd query_point() const override { return inner_->query_point(); }
    FeedbackKind feedback_kind() const override { return inner_->feedback_kind(); }

    void update(const FeedbackSample& sample, RandomStream& rng) override {
        inner_->update(sample, rng);
        if (++epoch_ % batch_size_ == 0) {
            if (variant_ == RestartVariant::Full)
                inner_->reset(box_, rng);
            else
                inner_->restart_schedules();
        }
    }

    int batch_size() const { return batch_size_; }
    RestartVariant variant() const { return variant_; }

  private:
    std::unique_ptr<Policy> inner_;
    int batch_size_;
    RestartVariant variant_;
    Box box_;
    long epoch_ = 0;
};

inline std::unique_ptr<Policy> restart_wrap(std::unique_ptr<Policy> inner, int batch_size,
                                            RestartVariant variant) {
    return std::make_unique<RestartedPolicy>(std::move(inner), batch_size, variant);
}

// Context needed to instantiate a policy from its CLI name: horizon, tuning
// budget, and the environment's constants.
struct PolicyContext {
    int horizon = 0;
    double tuning_budget = 1.0;
    double G = 1.0;      // sup bound over the cost family
    double H = 1.0;      // strong-convexity modulus (fallback 1 if none)
    double r = 1.0;      // box half-diameter
    double nu = 1.0;     // interiority constant for the gradient-free policy
    int dim = 1;
    bool egs_fresh_psi = false;
    // Batching rule for the restarted policies: false = ceil((T/V)^{2/3}),
    // true = ceil(sqrt(T ln T / V)).
    bool strong_batching = false;
    // Schedule for restarted-ogd: false = 1/(Hk) warm-started, true = the
    // batch-constant step r/(G sqrt(batch)) with full restarts.
    bool ogd_batch_constant = false;
};

// Builds a policy from the CLI vocabulary: restarted-ogd, ogd, tuned-ogd,
// fixed-ogd:<a>, restarted-egs, egs, fixed-egs:<a>.
std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyContext& ctx);

// Default interiority constant: half the distance from the minimizer hull to
// the box boundary, floored at 1e-3.
double default_nu(const FunctionSequence& seq);

} // namespace nsopt
