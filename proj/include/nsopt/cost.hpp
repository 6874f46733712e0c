#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsopt/box.hpp"

namespace nsopt {

// A single epoch's cost function. Two families:
//   Quadratic:       f(x) = (a/2)*||x||^2 − b·x + c           (H = a)
//   PiecewiseConvex: on [0,1], a linear middle piece of slope −sign*2*delta
//                    glued C^1 to quadratic caps (x−1/4)^2 below 1/4 and
//                    (x−3/4)^2 above 3/4. sign=+1 has minimizer 3/4+delta,
//                    sign=−1 has minimizer 1/4−delta.
struct CostInstance {
    enum class Kind { Quadratic, PiecewiseConvex };

    Kind kind = Kind::Quadratic;
    double a = 1.0;        // quadratic curvature (per coordinate, isotropic)
    Eigen::VectorXd b;     // quadratic linear coefficient
    double c = 0.0;        // quadratic offset
    double delta = 0.0;    // piecewise slope parameter, in (0, 1/4)
    int sign = +1;         // piecewise variant selector

    // Cached sup |f| and sup ||grad f|| over the owning sequence's box.
    double g_value = 0.0;
    double g_grad = 0.0;

    static CostInstance quadratic(double a, Eigen::VectorXd b, double c) {
        if (a <= 0.0) throw std::invalid_argument("CostInstance: a must be positive");
        CostInstance f;
        f.kind = Kind::Quadratic;
        f.a = a;
        f.b = std::move(b);
        f.c = c;
        return f;
    }

    static CostInstance quadratic1d(double a, double b, double c) {
        return quadratic(a, Eigen::VectorXd::Constant(1, b), c);
    }

    static CostInstance piecewise(double delta, int sign) {
        if (!(delta > 0.0 && delta < 0.25))
            throw std::invalid_argument("CostInstance: delta must lie in (0, 1/4)");
        if (sign != +1 && sign != -1)
            throw std::invalid_argument("CostInstance: sign must be +1 or -1");
        CostInstance f;
        f.kind = Kind::PiecewiseConvex;
        f.delta = delta;
        f.sign = sign;
        f.b = Eigen::VectorXd::Zero(1);
        return f;
    }

    Eigen::Index dim() const { return kind == Kind::Quadratic ? b.size() : 1; }

    bool same_params(const CostInstance& o) const {
        if (kind != o.kind) return false;
        if (kind == Kind::Quadratic)
            return a == o.a && c == o.c && b.size() == o.b.size() && b == o.b;
        return delta == o.delta && sign == o.sign;
    }
};

inline double eval(const CostInstance& f, const Eigen::VectorXd& x) {
    if (f.kind == CostInstance::Kind::Quadratic)
        return 0.5 * f.a * x.squaredNorm() - f.b.dot(x) + f.c;
    const double v = x[0];
    double y = 0.5 + f.sign * f.delta * (1.0 - 2.0 * v);
    if (v < 0.25) y += (v - 0.25) * (v - 0.25);
    if (v > 0.75) y += (v - 0.75) * (v - 0.75);
    return y;
}

inline Eigen::VectorXd grad(const CostInstance& f, const Eigen::VectorXd& x) {
    if (f.kind == CostInstance::Kind::Quadratic) return f.a * x - f.b;
    const double v = x[0];
    double g = -2.0 * f.sign * f.delta;
    if (v < 0.25) g += 2.0 * (v - 0.25);
    if (v > 0.75) g += 2.0 * (v - 0.75);
    return Eigen::VectorXd::Constant(1, g);
}

// Exact constrained minimizer and minimum over the box. Both families are
// convex and separable, so the constrained minimizer is the clamped
// unconstrained one.
inline std::pair<Eigen::VectorXd, double> minimize(const CostInstance& f, const Box& box) {
    Eigen::VectorXd xstar;
    if (f.kind == CostInstance::Kind::Quadratic) {
        xstar = project(box, (f.b / f.a).eval());
    } else {
        const double u = f.sign > 0 ? 0.75 + f.delta : 0.25 - f.delta;
        xstar = project(box, Eigen::VectorXd::Constant(1, u));
    }
    return {xstar, eval(f, xstar)};
}

namespace detail {

// sup over [lo,hi] of |A x^2 + B x + C|: endpoints plus interior vertex.
inline double sup_abs_quadratic_1d(double A, double B, double C, double lo, double hi) {
    double m = std::max(std::abs(A * lo * lo + B * lo + C), std::abs(A * hi * hi + B * hi + C));
    if (A != 0.0) {
        const double v = -B / (2.0 * A);
        if (v > lo && v < hi) m = std::max(m, std::abs(A * v * v + B * v + C));
    }
    return m;
}

} // namespace detail

// sup_{x in region} |f(x) − g(x)|, Eq-style uniform distance between costs.
// Same-kind pairs admit closed forms (the difference is separable per
// coordinate for quadratics, and globally affine for two piecewise costs since
// the caps cancel); mixed pairs fall back to a grid plus region vertices.
inline double sup_diff(const CostInstance& f, const CostInstance& g, const Box& region,
                       int grid_per_dim = 1001) {
    if (grid_per_dim < 2) throw std::invalid_argument("sup_diff: grid_per_dim < 2");
    if (f.dim() != g.dim() || f.dim() != region.dim())
        throw std::invalid_argument("sup_diff: dimension mismatch");
    if (f.same_params(g)) return 0.0;

    const auto K = CostInstance::Kind::Quadratic;
    if (f.kind == K && g.kind == K) {
        // diff(x) = (da/2) sum x_i^2 − sum db_i x_i + dc; maximize/minimize
        // each separable term over [lo_i, hi_i] exactly, then take the larger
        // magnitude of the two attained extremes.
        const double da = f.a - g.a, dc = f.c - g.c;
        double hi_sum = dc, lo_sum = dc;
        for (Eigen::Index i = 0; i < region.dim(); ++i) {
            const double db = f.b[i] - g.b[i];
            const double l = region.lo[i], h = region.hi[i];
            auto term = [&](double x) { return 0.5 * da * x * x - db * x; };
            double tmax = std::max(term(l), term(h));
            double tmin = std::min(term(l), term(h));
            if (da != 0.0) {
                const double v = db / da;
                if (v > l && v < h) {
                    tmax = std::max(tmax, term(v));
                    tmin = std::min(tmin, term(v));
                }
            }
            hi_sum += tmax;
            lo_sum += tmin;
        }
        return std::max(std::abs(hi_sum), std::abs(lo_sum));
    }
    if (f.kind != K && g.kind != K) {
        // Caps are identical, so f − g = k (1 − 2x) with k = s_f d_f − s_g d_g:
        // affine, extremes at the interval endpoints.
        const double k = f.sign * f.delta - g.sign * g.delta;
        const double l = region.lo[0], h = region.hi[0];
        return std::max(std::abs(k * (1.0 - 2.0 * l)), std::abs(k * (1.0 - 2.0 * h)));
    }

    // Mixed kinds (d=1 by construction of the piecewise family): grid search
    // with endpoints included.
    double m = 0.0;
    const double l = region.lo[0], h = region.hi[0];
    Eigen::VectorXd x(1);
    for (int i = 0; i < grid_per_dim; ++i) {
        x[0] = l + (h - l) * static_cast<double>(i) / (grid_per_dim - 1);
        m = std::max(m, std::abs(eval(f, x) - eval(g, x)));
    }
    return m;
}

// sup |f| and sup ||grad f|| over the box, exact by vertex enumeration for
// quadratics (a convex function attains its max over a box at a vertex; the
// gradient sup is separable) and by the closed-form pieces otherwise.
inline std::pair<double, double> cost_bounds(const CostInstance& f, const Box& box) {
    if (f.kind == CostInstance::Kind::Quadratic) {
        const Eigen::Index d = box.dim();
        double vmax = -std::numeric_limits<double>::infinity();
        for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
            Eigen::VectorXd v(d);
            for (Eigen::Index i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? box.hi[i] : box.lo[i];
            vmax = std::max(vmax, eval(f, v));
        }
        const double vmin = minimize(f, box).second;
        double gsq = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double gl = f.a * box.lo[i] - f.b[i], gh = f.a * box.hi[i] - f.b[i];
            gsq += std::max(gl * gl, gh * gh);
        }
        return {std::max(std::abs(vmax), std::abs(vmin)), std::sqrt(gsq)};
    }
    // Piecewise on [0,1]: max value at an endpoint, f(0/1) = 1/2 ± delta + 1/16;
    // |f'| peaks at an endpoint too, 1/2 + 2*delta. Minimum is 1/2 − delta/2 −
    // delta^2 > 0 for delta < 1/4, so |f| max is the endpoint value.
    const double vmax = 0.5 + f.delta + 1.0 / 16.0;
    return {vmax, 0.5 + 2.0 * f.delta};
}

enum class VariationMode { Full, Hull };

// A committed sequence of epoch costs over a common box.
struct FunctionSequence {
    int horizon = 0;
    std::vector<CostInstance> costs;
    Box box;
    double declared_budget = 0.0;
    std::string generator_tag;

    // Which variation functional the declared budget refers to, and whether
    // the generator claims the sequence complies with it.
    VariationMode budget_mode = VariationMode::Hull;
    bool budget_claimed = false;

    // Family-level constants used for step-size tuning: an exact sup bound G
    // over the whole generated family and the strong-convexity modulus H
    // (quadratic a; 0 when not strongly convex).
    double family_g = 0.0;
    double family_h = 0.0;

    void validate() const {
        if (horizon < 1 || static_cast<int>(costs.size()) != horizon)
            throw std::invalid_argument("FunctionSequence: bad horizon");
        for (const auto& f : costs)
            if (f.dim() != box.dim())
                throw std::invalid_argument("FunctionSequence: dimension mismatch");
    }
};

// Tightest axis-aligned box containing every epoch's constrained minimizer.
inline Box minimizer_hull(const FunctionSequence& seq) {
    Eigen::VectorXd lo, hi;
    for (int t = 0; t < seq.horizon; ++t) {
        const Eigen::VectorXd x = minimize(seq.costs[t], seq.box).first;
        if (t == 0) { lo = x; hi = x; }
        else { lo = lo.cwiseMin(x); hi = hi.cwiseMax(x); }
    }
    return Box{lo, hi};
}

// Total variation of the sequence: sum over t of the uniform distance between
// consecutive costs, measured over the box (Full) or over the minimizer hull.
inline double variation(const FunctionSequence& seq, VariationMode mode, int grid_per_dim = 1001) {
    if (seq.horizon <= 1) return 0.0;
    const Box region = mode == VariationMode::Full ? seq.box : minimizer_hull(seq);
    double v = 0.0;
    for (int t = 1; t < seq.horizon; ++t)
        v += sup_diff(seq.costs[t], seq.costs[t - 1], region, grid_per_dim);
    return v;
}

} // namespace nsopt
