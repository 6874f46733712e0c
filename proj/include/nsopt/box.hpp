#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace nsopt {

// Axis-aligned box [lo_1,hi_1] x ... x [lo_d,hi_d].
struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    Box() = default;
    Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size() || lo.size() == 0)
            throw std::invalid_argument("Box: lo/hi dimension mismatch");
        if ((hi.array() < lo.array()).any())
            throw std::invalid_argument("Box: hi < lo");
    }

    // 1-d convenience.
    Box(double a, double b) : Box(Eigen::VectorXd::Constant(1, a), Eigen::VectorXd::Constant(1, b)) {}

    Eigen::Index dim() const { return lo.size(); }

    bool contains(const Eigen::VectorXd& x, double tol = 0.0) const {
        return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
    }

    Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
};

// Euclidean projection onto the box: coordinatewise clamp.
inline Eigen::VectorXd project(const Box& box, const Eigen::VectorXd& x) {
    return x.cwiseMax(box.lo).cwiseMin(box.hi);
}

// Projection onto the delta-interior {x : lo+delta <= x <= hi-delta}.
// Requires hi - lo >= 2*delta in every coordinate.
inline Eigen::VectorXd project_interior(const Box& box, const Eigen::VectorXd& x, double delta) {
    if (delta < 0.0) throw std::invalid_argument("project_interior: delta < 0");
    if (((box.hi - box.lo).array() < 2.0 * delta).any())
        throw std::invalid_argument("project_interior: box thinner than 2*delta");
    return x.cwiseMax((box.lo.array() + delta).matrix()).cwiseMin((box.hi.array() - delta).matrix());
}

// Half-diameter of the box: (1/2)*||hi - lo||_2.
inline double radius(const Box& box) {
    return 0.5 * (box.hi - box.lo).norm();
}

} // namespace nsopt
