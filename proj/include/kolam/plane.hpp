#pragma once

// Small scalar-generic plane primitives shared by the construction and the
// realization code. Everything here is header-only and works on Eigen
// fixed-size 2-vectors or 2xN column matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kolam {

using Point = Eigen::Vector2d;

template <typename Scalar>
inline Scalar cross2(const Eigen::Vector2<Scalar>& u, const Eigen::Vector2<Scalar>& v) {
    return u.x() * v.y() - u.y() * v.x();
}

// Counter-clockwise normal.
template <typename Scalar>
inline Eigen::Vector2<Scalar> left_normal(const Eigen::Vector2<Scalar>& u) {
    return {-u.y(), u.x()};
}

template <typename Scalar>
inline Eigen::Matrix2<Scalar> rotation2(Scalar angle) {
    Eigen::Matrix2<Scalar> m;
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return m;
}

// Reflection across the line through the origin at `angle`.
template <typename Scalar>
inline Eigen::Matrix2<Scalar> reflection2(Scalar angle) {
    Eigen::Matrix2<Scalar> m;
    m << std::cos(2 * angle), std::sin(2 * angle), std::sin(2 * angle), -std::cos(2 * angle);
    return m;
}

// Bearing of v in [0, 2pi).
template <typename Scalar>
inline Scalar bearing(const Eigen::Vector2<Scalar>& v) {
    Scalar a = std::atan2(v.y(), v.x());
    if (a < 0) a += 2 * std::numbers::pi_v<Scalar>;
    return a;
}

template <typename Scalar>
inline Scalar segment_distance(const Eigen::Vector2<Scalar>& p,
                               const Eigen::Vector2<Scalar>& s0,
                               const Eigen::Vector2<Scalar>& s1) {
    const Eigen::Vector2<Scalar> d = s1 - s0;
    const Scalar len2 = d.squaredNorm();
    if (len2 == Scalar(0)) return (p - s0).norm();
    Scalar t = (p - s0).dot(d) / len2;
    t = std::clamp(t, Scalar(0), Scalar(1));
    return (p - (s0 + t * d)).norm();
}

// Distance from p to a closed polyline stored column-wise.
template <typename Scalar>
Scalar polyline_distance(const Eigen::Vector2<Scalar>& p,
                         const Eigen::Ref<const Eigen::Matrix2X<Scalar>>& pts) {
    const Eigen::Index n = pts.cols();
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector2<Scalar> a = pts.col(i);
        const Eigen::Vector2<Scalar> b = pts.col((i + 1) % n);
        best = std::min(best, segment_distance<Scalar>(p, a, b));
    }
    return best;
}

// Real-valued winding number of a closed polyline about p, accumulated from
// signed turning angles. Integral for curves that avoid p.
template <typename Scalar>
Scalar winding_number(const Eigen::Vector2<Scalar>& p,
                      const Eigen::Ref<const Eigen::Matrix2X<Scalar>>& pts) {
    const Eigen::Index n = pts.cols();
    Scalar total = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector2<Scalar> u = pts.col(i) - p;
        const Eigen::Vector2<Scalar> v = pts.col((i + 1) % n) - p;
        total += std::atan2(cross2<Scalar>(u, v), u.dot(v));
    }
    return total / (2 * std::numbers::pi_v<Scalar>);
}

// One or more rounds of Chaikin corner cutting on a closed polyline. Each
// edge (p, q) is replaced by the points 3/4 p + 1/4 q and 1/4 p + 3/4 q.
template <typename Scalar>
Eigen::Matrix2X<Scalar> chaikin_closed(const Eigen::Ref<const Eigen::Matrix2X<Scalar>>& pts,
                                       int iterations) {
    Eigen::Matrix2X<Scalar> cur = pts;
    for (int it = 0; it < iterations; ++it) {
        const Eigen::Index n = cur.cols();
        if (n < 3) break;
        Eigen::Matrix2X<Scalar> next(2, 2 * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Vector2<Scalar> a = cur.col(i);
            const Eigen::Vector2<Scalar> b = cur.col((i + 1) % n);
            next.col(2 * i) = Scalar(0.75) * a + Scalar(0.25) * b;
            next.col(2 * i + 1) = Scalar(0.25) * a + Scalar(0.75) * b;
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace kolam
