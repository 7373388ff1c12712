#include "kolam/render.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kolam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxHalfWidthRatio = 0.1;  // x pair distance
constexpr double kSetbackRatio = 0.75;      // tip setback from the junction / half-width
constexpr int kCapSegments = 16;

double ccw_span(double from, double to) {
    double s = std::fmod(to - from, kTwoPi);
    if (s < 0) s += kTwoPi;
    return s;
}

Eigen::Matrix2Xd to_matrix(const std::vector<Point>& pts) {
    Eigen::Matrix2Xd m(2, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
    return m;
}

}  // namespace

void Style::validate() const {
    if (!(radius_ratio > 0.0) || radius_ratio >= 0.5) {
        throw KolamError("radius-too-large", "squishy radius ratio must lie in (0, 0.5)");
    }
    if (!(bulge_ratio >= 0.0) || bulge_ratio > 0.3) {
        throw KolamError("bad-style", "bulge ratio must lie in [0, 0.3] so Broken caps stay apart");
    }
    if (arc_samples < 64) throw KolamError("bad-style", "arc_samples must be at least 64");
    if (smoothing_iterations < 0 || smoothing_iterations > 8) {
        throw KolamError("bad-style", "smoothing_iterations must lie in [0, 8]");
    }
}

Realizer::Realizer(std::shared_ptr<const ParentKolam> parent, Style style)
    : parent_(std::move(parent)), style_(std::move(style)) {
    style_.validate();
    const ParentKolam& p = *parent_;
    const DotSet& dots = p.dots;
    const JunctionSet& js = p.junctions;

    radius_.resize(dots.size());
    for (std::size_t d = 0; d < dots.size(); ++d) {
        radius_[d] = style_.radius_ratio * dots.nearest_neighbor_distance(static_cast<int>(d));
    }

    // Arm bearings around each dot, in rotation order.
    std::vector<std::vector<std::pair<int, double>>> arm_bearings(dots.size());
    for (std::size_t d = 0; d < dots.size(); ++d) {
        for (int jid : p.arms(static_cast<int>(d))) {
            arm_bearings[d].emplace_back(jid, bearing<double>(js[static_cast<std::size_t>(jid)].position - dots.pos(static_cast<int>(d))));
        }
    }
    auto angular_gap = [&](int dot, int jid) {
        const auto& arms = arm_bearings[static_cast<std::size_t>(dot)];
        if (arms.size() < 2) return kTwoPi;
        const std::size_t m = arms.size();
        for (std::size_t k = 0; k < m; ++k) {
            if (arms[k].first != jid) continue;
            const double prev = ccw_span(arms[(k + m - 1) % m].second, arms[k].second);
            const double next = ccw_span(arms[k].second, arms[(k + 1) % m].second);
            return std::min(prev, next);
        }
        return kTwoPi;
    };
    auto arm_distance = [&](const Point& q, const Junction& j) {
        return std::min(segment_distance<double>(q, dots.pos(j.a), j.position),
                        segment_distance<double>(q, dots.pos(j.b), j.position));
    };

    half_width_.resize(js.size());
    setback_.resize(js.size());
    tip_.resize(p.end_count());
    toward_.resize(p.end_count());
    for (const Junction& j : js) {
        const Point pa = dots.pos(j.a), pb = dots.pos(j.b);
        const double ra = radius_[static_cast<std::size_t>(j.a)], rb = radius_[static_cast<std::size_t>(j.b)];
        const double da = (j.position - pa).norm(), db = (j.position - pb).norm();
        if (da <= ra * 1.05 || db <= rb * 1.05) {
            throw KolamError("radius-too-large", "squishy circles reach junction " + std::to_string(j.id));
        }
        double h = kMaxHalfWidthRatio * j.pair_distance;
        h = std::min({h, 0.5 * ra, 0.5 * rb});
        // Tip pair plus cap must stay outside the own squishy.
        h = std::min({h, 0.6 * (da - ra), 0.6 * (db - rb)});
        for (auto [dot, r] : {std::pair{j.a, ra}, std::pair{j.b, rb}}) {
            const double gap = angular_gap(dot, j.id);
            if (gap < kTwoPi) h = std::min(h, r * std::sin(0.4 * gap));
        }
        for (const Dot& c : dots) {
            if (c.id == j.a || c.id == j.b) continue;
            const double clear = std::min((j.position - c.pos).norm(), arm_distance(c.pos, j)) -
                                 radius_[static_cast<std::size_t>(c.id)];
            h = std::min(h, 0.5 * clear);
        }
        for (const Junction& k : js) {
            if (k.id == j.id) continue;
            h = std::min({h, 0.3 * (j.position - k.position).norm(), 0.3 * arm_distance(k.position, j),
                          0.3 * arm_distance(j.position, k)});
        }
        if (!(h > 1e-6 * j.pair_distance)) {
            throw KolamError("degenerate-geometry", "no room to draw junction " + std::to_string(j.id));
        }
        half_width_[static_cast<std::size_t>(j.id)] = h;
        const double back = kSetbackRatio * h;
        setback_[static_cast<std::size_t>(j.id)] = back;

        const Point n = j.normal();
        const Point va = (j.position - pa) / da;
        const Point vb = (j.position - pb) / db;
        auto set = [&](EndSide s, const Point& pt, const Point& dir) {
            tip_[static_cast<std::size_t>(end_id(j.id, s))] = pt;
            toward_[static_cast<std::size_t>(end_id(j.id, s))] = dir;
        };
        set(EndSide::AL, j.position - back * va + h * n, va);
        set(EndSide::AR, j.position - back * va - h * n, va);
        set(EndSide::BL, j.position - back * vb + h * n, vb);
        set(EndSide::BR, j.position - back * vb - h * n, vb);
    }

    sweep_from_.resize(p.end_count());
    const int samples = style_.arc_samples;
    for (std::size_t d = 0; d < dots.size(); ++d) {
        const auto& rot = p.rotation[d];
        const std::size_t m = rot.size() / 2;
        const Point c = dots.pos(static_cast<int>(d));
        const double r = radius_[d];
        for (std::size_t k = 0; k < m; ++k) {
            const EndId from = rot[2 * k + 1];
            const EndId to = rot[(2 * k + 2) % rot.size()];
            const int j0 = end_junction(from), j1 = end_junction(to);
            const double t0 = arm_bearings[d][k].second;
            const double t1 = arm_bearings[d][(k + 1) % m].second;
            const double a0 = std::asin(std::min(half_width_[static_cast<std::size_t>(j0)] / r, 0.95));
            const double a1 = std::asin(std::min(half_width_[static_cast<std::size_t>(j1)] / r, 0.95));
            const double span = (m == 1 ? kTwoPi : ccw_span(t0, t1)) - a0 - a1;
            if (!(span > 0.0)) {
                throw KolamError("degenerate-geometry", "arms of dot " + std::to_string(d) + " overlap");
            }
            std::vector<Point> pts;
            pts.reserve(static_cast<std::size_t>(samples) + 2);
            pts.push_back(tip_[static_cast<std::size_t>(from)]);
            for (int s = 0; s < samples; ++s) {
                const double ang = t0 + a0 + span * s / (samples - 1);
                pts.push_back(c + r * Point(std::cos(ang), std::sin(ang)));
            }
            pts.push_back(tip_[static_cast<std::size_t>(to)]);
            sweep_from_[static_cast<std::size_t>(from)] = to_matrix(pts);
        }
    }

    for (const Dot& c : dots) {
        const double r = radius_[static_cast<std::size_t>(c.id)];
        for (const Point& t : tip_) {
            if ((t - c.pos).norm() < r) {
                throw KolamError("radius-too-large", "a junction end falls inside the squishy of dot " +
                                                         std::to_string(c.id));
            }
        }
    }
}

Eigen::Matrix2Xd Realizer::sweep(EndId from, EndId to) const {
    // Sweeps are stored from the ccw end of an arm to the cw end of the next.
    const auto& fwd = sweep_from_[static_cast<std::size_t>(from)];
    if (fwd.cols() > 0) return fwd;
    return sweep_from_[static_cast<std::size_t>(to)].rowwise().reverse();
}

Eigen::Matrix2Xd Realizer::connector(BondType bond, EndId from, EndId to) const {
    const Point& p0 = tip_[static_cast<std::size_t>(from)];
    const Point& p1 = tip_[static_cast<std::size_t>(to)];
    if (bond != BondType::Broken) {
        Eigen::Matrix2Xd m(2, 2);
        m.col(0) = p0;
        m.col(1) = p1;
        return m;
    }
    // Quadratic cap whose apex sits `depth` closer to the junction than the tips.
    const Point mid = 0.5 * (p0 + p1);
    const double depth = style_.bulge_ratio * (p1 - p0).norm();
    const Point apex = mid + depth * toward_[static_cast<std::size_t>(from)];
    const Point ctrl = 2.0 * apex - mid;
    Eigen::Matrix2Xd m(2, kCapSegments + 1);
    for (int i = 0; i <= kCapSegments; ++i) {
        const double t = static_cast<double>(i) / kCapSegments;
        m.col(i) = (1 - t) * (1 - t) * p0 + 2 * (1 - t) * t * ctrl + t * t * p1;
    }
    return m;
}

std::vector<Curve> Realizer::realize(const StrandDiagram& diagram, std::span<const Orbit> orbits) const {
    const ParentKolam& p = *parent_;
    std::vector<Curve> out;
    out.reserve(orbits.size());
    for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
        const Orbit& o = orbits[oi];
        Curve curve;
        curve.orbit = static_cast<int>(oi);
        if (o.lone_dot >= 0) {
            const Point c = p.dots.pos(o.lone_dot);
            const double r = radius_[static_cast<std::size_t>(o.lone_dot)];
            const int n = 4 * style_.arc_samples;
            curve.points.resize(2, n);
            for (int i = 0; i < n; ++i) {
                const double ang = kTwoPi * i / n;
                curve.points.col(i) = c + r * Point(std::cos(ang), std::sin(ang));
            }
            out.push_back(std::move(curve));
            continue;
        }
        std::vector<Eigen::Matrix2Xd> pieces;
        Eigen::Index total = 0;
        for (std::size_t i = 0; i < o.ends.size(); i += 2) {
            const EndId e = o.ends[i], s = o.ends[i + 1];
            const EndId next = o.ends[(i + 2) % o.ends.size()];
            pieces.push_back(sweep(e, s));
            const int j = end_junction(s);
            pieces.push_back(connector(diagram.assignment[static_cast<std::size_t>(j)], s, next));
            total += pieces[pieces.size() - 2].cols() + pieces.back().cols();
        }
        // Consecutive pieces share an endpoint; keep it once, and drop the
        // final point, which closes onto the first.
        curve.points.resize(2, total - static_cast<Eigen::Index>(pieces.size()));
        Eigen::Index at = 0;
        for (const auto& piece : pieces) {
            const Eigen::Index n = piece.cols() - 1;
            curve.points.middleCols(at, n) = piece.leftCols(n);
            at += n;
        }
        out.push_back(std::move(curve));
    }
    return out;
}

std::vector<Curve> realize(const StrandDiagram& diagram, std::span<const Orbit> orbits, const Style& style) {
    return Realizer(diagram.parent, style).realize(diagram, orbits);
}

Curve smooth(const Curve& curve, int iterations) {
    if (iterations < 0) throw KolamError("bad-iterations", "iterations must be non-negative");
    if (iterations == 0) return curve;
    const auto [lo, hi] = curves_bbox(std::span<const Curve>(&curve, 1));
    const double tol = 1e-9 * std::max((hi - lo).norm(), 1e-12);
    const CurveAudit before = audit_curves(std::span<const Curve>(&curve, 1), tol);
    Curve out{chaikin_closed<double>(curve.points, iterations), curve.orbit};
    const CurveAudit after = audit_curves(std::span<const Curve>(&out, 1), tol);
    if (after.crossing_count() != before.crossing_count() || after.overlaps > before.overlaps ||
        after.tangencies > before.tangencies) {
        throw KolamError("topology-risk", "smoothing changed the self-intersections of the curve");
    }
    return out;
}

std::vector<Curve> smooth_curves(std::span<const Curve> curves, int iterations, const DotSet& dots) {
    if (iterations < 0) throw KolamError("bad-iterations", "iterations must be non-negative");
    std::vector<Curve> out;
    out.reserve(curves.size());
    for (const Curve& c : curves) out.push_back({chaikin_closed<double>(c.points, iterations), c.orbit});
    if (iterations == 0) return out;

    const auto [lo, hi] = curves_bbox(curves);
    const double tol = 1e-9 * std::max((hi - lo).norm(), 1e-12);
    const CurveAudit before = audit_curves(curves, tol);
    const CurveAudit after = audit_curves(out, tol);
    if (after.crossing_count() != before.crossing_count() || after.overlaps > before.overlaps ||
        after.tangencies > before.tangencies) {
        throw KolamError("topology-risk", "smoothing changed the intersections between curves");
    }
    const auto wb = curve_windings(curves, dots);
    const auto wa = curve_windings(out, dots);
    for (std::size_t c = 0; c < wb.size(); ++c) {
        for (std::size_t d = 0; d < wb[c].size(); ++d) {
            if (std::lround(wb[c][d]) != std::lround(wa[c][d])) {
                throw KolamError("topology-risk", "smoothing moved a curve across dot " + std::to_string(d));
            }
        }
    }
    return out;
}

}  // namespace kolam
