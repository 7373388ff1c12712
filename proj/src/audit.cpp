#include "kolam/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kolam {

namespace {

struct Segment {
    int curve;
    int index;
    int count;  // segments in the curve
    Point p, q;
    Point lo, hi;
};

bool adjacent(const Segment& s, const Segment& t) {
    if (s.curve != t.curve) return false;
    const int d = std::abs(s.index - t.index);
    return d == 1 || d == s.count - 1;
}

constexpr double kTransverseSine = 1e-3;

}  // namespace

CurveAudit audit_curves(std::span<const Curve> curves, double tol) {
    std::vector<Segment> segs;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& pts = curves[c].points;
        const int n = static_cast<int>(pts.cols());
        if (n < 2) continue;
        for (int i = 0; i < n; ++i) {
            Segment s{static_cast<int>(c), i, n, pts.col(i), pts.col((i + 1) % n), {}, {}};
            s.lo = s.p.cwiseMin(s.q);
            s.hi = s.p.cwiseMax(s.q);
            segs.push_back(s);
        }
    }
    CurveAudit out;
    if (segs.size() < 2) return out;

    auto test = [&](int u, int v) {
        const Segment& s = segs[static_cast<std::size_t>(u)];
        const Segment& t = segs[static_cast<std::size_t>(v)];
        if (adjacent(s, t)) return;
        if ((s.hi.array() < t.lo.array() - tol).any() || (t.hi.array() < s.lo.array() - tol).any()) return;

        const Point r = s.q - s.p;
        const Point w = t.q - t.p;
        const double rl = r.norm(), wl = w.norm();
        if (rl == 0.0 || wl == 0.0) return;
        const double denom = cross2<double>(r, w);
        const Point d = t.p - s.p;
        if (std::abs(denom) <= 1e-12 * rl * wl) {
            if (std::abs(cross2<double>(d, r)) / rl > tol) return;  // parallel, apart
            const double t0 = d.dot(r) / (rl * rl);
            const double t1 = (t.q - s.p).dot(r) / (rl * rl);
            const double lo = std::max(0.0, std::min(t0, t1));
            const double hi = std::min(1.0, std::max(t0, t1));
            if ((hi - lo) * rl > tol) ++out.overlaps;
            return;
        }
        const double ts = cross2<double>(d, w) / denom;
        const double tt = cross2<double>(d, r) / denom;
        if (ts < 0.0 || ts >= 1.0 || tt < 0.0 || tt >= 1.0) return;
        const Point at = s.p + ts * r;
        const double sine = std::abs(denom) / (rl * wl);
        if (sine < kTransverseSine) {
            ++out.tangencies;
        } else {
            CurveIntersection x{s.curve, s.index, t.curve, t.index, at, sine};
            if (std::tie(x.curve_b, x.segment_b) < std::tie(x.curve_a, x.segment_a)) {
                std::swap(x.curve_a, x.curve_b);
                std::swap(x.segment_a, x.segment_b);
            }
            out.crossings.push_back(x);
        }
    };

    // Sweep along x: after sorting by the left edge, only segments whose
    // x-ranges overlap are ever compared.
    std::vector<int> order(segs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return segs[static_cast<std::size_t>(a)].lo.x() < segs[static_cast<std::size_t>(b)].lo.x();
    });
    for (std::size_t u = 0; u < order.size(); ++u) {
        const double right = segs[static_cast<std::size_t>(order[u])].hi.x() + tol;
        for (std::size_t v = u + 1; v < order.size(); ++v) {
            if (segs[static_cast<std::size_t>(order[v])].lo.x() > right) break;
            test(order[u], order[v]);
        }
    }
    std::sort(out.crossings.begin(), out.crossings.end(), [](const CurveIntersection& l, const CurveIntersection& r) {
        return std::tie(l.curve_a, l.segment_a, l.curve_b, l.segment_b) <
               std::tie(r.curve_a, r.segment_a, r.curve_b, r.segment_b);
    });
    return out;
}

std::vector<std::vector<double>> curve_windings(std::span<const Curve> curves, const DotSet& dots) {
    std::vector<std::vector<double>> out;
    out.reserve(curves.size());
    for (const Curve& c : curves) {
        std::vector<double> row;
        row.reserve(dots.size());
        for (const Dot& d : dots) row.push_back(winding_number<double>(d.pos, c.points));
        out.push_back(std::move(row));
    }
    return out;
}

std::pair<Point, Point> curves_bbox(std::span<const Curve> curves) {
    Point lo = Point::Constant(std::numeric_limits<double>::infinity());
    Point hi = -lo;
    for (const Curve& c : curves) {
        if (c.points.cols() == 0) continue;
        lo = lo.cwiseMin(c.points.rowwise().minCoeff());
        hi = hi.cwiseMax(c.points.rowwise().maxCoeff());
    }
    if (!lo.allFinite()) return {Point::Zero(), Point::Zero()};
    return {lo, hi};
}

}  // namespace kolam
