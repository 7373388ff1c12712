#pragma once

#include "kolam/geometry.hpp"

#include <span>
#include <vector>

namespace kolam {

// A closed plane curve as a dense polyline. The last vertex connects back
// to the first; it is not repeated.
struct Curve {
    Eigen::Matrix2Xd points;
    int orbit = -1;

    Eigen::Index size() const { return points.cols(); }
};

struct CurveIntersection {
    int curve_a = 0, segment_a = 0;
    int curve_b = 0, segment_b = 0;
    Point at = Point::Zero();
    double sine = 0.0;  // |sin| of the crossing angle
};

struct CurveAudit {
    std::vector<CurveIntersection> crossings;  // transverse point intersections
    int tangencies = 0;                        // point contacts below the transversality threshold
    int overlaps = 0;                          // collinear overlaps of positive length
    int crossing_count() const { return static_cast<int>(crossings.size()); }
};

// Every intersection among all segments of all curves (self and mutual),
// each counted once. Adjacent segments of one curve are skipped. `tol` is an
// absolute length below which overlaps are ignored.
CurveAudit audit_curves(std::span<const Curve> curves, double tol);

// windings[c][d]: real-valued winding number of curve c about dot d.
std::vector<std::vector<double>> curve_windings(std::span<const Curve> curves, const DotSet& dots);

// Bounding box (min corner, max corner) of all curve vertices.
std::pair<Point, Point> curves_bbox(std::span<const Curve> curves);

}  // namespace kolam
