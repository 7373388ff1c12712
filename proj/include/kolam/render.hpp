#pragma once

#include "kolam/curve.hpp"
#include "kolam/diagram.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kolam {

struct Style {
    double radius_ratio = kSquishyRadiusRatio;  // squishy radius / nearest-neighbor distance
    double bulge_ratio = 0.25;                  // Broken cap depth / end separation
    int arc_samples = 64;                       // points per squishy arc, >= 64
    int smoothing_iterations = 3;
    double stroke_width_ratio = 0.04;           // x smallest nearest-neighbor distance
    double dot_radius_ratio = 0.06;             // x smallest nearest-neighbor distance
    std::string stroke_color = "#1d3557";
    std::string dot_color = "#e63946";

    void validate() const;
};

// Precomputed drawing pieces for one parent: squishy sweep arcs and the
// three connector variants per junction. Assembling a diagram only
// concatenates pieces, so one Realizer serves a whole enumeration.
class Realizer {
public:
    Realizer(std::shared_ptr<const ParentKolam> parent, Style style = {});

    // One closed curve per orbit, in orbit order, before smoothing.
    std::vector<Curve> realize(const StrandDiagram& diagram, std::span<const Orbit> orbits) const;

    const Style& style() const { return style_; }
    double squishy_radius(int dot) const { return radius_[static_cast<std::size_t>(dot)]; }
    double half_width(int junction) const { return half_width_[static_cast<std::size_t>(junction)]; }
    const Point& tip(EndId e) const { return tip_[static_cast<std::size_t>(e)]; }

private:
    Eigen::Matrix2Xd sweep(EndId from, EndId to) const;
    Eigen::Matrix2Xd connector(BondType bond, EndId from, EndId to) const;

    std::shared_ptr<const ParentKolam> parent_;
    Style style_;
    std::vector<double> radius_;
    std::vector<double> half_width_;
    std::vector<double> setback_;
    std::vector<Point> tip_;
    std::vector<Point> toward_;  // per end: unit direction from the tip pair to its junction
    std::vector<Eigen::Matrix2Xd> sweep_from_;  // keyed by the ccw end that starts the sweep
};

// Realization with default pieces (builds a temporary Realizer).
std::vector<Curve> realize(const StrandDiagram& diagram, std::span<const Orbit> orbits, const Style& style = {});

// Corner cutting. Throws KolamError "topology-risk" when the result gains or
// loses self-intersections or touches itself.
Curve smooth(const Curve& curve, int iterations);

// Smooths every curve and audits the set as a whole: crossing count, overlap
// freedom and every per-dot winding number must survive.
std::vector<Curve> smooth_curves(std::span<const Curve> curves, int iterations, const DotSet& dots);

}  // namespace kolam
