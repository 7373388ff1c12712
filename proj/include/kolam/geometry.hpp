#pragma once

#include "kolam/plane.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace kolam {

// Squishy radius as a fraction of each dot's nearest-neighbor distance.
inline constexpr double kSquishyRadiusRatio = 0.35;
// Offset of the four strand-ends from their junction, relative to the pair distance.
inline constexpr double kEndOffsetRatio = 1e-3;
// Spacing of the J > 1 slots along the bisector, relative to the pair distance.
inline constexpr double kSlotSpacingRatio = 0.15;

struct Dot {
    int id = 0;
    Point pos = Point::Zero();
};

// The pullis. Ids are 0..N-1 and stored in id order; no two dots coincide
// within the coincidence tolerance.
class DotSet {
public:
    DotSet() = default;
    explicit DotSet(std::vector<Dot> dots);

    static DotSet from_points(const std::vector<Point>& points);

    std::size_t size() const { return dots_.size(); }
    bool empty() const { return dots_.empty(); }
    const Dot& operator[](std::size_t i) const { return dots_[i]; }
    const Point& pos(int id) const { return dots_[static_cast<std::size_t>(id)].pos; }
    auto begin() const { return dots_.begin(); }
    auto end() const { return dots_.end(); }
    const std::vector<Dot>& dots() const { return dots_; }

    Eigen::Matrix2Xd positions() const;
    Point centroid() const;
    double bbox_diagonal() const;
    // Bounding-box diagonal, or 1 for degenerate (single-point) sets.
    double scale() const;
    double coincidence_tolerance() const { return 1e-9 * scale(); }
    double symmetry_tolerance() const { return 1e-6 * scale(); }

    // Distance to the closest other dot (scale() for a lone dot).
    double nearest_neighbor_distance(int id) const;
    double squishy_radius(int id) const { return kSquishyRadiusRatio * nearest_neighbor_distance(id); }

    DotSet transformed(const Eigen::Matrix2d& linear, const Point& offset) const;

private:
    std::vector<Dot> dots_;
};

enum class JunctionMode { AllPairs, NearestNeighbor, Cutoff };

struct JunctionPolicy {
    JunctionMode mode = JunctionMode::AllPairs;
    double cutoff_distance = 0.0;  // cutoff mode only
    int junctions_per_pair = 1;    // J

    void validate() const;
    std::string mode_name() const;
};

JunctionMode parse_junction_mode(const std::string& name);

// Strand-end labels. L/R are relative to the directed line a -> b.
enum class EndSide : int { AL = 0, AR = 1, BL = 2, BR = 3 };

using EndId = int;

inline EndId end_id(int junction, EndSide side) { return 4 * junction + static_cast<int>(side); }
inline int end_junction(EndId e) { return e / 4; }
inline EndSide end_side(EndId e) { return static_cast<EndSide>(e % 4); }
inline bool end_on_a(EndId e) { return e % 4 < 2; }
std::string end_label(EndId e);

struct Junction {
    int id = 0;
    int a = 0;  // a < b
    int b = 0;
    int slot = 0;
    // Undisplaced slot position on the perpendicular bisector. Symmetry
    // computations use this.
    Point nominal = Point::Zero();
    // Drawn position: nominal + displacement * normal().
    Point position = Point::Zero();
    double displacement = 0.0;
    bool displaced = false;
    std::array<Point, 4> ends{};  // indexed by EndSide

    double pair_distance = 0.0;
    Point direction() const;  // unit a -> b
    Point normal() const { return left_normal<double>(direction()); }
};

struct JunctionSet {
    JunctionPolicy policy;
    std::vector<Junction> items;
    // Junction ids grouped per dot.
    std::vector<std::vector<int>> incident;

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
    const Junction& operator[](std::size_t i) const { return items[i]; }
    auto begin() const { return items.begin(); }
    auto end() const { return items.end(); }
};

// Pairs (a < b) activated by the policy, lexicographic.
std::vector<std::pair<int, int>> active_pairs(const DotSet& dots, const JunctionPolicy& policy);

// One junction per active pair and slot, placed on the perpendicular
// bisector and displaced along it when it would collide with a third dot's
// squishy, another junction, or another junction's arms.
JunctionSet build_junctions(const DotSet& dots, const JunctionPolicy& policy);

}  // namespace kolam
