#pragma once

#include "kolam/geometry.hpp"

#include <string>
#include <vector>

namespace kolam {

enum class GroupKind { Cyclic, Dihedral };

// One plane isometry fixing the group center, with the dot permutation it
// induces.
struct GroupElement {
    Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
    bool reflection = false;
    std::vector<int> dot_perm;
};

// A finite 2-D point group (Cn or Dn) of a dot set.
struct PointGroup {
    GroupKind kind = GroupKind::Cyclic;
    int n = 1;
    Point center = Point::Zero();
    std::vector<GroupElement> elements;  // identity first

    int order() const { return static_cast<int>(elements.size()); }
    std::string name() const { return (kind == GroupKind::Cyclic ? "C" : "D") + std::to_string(n); }
    Point apply(const GroupElement& g, const Point& p) const { return center + g.linear * (p - center); }

    static PointGroup trivial(std::size_t dot_count, const Point& center = Point::Zero());
};

// Full symmetry group of the dot set about its centroid. Returns C1 when
// there is no symmetry. `tol` defaults to dots.symmetry_tolerance().
PointGroup detect_point_group(const DotSet& dots, double tol = -1.0);

// Partition of junctions into symmetry classes.
struct OrbitPartition {
    std::vector<std::vector<int>> classes;      // each sorted; classes ordered by first id
    std::vector<int> class_of;                  // junction id -> class index
    std::vector<std::vector<int>> permutations; // per group element: junction id -> image id

    int g() const { return static_cast<int>(classes.size()); }
};

// Junction permutation induced by each group element, matched on the
// undisplaced (nominal) positions.
std::vector<std::vector<int>> junction_permutations(const JunctionSet& junctions, const PointGroup& group,
                                                    double tol);

OrbitPartition junction_orbits(const JunctionSet& junctions, const PointGroup& group, double tol);

}  // namespace kolam
