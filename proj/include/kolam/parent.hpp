#pragma once

#include "kolam/geometry.hpp"

#include <string>
#include <vector>

namespace kolam {

enum class ArcKind {
    Tip,    // joins the two ends of one arm; replaced by the bond at that junction
    Sweep,  // runs from one arm around the dot to the next arm
};

// Counter-clockwise boundary piece of a squishy between two consecutive ends.
struct BoundaryArc {
    int dot = 0;
    EndId from = 0;
    EndId to = 0;
    ArcKind kind = ArcKind::Sweep;
};

// Squishies around every dot, encoded as a rotation system of strand-ends.
struct ParentKolam {
    DotSet dots;
    JunctionSet junctions;
    // Per dot, counter-clockwise order of its strand-ends. Each arm
    // contributes its clockwise end immediately followed by its
    // counter-clockwise end.
    std::vector<std::vector<EndId>> rotation;
    // Per dot, one arc per consecutive pair of `rotation` (2m arcs for m arms),
    // alternating Tip, Sweep.
    std::vector<std::vector<BoundaryArc>> boundary_arcs;
    // End -> the end at the other side of its sweep arc.
    std::vector<EndId> sweep_partner;
    // End -> owning dot.
    std::vector<int> end_dot;

    std::size_t end_count() const { return 4 * junctions.size(); }
    std::size_t dot_count() const { return dots.size(); }
    // Junction ids of the arms around a dot, counter-clockwise.
    std::vector<int> arms(int dot) const;
};

// Throws KolamError "isolated-dot" when N >= 2 and some dot has no
// junction, and "degenerate-geometry" when two arms of a dot interleave.
ParentKolam build_parent(const DotSet& dots, const JunctionSet& junctions);

// Canonical code of the rotation system (junction incidence and cyclic arm
// orders), minimized over relabelings, starting arms and global reflection.
struct ParentSignature {
    std::vector<int> code;

    std::string text() const;
    friend bool operator==(const ParentSignature&, const ParentSignature&) = default;
    friend auto operator<=>(const ParentSignature&, const ParentSignature&) = default;
};

ParentSignature parent_signature(const ParentKolam& parent);

}  // namespace kolam
