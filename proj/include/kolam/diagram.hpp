#pragma once

#include "kolam/curve.hpp"
#include "kolam/parent.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace kolam {

// Implemented bond kinds, in enumeration order B < D < X.
enum class BondType : int { Broken = 0, Double = 1, Cross = 2 };

inline constexpr int kBondKinds = 3;

char bond_letter(BondType b);
std::string bond_name(BondType b);
// Accepts "B"/"D"/"X" and "Broken"/"Double"/"Cross". The reserved kinds
// ("Cross2"/"2X", "CrossOver"/"X+", "CrossUnder"/"X-") throw KolamError
// "unimplemented-bond"; anything else throws "unknown-bond".
BondType parse_bond(const std::string& token);

// One bond per junction, indexed by junction id.
struct BondAssignment {
    std::vector<BondType> bonds;

    std::size_t size() const { return bonds.size(); }
    BondType operator[](std::size_t j) const { return bonds[j]; }
    std::string str() const;
    friend bool operator==(const BondAssignment&, const BondAssignment&) = default;
};

// Letters in junction order, e.g. "BDXDB". Throws "assignment-length" when
// the length differs from `junction_count`.
BondAssignment parse_assignment(const std::string& letters, std::size_t junction_count);
BondAssignment uniform_assignment(std::size_t junction_count, BondType b);

struct StrandDiagram {
    std::shared_ptr<const ParentKolam> parent;
    BondAssignment assignment;
    std::vector<EndId> bond_partner;  // per end
    std::vector<char> crossing;       // per junction; true iff Cross

    int crossing_count() const;
};

// Pairing table:
//   Broken: aL-aR, bL-bR    Double: aL-bL, aR-bR    Cross: aL-bR, aR-bL
StrandDiagram resolve(std::shared_ptr<const ParentKolam> parent, const BondAssignment& assignment);

// One closed line. `ends` alternates e0 s0 e1 s1 ...: e_i -> s_i along a
// sweep arc, s_i -> e_{i+1} across a junction, and s_last -> e0 closes it.
// A dot with no arms (N = 1) is a free loop with empty `ends`.
struct Orbit {
    std::vector<EndId> ends;
    int lone_dot = -1;
    std::vector<int> crossings;  // distinct Cross junctions passed

    std::size_t arc_count() const { return lone_dot >= 0 ? 1 : ends.size() / 2; }
    int crossings_visited() const { return static_cast<int>(crossings.size()); }
};

// Orbits in order of their lowest end id; each starts at that end and
// follows its sweep arc first.
std::vector<Orbit> trace_orbits(const StrandDiagram& diagram);

struct ValidationReport {
    bool m1_pass = false;
    bool m2_pass = false;
    bool m3_pass = false;
    int orbit_count = 0;
    int crossing_count = 0;
    // Transverse intersections found on the realized curves; -1 without
    // geometry. Arms that cross away from any junction add to this.
    int audited_crossings = -1;
    bool geometric = false;
    std::vector<std::string> warnings;
};

struct ValidationOptions {
    // Tangential point contacts fail M2 in strict mode and only warn otherwise.
    bool strict = false;
    // Without curves, M1 falls back to the combinatorial squishy-coverage check.
    bool combinatorial_only = false;
    double winding_threshold = 1.0 - 1e-6;
};

// M1: every dot has |winding| >= threshold in some realized curve.
// M2: no finite-length overlaps and (strict) no tangencies.
// M3: every end is visited exactly once and every orbit closes.
ValidationReport validate(const StrandDiagram& diagram, std::span<const Orbit> orbits,
                          std::span<const Curve> curves, const DotSet& dots,
                          const ValidationOptions& options = {});

struct Kolam {
    StrandDiagram diagram;
    std::vector<Orbit> orbits;
    ValidationReport report;
};

}  // namespace kolam
