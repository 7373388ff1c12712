#pragma once

#include "kolam/diagram.hpp"
#include "kolam/point_group.hpp"
#include "kolam/render.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace kolam {

using BigInt = boost::multiprecision::cpp_int;

// K = b^(J N (N-1) / 2): kolams over the all-pairs parent of N dots.
BigInt count_kolams(int n, int j, int b);
// K = b^g when symmetry-equivalent junctions share a bond.
BigInt count_symmetric(int g, int b);

struct EnumerationConstraints {
    std::optional<PointGroup> symmetric_under;
    std::map<int, BondType> fixed_bonds;
};

// The assignments allowed by a set of constraints, indexed in lexicographic
// order over ascending junction ids with B < D < X. Free "units" are single
// junctions, or whole symmetry classes under a group.
class AssignmentSpace {
public:
    AssignmentSpace(const JunctionSet& junctions, const EnumerationConstraints& constraints, double tol);

    BigInt size() const;
    // size() when it fits in 64 bits; throws "enumeration-too-large" otherwise.
    std::uint64_t size_u64() const;
    BondAssignment at(std::uint64_t index) const;

    // Symmetry classes (or one class per junction when unconstrained).
    const std::vector<std::vector<int>>& units() const { return units_; }
    int g() const { return static_cast<int>(units_.size()); }
    int free_units() const { return static_cast<int>(free_.size()); }
    std::size_t junction_count() const { return junction_count_; }

private:
    std::size_t junction_count_ = 0;
    std::vector<std::vector<int>> units_;
    std::vector<std::optional<BondType>> fixed_;  // per unit
    std::vector<std::size_t> free_;               // unit indices, most significant first
};

struct EnumerationOptions {
    bool geometric = true;  // realize, smooth and audit each kolam
    Style style;
    ValidationOptions validation;
    std::uint64_t begin = 0;
    std::uint64_t end = std::numeric_limits<std::uint64_t>::max();
};

struct EnumeratedKolam {
    std::uint64_t index = 0;
    BondAssignment assignment;
    Kolam kolam;
};

// Streams (index, assignment, kolam) in index order over [begin, end). The
// visitor returns false to stop. Returns the number visited.
std::uint64_t enumerate_assignments(std::shared_ptr<const ParentKolam> parent,
                                    const EnumerationConstraints& constraints,
                                    const std::function<bool(const EnumeratedKolam&)>& visit,
                                    const EnumerationOptions& options = {});

// Materializes a full enumeration. Refuses more than 16 junctions unless
// `allow_large` is set.
std::vector<EnumeratedKolam> collect_enumeration(std::shared_ptr<const ParentKolam> parent,
                                                 const EnumerationConstraints& constraints,
                                                 const EnumerationOptions& options = {}, bool allow_large = false);

// Multiset label such as "B2X", "BDX" or "D3".
std::string type_label(const BondAssignment& a);

struct KolamType {
    std::string label;
    std::array<int, kBondKinds> counts{};
    std::string representative;  // lexicographically smallest member
    int multiplicity = 0;
    std::vector<std::string> members;
};

// Burnside count of assignment classes: (1/|G|) sum over g of b^cycles(g).
BigInt burnside_class_count(std::span<const std::vector<int>> junction_permutations, int b);

// Groups a complete unconstrained enumeration into classes under the
// group's action on junctions. Classes are ordered by representative.
// Throws "incomplete-enumeration" when the input is not all b^n assignments
// and "burnside-mismatch" if the class count disagrees with Burnside.
std::vector<KolamType> classify_types(const JunctionSet& junctions, std::span<const BondAssignment> assignments,
                                      const PointGroup& group, double tol);

struct CensusRow {
    std::string assignment;
    int orbit_count = 0;
    int crossing_count = 0;
    std::string type;
    bool m1 = false, m2 = false, m3 = false;
};

CensusRow census_row(const EnumeratedKolam& e);
void write_census_csv(std::ostream& os, std::span<const CensusRow> rows, bool header = true);

}  // namespace kolam
