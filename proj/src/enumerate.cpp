#include "kolam/enumerate.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kolam {

BigInt count_kolams(int n, int j, int b) {
    if (n < 1 || j < 1 || b < 1) throw KolamError("bad-count-input", "N, J and b must be positive");
    const auto exponent = static_cast<unsigned>(static_cast<long long>(j) * n * (n - 1) / 2);
    return boost::multiprecision::pow(BigInt(b), exponent);
}

BigInt count_symmetric(int g, int b) {
    if (g < 0) throw KolamError("bad-count-input", "g must be non-negative");
    if (b < 1) throw KolamError("bad-count-input", "b must be positive");
    return boost::multiprecision::pow(BigInt(b), static_cast<unsigned>(g));
}

AssignmentSpace::AssignmentSpace(const JunctionSet& junctions, const EnumerationConstraints& constraints, double tol)
    : junction_count_(junctions.size()) {
    if (constraints.symmetric_under) {
        units_ = junction_orbits(junctions, *constraints.symmetric_under, tol).classes;
    } else {
        for (std::size_t j = 0; j < junctions.size(); ++j) units_.push_back({static_cast<int>(j)});
    }
    std::vector<int> unit_of(junctions.size(), -1);
    for (std::size_t u = 0; u < units_.size(); ++u) {
        for (int j : units_[u]) unit_of[static_cast<std::size_t>(j)] = static_cast<int>(u);
    }
    fixed_.assign(units_.size(), std::nullopt);
    for (const auto& [j, bond] : constraints.fixed_bonds) {
        if (j < 0 || static_cast<std::size_t>(j) >= junctions.size()) {
            throw KolamError("unknown-junction", "fixed bond on unknown junction " + std::to_string(j));
        }
        auto& slot = fixed_[static_cast<std::size_t>(unit_of[static_cast<std::size_t>(j)])];
        if (slot && *slot != bond) {
            throw KolamError("inconsistent-fixed-bonds",
                             "fixed bonds disagree within the symmetry class of junction " + std::to_string(j));
        }
        slot = bond;
    }
    for (std::size_t u = 0; u < units_.size(); ++u) {
        if (!fixed_[u]) free_.push_back(u);
    }
}

BigInt AssignmentSpace::size() const { return count_symmetric(free_units(), kBondKinds); }

std::uint64_t AssignmentSpace::size_u64() const {
    const BigInt k = size();
    if (k > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        throw KolamError("enumeration-too-large", "the assignment space does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(k);
}

BondAssignment AssignmentSpace::at(std::uint64_t index) const {
    BondAssignment a;
    a.bonds.assign(junction_count_, BondType::Broken);
    for (std::size_t u = 0; u < units_.size(); ++u) {
        if (!fixed_[u]) continue;
        for (int j : units_[u]) a.bonds[static_cast<std::size_t>(j)] = *fixed_[u];
    }
    for (std::size_t k = free_.size(); k-- > 0;) {
        const auto bond = static_cast<BondType>(index % kBondKinds);
        index /= kBondKinds;
        for (int j : units_[free_[k]]) a.bonds[static_cast<std::size_t>(j)] = bond;
    }
    return a;
}

std::uint64_t enumerate_assignments(std::shared_ptr<const ParentKolam> parent,
                                    const EnumerationConstraints& constraints,
                                    const std::function<bool(const EnumeratedKolam&)>& visit,
                                    const EnumerationOptions& options) {
    const AssignmentSpace space(parent->junctions, constraints, parent->dots.symmetry_tolerance());
    const BigInt size = space.size();
    const BigInt cap(std::numeric_limits<std::uint64_t>::max());
    const std::uint64_t total = static_cast<std::uint64_t>(size < cap ? size : cap);
    const std::uint64_t end = std::min(options.end, total);
    std::optional<Realizer> realizer;
    if (options.geometric) realizer.emplace(parent, options.style);

    std::uint64_t visited = 0;
    for (std::uint64_t i = options.begin; i < end; ++i) {
        EnumeratedKolam e;
        e.index = i;
        e.assignment = space.at(i);
        e.kolam.diagram = resolve(parent, e.assignment);
        e.kolam.orbits = trace_orbits(e.kolam.diagram);
        if (realizer) {
            std::vector<Curve> curves = realizer->realize(e.kolam.diagram, e.kolam.orbits);
            for (Curve& c : curves) c.points = chaikin_closed<double>(c.points, options.style.smoothing_iterations);
            e.kolam.report = validate(e.kolam.diagram, e.kolam.orbits, curves, parent->dots, options.validation);
        } else {
            ValidationOptions v = options.validation;
            v.combinatorial_only = true;
            e.kolam.report = validate(e.kolam.diagram, e.kolam.orbits, {}, parent->dots, v);
        }
        ++visited;
        if (!visit(e)) break;
    }
    return visited;
}

std::vector<EnumeratedKolam> collect_enumeration(std::shared_ptr<const ParentKolam> parent,
                                                 const EnumerationConstraints& constraints,
                                                 const EnumerationOptions& options, bool allow_large) {
    if (parent->junctions.size() > 16 && !allow_large) {
        throw KolamError("enumeration-too-large", "refusing to materialize more than 16 junctions; stream instead");
    }
    std::vector<EnumeratedKolam> out;
    enumerate_assignments(parent, constraints, [&](const EnumeratedKolam& e) {
        out.push_back(e);
        return true;
    }, options);
    return out;
}

std::string type_label(const BondAssignment& a) {
    std::array<int, kBondKinds> counts{};
    for (BondType b : a.bonds) ++counts[static_cast<std::size_t>(b)];
    std::string s;
    for (int k = 0; k < kBondKinds; ++k) {
        const int c = counts[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        s.push_back(bond_letter(static_cast<BondType>(k)));
        if (c > 1) s += std::to_string(c);
    }
    return s.empty() ? "-" : s;
}

BigInt burnside_class_count(std::span<const std::vector<int>> perms, int b) {
    if (perms.empty()) throw KolamError("empty-group", "a group has at least the identity");
    BigInt sum = 0;
    for (const auto& perm : perms) {
        std::vector<char> seen(perm.size(), 0);
        unsigned cycles = 0;
        for (std::size_t s = 0; s < perm.size(); ++s) {
            if (seen[s]) continue;
            ++cycles;
            for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(perm[x])) seen[x] = 1;
        }
        sum += boost::multiprecision::pow(BigInt(b), cycles);
    }
    return sum / perms.size();
}

std::vector<KolamType> classify_types(const JunctionSet& junctions, std::span<const BondAssignment> assignments,
                                      const PointGroup& group, double tol) {
    const auto perms = junction_permutations(junctions, group, tol);
    const std::size_t n = junctions.size();

    std::set<std::string> distinct;
    for (const auto& a : assignments) {
        if (a.size() != n) throw KolamError("assignment-length", "assignment does not match the junction set");
        distinct.insert(a.str());
    }
    if (BigInt(distinct.size()) != count_symmetric(static_cast<int>(n), kBondKinds)) {
        throw KolamError("incomplete-enumeration", "type classification needs the full unconstrained enumeration");
    }

    std::map<std::string, KolamType> by_rep;
    for (const std::string& s : distinct) {
        std::string rep = s;
        for (const auto& perm : perms) {
            std::string img(n, 'B');
            for (std::size_t j = 0; j < n; ++j) img[static_cast<std::size_t>(perm[j])] = s[j];
            rep = std::min(rep, img);
        }
        KolamType& t = by_rep[rep];
        if (t.members.empty()) {
            t.representative = rep;
            BondAssignment ra;
            for (char c : rep) ra.bonds.push_back(parse_bond(std::string(1, c)));
            t.label = type_label(ra);
            for (BondType b : ra.bonds) ++t.counts[static_cast<std::size_t>(b)];
        }
        t.members.push_back(s);
        ++t.multiplicity;
    }

    if (BigInt(by_rep.size()) != burnside_class_count(perms, kBondKinds)) {
        throw KolamError("burnside-mismatch", "class count disagrees with Burnside's lemma");
    }
    std::vector<KolamType> out;
    out.reserve(by_rep.size());
    for (auto& [rep, t] : by_rep) out.push_back(std::move(t));
    return out;
}

CensusRow census_row(const EnumeratedKolam& e) {
    const ValidationReport& r = e.kolam.report;
    return {e.assignment.str(), r.orbit_count, r.crossing_count, type_label(e.assignment),
            r.m1_pass, r.m2_pass, r.m3_pass};
}

void write_census_csv(std::ostream& os, std::span<const CensusRow> rows, bool header) {
    if (header) os << "assignment,orbit_count,crossing_count,type,m1,m2,m3\n";
    auto flag = [](bool b) { return b ? "true" : "false"; };
    for (const CensusRow& r : rows) {
        os << r.assignment << ',' << r.orbit_count << ',' << r.crossing_count << ',' << r.type << ','
           << flag(r.m1) << ',' << flag(r.m2) << ',' << flag(r.m3) << '\n';
    }
}

}  // namespace kolam
