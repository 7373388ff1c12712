#include "kolam/diagram.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <cmath>

namespace kolam {

char bond_letter(BondType b) {
    switch (b) {
        case BondType::Broken: return 'B';
        case BondType::Double: return 'D';
        case BondType::Cross: return 'X';
    }
    return '?';
}

std::string bond_name(BondType b) {
    switch (b) {
        case BondType::Broken: return "Broken";
        case BondType::Double: return "Double";
        case BondType::Cross: return "Cross";
    }
    return "?";
}

BondType parse_bond(const std::string& token) {
    if (token == "B" || token == "Broken") return BondType::Broken;
    if (token == "D" || token == "Double") return BondType::Double;
    if (token == "X" || token == "Cross") return BondType::Cross;
    if (token == "Cross2" || token == "2X" || token == "CrossOver" || token == "X+" || token == "CrossUnder" ||
        token == "X-") {
        throw KolamError("unimplemented-bond", "bond kind '" + token + "' is reserved but unimplemented");
    }
    throw KolamError("unknown-bond", "unknown bond '" + token + "'");
}

std::string BondAssignment::str() const {
    std::string s;
    s.reserve(bonds.size());
    for (BondType b : bonds) s.push_back(bond_letter(b));
    return s;
}

BondAssignment parse_assignment(const std::string& letters, std::size_t junction_count) {
    BondAssignment a;
    for (char c : letters) a.bonds.push_back(parse_bond(std::string(1, c)));
    if (a.size() != junction_count) {
        throw KolamError("assignment-length", "assignment has " + std::to_string(a.size()) + " bonds but there are " +
                                                  std::to_string(junction_count) + " junctions");
    }
    return a;
}

BondAssignment uniform_assignment(std::size_t junction_count, BondType b) {
    return {std::vector<BondType>(junction_count, b)};
}

int StrandDiagram::crossing_count() const {
    return static_cast<int>(std::count(crossing.begin(), crossing.end(), 1));
}

StrandDiagram resolve(std::shared_ptr<const ParentKolam> parent, const BondAssignment& assignment) {
    const std::size_t nj = parent->junctions.size();
    if (assignment.size() != nj) {
        throw KolamError("assignment-length", "assignment has " + std::to_string(assignment.size()) +
                                                  " bonds but there are " + std::to_string(nj) + " junctions");
    }
    StrandDiagram d;
    d.assignment = assignment;
    d.bond_partner.assign(4 * nj, -1);
    d.crossing.assign(nj, 0);
    auto pair = [&](EndId x, EndId y) {
        d.bond_partner[static_cast<std::size_t>(x)] = y;
        d.bond_partner[static_cast<std::size_t>(y)] = x;
    };
    for (std::size_t j = 0; j < nj; ++j) {
        const int jid = static_cast<int>(j);
        const EndId al = end_id(jid, EndSide::AL), ar = end_id(jid, EndSide::AR);
        const EndId bl = end_id(jid, EndSide::BL), br = end_id(jid, EndSide::BR);
        switch (assignment[j]) {
            case BondType::Broken: pair(al, ar); pair(bl, br); break;
            case BondType::Double: pair(al, bl); pair(ar, br); break;
            case BondType::Cross:
                pair(al, br);
                pair(ar, bl);
                d.crossing[j] = 1;
                break;
        }
    }
    d.parent = std::move(parent);
    return d;
}

std::vector<Orbit> trace_orbits(const StrandDiagram& diagram) {
    const ParentKolam& p = *diagram.parent;
    const std::size_t ne = p.end_count();
    std::vector<char> seen(ne, 0);
    std::vector<Orbit> out;

    for (std::size_t d = 0; d < p.dot_count(); ++d) {
        if (p.rotation[d].empty()) {
            Orbit o;
            o.lone_dot = static_cast<int>(d);
            out.push_back(o);
        }
    }

    for (std::size_t start = 0; start < ne; ++start) {
        if (seen[start]) continue;
        Orbit o;
        EndId e = static_cast<EndId>(start);
        std::size_t guard = 0;
        do {
            if (++guard > ne) throw KolamError("trace-diverged", "orbit tracing did not close");
            const EndId s = p.sweep_partner[static_cast<std::size_t>(e)];
            seen[static_cast<std::size_t>(e)] = 1;
            seen[static_cast<std::size_t>(s)] = 1;
            o.ends.push_back(e);
            o.ends.push_back(s);
            const int j = end_junction(s);
            if (diagram.crossing[static_cast<std::size_t>(j)] &&
                std::find(o.crossings.begin(), o.crossings.end(), j) == o.crossings.end()) {
                o.crossings.push_back(j);
            }
            e = diagram.bond_partner[static_cast<std::size_t>(s)];
        } while (e != static_cast<EndId>(start));
        std::sort(o.crossings.begin(), o.crossings.end());
        out.push_back(std::move(o));
    }
    return out;
}

ValidationReport validate(const StrandDiagram& diagram, std::span<const Orbit> orbits,
                          std::span<const Curve> curves, const DotSet& dots, const ValidationOptions& options) {
    const ParentKolam& p = *diagram.parent;
    ValidationReport r;
    r.orbit_count = static_cast<int>(orbits.size());
    r.crossing_count = diagram.crossing_count();

    // M3: closure and exact coverage of the ends.
    {
        bool ok = true;
        std::vector<int> visits(p.end_count(), 0);
        std::vector<int> lone(p.dot_count(), 0);
        for (const Orbit& o : orbits) {
            if (o.lone_dot >= 0) {
                ++lone[static_cast<std::size_t>(o.lone_dot)];
                continue;
            }
            if (o.ends.empty() || o.ends.size() % 2) {
                ok = false;
                continue;
            }
            for (std::size_t i = 0; i < o.ends.size(); i += 2) {
                const EndId e = o.ends[i], s = o.ends[i + 1];
                const EndId next = o.ends[(i + 2) % o.ends.size()];
                ++visits[static_cast<std::size_t>(e)];
                ++visits[static_cast<std::size_t>(s)];
                if (p.sweep_partner[static_cast<std::size_t>(e)] != s) ok = false;
                if (diagram.bond_partner[static_cast<std::size_t>(s)] != next) ok = false;
            }
        }
        for (int v : visits) ok = ok && v == 1;
        for (std::size_t d = 0; d < p.dot_count(); ++d) {
            if (p.rotation[d].empty()) ok = ok && lone[d] == 1;
        }
        r.m3_pass = ok;
    }

    if (curves.empty()) {
        if (!options.combinatorial_only) {
            throw KolamError("realization-unavailable",
                             "geometric validation needs realized curves; realize first or request a combinatorial report");
        }
        // Each squishy's sweep arcs are all on some orbit when M3 holds.
        r.m1_pass = r.m3_pass;
        r.m2_pass = true;
        r.geometric = false;
        return r;
    }

    r.geometric = true;
    const auto windings = curve_windings(curves, dots);
    r.m1_pass = true;
    for (std::size_t d = 0; d < dots.size(); ++d) {
        bool circled = false;
        for (const auto& w : windings) circled = circled || std::abs(w[d]) >= options.winding_threshold;
        if (!circled) {
            r.m1_pass = false;
            r.warnings.push_back("dot " + std::to_string(d) + " is not circumscribed");
        }
    }

    const auto [lo, hi] = curves_bbox(curves);
    const double tol = 1e-9 * std::max((hi - lo).norm(), 1e-12);
    const CurveAudit audit = audit_curves(curves, tol);
    r.audited_crossings = audit.crossing_count();
    r.m2_pass = audit.overlaps == 0;
    if (audit.overlaps > 0) r.warnings.push_back(std::to_string(audit.overlaps) + " finite-length overlaps");
    if (audit.tangencies > 0) {
        r.warnings.push_back(std::to_string(audit.tangencies) + " non-transverse contacts");
        if (options.strict) r.m2_pass = false;
    }
    return r;
}

}  // namespace kolam
