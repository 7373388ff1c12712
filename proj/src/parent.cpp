#include "kolam/parent.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

namespace kolam {

namespace {

// Clockwise / counter-clockwise end of the arm a junction sends to `dot`.
// Seen from a, the L side is counter-clockwise; seen from b it is clockwise.
EndId cw_end(const Junction& j, int dot) {
    return dot == j.a ? end_id(j.id, EndSide::AR) : end_id(j.id, EndSide::BL);
}
EndId ccw_end(const Junction& j, int dot) {
    return dot == j.a ? end_id(j.id, EndSide::AL) : end_id(j.id, EndSide::BR);
}

}  // namespace

std::vector<int> ParentKolam::arms(int dot) const {
    const auto& rot = rotation[static_cast<std::size_t>(dot)];
    std::vector<int> out;
    for (std::size_t i = 0; i < rot.size(); i += 2) out.push_back(end_junction(rot[i]));
    return out;
}

ParentKolam build_parent(const DotSet& dots, const JunctionSet& junctions) {
    ParentKolam p;
    p.dots = dots;
    p.junctions = junctions;
    const std::size_t n = dots.size();
    p.rotation.resize(n);
    p.boundary_arcs.resize(n);
    p.sweep_partner.assign(p.end_count(), -1);
    p.end_dot.assign(p.end_count(), -1);

    for (const Junction& j : junctions) {
        for (int s = 0; s < 4; ++s) p.end_dot[static_cast<std::size_t>(end_id(j.id, EndSide(s)))] = s < 2 ? j.a : j.b;
    }

    for (std::size_t d = 0; d < n; ++d) {
        const int dot = static_cast<int>(d);
        const Point center = dots.pos(dot);
        const auto& inc = junctions.incident.size() > d ? junctions.incident[d] : std::vector<int>{};
        if (inc.empty()) {
            if (n >= 2) {
                throw KolamError("isolated-dot", "dot " + std::to_string(dot) +
                                                     " has no junction under the policy and cannot be circumscribed");
            }
            continue;
        }

        // (bearing, distance, junction id, side) per end.
        std::vector<std::tuple<double, double, int, int>> keyed;
        for (int jid : inc) {
            const Junction& j = junctions[static_cast<std::size_t>(jid)];
            for (EndId e : {cw_end(j, dot), ccw_end(j, dot)}) {
                const Point v = j.ends[static_cast<std::size_t>(e % 4)] - center;
                keyed.emplace_back(bearing<double>(v), (j.position - center).norm(), jid, e);
            }
        }
        std::sort(keyed.begin(), keyed.end());
        std::vector<EndId> rot;
        for (const auto& k : keyed) rot.push_back(std::get<3>(k));

        // An arm straddling bearing 0 puts its ccw end first.
        const Junction& first = junctions[static_cast<std::size_t>(end_junction(rot.front()))];
        if (rot.front() == ccw_end(first, dot)) std::rotate(rot.begin(), rot.begin() + 1, rot.end());

        for (std::size_t i = 0; i < rot.size(); i += 2) {
            const Junction& j = junctions[static_cast<std::size_t>(end_junction(rot[i]))];
            if (rot[i] != cw_end(j, dot) || rot[i + 1] != ccw_end(j, dot)) {
                throw KolamError("degenerate-geometry",
                                 "arms of dot " + std::to_string(dot) + " interleave; ends share a bearing");
            }
        }

        auto& arcs = p.boundary_arcs[d];
        for (std::size_t i = 0; i < rot.size(); ++i) {
            const EndId from = rot[i];
            const EndId to = rot[(i + 1) % rot.size()];
            arcs.push_back({dot, from, to, i % 2 == 0 ? ArcKind::Tip : ArcKind::Sweep});
            if (i % 2 == 1) {
                p.sweep_partner[static_cast<std::size_t>(from)] = to;
                p.sweep_partner[static_cast<std::size_t>(to)] = from;
            }
        }
        p.rotation[d] = std::move(rot);
    }
    return p;
}

std::string ParentSignature::text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < code.size(); ++i) os << (i ? "." : "") << code[i];
    return os.str();
}

namespace {

struct RotationGraph {
    std::vector<std::vector<int>> arms;        // per dot, junction ids ccw
    std::vector<std::pair<int, int>> ends;     // per junction (a, b)

    int other(int junction, int dot) const {
        const auto& e = ends[static_cast<std::size_t>(junction)];
        return e.first == dot ? e.second : e.first;
    }
    int index_of(int dot, int junction) const {
        const auto& a = arms[static_cast<std::size_t>(dot)];
        return static_cast<int>(std::find(a.begin(), a.end(), junction) - a.begin());
    }
};

int wrap(int x, int m) { return ((x % m) + m) % m; }

// Breadth-first code of the component containing `start`, entering it
// through arm `entry` and walking every rotation in direction `dir`.
std::vector<int> component_code(const RotationGraph& g, int start, int entry, int dir) {
    const std::size_t n = g.arms.size();
    std::vector<int> label(n, -1);
    std::vector<int> first(n, 0);
    std::vector<int> order;
    label[static_cast<std::size_t>(start)] = 0;
    first[static_cast<std::size_t>(start)] = entry;
    order.push_back(start);
    std::vector<int> code;
    for (std::size_t q = 0; q < order.size(); ++q) {
        const int v = order[q];
        const auto& arms = g.arms[static_cast<std::size_t>(v)];
        const int deg = static_cast<int>(arms.size());
        code.push_back(deg);
        for (int t = 0; t < deg; ++t) {
            const int jid = arms[static_cast<std::size_t>(wrap(first[static_cast<std::size_t>(v)] + dir * t, deg))];
            const int w = g.other(jid, v);
            const int at_w = g.index_of(w, jid);
            if (label[static_cast<std::size_t>(w)] < 0) {
                label[static_cast<std::size_t>(w)] = static_cast<int>(order.size());
                first[static_cast<std::size_t>(w)] = at_w;
                order.push_back(w);
            }
            const int wdeg = static_cast<int>(g.arms[static_cast<std::size_t>(w)].size());
            code.push_back(label[static_cast<std::size_t>(w)]);
            code.push_back(wrap((at_w - first[static_cast<std::size_t>(w)]) * dir, wdeg));
        }
    }
    return code;
}

}  // namespace

ParentSignature parent_signature(const ParentKolam& parent) {
    RotationGraph g;
    const std::size_t n = parent.dot_count();
    for (std::size_t d = 0; d < n; ++d) g.arms.push_back(parent.arms(static_cast<int>(d)));
    for (const Junction& j : parent.junctions) g.ends.emplace_back(j.a, j.b);

    // Components.
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = ncomp;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int jid : g.arms[static_cast<std::size_t>(v)]) {
                const int w = g.other(jid, v);
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }

    std::vector<std::vector<int>> codes;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> best;
        for (std::size_t s = 0; s < n; ++s) {
            if (comp[s] != c) continue;
            const int deg = static_cast<int>(g.arms[s].size());
            for (int e = 0; e < std::max(deg, 1); ++e) {
                for (int dir : {1, -1}) {
                    auto code = component_code(g, static_cast<int>(s), e, dir);
                    if (best.empty() || code < best) best = std::move(code);
                }
            }
        }
        codes.push_back(std::move(best));
    }
    std::sort(codes.begin(), codes.end());

    ParentSignature sig;
    sig.code.push_back(static_cast<int>(n));
    for (const auto& c : codes) {
        sig.code.push_back(-1);
        sig.code.insert(sig.code.end(), c.begin(), c.end());
    }
    return sig;
}

}  // namespace kolam
