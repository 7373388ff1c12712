#pragma once

// Helpers and independent oracles for the test suites. The oracles share no
// code with the engine beyond the plain data types: orbit counts come from a
// union-find over strand-ends, winding numbers from signed ray casting and
// intersections from an exhaustive pairwise segment test.

#include "kolam/document.hpp"
#include "kolam/enumerate.hpp"
#include "kolam/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#ifndef KOLAM_DATA_DIR
#error "KOLAM_DATA_DIR must be defined"
#endif

namespace kolam::testing {

inline std::string data_path(const std::string& name) { return std::string(KOLAM_DATA_DIR) + "/" + name + ".json"; }

inline DotSet load_dots(const std::string& name) {
    std::ifstream in(data_path(name));
    return dots_from_json(Json::parse(in));
}

inline std::shared_ptr<const ParentKolam> load_parent(const std::string& name, const std::string& policy = "all-pairs",
                                                      int j = 1) {
    return make_parent(load_dots(name), parse_policy_flag(policy, j));
}

// Pairs of strand sides joined by each bond, written out independently of
// the engine's resolver.
inline std::array<std::pair<int, int>, 2> bond_sides(BondType b) {
    constexpr int AL = 0, AR = 1, BL = 2, BR = 3;
    switch (b) {
        case BondType::Broken: return {{{AL, AR}, {BL, BR}}};
        case BondType::Double: return {{{AL, BL}, {AR, BR}}};
        case BondType::Cross: return {{{AL, BR}, {AR, BL}}};
    }
    return {};
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) { return up[static_cast<std::size_t>(x)] == x ? x : up[static_cast<std::size_t>(x)] = find(up[static_cast<std::size_t>(x)]); }
    void join(int a, int b) { up[static_cast<std::size_t>(find(a))] = find(b); }
};

// Orbit count of a kolam: ends are linked by the sweep arcs read straight off
// each dot's rotation (ccw end of one arm to the cw end of the next) and by
// the bond at each junction.
inline int oracle_orbit_count(const ParentKolam& parent, const BondAssignment& a) {
    if (parent.junctions.empty()) return static_cast<int>(parent.dots.size());
    UnionFind uf(4 * parent.junctions.size());
    for (const auto& rot : parent.rotation) {
        const std::size_t len = rot.size();
        for (std::size_t k = 1; k < len; k += 2) uf.join(rot[k], rot[(k + 1) % len]);
    }
    for (std::size_t j = 0; j < parent.junctions.size(); ++j) {
        for (auto [s, t] : bond_sides(a[j])) uf.join(static_cast<int>(4 * j) + s, static_cast<int>(4 * j) + t);
    }
    int roots = 0;
    for (std::size_t e = 0; e < 4 * parent.junctions.size(); ++e) roots += uf.find(static_cast<int>(e)) == static_cast<int>(e);
    return roots;
}

inline int oracle_crossing_count(const BondAssignment& a) {
    return static_cast<int>(std::count(a.bonds.begin(), a.bonds.end(), BondType::Cross));
}

// Signed crossings of the ray from p towards +x.
inline int ray_winding(const Point& p, const Eigen::Matrix2Xd& pts) {
    int w = 0;
    const Eigen::Index n = pts.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Point a = pts.col(i);
        const Point b = pts.col((i + 1) % n);
        const double side = (b.x() - a.x()) * (p.y() - a.y()) - (p.x() - a.x()) * (b.y() - a.y());
        if (a.y() <= p.y() && b.y() > p.y() && side > 0) ++w;
        if (a.y() > p.y() && b.y() <= p.y() && side < 0) --w;
    }
    return w;
}

inline std::vector<std::vector<int>> ray_windings(std::span<const Curve> curves, const DotSet& dots) {
    std::vector<std::vector<int>> out;
    for (const Curve& c : curves) {
        std::vector<int> row;
        for (const Dot& d : dots) row.push_back(ray_winding(d.pos, c.points));
        out.push_back(row);
    }
    return out;
}

// Proper crossings between all non-adjacent segment pairs, by orientation
// signs. Counts every unordered pair once.
inline int brute_force_crossings(std::span<const Curve> curves) {
    struct Seg {
        int curve, index, count;
        Point p, q;
    };
    std::vector<Seg> segs;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& pts = curves[c].points;
        const int n = static_cast<int>(pts.cols());
        for (int i = 0; i < n; ++i) segs.push_back({static_cast<int>(c), i, n, pts.col(i), pts.col((i + 1) % n)});
    }
    auto orient = [](const Point& a, const Point& b, const Point& c) {
        const double v = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
        return (v > 0) - (v < 0);
    };
    int count = 0;
    for (std::size_t u = 0; u < segs.size(); ++u) {
        for (std::size_t v = u + 1; v < segs.size(); ++v) {
            const Seg& s = segs[u];
            const Seg& t = segs[v];
            if (s.curve == t.curve) {
                const int d = std::abs(s.index - t.index);
                if (d == 1 || d == s.count - 1) continue;
            }
            const int o1 = orient(s.p, s.q, t.p), o2 = orient(s.p, s.q, t.q);
            const int o3 = orient(t.p, t.q, s.p), o4 = orient(t.p, t.q, s.q);
            if (o1 * o2 < 0 && o3 * o4 < 0) ++count;
        }
    }
    return count;
}

inline double curve_tolerance(std::span<const Curve> curves) {
    const auto [lo, hi] = curves_bbox(curves);
    return 1e-6 * (hi - lo).norm();
}

// Every assignment of the unconstrained space, in enumeration order.
inline std::vector<BondAssignment> all_assignments(std::size_t n) {
    std::vector<BondAssignment> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t idx = 0; idx < total; ++idx) {
        BondAssignment a;
        a.bonds.assign(n, BondType::Broken);
        std::size_t r = idx;
        for (std::size_t j = n; j-- > 0;) {
            a.bonds[j] = static_cast<BondType>(r % 3);
            r /= 3;
        }
        out.push_back(a);
    }
    return out;
}

// Sorted multiset of (orbit_count, crossing_count) over every assignment.
inline std::vector<std::pair<int, int>> census_profile(std::shared_ptr<const ParentKolam> parent) {
    std::vector<std::pair<int, int>> out;
    EnumerationOptions options;
    options.geometric = false;
    enumerate_assignments(parent, {}, [&](const EnumeratedKolam& e) {
        out.emplace_back(e.kolam.report.orbit_count, e.kolam.report.crossing_count);
        return true;
    }, options);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace kolam::testing
