#include "kolam/point_group.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>

namespace kolam {

namespace {

// Permutation of the dots induced by x -> center + m (x - center), or nothing
// if some image misses every dot.
std::optional<std::vector<int>> induced_permutation(const DotSet& dots, const Point& center,
                                                    const Eigen::Matrix2d& m, double tol) {
    std::vector<int> perm(dots.size(), -1);
    std::vector<char> hit(dots.size(), 0);
    for (const Dot& d : dots) {
        const Point img = center + m * (d.pos - center);
        int found = -1;
        for (const Dot& e : dots) {
            if ((e.pos - img).norm() <= tol) {
                found = e.id;
                break;
            }
        }
        if (found < 0 || hit[static_cast<std::size_t>(found)]) return std::nullopt;
        hit[static_cast<std::size_t>(found)] = 1;
        perm[static_cast<std::size_t>(d.id)] = found;
    }
    return perm;
}

double normalize_axis(double a) {
    a = std::fmod(a, std::numbers::pi);
    if (a < 0) a += std::numbers::pi;
    return a;
}

}  // namespace

PointGroup PointGroup::trivial(std::size_t dot_count, const Point& center) {
    PointGroup g;
    g.center = center;
    GroupElement id;
    id.dot_perm.resize(dot_count);
    std::iota(id.dot_perm.begin(), id.dot_perm.end(), 0);
    g.elements.push_back(id);
    return g;
}

PointGroup detect_point_group(const DotSet& dots, double tol) {
    if (tol < 0) tol = dots.symmetry_tolerance();
    const Point c = dots.centroid();
    PointGroup group = PointGroup::trivial(dots.size(), c);
    if (dots.size() < 2) return group;

    // Every rotation of a finite set about its centroid permutes the dots off
    // the center in orbits of full size, so the order divides that count.
    int off_center = 0;
    for (const Dot& d : dots) off_center += (d.pos - c).norm() > tol ? 1 : 0;
    int order = 1;
    for (int n = off_center; n >= 2; --n) {
        if (off_center % n != 0) continue;
        if (induced_permutation(dots, c, rotation2(2.0 * std::numbers::pi / n), tol)) {
            order = n;
            break;
        }
    }

    // A mirror axis passes through a dot or is the perpendicular bisector of a
    // swapped pair; either way it goes through the centroid.
    std::vector<double> candidates;
    for (const Dot& d : dots) {
        const Point v = d.pos - c;
        if (v.norm() > tol) candidates.push_back(normalize_axis(std::atan2(v.y(), v.x())));
    }
    for (const Dot& p : dots) {
        for (const Dot& q : dots) {
            if (q.id <= p.id) continue;
            const Point v = q.pos - p.pos;
            candidates.push_back(normalize_axis(std::atan2(v.y(), v.x()) + std::numbers::pi / 2));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    std::optional<double> axis;
    for (double a : candidates) {
        if (induced_permutation(dots, c, reflection2(a), tol)) {
            axis = a;
            break;
        }
    }

    group.n = order;
    group.kind = axis ? GroupKind::Dihedral : GroupKind::Cyclic;
    group.elements.clear();
    for (int k = 0; k < order; ++k) {
        GroupElement e;
        e.linear = rotation2(2.0 * std::numbers::pi * k / order);
        e.dot_perm = *induced_permutation(dots, c, e.linear, tol);
        group.elements.push_back(std::move(e));
    }
    if (axis) {
        for (int k = 0; k < order; ++k) {
            GroupElement e;
            e.linear = reflection2(*axis + std::numbers::pi * k / order);
            e.reflection = true;
            auto perm = induced_permutation(dots, c, e.linear, tol);
            if (!perm) throw KolamError("inconsistent-symmetry", "reflection coset does not fix the dot set");
            e.dot_perm = std::move(*perm);
            group.elements.push_back(std::move(e));
        }
    }
    return group;
}

std::vector<std::vector<int>> junction_permutations(const JunctionSet& junctions, const PointGroup& group,
                                                    double tol) {
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (const Junction& j : junctions) by_pair[{j.a, j.b}].push_back(j.id);

    std::vector<std::vector<int>> perms;
    perms.reserve(group.elements.size());
    for (const GroupElement& e : group.elements) {
        std::vector<int> perm(junctions.size(), -1);
        for (const Junction& j : junctions) {
            const auto ia = static_cast<std::size_t>(j.a);
            const auto ib = static_cast<std::size_t>(j.b);
            if (ia >= e.dot_perm.size() || ib >= e.dot_perm.size()) {
                throw KolamError("group-not-acting", "group does not act on the junction dots");
            }
            int a = e.dot_perm[ia];
            int b = e.dot_perm[ib];
            if (a > b) std::swap(a, b);
            const Point img = group.apply(e, j.nominal);
            auto it = by_pair.find({a, b});
            if (it != by_pair.end()) {
                for (int k : it->second) {
                    if ((junctions[static_cast<std::size_t>(k)].nominal - img).norm() <= tol) {
                        perm[static_cast<std::size_t>(j.id)] = k;
                        break;
                    }
                }
            }
            if (perm[static_cast<std::size_t>(j.id)] < 0) {
                throw KolamError("group-not-acting", "a group element does not permute the junctions (junction " +
                                                         std::to_string(j.id) + ")");
            }
        }
        perms.push_back(std::move(perm));
    }
    return perms;
}

OrbitPartition junction_orbits(const JunctionSet& junctions, const PointGroup& group, double tol) {
    OrbitPartition out;
    out.permutations = junction_permutations(junctions, group, tol);

    const std::size_t n = junctions.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& perm : out.permutations) {
        for (std::size_t j = 0; j < n; ++j) {
            const int r1 = find(static_cast<int>(j));
            const int r2 = find(perm[j]);
            if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
        }
    }
    out.class_of.assign(n, -1);
    std::map<int, int> root_to_class;
    for (std::size_t j = 0; j < n; ++j) {
        const int r = find(static_cast<int>(j));
        auto [it, inserted] = root_to_class.try_emplace(r, static_cast<int>(out.classes.size()));
        if (inserted) out.classes.emplace_back();
        out.classes[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(j));
        out.class_of[j] = it->second;
    }
    return out;
}

}  // namespace kolam
