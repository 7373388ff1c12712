#include "kolam/error.hpp"
#include "kolam/point_group.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kolam;
using namespace kolam::testing;

namespace {

// Runs every assignment of a parent through the full pipeline and checks
// M1-M3 plus the combinatorial oracle. Returns the number of kolams.
int check_every_kolam(std::shared_ptr<const ParentKolam> p, const std::string& what) {
    int n = 0;
    enumerate_assignments(p, {}, [&](const EnumeratedKolam& e) {
        const ValidationReport& r = e.kolam.report;
        EXPECT_TRUE(r.m1_pass && r.m2_pass && r.m3_pass) << what << " " << e.assignment.str();
        EXPECT_EQ(r.orbit_count, oracle_orbit_count(*p, e.assignment)) << what << " " << e.assignment.str();
        EXPECT_EQ(r.crossing_count, oracle_crossing_count(e.assignment));
        ++n;
        return !::testing::Test::HasFailure();
    });
    return n;
}

std::vector<Point> random_points(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
        const Point p(u(rng), u(rng));
        bool ok = true;
        for (const Point& q : pts) ok = ok && (p - q).norm() > 1e-3;
        if (ok) pts.push_back(p);
    }
    return pts;
}

}  // namespace

TEST(UniversalValidity, NamedParents) {
    for (const char* name : {"one", "two", "triangle", "line3", "line4", "square", "triangle_center"}) {
        for (const char* policy : {"all-pairs", "nn", "cutoff=2.5"}) {
            const std::string what = std::string(name) + " " + policy;
            const auto p = load_parent(name, policy);
            EXPECT_EQ(check_every_kolam(p, what), static_cast<int>(count_symmetric(static_cast<int>(p->junctions.size()), 3)))
                << what;
            if (HasFailure()) return;
        }
    }
}

TEST(UniversalValidity, RandomParents) {
    std::mt19937_64 rng(2024);
    int built = 0, refused = 0;
    const std::vector<std::pair<int, int>> plan{{2, 10}, {3, 40}, {4, 10}};
    for (auto [n, trials] : plan) {
        for (int t = 0; t < trials; ++t) {
            const DotSet dots = DotSet::from_points(random_points(rng, n));
            for (const char* policy : {"all-pairs", "nn"}) {
                std::shared_ptr<const ParentKolam> p;
                try {
                    p = make_parent(dots, parse_policy_flag(policy));
                } catch (const KolamError& e) {
                    // Straight arms cannot always be threaded between crowded
                    // dots; that is an explicit refusal, never a bad kolam.
                    EXPECT_EQ(e.code(), "junction-placement-failed") << policy;
                    EXPECT_EQ(std::string(policy), "all-pairs");
                    ++refused;
                    continue;
                }
                ++built;
                check_every_kolam(p, "random N=" + std::to_string(n) + " " + policy);
                if (HasFailure()) return;
            }
        }
    }
    RecordProperty("parents_built", built);
    RecordProperty("parents_refused", refused);
    EXPECT_GE(built, 100);
}

TEST(UniversalValidity, AuditedCrossingsMatchBondsUpToThreeDots) {
    for (const char* name : {"two", "triangle", "line3"}) {
        const auto p = load_parent(name);
        enumerate_assignments(p, {}, [&](const EnumeratedKolam& e) {
            EXPECT_EQ(e.kolam.report.audited_crossings, e.kolam.report.crossing_count) << name << " " << e.assignment.str();
            return true;
        });
    }
}

TEST(SmoothingPreservation, EveryKolamUpToThreeDots) {
    std::vector<std::pair<std::string, std::string>> parents;
    for (const char* name : {"one", "two", "triangle", "line3"}) {
        for (const char* policy : {"all-pairs", "nn"}) parents.emplace_back(name, policy);
    }
    for (const auto& [name, policy] : parents) {
        const auto p = load_parent(name, policy);
        const Realizer realizer(p);
        for (const BondAssignment& a : all_assignments(p->junctions.size())) {
            const StrandDiagram d = resolve(p, a);
            const auto orbits = trace_orbits(d);
            const auto raw = realizer.realize(d, orbits);
            const auto smoothed = smooth_curves(raw, 3, p->dots);
            const std::string what = name + " " + policy + " " + a.str();
            ASSERT_EQ(smoothed.size(), raw.size()) << what;
            EXPECT_EQ(static_cast<int>(smoothed.size()), static_cast<int>(orbits.size()));
            EXPECT_EQ(brute_force_crossings(smoothed), brute_force_crossings(raw)) << what;
            EXPECT_EQ(brute_force_crossings(smoothed), d.crossing_count()) << what;
            EXPECT_EQ(ray_windings(smoothed, p->dots), ray_windings(raw, p->dots)) << what;
        }
    }
}

TEST(Invariance, RigidMotionKeepsEveryKolam) {
    const DotSet dots = load_dots("triangle_center");
    const auto base = make_parent(dots, {});
    for (const auto& [linear, offset] : {std::pair{Eigen::Matrix2d(rotation2<double>(0.4)), Point(2, -1)},
                                         std::pair{Eigen::Matrix2d(7.5 * reflection2<double>(1.3)), Point(0, 0)}}) {
        const auto moved = make_parent(dots.transformed(linear, offset), {});
        ASSERT_EQ(moved->junctions.size(), base->junctions.size());
        const AssignmentSpace space(base->junctions, {}, 1e-9);
        for (std::uint64_t i = 0; i < space.size_u64(); i += 7) {
            const BondAssignment a = space.at(i);
            const Generated g0 = generate(base, a);
            const Generated g1 = generate(moved, a);
            EXPECT_EQ(g1.kolam.report.orbit_count, g0.kolam.report.orbit_count);
            EXPECT_EQ(g1.kolam.report.audited_crossings, g0.kolam.report.audited_crossings);
            EXPECT_TRUE(g1.kolam.report.m1_pass && g1.kolam.report.m2_pass && g1.kolam.report.m3_pass);
            // A reflection reverses orientation and can reorder the orbits,
            // so compare the sorted rows of winding magnitudes.
            auto w0 = ray_windings(g0.curves, base->dots);
            auto w1 = ray_windings(g1.curves, moved->dots);
            for (auto* w : {&w0, &w1}) {
                for (auto& row : *w) for (int& x : row) x = std::abs(x);
                std::sort(w->begin(), w->end());
            }
            EXPECT_EQ(w1, w0) << a.str();
        }
    }
}

TEST(Invariance, RelabelingKeepsTheProfile) {
    const DotSet dots = DotSet::from_points({{0, 0}, {2, 0.3}, {0.7, 1.9}, {1.2, 0.8}});
    const auto profile = census_profile(make_parent(dots, {}));
    for (const std::vector<int> perm : {std::vector<int>{3, 1, 0, 2}, std::vector<int>{2, 3, 1, 0}}) {
        std::vector<Point> pts;
        for (int i : perm) pts.push_back(dots.pos(i));
        EXPECT_EQ(census_profile(make_parent(DotSet::from_points(pts), {})), profile);
    }
}

TEST(Equivariance, SymmetricImagesShareOrbitAndCrossingCounts) {
    for (const char* name : {"triangle", "triangle_center", "square"}) {
        const auto p = load_parent(name);
        const PointGroup group = detect_point_group(p->dots);
        const auto perms = junction_permutations(p->junctions, group, p->dots.symmetry_tolerance());
        for (const BondAssignment& a : all_assignments(p->junctions.size())) {
            const int orbits = oracle_orbit_count(*p, a);
            for (const auto& perm : perms) {
                BondAssignment img = a;
                for (std::size_t j = 0; j < a.size(); ++j) img.bonds[static_cast<std::size_t>(perm[j])] = a[j];
                const StrandDiagram d = resolve(p, img);
                ASSERT_EQ(static_cast<int>(trace_orbits(d).size()), orbits) << name << " " << a.str();
                ASSERT_EQ(d.crossing_count(), oracle_crossing_count(a));
            }
        }
    }
}

TEST(Equivariance, SymmetricKolamsDrawTheGroup) {
    const auto p = load_parent("triangle");
    const PointGroup group = detect_point_group(p->dots);
    for (const char* a : {"BBB", "DDD", "XXX"}) {
        const Generated g = generate(p, parse_assignment(a, 3));
        // The union of all curve vertices maps onto itself under each rotation.
        std::vector<Point> pts;
        for (const Curve& c : g.curves) {
            for (Eigen::Index i = 0; i < c.size(); ++i) pts.push_back(c.points.col(i));
        }
        for (const GroupElement& e : group.elements) {
            if (e.reflection) continue;
            double worst = 0;
            for (std::size_t i = 0; i < pts.size(); i += 17) {
                const Point img = group.apply(e, pts[i]);
                double best = std::numeric_limits<double>::infinity();
                for (const Curve& c : g.curves) best = std::min(best, polyline_distance<double>(img, c.points));
                worst = std::max(worst, best);
            }
            EXPECT_LT(worst, 1e-3) << a;
        }
    }
}
