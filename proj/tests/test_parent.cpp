#include "kolam/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace kolam;
using namespace kolam::testing;

namespace {

void expect_rotation_invariants(const ParentKolam& p) {
    std::multiset<EndId> seen;
    std::size_t arcs = 0;
    for (std::size_t d = 0; d < p.rotation.size(); ++d) {
        for (EndId e : p.rotation[d]) {
            seen.insert(e);
            EXPECT_EQ(p.end_dot[static_cast<std::size_t>(e)], static_cast<int>(d));
        }
        arcs += p.boundary_arcs[d].size();
        EXPECT_EQ(p.boundary_arcs[d].size(), p.rotation[d].size());
        for (std::size_t k = 0; k < p.boundary_arcs[d].size(); ++k) {
            EXPECT_EQ(p.boundary_arcs[d][k].kind, k % 2 == 0 ? ArcKind::Tip : ArcKind::Sweep);
        }
    }
    EXPECT_EQ(seen.size(), p.end_count());
    EXPECT_EQ(std::set<EndId>(seen.begin(), seen.end()).size(), p.end_count());
    EXPECT_EQ(arcs, p.end_count());
    for (std::size_t e = 0; e < p.end_count(); ++e) {
        const EndId s = p.sweep_partner[e];
        EXPECT_EQ(p.sweep_partner[static_cast<std::size_t>(s)], static_cast<EndId>(e));
        EXPECT_EQ(p.end_dot[static_cast<std::size_t>(s)], p.end_dot[e]);
    }
}

}  // namespace

TEST(Parent, TwoDots) {
    const auto p = load_parent("two");
    ASSERT_EQ(p->rotation.size(), 2u);
    for (std::size_t d = 0; d < 2; ++d) {
        EXPECT_EQ(p->rotation[d].size(), 2u);
        ASSERT_EQ(p->boundary_arcs[d].size(), 2u);
        EXPECT_EQ(p->boundary_arcs[d][0].kind, ArcKind::Tip);
        EXPECT_EQ(p->boundary_arcs[d][1].kind, ArcKind::Sweep);
    }
    expect_rotation_invariants(*p);
}

TEST(Parent, SingleDotHasNoEnds) {
    const auto p = load_parent("one");
    ASSERT_EQ(p->rotation.size(), 1u);
    EXPECT_TRUE(p->rotation[0].empty());
    EXPECT_EQ(p->end_count(), 0u);
}

TEST(Parent, SquareRotationLengths) {
    const auto p = load_parent("square");
    for (const auto& rot : p->rotation) EXPECT_EQ(rot.size(), 6u);
    EXPECT_EQ(p->end_count(), 24u);
    expect_rotation_invariants(*p);
}

TEST(Parent, CollinearDotsEachHaveTwoArms) {
    // The long pair's junction is not incident to the middle dot; its arms
    // pass around it. Rotation lengths must add up to 4 x 3 junctions.
    const auto p = load_parent("line3");
    EXPECT_EQ(p->rotation[0].size(), 4u);
    EXPECT_EQ(p->rotation[1].size(), 4u);
    EXPECT_EQ(p->rotation[2].size(), 4u);
    expect_rotation_invariants(*p);
}

TEST(Parent, ArmsAreCounterClockwise) {
    const auto p = load_parent("square");
    // Dot 0 at the origin sees dot 1 (east), then the diagonal, then dot 3 (north).
    const std::vector<int> arms = p->arms(0);
    ASSERT_EQ(arms.size(), 3u);
    auto other = [&](int j) {
        const Junction& jn = p->junctions[static_cast<std::size_t>(j)];
        return jn.a == 0 ? jn.b : jn.a;
    };
    const std::vector<int> seq{other(arms[0]), other(arms[1]), other(arms[2])};
    const auto it = std::find(seq.begin(), seq.end(), 1);
    ASSERT_NE(it, seq.end());
    const std::size_t k = static_cast<std::size_t>(it - seq.begin());
    EXPECT_EQ(seq[(k + 1) % 3], 2);
    EXPECT_EQ(seq[(k + 2) % 3], 3);
}

TEST(Parent, InvariantsOnAllFixtures) {
    for (const char* name : {"one", "two", "triangle", "line3", "line4", "square", "triangle_center", "five"}) {
        for (const char* policy : {"all-pairs", "nn"}) {
            SCOPED_TRACE(std::string(name) + " " + policy);
            expect_rotation_invariants(*load_parent(name, policy));
        }
    }
}

TEST(Parent, IsolatedDotIsRejected) {
    try {
        make_parent(DotSet::from_points({{0, 0}, {1, 0}, {10, 0}}), parse_policy_flag("cutoff=2"));
        FAIL() << "expected isolated-dot";
    } catch (const KolamError& e) {
        EXPECT_EQ(e.code(), "isolated-dot");
    }
}

TEST(Parent, SmallPerturbationKeepsTheRotation) {
    const DotSet dots = load_dots("triangle_center");
    const auto base = make_parent(dots, {});
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    const double eps = dots.symmetry_tolerance() / 10.0 / std::sqrt(2.0);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Point> pts;
        for (const Dot& d : dots) pts.push_back(d.pos + eps * Point(jitter(rng), jitter(rng)));
        const auto p = make_parent(DotSet::from_points(pts), {});
        EXPECT_EQ(p->rotation, base->rotation);
    }
}

TEST(Signature, HomotopicThreeDotParents) {
    EXPECT_EQ(parent_signature(*load_parent("line3")), parent_signature(*load_parent("triangle")));
}

TEST(Signature, LineAndSquareUnderAllPairs) {
    EXPECT_EQ(parent_signature(*load_parent("line4")), parent_signature(*load_parent("square")));
}

TEST(Signature, TriangleWithCenterIsDistinctFromSquare) {
    EXPECT_NE(parent_signature(*load_parent("triangle_center")), parent_signature(*load_parent("square")));
}

TEST(Signature, NearestNeighborLineDiffersFromCycle) {
    EXPECT_NE(parent_signature(*load_parent("line4", "nn")), parent_signature(*load_parent("square", "nn")));
}

TEST(Signature, InvariantUnderRigidMotionAndScale) {
    for (const char* name : {"triangle", "square", "triangle_center", "five"}) {
        const DotSet dots = load_dots(name);
        const auto sig = parent_signature(*make_parent(dots, {}));
        EXPECT_EQ(parent_signature(*make_parent(dots.transformed(2.5 * rotation2<double>(1.1), Point(3, -2)), {})), sig)
            << name;
        EXPECT_EQ(parent_signature(*make_parent(dots.transformed(reflection2<double>(0.3), Point(0, 0)), {})), sig)
            << name;
    }
}

TEST(Signature, InvariantUnderRelabeling) {
    const DotSet dots = DotSet::from_points({{0, 0}, {2, 0.3}, {0.7, 1.9}, {1.2, 0.8}});
    const auto sig = parent_signature(*make_parent(dots, {}));
    std::vector<int> perm{0, 1, 2, 3};
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<Point> pts;
        for (int i : perm) pts.push_back(dots.pos(i));
        EXPECT_EQ(parent_signature(*make_parent(DotSet::from_points(pts), {})), sig);
    }
}
