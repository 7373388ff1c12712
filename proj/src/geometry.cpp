#include "kolam/geometry.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <limits>
#include <numbers>

namespace kolam {

DotSet::DotSet(std::vector<Dot> dots) : dots_(std::move(dots)) {
    std::sort(dots_.begin(), dots_.end(), [](const Dot& l, const Dot& r) { return l.id < r.id; });
    for (std::size_t i = 0; i < dots_.size(); ++i) {
        if (dots_[i].id != static_cast<int>(i)) {
            throw KolamError("bad-dot-ids", "dot ids must be unique and contiguous from 0");
        }
        if (!dots_[i].pos.allFinite()) {
            throw KolamError("non-finite-dot", "dot " + std::to_string(i) + " has a non-finite coordinate");
        }
    }
    const double tol = coincidence_tolerance();
    for (std::size_t i = 0; i < dots_.size(); ++i) {
        for (std::size_t j = i + 1; j < dots_.size(); ++j) {
            if ((dots_[i].pos - dots_[j].pos).norm() <= tol) {
                throw KolamError("coincident-dots", "dots " + std::to_string(i) + " and " +
                                                        std::to_string(j) + " coincide");
            }
        }
    }
}

DotSet DotSet::from_points(const std::vector<Point>& points) {
    std::vector<Dot> dots;
    dots.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) dots.push_back({static_cast<int>(i), points[i]});
    return DotSet(std::move(dots));
}

Eigen::Matrix2Xd DotSet::positions() const {
    Eigen::Matrix2Xd m(2, static_cast<Eigen::Index>(dots_.size()));
    for (std::size_t i = 0; i < dots_.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = dots_[i].pos;
    return m;
}

Point DotSet::centroid() const {
    if (dots_.empty()) return Point::Zero();
    return positions().rowwise().mean();
}

double DotSet::bbox_diagonal() const {
    if (dots_.empty()) return 0.0;
    const Eigen::Matrix2Xd m = positions();
    return (m.rowwise().maxCoeff() - m.rowwise().minCoeff()).norm();
}

double DotSet::scale() const {
    const double d = bbox_diagonal();
    return d > 0.0 ? d : 1.0;
}

double DotSet::nearest_neighbor_distance(int id) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Dot& d : dots_) {
        if (d.id == id) continue;
        best = std::min(best, (d.pos - pos(id)).norm());
    }
    return std::isfinite(best) ? best : scale();
}

DotSet DotSet::transformed(const Eigen::Matrix2d& linear, const Point& offset) const {
    std::vector<Dot> out = dots_;
    for (Dot& d : out) d.pos = linear * d.pos + offset;
    return DotSet(std::move(out));
}

void JunctionPolicy::validate() const {
    if (junctions_per_pair < 1) {
        throw KolamError("bad-junctions-per-pair", "junctions_per_pair must be >= 1");
    }
    if (mode == JunctionMode::Cutoff && !(cutoff_distance > 0.0)) {
        throw KolamError("bad-cutoff", "cutoff_distance must be positive");
    }
}

std::string JunctionPolicy::mode_name() const {
    switch (mode) {
        case JunctionMode::AllPairs: return "all-pairs";
        case JunctionMode::NearestNeighbor: return "nearest-neighbor";
        case JunctionMode::Cutoff: return "cutoff";
    }
    return "all-pairs";
}

JunctionMode parse_junction_mode(const std::string& name) {
    if (name == "all-pairs") return JunctionMode::AllPairs;
    if (name == "nearest-neighbor" || name == "nn") return JunctionMode::NearestNeighbor;
    if (name == "cutoff") return JunctionMode::Cutoff;
    throw SchemaError("bad-policy-mode", "unknown junction policy mode '" + name + "'");
}

std::string end_label(EndId e) {
    static constexpr const char* names[] = {"aL", "aR", "bL", "bR"};
    return std::to_string(end_junction(e)) + ":" + names[e % 4];
}

Point Junction::direction() const {
    // Recoverable from the ends: b-side ends sit ahead of a-side ends.
    const Point d = (ends[2] + ends[3]) - (ends[0] + ends[1]);
    return d.normalized();
}

std::vector<std::pair<int, int>> active_pairs(const DotSet& dots, const JunctionPolicy& policy) {
    policy.validate();
    const int n = static_cast<int>(dots.size());
    const double rel = 1e-6;
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double d = (dots.pos(a) - dots.pos(b)).norm();
            bool on = false;
            switch (policy.mode) {
                case JunctionMode::AllPairs: on = true; break;
                case JunctionMode::NearestNeighbor: {
                    // d >= both nearest-neighbor distances, so this activates
                    // the pair iff it is a nearest pair for a or for b.
                    const double nn = std::max(dots.nearest_neighbor_distance(a),
                                               dots.nearest_neighbor_distance(b));
                    on = d <= nn * (1.0 + rel);
                    break;
                }
                case JunctionMode::Cutoff:
                    on = d <= policy.cutoff_distance * (1.0 + rel);
                    break;
            }
            if (on) out.emplace_back(a, b);
        }
    }
    return out;
}

namespace {

// Clearance parameters for junction placement, relative to the pair
// distances involved.
constexpr double kDotClearance = 1.25;     // x squishy radius
constexpr double kJunctionSeparation = 0.12;
constexpr double kArmClearance = 0.08;
constexpr double kMinArmAngle = 4.0 * std::numbers::pi / 180.0;
constexpr double kStepRatio = 0.02;
constexpr double kMaxObliqueness = 50.0 * std::numbers::pi / 180.0;
constexpr int kMaxRounds = 5000;

struct Draft {
    int a, b, slot;
    double dist;
    Point mid, u, n;
    double slot_offset;
    double extra = 0.0;
    int side = 0;  // direction of displacement along n, fixed at the first move

    Point nominal() const { return mid + slot_offset * n; }
    double offset() const { return slot_offset + side * extra; }
    Point at() const { return mid + offset() * n; }
    // Moving away from an obstacle: the side of the line ab opposite to it.
    int away_from(const Point& p) const {
        const double s = (p - mid).dot(n);
        const double eps = 1e-9 * dist;
        return s > eps ? -1 : (s < -eps ? 1 : 0);
    }
};

double angle_between(const Point& u, const Point& v) {
    return std::abs(std::atan2(cross2<double>(u, v), u.dot(v)));
}

}  // namespace

JunctionSet build_junctions(const DotSet& dots, const JunctionPolicy& policy) {
    if (dots.empty()) throw KolamError("empty-dot-set", "the dot set is empty");
    policy.validate();

    const int slots = policy.junctions_per_pair;
    std::vector<Draft> drafts;
    for (const auto& [a, b] : active_pairs(dots, policy)) {
        const Point pa = dots.pos(a);
        const Point pb = dots.pos(b);
        const double dist = (pb - pa).norm();
        const Point u = (pb - pa) / dist;
        const Point n = left_normal<double>(u);
        const double s = kSlotSpacingRatio * dist;
        // Odd J: 0, +-s, +-2s ...; even J: +-s, +-2s ...
        std::vector<double> offsets;
        if (slots % 2 == 1) offsets.push_back(0.0);
        for (int k = 1; k <= slots / 2; ++k) {
            offsets.push_back(-k * s);
            offsets.push_back(k * s);
        }
        std::sort(offsets.begin(), offsets.end());
        for (int k = 0; k < slots; ++k) {
            drafts.push_back({a, b, k, dist, 0.5 * (pa + pb), u, n, offsets[static_cast<std::size_t>(k)]});
        }
    }

    const std::size_t count = drafts.size();
    std::vector<double> radius(dots.size());
    for (std::size_t i = 0; i < dots.size(); ++i) radius[i] = dots.squishy_radius(static_cast<int>(i));

    auto arm_distance = [&](const Point& p, const Draft& d) {
        const Point at = d.at();
        return std::min(segment_distance<double>(p, dots.pos(d.a), at),
                        segment_distance<double>(p, dots.pos(d.b), at));
    };

    // Junctions move one step per round along their normal until every
    // clearance holds. Each picks its side at the first move, away from what
    // it collides with. Returns the junction that ran out of room, if any.
    auto relax = [&]() -> std::optional<std::size_t> {
    for (int round = 0;; ++round) {
        std::vector<char> move(count, 0);
        bool any = false;
        auto mark = [&](std::size_t i, int side = 0) {
            move[i] = 1;
            any = true;
            if (drafts[i].side == 0) drafts[i].side = side;
        };
        // A pair of junctions too close together (shared == -1) or whose arms
        // are too close in angle at a shared dot.
        struct Tie {
            std::size_t i, k;
            int shared;
        };
        std::vector<Tie> ties;

        for (std::size_t i = 0; i < count; ++i) {
            const Draft& d = drafts[i];
            const Point p = d.at();
            for (const Dot& c : dots) {
                if (c.id == d.a || c.id == d.b) continue;
                const double clear = kDotClearance * radius[static_cast<std::size_t>(c.id)];
                if ((p - c.pos).norm() < clear || arm_distance(c.pos, d) < clear) {
                    mark(i, d.away_from(c.pos));
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t k = i + 1; k < count; ++k) {
                const Draft& di = drafts[i];
                const Draft& dk = drafts[k];
                const Point pi = di.at();
                const Point pk = dk.at();
                const double scale = std::min(di.dist, dk.dist);
                if ((pi - pk).norm() < kJunctionSeparation * scale) ties.push_back({i, k, -1});
                if (arm_distance(pk, di) < kArmClearance * scale) mark(i, di.away_from(pk));
                if (arm_distance(pi, dk) < kArmClearance * scale) mark(k, dk.away_from(pi));
                for (int shared : {di.a, di.b}) {
                    if (shared != dk.a && shared != dk.b) continue;
                    const Point s = dots.pos(shared);
                    if (angle_between(pi - s, pk - s) < kMinArmAngle) ties.push_back({i, k, shared});
                }
            }
        }
        // Ties are settled after the junctions' own moves are known, by
        // looking one step ahead: move the lower id, the higher id, or both,
        // whichever separates the pair most. Moving both blindly can keep two
        // junctions with similar normals in lockstep forever.
        for (const Tie& t : ties) {
            const Draft& di = drafts[t.i];
            const Draft& dk = drafts[t.k];
            auto side_of = [](const Draft& d, const Draft& other) {
                if (d.side != 0) return d.side;
                const int s = d.away_from(other.at());
                return s != 0 ? s : 1;
            };
            const int si = side_of(di, dk);
            const int sk = side_of(dk, di);
            auto ahead = [](const Draft& d, bool moving, int side) {
                return moving ? Point(d.at() + side * kStepRatio * d.dist * d.n) : d.at();
            };
            auto measure = [&](bool mi, bool mk) {
                const Point qi = ahead(di, mi, si);
                const Point qk = ahead(dk, mk, sk);
                if (t.shared < 0) return (qi - qk).norm() / std::min(di.dist, dk.dist);
                const Point s = dots.pos(t.shared);
                return angle_between(qi - s, qk - s);
            };
            const bool options[3][2] = {{true, static_cast<bool>(move[t.k])},
                                        {static_cast<bool>(move[t.i]), true},
                                        {true, true}};
            int best = 0;
            double best_value = measure(options[0][0], options[0][1]);
            for (int o = 1; o < 3; ++o) {
                const double v = measure(options[o][0], options[o][1]);
                if (v > best_value + 1e-12) {
                    best = o;
                    best_value = v;
                }
            }
            if (options[best][0]) mark(t.i, si);
            if (options[best][1]) mark(t.k, sk);
        }
        if (!any) return std::nullopt;
        if (round >= kMaxRounds) {
            throw KolamError("junction-placement-failed", "junction displacement did not converge");
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (!move[i]) continue;
            Draft& d = drafts[i];
            if (d.side == 0) d.side = 1;
            d.extra += kStepRatio * d.dist;
            if (std::atan(std::abs(d.offset()) / (0.5 * d.dist)) > kMaxObliqueness) return i;
        }
    }
    };

    // A junction that runs out of room is sent the other way and placement
    // starts over; a junction that fails on both sides is an error.
    const std::vector<Draft> initial = drafts;
    std::vector<int> forced(count, 0);
    for (;;) {
        drafts = initial;
        for (std::size_t i = 0; i < count; ++i) drafts[i].side = forced[i];
        const auto failed = relax();
        if (!failed) break;
        const Draft& d = drafts[*failed];
        if (forced[*failed] != 0) {
            throw KolamError("junction-placement-failed", "no clear position for junction between dots " +
                                                              std::to_string(d.a) + " and " + std::to_string(d.b));
        }
        forced[*failed] = -d.side;
    }


    JunctionSet out;
    out.policy = policy;
    out.incident.resize(dots.size());
    out.items.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Draft& d = drafts[i];
        Junction j;
        j.id = static_cast<int>(i);
        j.a = d.a;
        j.b = d.b;
        j.slot = d.slot;
        j.nominal = d.nominal();
        j.position = d.at();
        j.displacement = d.side * d.extra;
        j.displaced = d.extra > 0.0;
        j.pair_distance = d.dist;
        const double e = kEndOffsetRatio * d.dist * std::numbers::sqrt2 / 2.0;
        j.ends[0] = j.position - e * d.u + e * d.n;  // aL
        j.ends[1] = j.position - e * d.u - e * d.n;  // aR
        j.ends[2] = j.position + e * d.u + e * d.n;  // bL
        j.ends[3] = j.position + e * d.u - e * d.n;  // bR
        out.incident[static_cast<std::size_t>(d.a)].push_back(j.id);
        out.incident[static_cast<std::size_t>(d.b)].push_back(j.id);
        out.items.push_back(j);
    }
    return out;
}

}  // namespace kolam
