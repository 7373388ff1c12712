// Acceptance gate: one PASS/FAIL line per primary criterion. Exit status is
// non-zero when any line fails.

#include "kolam/engine.hpp"
#include "kolam/error.hpp"
#include "kolam/point_group.hpp"
#include "kolam/service.hpp"
#include "support.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <unistd.h>

using namespace kolam;
using namespace kolam::testing;

namespace {

// Pinned tolerances.
constexpr double kAuditTolerance = 1e-6;    // x curve bounding-box diagonal
constexpr double kRuntimeBudgetSeconds = 10.0;
constexpr int kRandomConfigsPerSize = 25;   // random N = 2, 3, 4 dot sets per policy

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int number, const std::string& name, Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << number << "] " << name << ":" << o.detail.str() << std::endl;
    if (!o.pass) ++failures;
}

template <typename F>
void criterion(int number, const std::string& name, F&& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception ") + e.what());
    }
    report(number, name, o);
}

bool all_valid(const ValidationReport& r) { return r.m1_pass && r.m2_pass && r.m3_pass; }

// Enumerates everything under the constraints; returns (count, all valid).
std::pair<std::uint64_t, bool> enumerate_all(std::shared_ptr<const ParentKolam> p, const EnumerationConstraints& c = {}) {
    bool ok = true;
    const std::uint64_t n = enumerate_assignments(p, c, [&](const EnumeratedKolam& e) {
        ok = ok && all_valid(e.kolam.report) && e.kolam.report.orbit_count == oracle_orbit_count(*p, e.assignment);
        return true;
    });
    return {n, ok};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string request_body(const std::string& name, const Json& extra) {
    std::ifstream in(data_path(name));
    Json r = Json::object();
    r["dots"] = Json::parse(in)["dots"];
    for (const auto& [k, v] : extra.items()) r[k] = v;
    return r.dump();
}

}  // namespace

int main() {
    criterion(1, "kolam counts b^(JN(N-1)/2) and exhaustive enumeration", [](Outcome& o) {
        const auto start = std::chrono::steady_clock::now();
        const std::vector<std::pair<const char*, int>> cases{{"two", 2}, {"triangle", 3}, {"square", 4}};
        const std::vector<long> expected{3, 27, 729};
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto [name, n] = cases[i];
            const BigInt k = count_kolams(n, 1, 3);
            o.require(k == expected[i], std::string("count N=") + std::to_string(n));
            const auto [visited, ok] = enumerate_all(load_parent(name));
            o.require(BigInt(visited) == k, std::string("enumerated ") + name);
            o.require(ok, std::string("M1-M3 ") + name);
            o.detail << " N=" << n << " K=" << k << " enumerated=" << visited;
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs < kRuntimeBudgetSeconds, "runtime");
        o.detail << " time=" << secs << "s";
    });

    criterion(2, "symmetry-reduced counts K=b^g", [](Outcome& o) {
        struct Case {
            const char* name;
            const char* policy;
            int g;
            int k;
        };
        for (const Case c : {Case{"square", "all-pairs", 2, 9}, Case{"triangle_center", "all-pairs", 2, 9},
                             Case{"line4", "cutoff=2.5", 3, 27}}) {
            const auto p = load_parent(c.name, c.policy);
            EnumerationConstraints con;
            con.symmetric_under = detect_point_group(p->dots);
            const AssignmentSpace space(p->junctions, con, p->dots.symmetry_tolerance());
            const auto [visited, ok] = enumerate_all(p, con);
            o.require(space.g() == c.g, std::string("g ") + c.name);
            o.require(space.size() == c.k && visited == static_cast<std::uint64_t>(c.k), std::string("K ") + c.name);
            o.require(ok, std::string("M1-M3 ") + c.name);
            o.detail << ' ' << c.name << '(' << con.symmetric_under->name() << ", " << c.policy << ") g=" << space.g()
                     << " K=" << visited;
        }
        const Json census = engine::enumerate(Json::parse(
            request_body("line4", {{"policy", "cutoff=2.5"}, {"symmetric", true}, {"geometric", false}, {"page_size", 1}})));
        const bool noted = census["provenance"]["policy"]["mode"] == "cutoff" && !census["provenance"]["notes"].empty();
        o.require(noted, "cutoff policy recorded in provenance");
        o.detail << " provenance=" << census["provenance"]["policy"].dump();
    });

    criterion(3, "two-dot bond semantics", [](Outcome& o) {
        const auto p = load_parent("two");
        struct Case {
            const char* bond;
            int orbits, crossings;
        };
        for (const Case c : {Case{"B", 2, 0}, Case{"D", 1, 0}, Case{"X", 1, 1}}) {
            const BondAssignment a = parse_assignment(c.bond, 1);
            const Generated g = generate(p, a);
            const auto [lo, hi] = curves_bbox(g.curves);
            const double tol = kAuditTolerance * (hi - lo).norm();
            const CurveAudit audit = audit_curves(g.curves, tol);
            const auto w = ray_windings(g.curves, p->dots);
            o.require(g.kolam.report.orbit_count == c.orbits && oracle_orbit_count(*p, a) == c.orbits,
                      std::string(c.bond) + " orbits");
            o.require(g.kolam.report.crossing_count == c.crossings, std::string(c.bond) + " crossings");
            o.require(static_cast<int>(g.curves.size()) == c.orbits, std::string(c.bond) + " curves");
            o.require(audit.crossing_count() == c.crossings && brute_force_crossings(g.curves) == c.crossings &&
                          audit.tangencies == 0 && audit.overlaps == 0,
                      std::string(c.bond) + " audit");
            for (std::size_t d = 0; d < 2; ++d) {
                int circled = 0;
                for (const auto& row : w) circled += std::abs(row[d]) == 1;
                o.require(circled == 1, std::string(c.bond) + " winding");
            }
            o.require(all_valid(g.kolam.report), std::string(c.bond) + " M1-M3");
            o.detail << ' ' << c.bond << ": orbits=" << g.kolam.report.orbit_count
                     << " crossings=" << g.kolam.report.crossing_count << " audited=" << audit.crossing_count();
        }
    });

    criterion(4, "type classification of the equilateral triangle", [](Outcome& o) {
        const auto p = load_parent("triangle");
        const PointGroup group = detect_point_group(p->dots);
        const AssignmentSpace space(p->junctions, {}, 1e-9);
        std::vector<BondAssignment> every;
        for (std::uint64_t i = 0; i < space.size_u64(); ++i) every.push_back(space.at(i));
        const auto types = classify_types(p->junctions, every, group, p->dots.symmetry_tolerance());
        int total = 0, b2x = -1;
        for (const KolamType& t : types) {
            total += t.multiplicity;
            if (t.label == "B2X") b2x = t.multiplicity;
        }
        const int burnside = (27 + 3 * 9 + 2 * 3) / 6;
        o.require(group.name() == "D3", "group");
        o.require(static_cast<int>(types.size()) == burnside, "class count");
        o.require(total == 27, "total");
        o.require(b2x == 3, "B2X multiplicity");
        o.detail << " group=" << group.name() << " classes=" << types.size() << " (Burnside " << burnside
                 << ") total=" << total << " B2X=" << b2x;
    });

    criterion(5, "parent signatures as a homotopy proxy", [](Outcome& o) {
        const auto line3 = load_parent("line3"), triangle = load_parent("triangle");
        const bool same3 = parent_signature(*line3) == parent_signature(*triangle);
        const bool profiles = census_profile(line3) == census_profile(triangle);
        const bool distinct4 =
            parent_signature(*load_parent("triangle_center")) != parent_signature(*load_parent("square"));
        const bool line_square = parent_signature(*load_parent("line4")) == parent_signature(*load_parent("square"));
        o.require(same3, "line3 vs triangle signature");
        o.require(profiles, "line3 vs triangle profile");
        o.require(distinct4, "triangle+center vs square");
        o.detail << " line3==triangle:" << same3 << " profiles-equal:" << profiles
                 << " triangle+center!=square:" << distinct4 << " (line4==square all-pairs:" << line_square << ")";
    });

    criterion(6, "universal validity for N <= 4", [](Outcome& o) {
        std::uint64_t kolams = 0;
        int parents = 0, refused = 0;
        auto run = [&](std::shared_ptr<const ParentKolam> p, const std::string& what) {
            const auto [n, ok] = enumerate_all(p);
            kolams += n;
            ++parents;
            o.require(ok, what);
        };
        for (const char* name : {"one", "two", "triangle", "line3", "line4", "square", "triangle_center"}) {
            for (const char* policy : {"all-pairs", "nn"}) run(load_parent(name, policy), std::string(name) + " " + policy);
        }
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int n = 2; n <= 4; ++n) {
            for (int t = 0; t < kRandomConfigsPerSize; ++t) {
                std::vector<Point> pts;
                for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
                const DotSet dots = DotSet::from_points(pts);
                for (const char* policy : {"all-pairs", "nn"}) {
                    std::shared_ptr<const ParentKolam> p;
                    try {
                        p = make_parent(dots, parse_policy_flag(policy));
                    } catch (const KolamError& e) {
                        o.require(e.code() == "junction-placement-failed", e.code());
                        ++refused;
                        continue;
                    }
                    run(p, "random N=" + std::to_string(n) + " " + policy);
                }
            }
        }
        o.detail << " parents=" << parents << " kolams=" << kolams << " failures=" << (o.pass ? 0 : 1)
                 << " random parents refused at junction placement=" << refused;
    });

    criterion(7, "smoothing preserves orbits, crossings and windings for N <= 3", [](Outcome& o) {
        std::uint64_t checked = 0;
        for (const char* name : {"one", "two", "triangle", "line3"}) {
            for (const char* policy : {"all-pairs", "nn"}) {
                const auto p = load_parent(name, policy);
                const Realizer realizer(p);
                for (const BondAssignment& a : all_assignments(p->junctions.size())) {
                    const StrandDiagram d = resolve(p, a);
                    const auto orbits = trace_orbits(d);
                    const auto raw = realizer.realize(d, orbits);
                    const auto smoothed = smooth_curves(raw, 3, p->dots);
                    const auto [lo, hi] = curves_bbox(raw);
                    const double tol = kAuditTolerance * (hi - lo).norm();
                    const std::string what = std::string(name) + " " + policy + " " + a.str();
                    o.require(smoothed.size() == raw.size() && smoothed.size() == orbits.size(), what + " orbits");
                    o.require(audit_curves(smoothed, tol).crossing_count() == audit_curves(raw, tol).crossing_count(),
                              what + " crossings");
                    o.require(ray_windings(smoothed, p->dots) == ray_windings(raw, p->dots), what + " windings");
                    ++checked;
                }
            }
        }
        o.detail << " kolams=" << checked;
    });

    criterion(8, "byte-identical output across runs, CLI and service", [](Outcome& o) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("kolam_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::string cli = KOLAM_CLI_PATH;
        auto run = [&](const std::string& args) {
            return std::system((cli + " " + args + " > /dev/null 2>&1").c_str()) == 0;
        };
        const std::string tc = data_path("triangle_center"), square = data_path("square");
        for (int round = 1; round <= 2; ++round) {
            const std::string r = std::to_string(round);
            o.require(run("enumerate --dots " + square + " --census " + (dir / ("census" + r + ".csv")).string()),
                      "cli census");
            o.require(run("generate --dots " + tc + " --seed 7 --doc " + (dir / ("doc" + r + ".json")).string() +
                          " --svg " + (dir / ("doc" + r + ".svg")).string()),
                      "cli generate");
        }
        const std::string csv = read_file((dir / "census1.csv").string());
        const std::string doc = read_file((dir / "doc1.json").string());
        const std::string svg = read_file((dir / "doc1.svg").string());
        o.require(!csv.empty() && csv == read_file((dir / "census2.csv").string()), "census across runs");
        o.require(!doc.empty() && doc == read_file((dir / "doc2.json").string()), "document across runs");
        o.require(!svg.empty() && svg == read_file((dir / "doc2.svg").string()), "svg across runs");

        Service service;
        const int port = service.bind_any_port("127.0.0.1");
        std::thread t([&] { service.serve(); });
        for (int i = 0; i < 200 && !service.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
        httplib::Client client("127.0.0.1", port);
        client.set_read_timeout(120, 0);
        const auto c = client.Post("/v1/enumerate", request_body("square", {{"format", "csv"}, {"page_size", 1024}}),
                                   "application/json");
        const auto d = client.Post("/v1/kolam", request_body("triangle_center", {{"seed", 7}}), "application/json");
        const auto s = client.Post("/v1/kolam", request_body("triangle_center", {{"seed", 7}, {"format", "svg"}}),
                                   "application/json");
        service.stop();
        t.join();
        o.require(c && c->status == 200 && c->body == csv, "census CLI vs service");
        o.require(d && d->status == 200 && d->body == doc, "document CLI vs service");
        o.require(s && s->status == 200 && s->body == svg, "svg CLI vs service");
        o.detail << " census=" << csv.size() << "B document=" << doc.size() << "B svg=" << svg.size() << "B";
        fs::remove_all(dir);
    });

    return failures == 0 ? 0 : 1;
}
