#include "kolam/document.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

namespace kolam {

std::shared_ptr<const ParentKolam> make_parent(const DotSet& dots, const JunctionPolicy& policy) {
    return std::make_shared<const ParentKolam>(build_parent(dots, build_junctions(dots, policy)));
}

Generated generate(std::shared_ptr<const ParentKolam> parent, const BondAssignment& assignment, const Style& style,
                   const ValidationOptions& validation) {
    style.validate();
    Generated g;
    g.parent = parent;
    g.kolam.diagram = resolve(parent, assignment);
    g.kolam.orbits = trace_orbits(g.kolam.diagram);
    const Realizer realizer(parent, style);
    const std::vector<Curve> raw = realizer.realize(g.kolam.diagram, g.kolam.orbits);
    g.curves = smooth_curves(raw, style.smoothing_iterations, parent->dots);
    g.kolam.report = validate(g.kolam.diagram, g.kolam.orbits, g.curves, parent->dots, validation);
    return g;
}

BondAssignment random_assignment(std::size_t junction_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BondAssignment a;
    a.bonds.reserve(junction_count);
    for (std::size_t j = 0; j < junction_count; ++j) a.bonds.push_back(static_cast<BondType>(rng() % kBondKinds));
    return a;
}

KolamDocument build_document(const DotSet& dots, const JunctionPolicy& policy, const BondAssignment& assignment,
                             const Style& style, const ValidationOptions& validation,
                             std::optional<std::uint64_t> seed) {
    return build_document(make_parent(dots, policy), assignment, style, validation, seed);
}

KolamDocument build_document(std::shared_ptr<const ParentKolam> parent, const BondAssignment& assignment,
                             const Style& style, const ValidationOptions& validation,
                             std::optional<std::uint64_t> seed) {
    const DotSet& dots = parent->dots;
    const JunctionPolicy& policy = parent->junctions.policy;
    Generated g = generate(parent, assignment, style, validation);

    KolamDocument doc;
    doc.dots = dots;
    doc.curves = std::move(g.curves);
    doc.style = style;
    doc.provenance.original_dots = dots;
    doc.provenance.policy = policy;
    doc.provenance.assignment = assignment.str();
    doc.provenance.seed = seed;
    if (policy.mode == JunctionMode::Cutoff) {
        doc.provenance.notes.push_back("cutoff policy: only pairs at most cutoff_distance apart are joined");
    }
    doc.report = std::move(g.kolam.report);
    return doc;
}

std::vector<Curve> regenerate_curves(const KolamDocument& doc) {
    const auto parent = make_parent(doc.provenance.original_dots, doc.provenance.policy);
    const BondAssignment a = parse_assignment(doc.provenance.assignment, parent->junctions.size());
    return generate(parent, a, doc.style).curves;
}

std::string format_fixed6(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    std::string s(buf, res.ptr);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

namespace {

double length_unit(const DotSet& dots) {
    double unit = std::numeric_limits<double>::infinity();
    for (const Dot& d : dots) unit = std::min(unit, dots.nearest_neighbor_distance(d.id));
    return std::isfinite(unit) ? unit : 1.0;
}

}  // namespace

std::string emit_svg(const KolamDocument& doc) {
    if (doc.curves.empty() && doc.dots.empty()) throw KolamError("empty-document", "nothing to draw");
    const double unit = length_unit(doc.provenance.original_dots.empty() ? doc.dots : doc.provenance.original_dots);
    const double stroke = doc.style.stroke_width_ratio * unit;
    const double dot_r = doc.style.dot_radius_ratio * unit;

    auto [lo, hi] = curves_bbox(doc.curves);
    bool any = false;
    for (const Curve& c : doc.curves) any = any || c.points.cols() > 0;
    for (const Dot& d : doc.dots) {
        const Point r = Point::Constant(dot_r);
        if (!any) {
            lo = d.pos - r;
            hi = d.pos + r;
            any = true;
        }
        lo = lo.cwiseMin(d.pos - r);
        hi = hi.cwiseMax(d.pos + r);
    }
    const Point size = hi - lo;
    double margin = 0.05 * size.maxCoeff();
    if (!(margin > 0)) margin = 1.0;
    // y grows downward in SVG; negate it so the drawing keeps its orientation.
    const double vx = lo.x() - margin;
    const double vy = -hi.y() - margin;
    const double vw = size.x() + 2 * margin;
    const double vh = size.y() + 2 * margin;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << format_fixed6(vx) << ' '
       << format_fixed6(vy) << ' ' << format_fixed6(vw) << ' ' << format_fixed6(vh) << "\">\n";
    os << "<g fill=\"none\" stroke=\"" << doc.style.stroke_color << "\" stroke-width=\"" << format_fixed6(stroke)
       << "\" stroke-linejoin=\"round\">\n";
    for (const Curve& c : doc.curves) {
        if (c.points.cols() == 0) continue;
        os << "<path d=\"";
        for (Eigen::Index i = 0; i < c.points.cols(); ++i) {
            os << (i == 0 ? "M " : " L ") << format_fixed6(c.points(0, i)) << ' ' << format_fixed6(-c.points(1, i));
        }
        os << " Z\"/>\n";
    }
    os << "</g>\n";
    os << "<g fill=\"" << doc.style.dot_color << "\">\n";
    for (const Dot& d : doc.dots) {
        os << "<circle cx=\"" << format_fixed6(d.pos.x()) << "\" cy=\"" << format_fixed6(-d.pos.y()) << "\" r=\""
           << format_fixed6(dot_r) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

KolamDocument edit_dots(const KolamDocument& doc, const std::vector<DotEdit>& edits, const EditOptions& options) {
    const auto [lo, hi] = curves_bbox(doc.curves);
    const double tol = 1e-6 * std::max((hi - lo).norm(), 1e-12);

    std::vector<Point> pts;
    for (const Dot& d : doc.dots) pts.push_back(d.pos);
    std::vector<char> touched(pts.size(), 0);

    auto check_id = [&](int id) {
        if (id < 0 || static_cast<std::size_t>(id) >= pts.size()) {
            throw KolamError("unknown-dot", "no dot with id " + std::to_string(id));
        }
    };
    for (const DotEdit& e : edits) {
        switch (e.kind) {
            case DotEdit::Kind::Add:
                pts.push_back(e.at);
                touched.push_back(1);
                break;
            case DotEdit::Kind::Remove:
                check_id(e.id);
                pts.erase(pts.begin() + e.id);
                touched.erase(touched.begin() + e.id);
                break;
            case DotEdit::Kind::Move: {
                check_id(e.id);
                auto& p = pts[static_cast<std::size_t>(e.id)];
                const Point target = e.relative ? Point(p + e.at) : e.at;
                if (target != p) touched[static_cast<std::size_t>(e.id)] = 1;
                p = target;
                break;
            }
        }
    }

    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!touched[i]) continue;
        for (const Curve& c : doc.curves) {
            if (c.points.cols() > 0 && polyline_distance<double>(pts[i], c.points) <= tol) {
                throw KolamError("dot-on-curve", "dot " + std::to_string(i) + " lies on a curve");
            }
        }
    }
    if (pts.empty() && options.strict) throw KolamError("no-dots", "the edits remove every dot");

    KolamDocument out = doc;
    out.dots = DotSet::from_points(pts);
    ValidationReport& r = out.report;
    r.warnings.clear();

    const auto windings = curve_windings(out.curves, out.dots);
    r.m1_pass = true;
    for (std::size_t d = 0; d < out.dots.size(); ++d) {
        bool circled = false;
        for (const auto& w : windings) circled = circled || std::abs(w[d]) >= options.winding_threshold;
        if (circled) continue;
        if (options.strict) {
            throw KolamError("uncircumscribed-dot", "dot " + std::to_string(d) + " is not circumscribed");
        }
        r.m1_pass = false;
        r.warnings.push_back("dot " + std::to_string(d) + " is not circumscribed");
    }
    // Curves are unchanged, so the intersection audit is too; only the
    // tangency policy can differ.
    const CurveAudit audit = audit_curves(out.curves, 1e-9 * std::max((hi - lo).norm(), 1e-12));
    r.m2_pass = audit.overlaps == 0 && (!options.strict || audit.tangencies == 0);
    if (audit.overlaps > 0) r.warnings.push_back(std::to_string(audit.overlaps) + " finite-length overlaps");
    if (audit.tangencies > 0) r.warnings.push_back(std::to_string(audit.tangencies) + " non-transverse contacts");
    r.audited_crossings = audit.crossing_count();
    r.geometric = true;
    return out;
}

}  // namespace kolam
