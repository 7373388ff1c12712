#include "kolam/io.hpp"

#include "kolam/error.hpp"

#include <algorithm>
#include <charconv>
#include <regex>

namespace kolam {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw SchemaError("expected-object", std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError("missing-field", std::string("missing field '") + key + "'");
    return *it;
}

double number(const Json& j, const std::string& what) {
    if (!j.is_number()) throw SchemaError("bad-type", what + " must be a number");
    return j.get<double>();
}

long long integer(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) throw SchemaError("bad-type", what + " must be an integer");
    return j.get<long long>();
}

const std::string& text(const Json& j, const std::string& what) {
    if (!j.is_string()) throw SchemaError("bad-type", what + " must be a string");
    return j.get_ref<const std::string&>();
}

bool flag(const Json& j, const std::string& what) {
    if (!j.is_boolean()) throw SchemaError("bad-type", what + " must be a boolean");
    return j.get<bool>();
}

Point point(const Json& j, const std::string& what) {
    if (j.is_array() && j.size() == 2) return {number(j[0], what + "[0]"), number(j[1], what + "[1]")};
    if (j.is_object()) return {number(field(j, "x"), what + ".x"), number(field(j, "y"), what + ".y")};
    throw SchemaError("bad-type", what + " must be [x, y] or {\"x\", \"y\"}");
}

Json point_json(const Point& p) { return Json::array({p.x(), p.y()}); }

std::string color(const Json& j, const std::string& what) {
    static const std::regex ok("#[0-9a-fA-F]{3,8}|[a-zA-Z]{1,32}");
    const std::string& c = text(j, what);
    if (!std::regex_match(c, ok)) throw SchemaError("bad-color", what + " must be a hex color or a color name");
    return c;
}

}  // namespace

Json envelope(const std::string& schema) {
    Json j = Json::object();
    j["engine_version"] = kEngineVersion;
    j["schema"] = schema;
    return j;
}

Json to_json(const DotSet& dots) {
    Json a = Json::array();
    for (const Dot& d : dots) a.push_back({{"id", d.id}, {"x", d.pos.x()}, {"y", d.pos.y()}});
    return a;
}

DotSet dots_from_json(const Json& j) {
    const Json& list = j.is_object() ? field(j, "dots") : j;
    if (!list.is_array()) throw SchemaError("bad-type", "dots must be an array");
    std::vector<Dot> dots;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Json& e = list[i];
        const std::string what = "dots[" + std::to_string(i) + "]";
        Dot d;
        d.id = static_cast<int>(i);
        if (e.is_object() && e.contains("id")) d.id = static_cast<int>(integer(e["id"], what + ".id"));
        d.pos = point(e, what);
        dots.push_back(d);
    }
    std::sort(dots.begin(), dots.end(), [](const Dot& a, const Dot& b) { return a.id < b.id; });
    return DotSet(std::move(dots));
}

Json to_json(const JunctionPolicy& policy) {
    return {{"mode", policy.mode_name()},
            {"cutoff_distance", policy.cutoff_distance},
            {"junctions_per_pair", policy.junctions_per_pair}};
}

JunctionPolicy parse_policy_flag(const std::string& flag_text, int junctions_per_pair) {
    JunctionPolicy p;
    p.junctions_per_pair = junctions_per_pair;
    const auto eq = flag_text.find('=');
    if (eq == std::string::npos) {
        p.mode = parse_junction_mode(flag_text);
        if (p.mode == JunctionMode::Cutoff) throw SchemaError("bad-policy", "cutoff needs a distance: cutoff=<d>");
        return p;
    }
    if (flag_text.substr(0, eq) != "cutoff") throw SchemaError("bad-policy", "unknown policy '" + flag_text + "'");
    const std::string value = flag_text.substr(eq + 1);
    double d = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), d);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw SchemaError("bad-policy", "cutoff distance '" + value + "' is not a number");
    }
    p.mode = JunctionMode::Cutoff;
    p.cutoff_distance = d;
    return p;
}

JunctionPolicy policy_from_json(const Json& j) {
    if (j.is_string()) return parse_policy_flag(j.get<std::string>());
    if (!j.is_object()) throw SchemaError("bad-type", "policy must be an object or a string");
    JunctionPolicy p;
    if (j.contains("mode")) p.mode = parse_junction_mode(text(j["mode"], "policy.mode"));
    if (j.contains("cutoff_distance")) p.cutoff_distance = number(j["cutoff_distance"], "policy.cutoff_distance");
    if (j.contains("junctions_per_pair")) {
        p.junctions_per_pair = static_cast<int>(integer(j["junctions_per_pair"], "policy.junctions_per_pair"));
    }
    return p;
}

BondAssignment assignment_from_json(const Json& j, std::size_t junction_count) {
    if (j.is_string()) return parse_assignment(j.get<std::string>(), junction_count);
    if (j.is_array()) {
        BondAssignment a;
        for (std::size_t i = 0; i < j.size(); ++i) {
            a.bonds.push_back(parse_bond(text(j[i], "assignment[" + std::to_string(i) + "]")));
        }
        if (a.size() != junction_count) {
            throw KolamError("assignment-length", "assignment has " + std::to_string(a.size()) + " bonds for " +
                                                      std::to_string(junction_count) + " junctions");
        }
        return a;
    }
    const Json& bonds = field(j, "bonds");
    if (!bonds.is_object()) throw SchemaError("bad-type", "assignment.bonds must be an object");
    std::vector<std::optional<BondType>> slots(junction_count);
    for (const auto& [key, value] : bonds.items()) {
        int id = -1;
        const auto res = std::from_chars(key.data(), key.data() + key.size(), id);
        if (res.ec != std::errc() || res.ptr != key.data() + key.size()) {
            throw SchemaError("bad-junction-key", "junction key '" + key + "' is not an integer");
        }
        if (id < 0 || static_cast<std::size_t>(id) >= junction_count) {
            throw KolamError("unknown-junction", "no junction with id " + key);
        }
        slots[static_cast<std::size_t>(id)] = parse_bond(text(value, "assignment.bonds." + key));
    }
    BondAssignment a;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i]) throw KolamError("missing-junction", "no bond for junction " + std::to_string(i));
        a.bonds.push_back(*slots[i]);
    }
    return a;
}

Json assignment_to_json(const BondAssignment& a) {
    Json bonds = Json::object();
    for (std::size_t i = 0; i < a.size(); ++i) bonds[std::to_string(i)] = std::string(1, bond_letter(a[i]));
    return {{"bonds", bonds}};
}

Json to_json(const Style& s) {
    return {{"radius_ratio", s.radius_ratio},
            {"bulge_ratio", s.bulge_ratio},
            {"arc_samples", s.arc_samples},
            {"smoothing_iterations", s.smoothing_iterations},
            {"stroke_width_ratio", s.stroke_width_ratio},
            {"dot_radius_ratio", s.dot_radius_ratio},
            {"stroke_color", s.stroke_color},
            {"dot_color", s.dot_color}};
}

Style style_from_json(const Json& j, Style s) {
    if (!j.is_object()) throw SchemaError("bad-type", "style must be an object");
    for (const auto& [key, value] : j.items()) {
        const std::string what = "style." + key;
        if (key == "radius_ratio") s.radius_ratio = number(value, what);
        else if (key == "bulge_ratio") s.bulge_ratio = number(value, what);
        else if (key == "arc_samples") s.arc_samples = static_cast<int>(integer(value, what));
        else if (key == "smoothing_iterations") s.smoothing_iterations = static_cast<int>(integer(value, what));
        else if (key == "stroke_width_ratio") s.stroke_width_ratio = number(value, what);
        else if (key == "dot_radius_ratio") s.dot_radius_ratio = number(value, what);
        else if (key == "stroke_color") s.stroke_color = color(value, what);
        else if (key == "dot_color") s.dot_color = color(value, what);
        else throw SchemaError("unknown-field", "unknown style field '" + key + "'");
    }
    return s;
}

Json to_json(const ValidationReport& r) {
    return {{"m1_pass", r.m1_pass},
            {"m2_pass", r.m2_pass},
            {"m3_pass", r.m3_pass},
            {"orbit_count", r.orbit_count},
            {"crossing_count", r.crossing_count},
            {"audited_crossings", r.audited_crossings},
            {"geometric", r.geometric},
            {"warnings", r.warnings}};
}

ValidationReport report_from_json(const Json& j) {
    ValidationReport r;
    r.m1_pass = flag(field(j, "m1_pass"), "report.m1_pass");
    r.m2_pass = flag(field(j, "m2_pass"), "report.m2_pass");
    r.m3_pass = flag(field(j, "m3_pass"), "report.m3_pass");
    r.orbit_count = static_cast<int>(integer(field(j, "orbit_count"), "report.orbit_count"));
    r.crossing_count = static_cast<int>(integer(field(j, "crossing_count"), "report.crossing_count"));
    if (j.contains("audited_crossings")) {
        r.audited_crossings = static_cast<int>(integer(j["audited_crossings"], "report.audited_crossings"));
    }
    if (j.contains("geometric")) r.geometric = flag(j["geometric"], "report.geometric");
    if (j.contains("warnings")) {
        for (const Json& w : j["warnings"]) r.warnings.push_back(text(w, "report.warnings[]"));
    }
    return r;
}

Json to_json(const JunctionSet& js) {
    Json items = Json::array();
    for (const Junction& jn : js) {
        Json ends = Json::array();
        for (const Point& e : jn.ends) ends.push_back(point_json(e));
        items.push_back({{"id", jn.id},
                         {"a", jn.a},
                         {"b", jn.b},
                         {"slot", jn.slot},
                         {"x", jn.position.x()},
                         {"y", jn.position.y()},
                         {"nominal", point_json(jn.nominal)},
                         {"displacement", jn.displacement},
                         {"displaced", jn.displaced},
                         {"ends", ends}});
    }
    return {{"policy", to_json(js.policy)}, {"junctions", items}};
}

Json to_json(const ParentKolam& p) {
    Json rotation = Json::array();
    Json labels = Json::array();
    for (const auto& row : p.rotation) {
        rotation.push_back(row);
        Json l = Json::array();
        for (EndId e : row) l.push_back(end_label(e));
        labels.push_back(l);
    }
    return {{"dots", to_json(p.dots)},
            {"junctions", to_json(p.junctions)["junctions"]},
            {"rotation", rotation},
            {"rotation_labels", labels},
            {"sweep_partner", p.sweep_partner},
            {"signature", parent_signature(p).text()}};
}

Json to_json(const Curve& c) {
    Json pts = Json::array();
    for (Eigen::Index i = 0; i < c.points.cols(); ++i) pts.push_back(Json::array({c.points(0, i), c.points(1, i)}));
    return {{"orbit", c.orbit}, {"points", pts}};
}

Curve curve_from_json(const Json& j) {
    Curve c;
    c.orbit = static_cast<int>(integer(field(j, "orbit"), "curve.orbit"));
    const Json& pts = field(j, "points");
    if (!pts.is_array()) throw SchemaError("bad-type", "curve.points must be an array");
    c.points.resize(2, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) c.points.col(static_cast<Eigen::Index>(i)) = point(pts[i], "curve.points[]");
    return c;
}

Json to_json(const KolamDocument& doc) {
    Json j = envelope(kDocumentSchema);
    j["dots"] = to_json(doc.dots);
    j["style"] = to_json(doc.style);
    Json prov = Json::object();
    prov["original_n"] = doc.provenance.original_dots.size();
    prov["original_dots"] = to_json(doc.provenance.original_dots);
    prov["policy"] = to_json(doc.provenance.policy);
    prov["assignment"] = doc.provenance.assignment;
    prov["seed"] = doc.provenance.seed ? Json(*doc.provenance.seed) : Json(nullptr);
    prov["notes"] = doc.provenance.notes;
    j["provenance"] = prov;
    j["report"] = to_json(doc.report);
    Json curves = Json::array();
    for (const Curve& c : doc.curves) curves.push_back(to_json(c));
    j["curves"] = curves;
    return j;
}

KolamDocument document_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("expected-object", "a document must be an object");
    if (j.contains("schema") && j["schema"] != kDocumentSchema) {
        throw SchemaError("bad-schema", "expected schema " + std::string(kDocumentSchema));
    }
    KolamDocument doc;
    doc.dots = dots_from_json(field(j, "dots"));
    if (j.contains("style")) doc.style = style_from_json(j["style"]);
    const Json& prov = field(j, "provenance");
    doc.provenance.original_dots = dots_from_json(field(prov, "original_dots"));
    doc.provenance.policy = policy_from_json(field(prov, "policy"));
    doc.provenance.assignment = text(field(prov, "assignment"), "provenance.assignment");
    if (prov.contains("seed") && !prov["seed"].is_null()) {
        if (!prov["seed"].is_number_unsigned()) throw SchemaError("bad-type", "provenance.seed must be unsigned");
        doc.provenance.seed = prov["seed"].get<std::uint64_t>();
    }
    if (prov.contains("notes")) {
        for (const Json& n : prov["notes"]) doc.provenance.notes.push_back(text(n, "provenance.notes[]"));
    }
    doc.report = report_from_json(field(j, "report"));
    const Json& curves = field(j, "curves");
    if (!curves.is_array()) throw SchemaError("bad-type", "curves must be an array");
    for (const Json& c : curves) doc.curves.push_back(curve_from_json(c));
    return doc;
}

Json to_json(const CensusRow& r) {
    return {{"assignment", r.assignment}, {"orbit_count", r.orbit_count}, {"crossing_count", r.crossing_count},
            {"type", r.type}, {"m1", r.m1}, {"m2", r.m2}, {"m3", r.m3}};
}

std::vector<DotEdit> edits_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("bad-type", "edits must be an array");
    std::vector<DotEdit> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& e = j[i];
        const std::string what = "edits[" + std::to_string(i) + "]";
        const std::string& op = text(field(e, "op"), what + ".op");
        DotEdit d;
        if (op == "add") {
            d.kind = DotEdit::Kind::Add;
            d.at = e.contains("at") ? point(e["at"], what + ".at") : point(e, what);
        } else if (op == "remove") {
            d.kind = DotEdit::Kind::Remove;
            d.id = static_cast<int>(integer(field(e, "id"), what + ".id"));
        } else if (op == "move") {
            d.kind = DotEdit::Kind::Move;
            d.id = static_cast<int>(integer(field(e, "id"), what + ".id"));
            if (e.contains("to") == e.contains("by")) {
                throw SchemaError("bad-edit", what + ": move takes exactly one of 'to' and 'by'");
            }
            d.relative = e.contains("by");
            d.at = point(d.relative ? e["by"] : e["to"], what);
        } else {
            throw SchemaError("bad-edit", what + ": unknown op '" + op + "'");
        }
        out.push_back(d);
    }
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace kolam
