#include "kolam/engine.hpp"

#include "kolam/error.hpp"

#include <charconv>
#include <sstream>

namespace kolam::engine {

namespace {

const Json& require(const Json& request, const char* key) {
    if (!request.is_object()) throw SchemaError("expected-object", "the request body must be a JSON object");
    auto it = request.find(key);
    if (it == request.end()) throw SchemaError("missing-field", std::string("missing field '") + key + "'");
    return *it;
}

bool option(const Json& request, const char* key, bool fallback) {
    if (!request.contains(key)) return fallback;
    if (!request[key].is_boolean()) throw SchemaError("bad-type", std::string(key) + " must be a boolean");
    return request[key].get<bool>();
}

std::uint64_t unsigned_option(const Json& request, const char* key, std::uint64_t fallback) {
    if (!request.contains(key)) return fallback;
    if (!request[key].is_number_unsigned()) {
        throw SchemaError("bad-type", std::string(key) + " must be a non-negative integer");
    }
    return request[key].get<std::uint64_t>();
}

std::shared_ptr<const ParentKolam> parent_of(const Json& request) {
    if (!request.is_object()) throw SchemaError("expected-object", "the request body must be a JSON object");
    const DotSet dots = dots_from_json(require(request, "dots"));
    const JunctionPolicy policy = request.contains("policy") ? policy_from_json(request["policy"]) : JunctionPolicy{};
    return make_parent(dots, policy);
}

Style style_of(const Json& request) {
    Style s = request.contains("style") ? style_from_json(request["style"]) : Style{};
    s.validate();
    return s;
}

Json provenance_of(const ParentKolam& parent) {
    Json p = Json::object();
    p["original_n"] = parent.dots.size();
    p["policy"] = to_json(parent.junctions.policy);
    Json notes = Json::array();
    if (parent.junctions.policy.mode == JunctionMode::Cutoff) {
        notes.push_back("cutoff policy: only pairs at most cutoff_distance apart are joined");
    }
    p["notes"] = notes;
    return p;
}

struct Page {
    std::shared_ptr<const ParentKolam> parent;
    BigInt total;
    int g = 0;
    bool symmetric = false;
    std::string group;
    std::uint64_t cursor = 0;
    std::uint64_t page_size = kDefaultPageSize;
    std::optional<std::uint64_t> next_cursor;
    std::vector<CensusRow> rows;
};

Page census_page(const Json& request) {
    Page page;
    page.parent = parent_of(request);
    const ParentKolam& parent = *page.parent;

    EnumerationConstraints constraints;
    page.symmetric = option(request, "symmetric", false);
    const PointGroup group = detect_point_group(parent.dots);
    page.group = group.name();
    if (page.symmetric) constraints.symmetric_under = group;
    if (request.contains("fixed_bonds")) {
        const Json& fixed = request["fixed_bonds"];
        if (!fixed.is_object()) throw SchemaError("bad-type", "fixed_bonds must be an object");
        for (const auto& [key, value] : fixed.items()) {
            int id = -1;
            const auto res = std::from_chars(key.data(), key.data() + key.size(), id);
            if (res.ec != std::errc() || res.ptr != key.data() + key.size()) {
                throw SchemaError("bad-junction-key", "junction key '" + key + "' is not an integer");
            }
            if (!value.is_string()) throw SchemaError("bad-type", "fixed_bonds." + key + " must be a string");
            constraints.fixed_bonds[id] = parse_bond(value.get<std::string>());
        }
    }

    page.cursor = unsigned_option(request, "cursor", 0);
    page.page_size = unsigned_option(request, "page_size", kDefaultPageSize);
    if (page.page_size < 1 || page.page_size > static_cast<std::uint64_t>(kMaxPageSize)) {
        throw SchemaError("bad-page-size", "page_size must be between 1 and " + std::to_string(kMaxPageSize));
    }

    const AssignmentSpace space(parent.junctions, constraints, parent.dots.symmetry_tolerance());
    page.total = space.size();
    page.g = space.g();

    EnumerationOptions options;
    options.style = style_of(request);
    options.validation.strict = option(request, "strict", false);
    options.geometric = option(request, "geometric", true);
    options.begin = page.cursor;
    options.end = page.cursor + page.page_size < page.cursor ? std::numeric_limits<std::uint64_t>::max()
                                                              : page.cursor + page.page_size;
    enumerate_assignments(page.parent, constraints, [&](const EnumeratedKolam& e) {
        page.rows.push_back(census_row(e));
        return true;
    }, options);
    if (BigInt(options.end) < page.total) page.next_cursor = options.end;
    return page;
}

}  // namespace

Json junctions(const Json& request) {
    const auto parent = parent_of(request);
    const PointGroup group = detect_point_group(parent->dots);
    const OrbitPartition classes = junction_orbits(parent->junctions, group, parent->dots.symmetry_tolerance());

    Json j = envelope("kolam-junctions/1");
    j["dots"] = to_json(parent->dots);
    j["policy"] = to_json(parent->junctions.policy);
    j["junctions"] = to_json(parent->junctions)["junctions"];
    j["point_group"] = {{"name", group.name()},
                        {"order", group.order()},
                        {"center", Json::array({group.center.x(), group.center.y()})}};
    j["classes"] = classes.classes;
    j["g"] = classes.g();
    const Json dump = to_json(*parent);
    j["parent"] = {{"rotation", dump["rotation"]},
                   {"rotation_labels", dump["rotation_labels"]},
                   {"signature", dump["signature"]}};
    return j;
}

KolamDocument kolam_document(const Json& request) {
    const auto parent = parent_of(request);
    const std::size_t n = parent->junctions.size();
    std::optional<std::uint64_t> seed;
    BondAssignment a;
    if (request.contains("assignment")) {
        if (request.contains("seed")) throw SchemaError("bad-request", "give either an assignment or a seed");
        a = assignment_from_json(request["assignment"], n);
    } else if (request.contains("seed")) {
        seed = unsigned_option(request, "seed", 0);
        a = random_assignment(n, *seed);
    } else {
        a = uniform_assignment(n, BondType::Broken);
    }
    ValidationOptions v;
    v.strict = option(request, "strict", false);
    return build_document(parent, a, style_of(request), v, seed);
}

Json kolam(const Json& request) { return to_json(kolam_document(request)); }

Json enumerate(const Json& request) {
    Page page = census_page(request);
    Json j = envelope("kolam-census/1");
    const std::string k = page.total.str();
    j["total"] = k;
    j["junction_count"] = page.parent->junctions.size();
    j["point_group"] = page.group;
    j["symmetric"] = page.symmetric;
    j["g"] = page.symmetric ? Json(page.g) : Json(nullptr);
    j["summary"] = page.symmetric ? "K=" + k + ", g=" + std::to_string(page.g) : "K=" + k;
    j["provenance"] = provenance_of(*page.parent);
    j["cursor"] = page.cursor;
    j["page_size"] = page.page_size;
    j["next_cursor"] = page.next_cursor ? Json(*page.next_cursor) : Json(nullptr);
    Json rows = Json::array();
    for (const CensusRow& r : page.rows) rows.push_back(to_json(r));
    j["rows"] = rows;

    if (option(request, "classify", false)) {
        const ParentKolam& parent = *page.parent;
        if (parent.junctions.size() > 12) {
            throw KolamError("classification-too-large", "type classification is limited to 12 junctions");
        }
        const AssignmentSpace all(parent.junctions, {}, parent.dots.symmetry_tolerance());
        std::vector<BondAssignment> every;
        for (std::uint64_t i = 0; i < all.size_u64(); ++i) every.push_back(all.at(i));
        const PointGroup group = detect_point_group(parent.dots);
        Json types = Json::array();
        for (const KolamType& t : classify_types(parent.junctions, every, group, parent.dots.symmetry_tolerance())) {
            types.push_back({{"label", t.label}, {"representative", t.representative}, {"multiplicity", t.multiplicity}});
        }
        j["types"] = types;
    }
    return j;
}

std::string enumerate_csv(const Json& request) {
    const Page page = census_page(request);
    std::ostringstream os;
    write_census_csv(os, page.rows);
    return os.str();
}

Json edit_dots(const Json& request) {
    const KolamDocument doc = document_from_json(require(request, "document"));
    const std::vector<DotEdit> edits = edits_from_json(require(request, "edits"));
    EditOptions options;
    options.strict = option(request, "strict", false);
    return to_json(kolam::edit_dots(doc, edits, options));
}

Json health() {
    Json j = envelope("kolam-health/1");
    j["status"] = "ok";
    return j;
}

Response error_response(int status, const std::string& code, const std::string& message) {
    Json j = envelope("kolam-error/1");
    j["error"] = {{"code", code}, {"message", message}};
    return {status, "application/json", dump(j)};
}

Response dispatch(const std::string& method, const std::string& path, const std::string& body) {
    try {
        if (path == "/v1/health") {
            if (method != "GET") return error_response(405, "method-not-allowed", "use GET");
            return {200, "application/json", dump(health())};
        }
        const bool known = path == "/v1/junctions" || path == "/v1/kolam" || path == "/v1/enumerate" ||
                           path == "/v1/edit-dots";
        if (!known) return error_response(404, "not-found", "no endpoint " + path);
        if (method != "POST") return error_response(405, "method-not-allowed", "use POST");

        Json request;
        try {
            request = Json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            return error_response(400, "invalid-json", e.what());
        }
        if (!request.is_object()) return error_response(400, "expected-object", "the request body must be an object");
        const std::string format = request.contains("format") && request["format"].is_string()
                                       ? request["format"].get<std::string>()
                                       : "json";

        if (path == "/v1/junctions") return {200, "application/json", dump(junctions(request))};
        if (path == "/v1/kolam") {
            if (format == "svg") return {200, "image/svg+xml", emit_svg(kolam_document(request))};
            if (format != "json") return error_response(400, "bad-format", "format must be json or svg");
            return {200, "application/json", dump(kolam(request))};
        }
        if (path == "/v1/enumerate") {
            if (format == "csv") return {200, "text/csv", enumerate_csv(request)};
            if (format != "json") return error_response(400, "bad-format", "format must be json or csv");
            return {200, "application/json", dump(enumerate(request))};
        }
        return {200, "application/json", dump(edit_dots(request))};
    } catch (const SchemaError& e) {
        return error_response(400, e.code(), e.what());
    } catch (const KolamError& e) {
        return error_response(422, e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
        return error_response(400, "schema-violation", e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

}  // namespace kolam::engine
